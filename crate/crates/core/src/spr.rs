//! Steiner point removal: minors on terminal sets with measured distortion.
//!
//! The constructor contracts each vertex into its nearest terminal (ties to
//! the smallest terminal id), keeps one minor edge per adjacent cell pair,
//! and weights it with the true graph distance between the two terminals.
//! Cells are connected under this tie-break: along the canonical shortest
//! path from a vertex to its terminal, the same terminal keeps winning. The
//! construction guarantees soundness (a true minor whose metric dominates
//! the graph metric); the distortion is measured, not bounded.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::metric::{Metric, SourcePaths};

#[derive(Clone, Debug)]
pub struct SprInstance {
    pub graph: WeightedGraph,
    /// Sorted, deduplicated terminal ids.
    pub terminals: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SprError {
    NoTerminals,
    TerminalOutOfRange(VertexId),
    Graph(GraphError),
}

impl fmt::Display for SprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SprError::NoTerminals => write!(f, "terminal set is empty"),
            SprError::TerminalOutOfRange(v) => write!(f, "terminal {v} out of range"),
            SprError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl SprInstance {
    pub fn new(graph: WeightedGraph, terminals: &[VertexId]) -> Result<Self, SprError> {
        if terminals.is_empty() {
            return Err(SprError::NoTerminals);
        }
        let mut ts: Vec<VertexId> = terminals.to_vec();
        ts.sort_unstable();
        ts.dedup();
        for &t in &ts {
            if t >= graph.vertex_count() {
                return Err(SprError::TerminalOutOfRange(t));
            }
        }
        graph.check_connected().map_err(SprError::Graph)?;
        Ok(SprInstance { graph, terminals: ts })
    }
}

/// A weighted minor on the terminal set plus its witness: the assignment of
/// graph vertices to supernodes. Minor vertex `i` stands for
/// `terminals[i]`.
#[derive(Clone, Debug)]
pub struct SprMinor {
    pub minor: WeightedGraph,
    pub terminals: Vec<VertexId>,
    /// Per graph vertex: the index (into `terminals`) of its supernode, or
    /// `None` for vertices deleted rather than contracted.
    pub witness: Vec<Option<usize>>,
}

impl SprMinor {
    /// The original terminal id a graph vertex was contracted into.
    pub fn assigned_terminal(&self, v: VertexId) -> Option<VertexId> {
        self.witness[v].map(|i| self.terminals[i])
    }
}

/// Contracts every vertex into its nearest terminal, breaking distance ties
/// toward the smaller terminal id.
pub fn voronoi_spr_minor(inst: &SprInstance) -> SprMinor {
    let g = &inst.graph;
    let k = inst.terminals.len();
    let from_terminal: Vec<SourcePaths> = inst
        .terminals
        .iter()
        .map(|&t| SourcePaths::compute(g, t))
        .collect();
    let mut witness: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for v in g.vertices() {
        let best = (0..k)
            .map(|i| (from_terminal[i].dist(v).expect("connected"), i))
            .min()
            .expect("nonempty terminals");
        witness[v] = Some(best.1);
    }
    let mut pair_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in g.edges() {
        let (a, b) = (witness[e.u].unwrap(), witness[e.v].unwrap());
        if a != b {
            pair_edges.insert((a.min(b), a.max(b)));
        }
    }
    let minor_edges: Vec<(usize, usize, u64)> = pair_edges
        .into_iter()
        .map(|(a, b)| {
            let d = from_terminal[a]
                .dist(inst.terminals[b])
                .expect("connected");
            (a, b, d)
        })
        .collect();
    let minor = WeightedGraph::new(k, &minor_edges).expect("minor edges are simple");
    SprMinor { minor, terminals: inst.terminals.clone(), witness }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorViolation {
    WitnessLengthMismatch,
    TerminalNotInOwnCell(VertexId),
    CellDisconnected { terminal: VertexId },
    MinorEdgeUnsupported { a: VertexId, b: VertexId },
    MissingAdjacency { a: VertexId, b: VertexId },
    DistanceBelowGraph { a: VertexId, b: VertexId, minor: u64, graph: u64 },
}

impl fmt::Display for MinorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorViolation::WitnessLengthMismatch => write!(f, "witness length mismatch"),
            MinorViolation::TerminalNotInOwnCell(t) => {
                write!(f, "terminal {t} not in its own supernode")
            }
            MinorViolation::CellDisconnected { terminal } => {
                write!(f, "supernode of terminal {terminal} is disconnected")
            }
            MinorViolation::MinorEdgeUnsupported { a, b } => {
                write!(f, "minor edge {a}-{b} has no supporting graph edge")
            }
            MinorViolation::MissingAdjacency { a, b } => {
                write!(f, "supernodes {a},{b} are adjacent but the minor edge is missing")
            }
            MinorViolation::DistanceBelowGraph { a, b, minor, graph } => write!(
                f,
                "minor distance {minor} between {a},{b} is below graph distance {graph}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct MinorReport {
    pub violations: Vec<MinorViolation>,
}

impl MinorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks minor validity directly from the witness: supernodes are
/// connected, pairwise disjoint (by construction of the witness map),
/// contain their terminals; the minor's edges are exactly the supernode
/// adjacencies; and the minor metric dominates the graph metric on
/// terminals.
pub fn verify_minor(g: &WeightedGraph, m: &SprMinor) -> MinorReport {
    let mut violations = Vec::new();
    if m.witness.len() != g.vertex_count() {
        violations.push(MinorViolation::WitnessLengthMismatch);
        return MinorReport { violations };
    }
    for (i, &t) in m.terminals.iter().enumerate() {
        if m.witness[t] != Some(i) {
            violations.push(MinorViolation::TerminalNotInOwnCell(t));
        }
        let cell: Vec<VertexId> = (0..g.vertex_count())
            .filter(|&v| m.witness[v] == Some(i))
            .collect();
        if cell.is_empty() || g.induced_components(&cell).len() != 1 {
            violations.push(MinorViolation::CellDisconnected { terminal: t });
        }
    }
    // Derived adjacency between supernodes must match the minor edge set.
    let mut derived: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in g.edges() {
        if let (Some(a), Some(b)) = (m.witness[e.u], m.witness[e.v]) {
            if a != b {
                derived.insert((a.min(b), a.max(b)));
            }
        }
    }
    let declared: BTreeSet<(usize, usize)> =
        m.minor.edges().iter().map(|e| (e.u, e.v)).collect();
    for &(a, b) in declared.difference(&derived) {
        violations.push(MinorViolation::MinorEdgeUnsupported {
            a: m.terminals[a],
            b: m.terminals[b],
        });
    }
    for &(a, b) in derived.difference(&declared) {
        violations.push(MinorViolation::MissingAdjacency {
            a: m.terminals[a],
            b: m.terminals[b],
        });
    }
    // Lower side of the distance sandwich, exhaustively over terminal pairs.
    let minor_metric = Metric::new(&m.minor);
    let graph_metric = terminal_distances(g, &m.terminals);
    for i in 0..m.terminals.len() {
        for j in i + 1..m.terminals.len() {
            let dm = match minor_metric.dist(i, j) {
                Some(d) => d,
                None => continue,
            };
            let dg = graph_metric[i][&m.terminals[j]];
            if dm < dg {
                violations.push(MinorViolation::DistanceBelowGraph {
                    a: m.terminals[i],
                    b: m.terminals[j],
                    minor: dm,
                    graph: dg,
                });
            }
        }
    }
    MinorReport { violations }
}

fn terminal_distances(g: &WeightedGraph, terminals: &[VertexId]) -> Vec<BTreeMap<VertexId, u64>> {
    terminals
        .iter()
        .map(|&t| {
            let sp = SourcePaths::compute(g, t);
            (0..g.vertex_count())
                .filter_map(|v| sp.dist(v).map(|d| (v, d)))
                .collect()
        })
        .collect()
}

/// The multiplicative distortion of the minor, as an exact fraction and an
/// f64, with the maximizing terminal pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distortion {
    pub numer: u64,
    pub denom: u64,
    pub argmax: (VertexId, VertexId),
}

impl Distortion {
    pub fn ratio(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

/// Maximum of `d_minor / d_graph` over terminal pairs (1/1 for a single
/// terminal).
pub fn distortion(g: &WeightedGraph, m: &SprMinor) -> Distortion {
    let k = m.terminals.len();
    if k < 2 {
        let t = m.terminals.first().copied().unwrap_or(0);
        return Distortion { numer: 1, denom: 1, argmax: (t, t) };
    }
    let minor_metric = Metric::new(&m.minor);
    let graph_dists = terminal_distances(g, &m.terminals);
    let mut best = Distortion {
        numer: 1,
        denom: 1,
        argmax: (m.terminals[0], m.terminals[1]),
    };
    for i in 0..k {
        for j in i + 1..k {
            let dm = minor_metric.dist(i, j).expect("minor connected");
            let dg = graph_dists[i][&m.terminals[j]];
            // dm/dg > best  <=>  dm * best.denom > best.numer * dg
            if (dm as u128) * (best.denom as u128) > (best.numer as u128) * (dg as u128) {
                best = Distortion {
                    numer: dm,
                    denom: dg,
                    argmax: (m.terminals[i], m.terminals[j]),
                };
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    #[test]
    fn all_terminals_gives_identity_distortion() {
        let g = unit_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let inst = SprInstance::new(g.clone(), &[0, 1, 2, 3, 4]).unwrap();
        let m = voronoi_spr_minor(&inst);
        assert!(verify_minor(&g, &m).passed());
        let d = distortion(&g, &m);
        assert_eq!((d.numer, d.denom), (1, 1));
    }

    #[test]
    fn star_with_leaf_terminals_has_distortion_two() {
        // Center 0, leaves 1..=4 are the terminals.
        let g = unit_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let inst = SprInstance::new(g.clone(), &[1, 2, 3, 4]).unwrap();
        let m = voronoi_spr_minor(&inst);
        let report = verify_minor(&g, &m);
        assert!(report.passed(), "{:?}", report.violations);
        // Center joins terminal 1; minor is a star centered there with
        // weight-2 spokes.
        assert_eq!(m.assigned_terminal(0), Some(1));
        assert_eq!(m.minor.edge_count(), 3);
        assert!(m.minor.edges().iter().all(|e| e.w == 2 && e.u == 0));
        let d = distortion(&g, &m);
        assert_eq!((d.numer, d.denom), (4, 2));
        assert_eq!(d.ratio(), 2.0);
    }

    #[test]
    fn single_terminal_collapses_everything() {
        let g = unit_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let inst = SprInstance::new(g.clone(), &[2]).unwrap();
        let m = voronoi_spr_minor(&inst);
        assert!(verify_minor(&g, &m).passed());
        assert_eq!(m.minor.vertex_count(), 1);
        assert_eq!(m.minor.edge_count(), 0);
        assert!(m.witness.iter().all(|w| *w == Some(0)));
    }

    #[test]
    fn corrupted_witnesses_are_caught() {
        let g = unit_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let inst = SprInstance::new(g.clone(), &[0, 5]).unwrap();
        let mut m = voronoi_spr_minor(&inst);
        assert!(verify_minor(&g, &m).passed());
        // Disconnect a supernode: {0, 2} with 1 missing.
        m.witness[1] = Some(1);
        let report = verify_minor(&g, &m);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MinorViolation::CellDisconnected { .. })));

        // A minor edge with no supporting adjacency.
        let g2 = unit_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let inst2 = SprInstance::new(g2.clone(), &[0, 3]).unwrap();
        let mut m2 = voronoi_spr_minor(&inst2);
        m2.witness[1] = Some(0);
        m2.witness[2] = Some(0);
        m2.witness[3] = Some(1);
        // Now cells {0,1,2} and {3} are adjacent; declare an extra edge by
        // rebuilding the minor with weight 1 but wrong support is not
        // possible through the constructor, so fake a missing adjacency
        // instead: declare no edges at all.
        m2.minor = WeightedGraph::new(2, &[]).unwrap();
        let report2 = verify_minor(&g2, &m2);
        assert!(report2
            .violations
            .iter()
            .any(|v| matches!(v, MinorViolation::MissingAdjacency { .. })));
    }

    #[test]
    fn voronoi_cells_stay_connected_on_generated_instances() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..30 {
            let n = 6 + (seed as usize * 5) % 50;
            let g = generate_series_parallel(seed, n, &cfg);
            let k = 2 + (seed as usize) % 5;
            let terminals: Vec<usize> = (0..k).map(|i| (i * 7 + 1) % n).collect();
            let inst = match SprInstance::new(g.clone(), &terminals) {
                Ok(i) => i,
                Err(_) => continue,
            };
            let m = voronoi_spr_minor(&inst);
            let report = verify_minor(&g, &m);
            assert!(report.passed(), "seed {seed}: {:?}", report.violations);
            let d = distortion(&g, &m);
            assert!(d.numer >= d.denom, "distortion below 1 at seed {seed}");
        }
    }

    #[test]
    fn adding_a_terminal_never_lowers_soundness() {
        // Regression-style property: with more terminals the minor still
        // verifies and distortion stays at least 1.
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        let g = generate_series_parallel(7, 30, &cfg);
        let mut terminals = alloc::vec![0, 9];
        for extra in [3usize, 12, 17, 21] {
            terminals.push(extra);
            let inst = SprInstance::new(g.clone(), &terminals).unwrap();
            let m = voronoi_spr_minor(&inst);
            assert!(verify_minor(&g, &m).passed());
            assert!(distortion(&g, &m).ratio() >= 1.0);
        }
    }
}
