//! Scattering chops and scattering partitions.
//!
//! A scattering chop starts from the sharp width-`delta` annuli of a rooted
//! graph and perturbs them along a hammock decomposition so that no
//! canonical shortest path of length at most `delta` is cut more than a
//! fixed constant number of times. Vertices only ever move to an adjacent
//! annulus, and each move window is `delta/3` wide, so the result is a
//! fuzzy chop with fuzz 2/3.
//!
//! Moves come in three flavors, applied independently per hammock to the
//! hammock's `b`-side tree (the side hanging from the class lca) and to the
//! base tree as a pseudo-hammock rooted at the BFS root:
//!
//! * pull-down: the hammock's `a` root sits in the bottom third of annulus
//!   `i`, so the hammock's `b`-side vertices in that band join annulus
//!   `i + 1` and the boundary effectively lifts above the attachment;
//! * push-up: the `a` root lies above the band entirely, so `b`-side
//!   vertices in the top third of annulus `i` join annulus `i - 1`.
//!
//! Repeating scattering chops at width `delta/88` for three levels yields a
//! partition whose parts are connected, have weak diameter at most `delta`,
//! and meet every canonical shortest path of length at most `delta` in a
//! bounded number of parts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::chops::{
    count_cut_edges, recursive_chops, ChopError, ChopStrategy, FuzzyChop,
};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::hammock::{decompose, HammockDecomposition, HammockError};
use crate::metric::{Metric, Path};
use crate::ratio::{int_le, int_lt, le_int, Ratio};
use crate::recognize::{is_series_parallel, ClawedCycle, SpWitness};
use crate::tree::RootedBfsTree;

/// Cross edges of one hammock that a canonical shortest path confined to
/// that hammock may use.
pub const SINGLE_HAMMOCK_CROSS_LIMIT: usize = 2;
/// Cut budget for monotone tree paths of length at most `delta/3`: one cut
/// per boundary-band range the path can visit, plus one inside the base
/// tree.
pub const MONOTONE_CUT_LIMIT: usize = 4;
/// Cut budget for canonical cross-edge paths of length below `delta/3`:
/// two hammock interiors plus two monotone wings.
pub const CROSS_PATH_CUT_LIMIT: usize = 8;
/// Cut budget for a full canonical shortest path of length at most `delta`:
/// three subpaths of length below `delta/3`, each splitting into a prefix,
/// a cross-edge portion and a suffix.
pub const CHOP_CUT_LIMIT: usize = 36;
/// Recursion depth of the partition construction.
pub const PARTITION_LEVELS: usize = 3;
/// The recursive chop width is `delta / WIDTH_DIVISOR`, chosen so that
/// three levels of fuzzy chops at that width keep every leaf part inside
/// weak diameter `delta` (the diameter bound constant is `22 * 4`).
pub const WIDTH_DIVISOR: i64 = 88;

/// Parts-touched budget for the recursive partition: the per-chop budget at
/// each of the three levels, times the number of width-`delta/88` pieces a
/// length-`delta` path splits into.
pub const fn partition_tau_budget() -> usize {
    CHOP_CUT_LIMIT * CHOP_CUT_LIMIT * CHOP_CUT_LIMIT * WIDTH_DIVISOR as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveRule {
    PullDown,
    PushUp,
    BaseTree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChopMove {
    pub vertex: VertexId,
    pub from: i64,
    pub to: i64,
    pub rule: MoveRule,
}

/// A fuzzy chop produced by the move rules, with the full move log.
#[derive(Clone, Debug)]
pub struct ScatteringChop {
    pub chop: FuzzyChop,
    pub moves: Vec<ChopMove>,
    pub tau_observed: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum ScatterError {
    NotSeriesParallel(ClawedCycle),
    NotUnitWeight,
    Disconnected { unreachable: VertexId },
    Pipeline(HammockError),
    Chop(ChopError),
    MoveConflict { vertex: VertexId },
    PartNotConnected { part: Vec<VertexId> },
    PartTooWide { part: Vec<VertexId>, diameter: u64 },
    PathMeetsTooManyParts { path: Path, parts: usize },
}

impl fmt::Display for ScatterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScatterError::NotSeriesParallel(_) => write!(f, "input is not series-parallel"),
            ScatterError::NotUnitWeight => write!(f, "input must have unit weights"),
            ScatterError::Disconnected { unreachable } => {
                write!(f, "input disconnected: vertex {unreachable} unreachable")
            }
            ScatterError::Pipeline(e) => write!(f, "{e}"),
            ScatterError::Chop(e) => write!(f, "{e}"),
            ScatterError::MoveConflict { vertex } => {
                write!(f, "vertex {vertex} targeted by two move rules")
            }
            ScatterError::PartNotConnected { part } => {
                write!(f, "partition part {part:?} is not connected")
            }
            ScatterError::PartTooWide { part, diameter } => {
                write!(f, "partition part {part:?} has weak diameter {diameter}")
            }
            ScatterError::PathMeetsTooManyParts { parts, .. } => {
                write!(f, "a short canonical path meets {parts} parts")
            }
        }
    }
}

/// Applies the move rules for one hammock decomposition of `(g, t)` at
/// width `delta`, with the fuzz window fixed to `delta/3` on each side.
pub fn scattering_chop(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    hd: &HammockDecomposition,
    delta: Ratio,
) -> Result<ScatteringChop, ScatterError> {
    assert!(delta.is_positive());
    let n = g.vertex_count();
    let sharp = |d: u64| -> i64 {
        Ratio::new(d as i64 * delta.den(), delta.num()).floor() + 1
    };
    let mut annulus: BTreeMap<VertexId, i64> = BTreeMap::new();
    let mut dist: BTreeMap<VertexId, u64> = BTreeMap::new();
    for v in 0..n {
        annulus.insert(v, sharp(t.depth(v)));
        dist.insert(v, t.depth(v));
    }

    // (condition root, moved set, rule tag); the base tree acts as a
    // pseudo-hammock rooted at the BFS root whose whole vertex set moves.
    let mut units: Vec<(VertexId, BTreeSet<VertexId>, BTreeSet<VertexId>, bool)> = Vec::new();
    for h in &hd.forest.hammocks {
        units.push((h.root_a, h.vertices(), h.tree_b.clone(), false));
    }
    units.push((
        t.root,
        hd.base_tree_verts.clone(),
        hd.base_tree_verts.clone(),
        true,
    ));

    let mut moves: Vec<ChopMove> = Vec::new();
    let mut moved_once: BTreeSet<VertexId> = BTreeSet::new();
    for (cond_root, region, moved_set, is_base) in &units {
        let d_root = t.depth(*cond_root) as i64;
        let root_ann = sharp(t.depth(*cond_root));
        let touched: BTreeSet<i64> = region.iter().map(|v| sharp(t.depth(*v))).collect();
        for &i in &touched {
            // i*delta - delta/3 and (i-1)*delta + delta/3
            let lower_band = delta.mul(Ratio::new(3 * i - 1, 3));
            let upper_band = delta.mul(Ratio::new(3 * i - 2, 3));
            let sharp_top = delta.mul_int(i);
            let (rule, targets): (MoveRule, Vec<VertexId>) = if root_ann == i
                && le_int(lower_band, d_root)
            {
                // pull the boundary band of the b side down one annulus
                let targets = moved_set
                    .iter()
                    .copied()
                    .filter(|&v| {
                        sharp(dist[&v]) == i
                            && le_int(lower_band, dist[&v] as i64)
                            && int_lt(dist[&v] as i64, sharp_top)
                    })
                    .collect();
                (MoveRule::PullDown, targets)
            } else if int_lt(d_root, lower_band) {
                // push the top band of the b side up one annulus
                let targets = moved_set
                    .iter()
                    .copied()
                    .filter(|&v| {
                        sharp(dist[&v]) == i && int_le(dist[&v] as i64, upper_band)
                    })
                    .collect();
                (MoveRule::PushUp, targets)
            } else {
                continue;
            };
            let delta_idx = if rule == MoveRule::PullDown { 1 } else { -1 };
            let rule_tag = if *is_base { MoveRule::BaseTree } else { rule };
            for v in targets {
                if !moved_once.insert(v) {
                    return Err(ScatterError::MoveConflict { vertex: v });
                }
                moves.push(ChopMove { vertex: v, from: i, to: i + delta_idx, rule: rule_tag });
                annulus.insert(v, i + delta_idx);
            }
        }
    }

    Ok(ScatteringChop {
        chop: FuzzyChop {
            delta,
            fuzz: Ratio::new(2, 3),
            root: t.root,
            annulus,
            dist,
        },
        moves,
        tau_observed: None,
    })
}

/// Chop strategy for the recursive partition: each component gets a fresh
/// BFS tree, a fresh hammock decomposition and a scattering chop at the
/// configured width.
pub struct ScatteringStrategy {
    pub width: Ratio,
}

impl ChopStrategy for ScatteringStrategy {
    fn chop(&self, g: &WeightedGraph, root: VertexId) -> Result<FuzzyChop, ChopError> {
        let (t, hd) =
            decompose(g, root).map_err(|e| ChopError::Strategy(format!("{e}")))?;
        let sc = scattering_chop(g, &t, &hd, self.width)
            .map_err(|e| ChopError::Strategy(format!("{e}")))?;
        Ok(sc.chop)
    }
}

/// A connected, low-weak-diameter partition in which short canonical paths
/// meet a bounded number of parts.
#[derive(Clone, Debug)]
pub struct ScatteringPartition {
    pub parts: Vec<Vec<VertexId>>,
    pub delta: u64,
    pub tau_budget: usize,
    pub tau_observed: usize,
    pub weak_diameters: Vec<u64>,
}

impl ScatteringPartition {
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut owner = alloc::vec![usize::MAX; n];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in p {
                owner[v] = i;
            }
        }
        owner
    }
}

/// Builds a scattering partition of a connected unit-weight series-parallel
/// graph at diameter target `delta`: three levels of scattering chops at
/// width `delta/88`. All three partition invariants are verified before the
/// partition is returned.
pub fn scattering_partition(
    g: &WeightedGraph,
    delta: u64,
) -> Result<ScatteringPartition, ScatterError> {
    assert!(delta >= 1);
    if !g.is_unit_weight() {
        return Err(ScatterError::NotUnitWeight);
    }
    if let Err(crate::graph::GraphError::Disconnected { unreachable }) = g.check_connected() {
        return Err(ScatterError::Disconnected { unreachable });
    }
    match is_series_parallel(g) {
        SpWitness::SeriesParallel => {}
        SpWitness::ClawedCycle(cc) => return Err(ScatterError::NotSeriesParallel(cc)),
    }
    let width = Ratio::new(delta as i64, WIDTH_DIVISOR);
    let strat = ScatteringStrategy { width };
    let tree = recursive_chops(g, PARTITION_LEVELS, &strat).map_err(ScatterError::Chop)?;
    let parts = tree.parts();

    let metric = Metric::new(g);
    let report = verify_scattering(g, &metric, &parts, delta, partition_tau_budget());
    if let Some(i) = report.disconnected_parts.first() {
        return Err(ScatterError::PartNotConnected { part: parts[*i].clone() });
    }
    if let Some(&(i, d)) = report.diameter_violations.first() {
        return Err(ScatterError::PartTooWide { part: parts[i].clone(), diameter: d });
    }
    if report.tau_observed > report.tau_budget {
        return Err(ScatterError::PathMeetsTooManyParts {
            path: report.argmax_path.clone().unwrap(),
            parts: report.tau_observed,
        });
    }
    Ok(ScatteringPartition {
        weak_diameters: report.weak_diameters.clone(),
        tau_observed: report.tau_observed,
        tau_budget: report.tau_budget,
        parts,
        delta,
    })
}

/// Exhaustive check of the three partition conditions. Enumerates every
/// vertex pair at distance at most `delta` and walks its canonical path.
#[derive(Clone, Debug)]
pub struct ScatteringReport {
    pub disconnected_parts: Vec<usize>,
    pub diameter_violations: Vec<(usize, u64)>,
    pub weak_diameters: Vec<u64>,
    pub tau_observed: usize,
    pub tau_budget: usize,
    pub argmax_path: Option<Path>,
}

impl ScatteringReport {
    pub fn passed(&self) -> bool {
        self.disconnected_parts.is_empty()
            && self.diameter_violations.is_empty()
            && self.tau_observed <= self.tau_budget
    }
}

pub fn verify_scattering(
    g: &WeightedGraph,
    metric: &Metric,
    parts: &[Vec<VertexId>],
    delta: u64,
    tau_budget: usize,
) -> ScatteringReport {
    let n = g.vertex_count();
    let mut owner = alloc::vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let mut disconnected_parts = Vec::new();
    let mut diameter_violations = Vec::new();
    let mut weak_diameters = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if g.induced_components(p).len() != 1 {
            disconnected_parts.push(i);
        }
        let d = crate::chops::weak_diameter(metric, p);
        weak_diameters.push(d);
        if d > delta {
            diameter_violations.push((i, d));
        }
    }
    let mut tau_observed = 0;
    let mut argmax_path = None;
    for u in 0..n {
        for v in u..n {
            let d = metric.dist(u, v).expect("connected");
            if d > delta {
                continue;
            }
            let p = metric.path(u, v).unwrap();
            let touched: BTreeSet<usize> = p.verts.iter().map(|&x| owner[x]).collect();
            if touched.len() > tau_observed {
                tau_observed = touched.len();
                argmax_path = Some(p);
            }
        }
    }
    ScatteringReport {
        disconnected_parts,
        diameter_violations,
        weak_diameters,
        tau_observed,
        tau_budget,
        argmax_path,
    }
}

/// The maximum number of cut edges over all canonical shortest paths of
/// length at most `delta`, with the maximizing path split at its first and
/// last cross edges.
#[derive(Clone, Debug)]
pub struct CutStats {
    pub max_cuts: usize,
    pub witness: Option<Path>,
    /// `(prefix, middle, suffix)` of the witness: the middle starts with the
    /// first cross edge and ends with the last one; prefix and suffix are
    /// tree-only.
    pub witness_split: Option<(Vec<VertexId>, Vec<VertexId>, Vec<VertexId>)>,
}

pub fn max_cut_count(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    metric: &Metric,
    chop: &FuzzyChop,
    delta: Ratio,
) -> CutStats {
    let n = g.vertex_count();
    let mut max_cuts = 0;
    let mut witness: Option<Path> = None;
    for u in 0..n {
        for v in u + 1..n {
            let d = metric.dist(u, v).expect("connected") as i64;
            if !int_le(d, delta) {
                continue;
            }
            let p = metric.path(u, v).unwrap();
            let cuts = count_cut_edges(&p, chop);
            if cuts > max_cuts {
                max_cuts = cuts;
                witness = Some(p);
            }
        }
    }
    let witness_split = witness.as_ref().map(|p| split_at_cross_edges(g, t, p));
    CutStats { max_cuts, witness, witness_split }
}

/// Splits a path at its first and last cross edges into
/// `(tree prefix, cross-edge middle, tree suffix)`; paths without cross
/// edges are all prefix.
pub fn split_at_cross_edges(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    p: &Path,
) -> (Vec<VertexId>, Vec<VertexId>, Vec<VertexId>) {
    let ids = p.edge_ids_in(g);
    let cross_pos: Vec<usize> = ids
        .iter()
        .enumerate()
        .filter(|(_, e)| !t.is_tree_edge(**e))
        .map(|(i, _)| i)
        .collect();
    match (cross_pos.first(), cross_pos.last()) {
        (Some(&f), Some(&l)) => (
            p.verts[..=f].to_vec(),
            p.verts[f..=l + 1].to_vec(),
            p.verts[l + 1..].to_vec(),
        ),
        _ => (p.verts.clone(), Vec::new(), Vec::new()),
    }
}

/// Cut-budget verification for one scattering chop: the four budgets with
/// empirical maxima and witnesses.
#[derive(Clone, Debug)]
pub struct CutBudgetReport {
    pub max_full_path_cuts: usize,
    pub full_path_witness: Option<Path>,
    pub max_single_hammock_cross: usize,
    pub single_hammock_witness: Option<Path>,
    pub max_monotone_cuts: usize,
    pub monotone_witness: Option<Path>,
    pub max_cross_path_cuts: usize,
    pub cross_path_witness: Option<Path>,
}

impl CutBudgetReport {
    pub fn passed(&self) -> bool {
        self.max_full_path_cuts <= CHOP_CUT_LIMIT
            && self.max_single_hammock_cross <= SINGLE_HAMMOCK_CROSS_LIMIT
            && self.max_monotone_cuts <= MONOTONE_CUT_LIMIT
            && self.max_cross_path_cuts <= CROSS_PATH_CUT_LIMIT
    }
}

/// Exhaustively checks the cut budgets of a scattering chop at width
/// `delta` against every canonical shortest path of length at most `delta`,
/// every monotone tree path of length at most `delta/3`, every canonical
/// cross-edge path of length below `delta/3`, and every canonical path
/// confined to one hammock.
pub fn verify_cut_budgets(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    metric: &Metric,
    hd: &HammockDecomposition,
    chop: &ScatteringChop,
    delta: Ratio,
) -> CutBudgetReport {
    let n = g.vertex_count();
    let third = delta.div_int(3);
    let fuzzy = &chop.chop;

    let mut max_full = 0usize;
    let mut full_wit = None;
    let mut max_cross_path = 0usize;
    let mut cross_wit = None;
    let cross_edges: BTreeSet<EdgeId> = t.cross_edges().iter().copied().collect();
    for u in 0..n {
        for v in u + 1..n {
            let d = metric.dist(u, v).expect("connected") as i64;
            if !int_le(d, delta) {
                continue;
            }
            let p = metric.path(u, v).unwrap();
            let cuts = count_cut_edges(&p, fuzzy);
            if cuts > max_full {
                max_full = cuts;
                full_wit = Some(p.clone());
            }
            if int_lt(d, third) {
                let ids = p.edge_ids_in(g);
                if !ids.is_empty()
                    && cross_edges.contains(&ids[0])
                    && cross_edges.contains(ids.last().unwrap())
                    && cuts > max_cross_path
                {
                    max_cross_path = cuts;
                    cross_wit = Some(p);
                }
            }
        }
    }

    // Canonical paths confined to one hammock: count that hammock's cross
    // edges on the path.
    let mut max_single = 0usize;
    let mut single_wit = None;
    for h in &hd.forest.hammocks {
        let verts = h.vertices();
        let ham_cross: BTreeSet<EdgeId> = h
            .edges
            .iter()
            .copied()
            .filter(|e| cross_edges.contains(e))
            .collect();
        let vlist: Vec<VertexId> = verts.iter().copied().collect();
        for (i, &u) in vlist.iter().enumerate() {
            for &v in &vlist[i + 1..] {
                let p = metric.path(u, v).unwrap();
                if !p.verts.iter().all(|x| verts.contains(x)) {
                    continue;
                }
                let used = p
                    .edge_ids_in(g)
                    .iter()
                    .filter(|e| ham_cross.contains(e))
                    .count();
                if used > max_single {
                    max_single = used;
                    single_wit = Some(p);
                }
            }
        }
    }

    // Monotone tree paths of length at most delta/3, walked upward from
    // every start vertex.
    let mut max_mono = 0usize;
    let mut mono_wit = None;
    for start in 0..n {
        let mut verts = alloc::vec![start];
        let mut cur = start;
        while let Some(p) = t.parent(cur) {
            verts.push(p);
            cur = p;
            let len = (verts.len() - 1) as i64;
            if !int_le(len, third) {
                break;
            }
            let path = Path::new(verts.clone());
            let cuts = count_cut_edges(&path, fuzzy);
            if cuts > max_mono {
                max_mono = cuts;
                mono_wit = Some(path);
            }
        }
    }

    CutBudgetReport {
        max_full_path_cuts: max_full,
        full_path_witness: full_wit,
        max_single_hammock_cross: max_single,
        single_hammock_witness: single_wit,
        max_monotone_cuts: max_mono,
        monotone_witness: mono_wit,
        max_cross_path_cuts: max_cross_path,
        cross_path_witness: cross_wit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chops::verify_fuzzy;
    use alloc::vec;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    fn path10() -> WeightedGraph {
        unit_graph(10, &(0..9).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn base_tree_rule_on_a_unit_path() {
        let g = path10();
        let (t, hd) = decompose(&g, 0).unwrap();
        let sc = scattering_chop(&g, &t, &hd, Ratio::int(3)).unwrap();
        let annuli = sc.chop.annuli();
        assert_eq!(annuli[&0], vec![0, 1]);
        assert_eq!(annuli[&1], vec![2, 3, 4]);
        assert_eq!(annuli[&2], vec![5, 6, 7]);
        assert_eq!(annuli[&3], vec![8, 9]);
        assert!(sc.moves.iter().all(|m| m.rule == MoveRule::BaseTree));
        assert!(sc.moves.iter().all(|m| (m.from - m.to).abs() == 1));
        assert!(verify_fuzzy(&sc.chop).passed(), "fuzz 2/3 band must hold");
    }

    #[test]
    fn hammock_clear_of_boundary_bands_never_moves() {
        // A 4-cycle hanging at depth 4..5 off a stalk, delta = 10: the
        // hammock sits strictly between the band d <= 10/3 and the band
        // d >= 20/3, so neither hammock rule fires. Only the base tree
        // moves its shallow vertices.
        let g = unit_graph(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 7), (6, 7)],
        );
        let (t, hd) = decompose(&g, 0).unwrap();
        assert_eq!(hd.forest.hammocks.len(), 1);
        let ham_verts = hd.forest.hammocks[0].vertices();
        assert!(ham_verts.iter().all(|&v| t.depth(v) >= 4 && t.depth(v) <= 5));
        let sc = scattering_chop(&g, &t, &hd, Ratio::int(10)).unwrap();
        assert!(sc.moves.iter().all(|m| m.rule == MoveRule::BaseTree));
        assert!(sc.moves.iter().all(|m| !ham_verts.contains(&m.vertex)));
        assert!(verify_fuzzy(&sc.chop).passed());
    }

    #[test]
    fn moves_shift_exactly_one_annulus_and_log_replays() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..15 {
            let g = generate_series_parallel(seed, 40, &cfg);
            let (t, hd) = decompose(&g, 0).unwrap();
            for delta in [3u64, 4, 8] {
                let sc = scattering_chop(&g, &t, &hd, Ratio::int(delta as i64)).unwrap();
                assert!(verify_fuzzy(&sc.chop).passed(), "seed {seed} delta {delta}");
                // Replay the log on top of the sharp chop.
                let mut replay: BTreeMap<VertexId, i64> = (0..g.vertex_count())
                    .map(|v| {
                        (v, Ratio::new(t.depth(v) as i64, delta as i64).floor() + 1)
                    })
                    .collect();
                for m in &sc.moves {
                    assert_eq!((m.from - m.to).abs(), 1, "seed {seed}");
                    assert_eq!(replay[&m.vertex], m.from, "seed {seed}");
                    replay.insert(m.vertex, m.to);
                }
                assert_eq!(replay, sc.chop.annulus, "seed {seed} delta {delta}");
            }
        }
    }

    #[test]
    fn cut_budgets_hold_on_generated_instances() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..12 {
            let g = generate_series_parallel(seed, 36, &cfg);
            let metric = Metric::new(&g);
            let (t, hd) = decompose(&g, 0).unwrap();
            for delta in [4i64, 8, 16] {
                let sc = scattering_chop(&g, &t, &hd, Ratio::int(delta)).unwrap();
                let report = verify_cut_budgets(&g, &t, &metric, &hd, &sc, Ratio::int(delta));
                assert!(
                    report.passed(),
                    "seed {seed} delta {delta}: full={} single={} mono={} cross={}",
                    report.max_full_path_cuts,
                    report.max_single_hammock_cross,
                    report.max_monotone_cuts,
                    report.max_cross_path_cuts
                );
            }
        }
    }

    #[test]
    fn tree_partition_parts_are_thin() {
        let g = path10();
        let p = scattering_partition(&g, 4).unwrap();
        let metric = Metric::new(&g);
        for part in &p.parts {
            assert!(crate::chops::weak_diameter(&metric, part) <= 4);
            assert_eq!(g.induced_components(part).len(), 1);
        }
        assert!(p.tau_observed <= 5, "tau {}", p.tau_observed);
    }

    #[test]
    fn partition_invariants_on_generated_instances() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..8 {
            let g = generate_series_parallel(seed, 30, &cfg);
            for delta in [4u64, 8] {
                let p = scattering_partition(&g, delta)
                    .unwrap_or_else(|e| panic!("seed {seed} delta {delta}: {e}"));
                assert!(p.tau_observed <= p.tau_budget);
                assert!(p.weak_diameters.iter().all(|&d| d <= delta));
            }
        }
    }

    #[test]
    fn degenerate_partitions_fail_verification() {
        let g = path10();
        let metric = Metric::new(&g);
        // One part covering everything: diameter violation.
        let whole = vec![(0..10).collect::<Vec<_>>()];
        let r = verify_scattering(&g, &metric, &whole, 4, partition_tau_budget());
        assert!(!r.passed());
        assert!(!r.diameter_violations.is_empty());
        // Singletons: connected and thin, but long paths meet many parts.
        let singles: Vec<Vec<usize>> = (0..10).map(|v| vec![v]).collect();
        let r2 = verify_scattering(&g, &metric, &singles, 9, 3);
        assert!(r2.disconnected_parts.is_empty());
        assert!(r2.diameter_violations.is_empty());
        assert_eq!(r2.tau_observed, 10);
        assert!(!r2.passed());
    }
}
