//! Metric nested ear decompositions of 2-vertex-connected series-parallel
//! graphs.
//!
//! Every ear is a single cross edge wrapped in two monotone tree paths
//! toward the root. Ears are emitted hammock by hammock, walking the
//! hammock forest top-down; within a hammock, cross edges are processed
//! highest-attachment-first. The first ear is a closed cycle through the
//! BFS root; every later ear is open, has both endpoints on one earlier
//! ear, and attachment intervals on a common ear are laminar. At most one
//! edge of each ear is a hammock parent edge, and dropping the ears that
//! carry parent edges splits the remainder into groups whose cross edges
//! share an lca.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::hammock::{decompose, HammockDecomposition, HammockError};
use crate::metric::Path;
use crate::recognize::ClawedCycle;
use crate::tree::RootedBfsTree;

/// One ear: a path whose middle edge is a cross edge and whose wings are
/// monotone tree paths. The first ear of a decomposition is closed
/// (`verts.first() == verts.last()`); all others are open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub verts: Vec<VertexId>,
    pub cross_edge: EdgeId,
    pub hammock: usize,
}

impl Ear {
    pub fn is_closed(&self) -> bool {
        self.verts.first() == self.verts.last() && self.verts.len() > 1
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (*self.verts.first().unwrap(), *self.verts.last().unwrap())
    }

    pub fn edge_ids_in(&self, g: &WeightedGraph) -> Vec<EdgeId> {
        self.verts
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]).expect("ear step is an edge"))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

#[derive(Clone, Debug)]
pub enum EarError {
    NotBiconnected,
    Pipeline(HammockError),
    NoCandidateEdge { class: usize },
    UncoveredEdges { count: usize },
    NoOpenEar { class: usize },
}

impl EarError {
    pub fn clawed_cycle(&self) -> Option<&ClawedCycle> {
        match self {
            EarError::Pipeline(HammockError::NotSeriesParallel(cc)) => Some(cc),
            _ => None,
        }
    }
}

impl fmt::Display for EarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EarError::NotBiconnected => write!(f, "input is not 2-vertex-connected"),
            EarError::Pipeline(e) => write!(f, "{e}"),
            EarError::NoCandidateEdge { class } => {
                write!(f, "no maximal cross edge available in hammock {class}")
            }
            EarError::UncoveredEdges { count } => {
                write!(f, "{count} edges not covered by any ear")
            }
            EarError::NoOpenEar { class } => {
                write!(f, "hammock {class} admits no open first ear in any order")
            }
        }
    }
}

/// Builds the nested ear decomposition of a 2-vertex-connected unit-weight
/// series-parallel graph, rooted at vertex 0.
pub fn nested_ear_decomposition(g: &WeightedGraph) -> Result<EarDecomposition, EarError> {
    if !g.is_biconnected() || g.vertex_count() < 3 {
        return Err(EarError::NotBiconnected);
    }
    let (t, hd) = decompose(g, 0).map_err(EarError::Pipeline)?;
    nested_ears_with(g, &t, &hd)
}

/// Ear construction from a prebuilt decomposition.
///
/// Hammocks are processed shallowest class lca first (ties by position in a
/// breadth-first walk of the forest, so parents still precede children with
/// the same lca). Hammocks whose first ear would come out closed — both
/// wings stopping at the same covered vertex because the attachment chain
/// toward the lca is still uncovered — are deferred to a later pass; a
/// sibling with a higher escape route covers the chain first. A pass that
/// defers every pending hammock reports a structural failure.
pub fn nested_ears_with(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    hd: &HammockDecomposition,
) -> Result<EarDecomposition, EarError> {
    let forest = &hd.forest;
    let mut bfs_order: Vec<usize> = Vec::new();
    let mut queue: alloc::collections::VecDeque<usize> = forest.roots.iter().copied().collect();
    while let Some(i) = queue.pop_front() {
        bfs_order.push(i);
        let mut kids: Vec<usize> = (0..forest.hammocks.len())
            .filter(|&j| forest.parent_of[j] == Some(i))
            .collect();
        kids.sort_unstable();
        queue.extend(kids);
    }
    let mut pending = bfs_order.clone();
    pending.sort_by_key(|&i| {
        let h = &forest.hammocks[i];
        let lca = t.lca(h.root_a, h.root_b);
        let pos = bfs_order.iter().position(|&x| x == i).unwrap();
        (t.depth(lca), pos)
    });

    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    let mut ears: Vec<Ear> = Vec::new();

    // Walk up parent links from `v` until a covered vertex (or the root).
    let walk_up = |v: VertexId, covered: &BTreeSet<VertexId>| -> Vec<VertexId> {
        let mut out = vec![v];
        let mut cur = v;
        while !covered.contains(&cur) {
            match t.parent(cur) {
                Some(p) => {
                    out.push(p);
                    cur = p;
                }
                None => break,
            }
        }
        out
    };

    // Maximal remaining cross edge of a hammock: no other remaining edge
    // attaches strictly higher on either side.
    let pick_candidate = |h: &crate::hammock::Hammock,
                          remaining: &BTreeSet<EdgeId>|
     -> Option<EdgeId> {
        let side_of = |v: VertexId| u8::from(!h.tree_a.contains(&v));
        remaining.iter().copied().find(|&e| {
            let (x, y) = g.edge(e).endpoints();
            let (u, v) = if side_of(x) == 0 { (x, y) } else { (y, x) };
            remaining.iter().all(|&f| {
                if f == e {
                    return true;
                }
                let (p, q) = g.edge(f).endpoints();
                let (u2, v2) = if side_of(p) == 0 { (p, q) } else { (q, p) };
                !t.is_strict_ancestor(u2, u) && !t.is_strict_ancestor(v2, v)
            })
        })
    };

    while !pending.is_empty() {
        let mut progressed = false;
        let mut next_pending: Vec<usize> = Vec::new();
        for &hi in &pending {
            let h = &forest.hammocks[hi];
            let cross: Vec<EdgeId> = h
                .edges
                .iter()
                .copied()
                .filter(|&e| !t.is_tree_edge(e))
                .collect();
            let mut remaining: BTreeSet<EdgeId> = cross.iter().copied().collect();
            // Probe the first ear: defer the hammock if it would be closed.
            let probe = pick_candidate(h, &remaining)
                .ok_or(EarError::NoCandidateEdge { class: h.class_id })?;
            {
                let (x, y) = g.edge(probe).endpoints();
                let (u, v) = if h.tree_a.contains(&x) { (x, y) } else { (y, x) };
                let wu = walk_up(u, &covered);
                let wv = walk_up(v, &covered);
                let closed = wu.last() == wv.last();
                if closed && !ears.is_empty() {
                    next_pending.push(hi);
                    continue;
                }
            }
            while !remaining.is_empty() {
                let candidate = pick_candidate(h, &remaining)
                    .ok_or(EarError::NoCandidateEdge { class: h.class_id })?;
                remaining.remove(&candidate);
                let (x, y) = g.edge(candidate).endpoints();
                let (u, v) = if h.tree_a.contains(&x) { (x, y) } else { (y, x) };
                let wing_u = walk_up(u, &covered);
                let wing_v = walk_up(v, &covered);
                let mut verts: Vec<VertexId> = wing_u.iter().rev().copied().collect();
                verts.extend(wing_v.iter().copied());
                covered.extend(verts.iter().copied());
                ears.push(Ear { verts, cross_edge: candidate, hammock: hi });
            }
            progressed = true;
        }
        if !progressed {
            return Err(EarError::NoOpenEar {
                class: forest.hammocks[next_pending[0]].class_id,
            });
        }
        pending = next_pending;
    }

    let used: usize = ears.iter().map(|e| e.verts.len() - 1).sum();
    if used != g.edge_count() {
        return Err(EarError::UncoveredEdges { count: g.edge_count().abs_diff(used) });
    }
    Ok(EarDecomposition { ears })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EarViolation {
    EdgeUnassigned(EdgeId),
    EdgeMultiplyAssigned(EdgeId),
    FirstEarNotClosed,
    NotOpen { ear: usize },
    InternalVertexReused { ear: usize, vertex: VertexId },
    EndpointNotEarlier { ear: usize },
    TreePropertyViolated { ear: usize },
    NestingViolated { host: usize, ear_a: usize, ear_b: usize },
    NotCrossWithMonotoneWings { ear: usize },
    ParentEdgeBudget { ear: usize, count: usize },
    MixedLcaComponent { component_member: usize },
}

impl fmt::Display for EarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EarViolation::EdgeUnassigned(e) => write!(f, "edge {e} in no ear"),
            EarViolation::EdgeMultiplyAssigned(e) => write!(f, "edge {e} in several ears"),
            EarViolation::FirstEarNotClosed => write!(f, "first ear is not a cycle"),
            EarViolation::NotOpen { ear } => write!(f, "ear {ear} endpoints coincide"),
            EarViolation::InternalVertexReused { ear, vertex } => {
                write!(f, "ear {ear} internal vertex {vertex} already used")
            }
            EarViolation::EndpointNotEarlier { ear } => {
                write!(f, "ear {ear} endpoint not on an earlier ear")
            }
            EarViolation::TreePropertyViolated { ear } => {
                write!(f, "ear {ear} endpoints lie on no single earlier ear")
            }
            EarViolation::NestingViolated { host, ear_a, ear_b } => {
                write!(f, "ears {ear_a},{ear_b} attach to ear {host} with crossing intervals")
            }
            EarViolation::NotCrossWithMonotoneWings { ear } => {
                write!(f, "ear {ear} is not a cross edge between monotone tree wings")
            }
            EarViolation::ParentEdgeBudget { ear, count } => {
                write!(f, "ear {ear} carries {count} parent edges")
            }
            EarViolation::MixedLcaComponent { component_member } => write!(
                f,
                "ears connected to ear {component_member} after parent-edge removal mix lcas"
            ),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EarReport {
    pub violations: Vec<EarViolation>,
}

impl EarReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the nested-ear invariants plus the metric extras: each ear is one
/// cross edge with monotone tree wings, carries at most one parent edge,
/// and after deleting parent-edge ears the surviving ears group into
/// connected components whose cross edges share an lca.
pub fn verify_ears(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    hd: &HammockDecomposition,
    ed: &EarDecomposition,
) -> EarReport {
    let mut violations = Vec::new();
    let ears = &ed.ears;

    // edge partition
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, ear) in ears.iter().enumerate() {
        for e in ear.edge_ids_in(g) {
            if owner.insert(e, i).is_some() {
                violations.push(EarViolation::EdgeMultiplyAssigned(e));
            }
        }
    }
    for e in 0..g.edge_count() {
        if !owner.contains_key(&e) {
            violations.push(EarViolation::EdgeUnassigned(e));
        }
    }

    // openness, internal disjointness, endpoints on earlier ears
    let mut seen_verts: BTreeSet<VertexId> = BTreeSet::new();
    let mut on_ear: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, ear) in ears.iter().enumerate() {
        if i == 0 {
            if !ear.is_closed() {
                violations.push(EarViolation::FirstEarNotClosed);
            }
            for &v in &ear.verts[..ear.verts.len() - 1] {
                seen_verts.insert(v);
                on_ear.entry(v).or_default().push(i);
            }
            continue;
        }
        let (s, e) = ear.endpoints();
        if s == e {
            violations.push(EarViolation::NotOpen { ear: i });
        }
        for v in [s, e] {
            if !seen_verts.contains(&v) {
                violations.push(EarViolation::EndpointNotEarlier { ear: i });
            }
        }
        let hosts: Vec<usize> = (0..i)
            .filter(|&j| {
                ears[j].verts.contains(&s) && ears[j].verts.contains(&e)
            })
            .collect();
        if hosts.is_empty() {
            violations.push(EarViolation::TreePropertyViolated { ear: i });
        }
        for &v in ear.internal() {
            if !seen_verts.insert(v) {
                violations.push(EarViolation::InternalVertexReused { ear: i, vertex: v });
            }
            on_ear.entry(v).or_default().push(i);
        }
        for v in [s, e] {
            seen_verts.insert(v);
            on_ear.entry(v).or_default().push(i);
        }
    }

    // nesting: on every ear, attachment intervals of later ears are laminar
    for (j, host) in ears.iter().enumerate() {
        let upper = if host.is_closed() {
            host.verts.len() - 1
        } else {
            host.verts.len()
        };
        let pos: BTreeMap<VertexId, usize> = host.verts[..upper]
            .iter()
            .copied()
            .enumerate()
            .map(|(p, v)| (v, p))
            .collect();
        let mut intervals: Vec<(usize, usize, usize)> = Vec::new();
        for (i, ear) in ears.iter().enumerate().skip(j + 1) {
            let (s, e) = ear.endpoints();
            if let (Some(&ps), Some(&pe)) = (pos.get(&s), pos.get(&e)) {
                intervals.push((ps.min(pe), ps.max(pe), i));
            }
        }
        for a in 0..intervals.len() {
            for b in a + 1..intervals.len() {
                let (lo1, hi1, i1) = intervals[a];
                let (lo2, hi2, i2) = intervals[b];
                let nested = (lo1 <= lo2 && hi2 <= hi1) || (lo2 <= lo1 && hi1 <= hi2);
                let disjoint = hi1 <= lo2 || hi2 <= lo1;
                if !nested && !disjoint {
                    violations.push(EarViolation::NestingViolated { host: j, ear_a: i1, ear_b: i2 });
                }
            }
        }
    }

    // shape: one cross edge, monotone tree wings
    for (i, ear) in ears.iter().enumerate() {
        let ids = ear.edge_ids_in(g);
        let cross_pos: Vec<usize> = ids
            .iter()
            .enumerate()
            .filter(|(_, e)| !t.is_tree_edge(**e))
            .map(|(p, _)| p)
            .collect();
        let ok = cross_pos.len() == 1 && ids[cross_pos[0]] == ear.cross_edge && {
            let p = cross_pos[0];
            let wing1 = Path::new(ear.verts[..=p].to_vec());
            let wing2 = Path::new(ear.verts[p + 1..].to_vec());
            (wing1.verts.len() < 2 || t.is_monotone(&wing1))
                && (wing2.verts.len() < 2 || t.is_monotone(&wing2))
        };
        if !ok {
            violations.push(EarViolation::NotCrossWithMonotoneWings { ear: i });
        }
    }

    // at most one parent edge per ear
    let parent_edges: BTreeSet<EdgeId> = hd.parent_edges.iter().copied().collect();
    for (i, ear) in ears.iter().enumerate() {
        let count = ear
            .edge_ids_in(g)
            .iter()
            .filter(|e| parent_edges.contains(e))
            .count();
        if count > 1 {
            violations.push(EarViolation::ParentEdgeBudget { ear: i, count });
        }
    }

    // Deleting the parent-edge ears as subgraphs (vertices and edges) must
    // split the remainder into groups whose cross edges share an lca. The
    // deleted ears form the skeleton connecting hammocks to their lcas;
    // what survives are per-hammock clusters that may only touch the
    // skeleton, not each other.
    {
        let mut removed_verts: BTreeSet<VertexId> = BTreeSet::new();
        let mut keep: Vec<usize> = Vec::new();
        for (i, ear) in ears.iter().enumerate() {
            if ear
                .edge_ids_in(g)
                .iter()
                .any(|e| parent_edges.contains(e))
            {
                removed_verts.extend(ear.verts.iter().copied());
            } else {
                keep.push(i);
            }
        }
        // Union-find over kept ears joined by shared surviving vertices;
        // an ear whose cross edge lost an endpoint is fully disconnected
        // from the remaining graph and drops out of the check.
        let mut rep: BTreeMap<usize, usize> = keep.iter().map(|&i| (i, i)).collect();
        fn find(rep: &mut BTreeMap<usize, usize>, i: usize) -> usize {
            let p = rep[&i];
            if p == i {
                i
            } else {
                let r = find(rep, p);
                rep.insert(i, r);
                r
            }
        }
        let mut by_vertex: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &i in &keep {
            for &v in &ears[i].verts {
                if removed_verts.contains(&v) {
                    continue;
                }
                if let Some(&j) = by_vertex.get(&v) {
                    let (ri, rj) = (find(&mut rep, i), find(&mut rep, j));
                    if ri != rj {
                        rep.insert(ri, rj);
                    }
                } else {
                    by_vertex.insert(v, i);
                }
            }
        }
        let mut lca_of_group: BTreeMap<usize, VertexId> = BTreeMap::new();
        for &i in &keep {
            let (cu, cv) = g.edge(ears[i].cross_edge).endpoints();
            if removed_verts.contains(&cu) || removed_verts.contains(&cv) {
                continue;
            }
            let grp = find(&mut rep, i);
            let l = t.lca_of_edge(g, ears[i].cross_edge);
            if let Some(&prev) = lca_of_group.get(&grp) {
                if prev != l {
                    violations.push(EarViolation::MixedLcaComponent { component_member: i });
                }
            } else {
                lca_of_group.insert(grp, l);
            }
        }
    }

    EarReport { violations }
}

impl Ear {
    fn internal(&self) -> &[VertexId] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    fn checked(g: &WeightedGraph) -> EarDecomposition {
        let (t, hd) = decompose(g, 0).expect("series-parallel");
        let ed = nested_ears_with(g, &t, &hd).expect("ears");
        let report = verify_ears(g, &t, &hd, &ed);
        assert!(report.passed(), "violations: {:?}", report.violations);
        ed
    }

    #[test]
    fn single_cycle_is_one_closed_ear() {
        let g = unit_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let ed = checked(&g);
        assert_eq!(ed.ears.len(), 1);
        assert!(ed.ears[0].is_closed());
        assert_eq!(ed.ears[0].verts.len(), 7);
    }

    #[test]
    fn theta_graph_has_two_nested_ears() {
        // Triangle 0-1, 0-3, 1-3 with the 1-3 side doubled through 2.
        let g = unit_graph(4, &[(0, 1), (0, 3), (1, 2), (2, 3), (1, 3)]);
        let ed = checked(&g);
        assert_eq!(ed.ears.len(), 2);
        assert!(ed.ears[0].is_closed());
        assert!(!ed.ears[1].is_closed());
    }

    #[test]
    fn k4_is_rejected() {
        let g = unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        match nested_ear_decomposition(&g) {
            Err(e) => assert!(e.clawed_cycle().is_some()),
            Ok(_) => panic!("K4 accepted"),
        }
    }

    #[test]
    fn path_is_rejected_as_not_biconnected() {
        let g = unit_graph(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            nested_ear_decomposition(&g),
            Err(EarError::NotBiconnected)
        ));
    }

    #[test]
    fn biconnected_generated_instances_verify() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        // Biconnected instances come from a single block with parallel bias.
        let cfg = GeneratorConfig {
            series_bias: 0.35,
            max_parallel: 4,
            glue: false,
            max_blocks: 1,
            max_weight: 1,
        };
        let mut verified = 0;
        for seed in 0..80 {
            let n = 4 + (seed as usize * 5) % 40;
            let g = generate_series_parallel(seed, n, &cfg);
            if !g.is_biconnected() {
                continue;
            }
            let (t, hd) = decompose(&g, 0).expect("sp");
            let ed = nested_ears_with(&g, &t, &hd)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let report = verify_ears(&g, &t, &hd, &ed);
            assert!(report.passed(), "seed {seed}: {:?}", report.violations);
            assert_eq!(ed.ears.len(), t.cross_edges().len());
            verified += 1;
        }
        assert!(verified >= 20, "only {verified} biconnected instances");
    }
}
