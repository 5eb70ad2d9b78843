//! Series-parallel recognition with checkable counterexamples.
//!
//! A graph is series-parallel (every biconnected component is two-terminal
//! series-parallel) iff it has no K4 minor. Recognition runs the classic
//! reduction: repeatedly drop degree-<=1 vertices, merge parallel edges and
//! smooth degree-2 vertices. The reduction empties exactly the K4-minor-free
//! graphs; a stuck graph is simple with minimum degree 3 and therefore
//! contains a K4 subdivision.
//!
//! On failure the recognizer returns a clawed cycle: a cycle plus three
//! paths from a common root to three distinct cycle vertices. The witness is
//! recovered by deleting stuck-graph edges while the graph stays
//! unreducible; the surviving edge set is exactly a K4 subdivision, whose
//! subdivided edges un-contract to paths of the input graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{VertexId, WeightedGraph};
use crate::metric::Path;

/// A cycle plus three internally disjoint paths from `root` to three
/// distinct cycle vertices. Contracting the cycle arcs between the three
/// attachment points yields a K4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClawedCycle {
    pub root: VertexId,
    /// Cycle vertices in order; the closing edge `last -> first` is implicit.
    pub cycle: Vec<VertexId>,
    pub paths: [Path; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpWitness {
    SeriesParallel,
    ClawedCycle(ClawedCycle),
}

impl SpWitness {
    pub fn is_series_parallel(&self) -> bool {
        matches!(self, SpWitness::SeriesParallel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClawedCycleDefect {
    CycleTooShort,
    CycleNotSimple,
    CycleStepMissing(VertexId, VertexId),
    RootOnCycle,
    PathInvalid(usize),
    PathNotFromRoot(usize),
    PathEndNotOnCycle(usize),
    PathEndsCoincide,
    PathTouchesCycle(usize, VertexId),
    PathsShareVertex(VertexId),
}

impl fmt::Display for ClawedCycleDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClawedCycleDefect::CycleTooShort => write!(f, "cycle has fewer than 3 vertices"),
            ClawedCycleDefect::CycleNotSimple => write!(f, "cycle repeats a vertex"),
            ClawedCycleDefect::CycleStepMissing(a, b) => {
                write!(f, "cycle step {a}-{b} is not an edge")
            }
            ClawedCycleDefect::RootOnCycle => write!(f, "claw root lies on the cycle"),
            ClawedCycleDefect::PathInvalid(i) => write!(f, "claw path {i} is not a path"),
            ClawedCycleDefect::PathNotFromRoot(i) => {
                write!(f, "claw path {i} does not start at the root")
            }
            ClawedCycleDefect::PathEndNotOnCycle(i) => {
                write!(f, "claw path {i} does not end on the cycle")
            }
            ClawedCycleDefect::PathEndsCoincide => {
                write!(f, "claw paths end at fewer than 3 distinct cycle vertices")
            }
            ClawedCycleDefect::PathTouchesCycle(i, v) => {
                write!(f, "claw path {i} touches the cycle at internal vertex {v}")
            }
            ClawedCycleDefect::PathsShareVertex(v) => {
                write!(f, "claw paths share non-root vertex {v}")
            }
        }
    }
}

/// Validates a clawed-cycle witness against `g`, independently of how it
/// was produced.
pub fn check_clawed_cycle(g: &WeightedGraph, cc: &ClawedCycle) -> Result<(), ClawedCycleDefect> {
    use alloc::collections::BTreeSet;
    if cc.cycle.len() < 3 {
        return Err(ClawedCycleDefect::CycleTooShort);
    }
    let cycset: BTreeSet<VertexId> = cc.cycle.iter().copied().collect();
    if cycset.len() != cc.cycle.len() {
        return Err(ClawedCycleDefect::CycleNotSimple);
    }
    for i in 0..cc.cycle.len() {
        let a = cc.cycle[i];
        let b = cc.cycle[(i + 1) % cc.cycle.len()];
        if !g.has_edge(a, b) {
            return Err(ClawedCycleDefect::CycleStepMissing(a, b));
        }
    }
    if cycset.contains(&cc.root) {
        return Err(ClawedCycleDefect::RootOnCycle);
    }
    let mut ends = BTreeSet::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for (i, p) in cc.paths.iter().enumerate() {
        if !p.is_valid_in(g) || p.verts.len() < 2 {
            return Err(ClawedCycleDefect::PathInvalid(i));
        }
        if p.first() != cc.root {
            return Err(ClawedCycleDefect::PathNotFromRoot(i));
        }
        if !cycset.contains(&p.last()) {
            return Err(ClawedCycleDefect::PathEndNotOnCycle(i));
        }
        ends.insert(p.last());
        for &v in &p.verts[..p.verts.len() - 1] {
            if v != cc.root && cycset.contains(&v) {
                return Err(ClawedCycleDefect::PathTouchesCycle(i, v));
            }
        }
        for &v in &p.verts[1..] {
            if !used.insert(v) {
                return Err(ClawedCycleDefect::PathsShareVertex(v));
            }
        }
    }
    if ends.len() != 3 {
        return Err(ClawedCycleDefect::PathEndsCoincide);
    }
    Ok(())
}

struct RedEdge {
    a: VertexId,
    b: VertexId,
    alive: bool,
    /// Vertex sequence of the input graph this edge stands for, from `a` to `b`.
    path: Vec<VertexId>,
}

impl RedEdge {
    fn other(&self, x: VertexId) -> VertexId {
        if x == self.a {
            self.b
        } else {
            self.a
        }
    }

    fn path_from(&self, x: VertexId) -> Vec<VertexId> {
        if x == self.a {
            self.path.clone()
        } else {
            let mut p = self.path.clone();
            p.reverse();
            p
        }
    }
}

struct Reducer {
    edges: Vec<RedEdge>,
    inc: Vec<Vec<usize>>,
}

impl Reducer {
    fn new(n: usize, raw: &[(VertexId, VertexId)]) -> Self {
        let mut edges = Vec::with_capacity(raw.len());
        let mut inc = vec![Vec::new(); n];
        for (id, &(a, b)) in raw.iter().enumerate() {
            edges.push(RedEdge {
                a,
                b,
                alive: true,
                path: vec![a, b],
            });
            inc[a].push(id);
            inc[b].push(id);
        }
        Reducer { edges, inc }
    }

    fn live_incidence(&mut self, v: VertexId) -> Vec<usize> {
        self.inc[v].retain(|&e| {
            let ed = &self.edges[e];
            ed.alive && (ed.a == v || ed.b == v)
        });
        self.inc[v].clone()
    }

    /// Runs the reduction to exhaustion; returns true iff no edge survives.
    fn run(&mut self) -> bool {
        let n = self.inc.len();
        let mut queued = vec![true; n];
        let mut queue: VecDeque<VertexId> = (0..n).collect();
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            let live = self.live_incidence(v);
            match live.len() {
                0 => {}
                1 => {
                    // Pendant vertex: its edge cannot be on any cycle.
                    let e = live[0];
                    let o = self.edges[e].other(v);
                    self.edges[e].alive = false;
                    if !queued[o] {
                        queued[o] = true;
                        queue.push_back(o);
                    }
                }
                _ => {
                    // Merge one parallel pair if present, preferring to keep
                    // the lower-indexed edge.
                    let mut by_other: Vec<(VertexId, usize)> =
                        live.iter().map(|&e| (self.edges[e].other(v), e)).collect();
                    by_other.sort_unstable();
                    let mut merged = false;
                    for w in by_other.windows(2) {
                        if w[0].0 == w[1].0 {
                            let kill = w[0].1.max(w[1].1);
                            self.edges[kill].alive = false;
                            merged = true;
                            let o = w[0].0;
                            for x in [v, o] {
                                if !queued[x] {
                                    queued[x] = true;
                                    queue.push_back(x);
                                }
                            }
                            break;
                        }
                    }
                    if merged {
                        continue;
                    }
                    if live.len() == 2 {
                        let (e1, e2) = (live[0], live[1]);
                        let a = self.edges[e1].other(v);
                        let b = self.edges[e2].other(v);
                        debug_assert_ne!(a, b, "parallel pair handled above");
                        let mut path = self.edges[e1].path_from(a);
                        let tail = self.edges[e2].path_from(v);
                        path.extend_from_slice(&tail[1..]);
                        self.edges[e1].alive = false;
                        self.edges[e2].alive = false;
                        let id = self.edges.len();
                        self.edges.push(RedEdge {
                            a,
                            b,
                            alive: true,
                            path,
                        });
                        self.inc[a].push(id);
                        self.inc[b].push(id);
                        for x in [a, b] {
                            if !queued[x] {
                                queued[x] = true;
                                queue.push_back(x);
                            }
                        }
                    }
                }
            }
        }
        self.edges.iter().all(|e| !e.alive)
    }

    fn live_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].alive)
            .collect()
    }
}

/// Reduction-only test used while minimizing a stuck graph.
fn reduces_to_empty(n: usize, edges: &[(VertexId, VertexId)]) -> bool {
    Reducer::new(n, edges).run()
}

/// Decides series-parallelness. Non-series-parallel graphs come back with a
/// clawed cycle that [`check_clawed_cycle`] accepts.
pub fn is_series_parallel(g: &WeightedGraph) -> SpWitness {
    let raw: Vec<(VertexId, VertexId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut red = Reducer::new(g.vertex_count(), &raw);
    if red.run() {
        return SpWitness::SeriesParallel;
    }

    // Keep deleting stuck-graph edges while the remainder stays unreducible.
    // Afterwards every edge is critical, so the survivors form exactly one
    // K4 subdivision.
    let mut live = red.live_edges();
    let mut i = 0;
    while i < live.len() {
        let candidate: Vec<(VertexId, VertexId)> = live
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| (red.edges[e].a, red.edges[e].b))
            .collect();
        if !reduces_to_empty(g.vertex_count(), &candidate) {
            live.remove(i);
        } else {
            i += 1;
        }
    }

    let cc = clawed_cycle_from_subdivision(g.vertex_count(), &red.edges, &live);
    debug_assert!(check_clawed_cycle(g, &cc).is_ok());
    SpWitness::ClawedCycle(cc)
}

/// Converts a K4 subdivision (given as reduced edges with preimage paths)
/// into a clawed cycle of the input graph.
fn clawed_cycle_from_subdivision(
    n: usize,
    edges: &[RedEdge],
    live: &[usize],
) -> ClawedCycle {
    let mut deg = vec![0usize; n];
    let mut inc = vec![Vec::new(); n];
    for &e in live {
        deg[edges[e].a] += 1;
        deg[edges[e].b] += 1;
        inc[edges[e].a].push(e);
        inc[edges[e].b].push(e);
    }
    let branch: Vec<VertexId> = (0..n).filter(|&v| deg[v] == 3).collect();
    assert_eq!(
        branch.len(),
        4,
        "an edge-minimal non-series-parallel graph is a K4 subdivision"
    );
    debug_assert!((0..n).all(|v| deg[v] == 0 || deg[v] == 2 || deg[v] == 3));

    // Walk the six chains between branch vertices, expanding each reduced
    // edge to its input-graph preimage.
    let mut chains: Vec<(VertexId, VertexId, Vec<VertexId>)> = Vec::new();
    let mut used = vec![false; edges.len()];
    for &s in &branch {
        for &e0 in &inc[s] {
            if used[e0] {
                continue;
            }
            let mut verts: Vec<VertexId> = vec![s];
            let mut cur = s;
            let mut e = e0;
            loop {
                used[e] = true;
                let next = edges[e].other(cur);
                let seg = edges[e].path_from(cur);
                verts.extend_from_slice(&seg[1..]);
                cur = next;
                if deg[cur] == 3 {
                    break;
                }
                e = *inc[cur]
                    .iter()
                    .find(|&&f| f != e && !used[f])
                    .expect("degree-2 chain continues");
            }
            chains.push((s, cur, verts));
        }
    }
    assert_eq!(chains.len(), 6, "K4 subdivision has six chains");

    let chain_between = |x: VertexId, y: VertexId| -> Vec<VertexId> {
        for (a, b, verts) in &chains {
            if *a == x && *b == y {
                return verts.clone();
            }
            if *a == y && *b == x {
                let mut v = verts.clone();
                v.reverse();
                return v;
            }
        }
        panic!("missing chain between branch vertices");
    };

    let (b0, b1, b2, b3) = (branch[0], branch[1], branch[2], branch[3]);
    let mut cycle = chain_between(b1, b2);
    let p23 = chain_between(b2, b3);
    cycle.extend_from_slice(&p23[1..]);
    let p31 = chain_between(b3, b1);
    cycle.extend_from_slice(&p31[1..p31.len() - 1]);

    ClawedCycle {
        root: b0,
        cycle,
        paths: [
            Path::new(chain_between(b0, b1)),
            Path::new(chain_between(b0, b2)),
            Path::new(chain_between(b0, b3)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    #[test]
    fn k4_yields_a_checkable_witness() {
        let g = unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        match is_series_parallel(&g) {
            SpWitness::ClawedCycle(cc) => {
                assert!(check_clawed_cycle(&g, &cc).is_ok());
            }
            SpWitness::SeriesParallel => panic!("K4 misclassified"),
        }
    }

    #[test]
    fn trees_and_cycles_are_series_parallel() {
        let tree = unit_graph(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]);
        assert!(is_series_parallel(&tree).is_series_parallel());
        let cyc = unit_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(is_series_parallel(&cyc).is_series_parallel());
    }

    #[test]
    fn k23_is_series_parallel() {
        let g = unit_graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert!(is_series_parallel(&g).is_series_parallel());
    }

    #[test]
    fn k4_subdivision_detected_inside_larger_graph() {
        // K4 on {0,1,2,3} with edge (2,3) subdivided through 4, plus a
        // pendant path 5-6 hanging off vertex 0.
        let g = unit_graph(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (4, 3),
                (0, 5),
                (5, 6),
            ],
        );
        match is_series_parallel(&g) {
            SpWitness::ClawedCycle(cc) => {
                assert!(check_clawed_cycle(&g, &cc).is_ok());
                let mut all: Vec<VertexId> = cc.cycle.clone();
                for p in &cc.paths {
                    all.extend_from_slice(&p.verts);
                }
                assert!(!all.contains(&5), "pendant vertices stay out of the witness");
            }
            SpWitness::SeriesParallel => panic!("misclassified"),
        }
    }

    #[test]
    fn wheel_w5_is_not_series_parallel() {
        // Hub 0 joined to a 4-cycle 1-2-3-4.
        let g = unit_graph(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        );
        match is_series_parallel(&g) {
            SpWitness::ClawedCycle(cc) => assert!(check_clawed_cycle(&g, &cc).is_ok()),
            SpWitness::SeriesParallel => panic!("wheel misclassified"),
        }
    }
}
