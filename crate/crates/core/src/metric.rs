//! Canonical shortest paths.
//!
//! Shortest paths are made unique by a deterministic perturbation: the cost
//! of a path is the pair `(total weight, set of edge ids read as a binary
//! number)`, compared lexicographically. Distinct simple paths between the
//! same endpoints have distinct edge sets, so the minimum is unique. The
//! perturbation is a property of the edge set alone, which makes canonical
//! paths direction-independent and closed under taking subpaths: any subpath
//! of a canonical path is the canonical path between its endpoints.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{EdgeId, VertexId, WeightedGraph};

pub const INFINITY: u64 = u64::MAX;

/// A set of edge ids compared as a big-endian integer, so that paths avoiding
/// high-id edges compare smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBits {
    words: Vec<u64>,
}

impl EdgeBits {
    pub fn empty(edge_count: usize) -> Self {
        EdgeBits {
            words: vec![0; edge_count.div_ceil(64)],
        }
    }

    pub fn with_bit(&self, e: EdgeId) -> Self {
        let mut out = self.clone();
        out.words[e / 64] |= 1 << (e % 64);
        out
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EdgeBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for EdgeBits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

/// A simple path as an ordered vertex list (at least one vertex).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub verts: Vec<VertexId>,
}

impl Path {
    pub fn new(verts: Vec<VertexId>) -> Self {
        Path { verts }
    }

    pub fn first(&self) -> VertexId {
        self.verts[0]
    }

    pub fn last(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    pub fn edge_steps(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.verts.windows(2).map(|w| (w[0], w[1]))
    }

    /// Internal vertices: everything except the two endpoints.
    pub fn internal(&self) -> &[VertexId] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.verts.clone();
        v.reverse();
        Path { verts: v }
    }

    /// Total weight of the path in `g`. Panics if a step is not an edge.
    pub fn length_in(&self, g: &WeightedGraph) -> u64 {
        self.edge_steps()
            .map(|(a, b)| g.edge(g.edge_id(a, b).expect("path step must be an edge")).w)
            .sum()
    }

    pub fn edge_ids_in(&self, g: &WeightedGraph) -> Vec<EdgeId> {
        self.edge_steps()
            .map(|(a, b)| g.edge_id(a, b).expect("path step must be an edge"))
            .collect()
    }

    /// Checks simplicity and adjacency of consecutive vertices.
    pub fn is_valid_in(&self, g: &WeightedGraph) -> bool {
        if self.verts.is_empty() {
            return false;
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for &v in &self.verts {
            if !seen.insert(v) {
                return false;
            }
        }
        self.edge_steps().all(|(a, b)| g.has_edge(a, b))
    }
}

/// Canonical shortest paths from one source: distances plus the unique
/// canonical predecessor of every reachable vertex.
#[derive(Clone, Debug)]
pub struct SourcePaths {
    pub source: VertexId,
    dist: Vec<u64>,
    pred: Vec<Option<VertexId>>,
}

impl SourcePaths {
    /// Dijkstra for distances, then a second pass in increasing distance
    /// order resolving each vertex's canonical predecessor. Every strict
    /// predecessor on a shortest path is strictly closer to the source
    /// (weights are positive), so the pass is well-founded.
    pub fn compute(g: &WeightedGraph, source: VertexId) -> Self {
        let n = g.vertex_count();
        let mut dist = vec![INFINITY; n];
        dist[source] = 0;
        let mut heap: alloc::collections::BinaryHeap<core::cmp::Reverse<(u64, VertexId)>> =
            alloc::collections::BinaryHeap::new();
        heap.push(core::cmp::Reverse((0, source)));
        while let Some(core::cmp::Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, eid) in g.neighbors(v) {
                let nd = d + g.edge(eid).w;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(core::cmp::Reverse((nd, w)));
                }
            }
        }

        let mut order: Vec<VertexId> = (0..n).filter(|&v| dist[v] < INFINITY).collect();
        order.sort_unstable_by_key(|&v| (dist[v], v));

        let mut pred: Vec<Option<VertexId>> = vec![None; n];
        let mut bits: Vec<Option<EdgeBits>> = vec![None; n];
        bits[source] = Some(EdgeBits::empty(g.edge_count()));
        for &v in &order {
            if v == source {
                continue;
            }
            let mut best: Option<(EdgeBits, VertexId)> = None;
            for &(u, eid) in g.neighbors(v) {
                if dist[u] != INFINITY && dist[u] + g.edge(eid).w == dist[v] {
                    let cand = bits[u]
                        .as_ref()
                        .expect("predecessor resolved earlier")
                        .with_bit(eid);
                    match &best {
                        Some((b, _)) if *b <= cand => {}
                        _ => best = Some((cand, u)),
                    }
                }
            }
            let (b, u) = best.expect("reachable vertex has a shortest-path predecessor");
            pred[v] = Some(u);
            bits[v] = Some(b);
        }
        SourcePaths { source, dist, pred }
    }

    pub fn dist(&self, v: VertexId) -> Option<u64> {
        if self.dist[v] == INFINITY {
            None
        } else {
            Some(self.dist[v])
        }
    }

    pub fn pred(&self, v: VertexId) -> Option<VertexId> {
        self.pred[v]
    }

    /// The canonical shortest path from the source to `v`.
    pub fn path_to(&self, v: VertexId) -> Option<Path> {
        if self.dist[v] == INFINITY {
            return None;
        }
        let mut verts = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur] {
            verts.push(p);
            cur = p;
        }
        verts.reverse();
        Some(Path { verts })
    }
}

/// All-pairs canonical shortest paths, one [`SourcePaths`] per vertex.
#[derive(Clone, Debug)]
pub struct Metric {
    sources: Vec<SourcePaths>,
}

impl Metric {
    pub fn new(g: &WeightedGraph) -> Self {
        Metric {
            sources: (0..g.vertex_count())
                .map(|s| SourcePaths::compute(g, s))
                .collect(),
        }
    }

    pub fn from_source(&self, s: VertexId) -> &SourcePaths {
        &self.sources[s]
    }

    pub fn dist(&self, u: VertexId, v: VertexId) -> Option<u64> {
        self.sources[u].dist(v)
    }

    /// The canonical shortest path from `u` to `v`. Canonicality is
    /// direction-independent: `path(v, u)` is the reverse of `path(u, v)`.
    pub fn path(&self, u: VertexId, v: VertexId) -> Option<Path> {
        self.sources[u].path_to(v)
    }
}

/// The canonical shortest path between two vertices of a connected graph.
pub fn shortest_path(g: &WeightedGraph, u: VertexId, v: VertexId) -> Option<Path> {
    SourcePaths::compute(g, u).path_to(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    #[test]
    fn path_on_a_path_graph() {
        let g = unit_graph(3, &[(0, 1), (1, 2)]);
        let p = shortest_path(&g, 0, 2).unwrap();
        assert_eq!(p.verts, vec![0, 1, 2]);
        assert_eq!(p.length_in(&g), 2);
    }

    #[test]
    fn four_cycle_breaks_tie_toward_smaller_side() {
        // Antipodal pair on a 4-cycle: the side through vertex 1 wins over
        // the side through vertex 2.
        let g = unit_graph(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let p = shortest_path(&g, 0, 3).unwrap();
        assert_eq!(p.verts, vec![0, 1, 3]);
    }

    #[test]
    fn weighted_triangle_takes_detour() {
        let g = WeightedGraph::new(3, &[(0, 1, 3), (0, 2, 1), (2, 1, 1)]).unwrap();
        let p = shortest_path(&g, 0, 1).unwrap();
        assert_eq!(p.verts, vec![0, 2, 1]);
        assert_eq!(p.length_in(&g), 2);
    }

    #[test]
    fn canonical_paths_are_symmetric_and_subpath_consistent() {
        // 4x4 grid: rich in ties.
        let mut edges = Vec::new();
        let idx = |r: usize, c: usize| r * 4 + c;
        for r in 0..4 {
            for c in 0..4 {
                if c + 1 < 4 {
                    edges.push((idx(r, c), idx(r, c + 1)));
                }
                if r + 1 < 4 {
                    edges.push((idx(r, c), idx(r + 1, c)));
                }
            }
        }
        let g = unit_graph(16, &edges);
        let m = Metric::new(&g);
        for u in 0..16 {
            for v in 0..16 {
                let p = m.path(u, v).unwrap();
                assert_eq!(p.reversed(), m.path(v, u).unwrap(), "symmetry {u},{v}");
                // Every subpath is the canonical path between its endpoints.
                for i in 0..p.verts.len() {
                    for j in i..p.verts.len() {
                        let sub = &p.verts[i..=j];
                        let q = m.path(sub[0], sub[sub.len() - 1]).unwrap();
                        assert_eq!(q.verts, sub, "subpath {u}->{v} [{i},{j}]");
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_calls_and_permuted_insertion_agree() {
        let edges_a = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (1, 4)];
        let mut edges_b = edges_a;
        edges_b.reverse();
        let ga = unit_graph(5, &edges_a);
        let gb = unit_graph(5, &edges_b);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(
                    shortest_path(&ga, u, v).unwrap().verts,
                    shortest_path(&gb, u, v).unwrap().verts
                );
            }
        }
    }
}
