//! Undirected weighted graphs with positive integer weights.
//!
//! Graphs are simple (no loops, no parallel edges) and vertices are dense
//! ids `0..n`. Edges are stored sorted by endpoint pair; the position of an
//! edge in that order is its [`EdgeId`], which doubles as the edge's rank in
//! every deterministic tie-break downstream.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Per-edge weight cap accepted by [`WeightedGraph::expand_unit_weights`].
pub const MAX_EXPAND_WEIGHT: u64 = 10_000;
/// Cap on the total weight expanded into unit edges.
pub const MAX_EXPAND_TOTAL: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
}

impl Edge {
    /// The endpoint other than `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(VertexId),
    ParallelEdge(VertexId, VertexId),
    ZeroWeight(VertexId, VertexId),
    VertexOutOfRange(VertexId),
    Disconnected { unreachable: VertexId },
    WeightAboveCap { u: VertexId, v: VertexId, w: u64 },
    TotalWeightAboveCap { total: u64 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::ParallelEdge(u, v) => write!(f, "parallel edge {u}-{v}"),
            GraphError::ZeroWeight(u, v) => write!(f, "edge {u}-{v} has weight 0"),
            GraphError::VertexOutOfRange(v) => write!(f, "vertex id {v} out of range"),
            GraphError::Disconnected { unreachable } => {
                write!(f, "graph is disconnected: vertex {unreachable} unreachable")
            }
            GraphError::WeightAboveCap { u, v, w } => {
                write!(f, "edge {u}-{v} weight {w} exceeds cap {MAX_EXPAND_WEIGHT}")
            }
            GraphError::TotalWeightAboveCap { total } => {
                write!(f, "total weight {total} exceeds cap {MAX_EXPAND_TOTAL}")
            }
        }
    }
}

/// An undirected simple graph with integer weights `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl WeightedGraph {
    /// Builds a graph from an edge list, normalizing each edge to `u < v`
    /// and sorting edges by endpoint pair.
    pub fn new(n: usize, raw_edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(a, b, w) in raw_edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(a, b));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push(Edge { u, v, w });
        }
        edges.sort_unstable();
        for pair in edges.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::ParallelEdge(pair[0].u, pair[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(WeightedGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Neighbors of `v` as `(neighbor, edge id)`, sorted by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n
    }

    /// Edge id for the pair `{a, b}`, if present.
    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_id(a, b).is_some()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1)
    }

    /// True iff all weights are 1, useful as a precondition guard.
    pub fn all_unit(&self) -> bool {
        self.is_unit_weight()
    }

    /// Unweighted BFS reachability check; returns the lowest unreachable
    /// vertex on failure.
    pub fn check_connected(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Ok(());
        }
        let mut seen = vec![false; self.n];
        let mut queue = alloc::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            None => Ok(()),
            Some(v) => Err(GraphError::Disconnected { unreachable: v }),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.check_connected().is_ok()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the subgraph induced by `verts` (in the ids of
    /// `self`), each sorted, ordered by smallest member.
    pub fn induced_components(&self, verts: &[VertexId]) -> Vec<Vec<VertexId>> {
        let inset: BTreeSet<VertexId> = verts.iter().copied().collect();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &s in verts {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if inset.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by `verts`, relabeled to `0..verts.len()` in
    /// ascending order of original id. Returns the new graph together with
    /// the map from new id to original id.
    pub fn induced_subgraph(&self, verts: &[VertexId]) -> (WeightedGraph, Vec<VertexId>) {
        let mut sorted: Vec<VertexId> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in sorted.iter().enumerate() {
            back[old] = new;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if back[e.u] != usize::MAX && back[e.v] != usize::MAX {
                edges.push((back[e.u], back[e.v], e.w));
            }
        }
        let g = WeightedGraph::new(sorted.len(), &edges)
            .expect("induced subgraph of a valid graph is valid");
        (g, sorted)
    }

    /// True iff deleting any single vertex leaves the graph connected.
    pub fn is_biconnected(&self) -> bool {
        if self.n <= 2 {
            return self.is_connected();
        }
        if !self.is_connected() {
            return false;
        }
        for cut in 0..self.n {
            let rest: Vec<VertexId> = (0..self.n).filter(|&v| v != cut).collect();
            if self.induced_components(&rest).len() > 1 {
                return false;
            }
        }
        true
    }

    /// Replaces each edge of weight `w` by a path of `w` unit edges.
    ///
    /// Original vertices keep their ids; subdivision vertices are appended.
    /// Distances between original vertices are preserved exactly. Returns the
    /// expanded graph and the identity map of original ids (the map is the
    /// prefix `0..n` of the new id space).
    pub fn expand_unit_weights(&self) -> Result<(WeightedGraph, Vec<VertexId>), GraphError> {
        let mut total: u64 = 0;
        for e in &self.edges {
            if e.w > MAX_EXPAND_WEIGHT {
                return Err(GraphError::WeightAboveCap { u: e.u, v: e.v, w: e.w });
            }
            total += e.w;
            if total > MAX_EXPAND_TOTAL {
                return Err(GraphError::TotalWeightAboveCap { total });
            }
        }
        let mut edges: Vec<(VertexId, VertexId, u64)> = Vec::new();
        let mut next = self.n;
        for e in &self.edges {
            if e.w == 1 {
                edges.push((e.u, e.v, 1));
            } else {
                let mut prev = e.u;
                for _ in 0..e.w - 1 {
                    edges.push((prev, next, 1));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, e.v, 1));
            }
        }
        let g = WeightedGraph::new(next, &edges)?;
        Ok((g, (0..self.n).collect()))
    }

    /// Compact `n` + edge list rendering for diagnostics.
    pub fn brief(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "n={} m={}", self.n, self.edges.len());
        s
    }
}
