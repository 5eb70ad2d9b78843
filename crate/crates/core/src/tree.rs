//! Rooted shortest-path (BFS) trees with ancestry and lca queries.
//!
//! The tree hanging under a root is the canonical shortest-path tree: the
//! parent of `v` is the predecessor of `v` on the canonical path from the
//! root. As a consequence the tree path between any two related vertices is
//! itself the canonical shortest path between them, which the rest of the
//! pipeline leans on. On unit-weight graphs this is a BFS tree.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, GraphError, VertexId, WeightedGraph};
use crate::metric::{Path, SourcePaths};

#[derive(Clone, Debug)]
pub struct RootedBfsTree {
    pub root: VertexId,
    parent: Vec<Option<VertexId>>,
    parent_edge: Vec<Option<EdgeId>>,
    depth: Vec<u64>,
    hops: Vec<usize>,
    children: Vec<Vec<VertexId>>,
    tree_edges: Vec<EdgeId>,
    cross_edges: Vec<EdgeId>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    lift: Vec<Vec<VertexId>>,
    max_depth: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfsInvariantViolation {
    DepthMismatch { child: VertexId, parent: VertexId },
    CrossEdgeDepthSpread { u: VertexId, v: VertexId },
    AncestorCrossEdge { u: VertexId, v: VertexId },
}

impl fmt::Display for BfsInvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BfsInvariantViolation::DepthMismatch { child, parent } => {
                write!(f, "depth({child}) != depth({parent}) + w")
            }
            BfsInvariantViolation::CrossEdgeDepthSpread { u, v } => {
                write!(f, "cross edge {u}-{v} spans more than one level")
            }
            BfsInvariantViolation::AncestorCrossEdge { u, v } => {
                write!(f, "cross edge {u}-{v} joins a vertex to its ancestor")
            }
        }
    }
}

impl RootedBfsTree {
    /// Builds the canonical shortest-path tree of `g` rooted at `root`.
    /// Fails with the lowest unreachable vertex if `g` is disconnected.
    pub fn build(g: &WeightedGraph, root: VertexId) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let sp = SourcePaths::compute(g, root);
        for v in 0..n {
            if sp.dist(v).is_none() {
                return Err(GraphError::Disconnected { unreachable: v });
            }
        }
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut depth = vec![0u64; n];
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            depth[v] = sp.dist(v).unwrap();
            if let Some(p) = sp.pred(v) {
                parent[v] = Some(p);
                parent_edge[v] = Some(g.edge_id(p, v).unwrap());
                children[p].push(v);
            }
        }
        for ch in &mut children {
            ch.sort_unstable();
        }
        let mut tree_edges: Vec<EdgeId> = parent_edge.iter().flatten().copied().collect();
        tree_edges.sort_unstable();
        let cross_edges: Vec<EdgeId> = (0..g.edge_count())
            .filter(|e| tree_edges.binary_search(e).is_err())
            .collect();

        // Iterative DFS for entry/exit times and hop depths.
        let mut tin = vec![0usize; n];
        let mut tout = vec![0usize; n];
        let mut hops = vec![0usize; n];
        let mut clock = 0usize;
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some((v, ci)) = stack.pop() {
            if ci == 0 {
                tin[v] = clock;
                clock += 1;
            }
            if ci < children[v].len() {
                stack.push((v, ci + 1));
                let c = children[v][ci];
                hops[c] = hops[v] + 1;
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                clock += 1;
            }
        }

        let max_hops = hops.iter().copied().max().unwrap_or(0);
        let levels = (usize::BITS - max_hops.leading_zeros()).max(1) as usize;
        let mut lift = vec![vec![root; n]; levels];
        for v in 0..n {
            lift[0][v] = parent[v].unwrap_or(v);
        }
        for k in 1..levels {
            for v in 0..n {
                lift[k][v] = lift[k - 1][lift[k - 1][v]];
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);

        Ok(RootedBfsTree {
            root,
            parent,
            parent_edge,
            depth,
            hops,
            children,
            tree_edges,
            cross_edges,
            tin,
            tout,
            lift,
            max_depth,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn depth(&self, v: VertexId) -> u64 {
        self.depth[v]
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree_edges
    }

    pub fn cross_edges(&self) -> &[EdgeId] {
        &self.cross_edges
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.tree_edges.binary_search(&e).is_ok()
    }

    /// Height of `v`: distance of the deepest vertex from the root, minus
    /// the depth of `v` (the deepest vertices have height 0).
    pub fn height(&self, v: VertexId) -> u64 {
        self.max_depth - self.depth[v]
    }

    /// `a` is an ancestor of or equal to `v`.
    pub fn is_ancestor_or_self(&self, a: VertexId, v: VertexId) -> bool {
        self.tin[a] <= self.tin[v] && self.tout[v] <= self.tout[a]
    }

    /// `a` is a strict ancestor of `v`.
    pub fn is_strict_ancestor(&self, a: VertexId, v: VertexId) -> bool {
        a != v && self.is_ancestor_or_self(a, v)
    }

    /// Neither vertex is an ancestor of the other.
    pub fn unrelated(&self, u: VertexId, v: VertexId) -> bool {
        !self.is_ancestor_or_self(u, v) && !self.is_ancestor_or_self(v, u)
    }

    pub fn lca(&self, u: VertexId, v: VertexId) -> VertexId {
        if self.is_ancestor_or_self(u, v) {
            return u;
        }
        if self.is_ancestor_or_self(v, u) {
            return v;
        }
        let mut x = u;
        for k in (0..self.lift.len()).rev() {
            let cand = self.lift[k][x];
            if !self.is_ancestor_or_self(cand, v) {
                x = cand;
            }
        }
        self.lift[0][x]
    }

    pub fn lca_of_edge(&self, g: &WeightedGraph, e: EdgeId) -> VertexId {
        let edge = g.edge(e);
        self.lca(edge.u, edge.v)
    }

    /// Vertices of the subtree rooted at `v`, sorted.
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend_from_slice(&self.children[x]);
        }
        out.sort_unstable();
        out
    }

    pub fn in_subtree(&self, top: VertexId, v: VertexId) -> bool {
        self.is_ancestor_or_self(top, v)
    }

    /// The unique tree path from `u` to `v` (through their lca).
    pub fn tree_path(&self, u: VertexId, v: VertexId) -> Path {
        let l = self.lca(u, v);
        let mut up = Vec::new();
        let mut x = u;
        while x != l {
            up.push(x);
            x = self.parent[x].unwrap();
        }
        up.push(l);
        let mut down = Vec::new();
        let mut y = v;
        while y != l {
            down.push(y);
            y = self.parent[y].unwrap();
        }
        up.extend(down.into_iter().rev());
        Path::new(up)
    }

    /// The highest (minimum-depth) vertex of a nonempty set; `None` if the
    /// set has no member that is an ancestor of all others.
    pub fn high(&self, verts: &[VertexId]) -> Option<VertexId> {
        let &top = verts.iter().min_by_key(|&&v| (self.hops[v], v))?;
        if verts.iter().all(|&v| self.is_ancestor_or_self(top, v)) {
            Some(top)
        } else {
            None
        }
    }

    /// A path is monotone when it runs straight up or straight down the tree.
    pub fn is_monotone(&self, p: &Path) -> bool {
        let up = p
            .edge_steps()
            .all(|(a, b)| self.parent[a] == Some(b));
        let down = p
            .edge_steps()
            .all(|(a, b)| self.parent[b] == Some(a));
        up || down
    }

    /// Splits a path into maximal monotone runs (as subpaths).
    pub fn monotone_runs(&self, p: &Path) -> Vec<Path> {
        let mut runs = Vec::new();
        if p.verts.len() < 2 {
            return runs;
        }
        let mut start = 0;
        let step_dir = |a: VertexId, b: VertexId| -> i8 {
            if self.parent[a] == Some(b) {
                1 // up
            } else if self.parent[b] == Some(a) {
                -1 // down
            } else {
                0 // not a tree step
            }
        };
        let dirs: Vec<i8> = p.edge_steps().map(|(a, b)| step_dir(a, b)).collect();
        for i in 1..dirs.len() {
            if dirs[i] != dirs[i - 1] || dirs[i] == 0 {
                runs.push(Path::new(p.verts[start..=i].to_vec()));
                start = i;
            }
        }
        runs.push(Path::new(p.verts[start..].to_vec()));
        runs
    }

    /// Checks the unit-weight BFS invariants: parent depths, and that every
    /// cross edge joins vertices at equal depth or depth difference one with
    /// neither endpoint an ancestor of the other.
    pub fn check_unit_invariants(&self, g: &WeightedGraph) -> Vec<BfsInvariantViolation> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if let Some(p) = self.parent[v] {
                let w = g.edge(self.parent_edge[v].unwrap()).w;
                if self.depth[v] != self.depth[p] + w {
                    out.push(BfsInvariantViolation::DepthMismatch { child: v, parent: p });
                }
            }
        }
        for &e in &self.cross_edges {
            let (u, v) = g.edge(e).endpoints();
            if self.depth[u].abs_diff(self.depth[v]) > 1 {
                out.push(BfsInvariantViolation::CrossEdgeDepthSpread { u, v });
            }
            if !self.unrelated(u, v) {
                out.push(BfsInvariantViolation::AncestorCrossEdge { u, v });
            }
        }
        out
    }
}
