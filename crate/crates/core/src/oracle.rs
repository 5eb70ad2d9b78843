//! Independent reference checkers.
//!
//! Everything here decides or recomputes a property through a different
//! algorithmic route than the production code, so the two sides can be
//! compared in tests and in the acceptance suite. None of these functions
//! share code with the implementations they check.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{VertexId, WeightedGraph};

/// Exact treewidth <= k test by dynamic programming over vertex subsets
/// (minimum over elimination orders of the maximum back-degree, where the
/// back-degree counts vertices reachable through already-eliminated ones).
/// Supports n <= 20.
pub fn treewidth_le(g: &WeightedGraph, k: u32) -> bool {
    let n = g.vertex_count();
    assert!(n <= 20, "subset DP limited to n <= 20");
    if n == 0 {
        return true;
    }
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let reach_count = |v: usize, through: u32| -> u32 {
        let mut seen: u32 = 1 << v;
        let mut stack = vec![v];
        let mut count = 0;
        while let Some(w) = stack.pop() {
            let mut fresh = adj[w] & !seen;
            while fresh != 0 {
                let u = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                seen |= 1 << u;
                if through & (1 << u) != 0 {
                    stack.push(u);
                } else {
                    count += 1;
                }
            }
        }
        count
    };
    const UNREACHED: u32 = u32::MAX;
    let mut tw = vec![UNREACHED; (full as usize) + 1];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = UNREACHED;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = tw[(s & !(1 << v)) as usize];
            if prev == UNREACHED {
                continue;
            }
            let val = prev.max(reach_count(v, s & !(1 << v)));
            best = best.min(val);
        }
        tw[s as usize] = best;
    }
    tw[full as usize] <= k
}

/// K4-minor test via exact treewidth: a graph has a K4 minor iff its
/// treewidth is at least 3.
pub fn has_k4_minor(g: &WeightedGraph) -> bool {
    !treewidth_le(g, 2)
}

/// Literal K4-minor search: tries every assignment of vertices to four
/// supernodes (or none) and checks connectivity plus pairwise adjacency.
/// Exponential; intended for n <= 10.
pub fn has_k4_minor_supernodes(g: &WeightedGraph) -> bool {
    let n = g.vertex_count();
    assert!(n <= 10, "supernode enumeration limited to n <= 10");
    let mut label = vec![usize::MAX; n];
    fn connected(g: &WeightedGraph, label: &[usize], class: usize) -> bool {
        let members: Vec<VertexId> = (0..label.len()).filter(|&v| label[v] == class).collect();
        if members.is_empty() {
            return false;
        }
        let mut seen = vec![false; label.len()];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in g.neighbors(v) {
                if label[w] == class && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        members.iter().all(|&v| seen[v])
    }
    fn adjacent(g: &WeightedGraph, label: &[usize], a: usize, b: usize) -> bool {
        g.edges()
            .iter()
            .any(|e| (label[e.u] == a && label[e.v] == b) || (label[e.u] == b && label[e.v] == a))
    }
    fn rec(g: &WeightedGraph, label: &mut [usize], v: usize) -> bool {
        if v == label.len() {
            for c in 0..4 {
                if !connected(g, label, c) {
                    return false;
                }
            }
            for a in 0..4 {
                for b in a + 1..4 {
                    if !adjacent(g, label, a, b) {
                        return false;
                    }
                }
            }
            return true;
        }
        for c in [usize::MAX, 0, 1, 2, 3] {
            label[v] = c;
            if rec(g, label, v + 1) {
                return true;
            }
        }
        label[v] = usize::MAX;
        false
    }
    rec(g, &mut label, 0)
}

/// Single-source distances by Bellman-Ford relaxation sweeps; a second
/// opinion for shortest-path trees.
pub fn bellman_ford_distances(g: &WeightedGraph, src: VertexId) -> Vec<Option<u64>> {
    let n = g.vertex_count();
    let mut dist = vec![u64::MAX; n];
    dist[src] = 0;
    for _ in 0..n.saturating_sub(1) {
        let mut changed = false;
        for e in g.edges() {
            if dist[e.u] != u64::MAX && dist[e.u] + e.w < dist[e.v] {
                dist[e.v] = dist[e.u] + e.w;
                changed = true;
            }
            if dist[e.v] != u64::MAX && dist[e.v] + e.w < dist[e.u] {
                dist[e.u] = dist[e.v] + e.w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist.into_iter()
        .map(|d| if d == u64::MAX { None } else { Some(d) })
        .collect()
}

/// Number of connected components of the subgraph induced by `verts`,
/// computed with union-find rather than traversal.
pub fn union_find_component_count(g: &WeightedGraph, verts: &[VertexId]) -> usize {
    let inset: alloc::collections::BTreeSet<VertexId> = verts.iter().copied().collect();
    let mut parent: alloc::collections::BTreeMap<VertexId, VertexId> =
        verts.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut alloc::collections::BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
    }
    for e in g.edges() {
        if inset.contains(&e.u) && inset.contains(&e.v) {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru != rv {
                parent.insert(ru, rv);
            }
        }
    }
    let mut roots = alloc::collections::BTreeSet::new();
    for &v in verts {
        let r = find(&mut parent, v);
        roots.insert(r);
    }
    roots.len()
}
