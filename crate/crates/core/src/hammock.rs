//! Hammock decompositions of series-parallel graphs.
//!
//! A hammock is the induced subgraph on two disjoint connected subtrees of
//! the BFS tree whose roots are unrelated, together with the (nonempty)
//! cross edges between them. A hammock decomposition partitions the edge
//! set of a graph into a base tree `T0` containing the BFS root, a rooted
//! forest of edge-disjoint hammocks in which every cycle stays inside one
//! hammock, and one parent edge per hammock. The forest mirrors the lca
//! structure of the BFS tree and contains every canonical shortest path
//! that starts and ends with a cross edge.
//!
//! Construction proceeds in four stages, each of which asserts the
//! structural properties it relies on and reports the violated property on
//! failure (expected when the input is not series-parallel):
//!
//! 1. partition cross edges into lca-equivalence classes and connect each
//!    class into an initial hammock;
//! 2. join hammocks along lca-free tree paths between them, assigning each
//!    joining component to the hammock that always ends up the ancestor of
//!    every other hammock the component touches;
//! 3. extend each hammock upward to the child of its class lca;
//! 4. sweep leftover subtrees into adjacent hammocks, leaving the root
//!    component as the base tree.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::metric::{Metric, Path};
use crate::recognize::{is_series_parallel, ClawedCycle, SpWitness};
use crate::tree::RootedBfsTree;

/// One equivalence class of cross edges: all members share the same lca and,
/// under the stored orientation, the side-wise lcas of any two members are
/// strict descendants of the class lca.
#[derive(Clone, Debug)]
pub struct CrossEdgeClass {
    pub id: usize,
    pub lca: VertexId,
    pub height: u64,
    pub edges: Vec<EdgeId>,
    /// Oriented endpoints, aligned with `edges`: `side_a[k]` and
    /// `side_b[k]` are the endpoints of `edges[k]`.
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HammockStage {
    Initial,
    Joined,
    LcaExtended,
    Final,
}

/// Two disjoint BFS subtrees plus the cross edges between them, tracked as
/// explicit vertex sets with the induced edge set.
#[derive(Clone, Debug)]
pub struct Hammock {
    pub class_id: usize,
    pub tree_a: BTreeSet<VertexId>,
    pub tree_b: BTreeSet<VertexId>,
    pub root_a: VertexId,
    pub root_b: VertexId,
    pub edges: BTreeSet<EdgeId>,
    pub stage: HammockStage,
}

impl Hammock {
    pub fn contains(&self, v: VertexId) -> bool {
        self.tree_a.contains(&v) || self.tree_b.contains(&v)
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.tree_a.union(&self.tree_b).copied().collect()
    }

    fn recompute(&mut self, g: &WeightedGraph, t: &RootedBfsTree) -> Result<(), HammockError> {
        if !self.tree_a.is_disjoint(&self.tree_b) {
            return Err(HammockError::TreesOverlap { class: self.class_id });
        }
        let a: Vec<VertexId> = self.tree_a.iter().copied().collect();
        let b: Vec<VertexId> = self.tree_b.iter().copied().collect();
        self.root_a = t
            .high(&a)
            .ok_or(HammockError::SideNotASubtree { class: self.class_id })?;
        self.root_b = t
            .high(&b)
            .ok_or(HammockError::SideNotASubtree { class: self.class_id })?;
        if !t.unrelated(self.root_a, self.root_b) {
            return Err(HammockError::RootsRelated { class: self.class_id });
        }
        let verts = self.vertices();
        self.edges = induced_edges(g, &verts);
        Ok(())
    }
}

/// A rooted forest of hammocks. `parent_of[i]` is indexed by position in
/// `hammocks`; `roots` lists the designated root hammock of each tree.
#[derive(Clone, Debug)]
pub struct HammockForest {
    pub hammocks: Vec<Hammock>,
    pub parent_of: Vec<Option<usize>>,
    pub roots: Vec<usize>,
}

impl HammockForest {
    pub fn is_descendant(&self, mut i: usize, j: usize) -> bool {
        loop {
            if i == j {
                return true;
            }
            match self.parent_of[i] {
                Some(p) => i = p,
                None => return false,
            }
        }
    }

    /// All edges owned by some hammock.
    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.hammocks
            .iter()
            .flat_map(|h| h.edges.iter().copied())
            .collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.hammocks.iter().flat_map(|h| h.vertices()).collect()
    }
}

/// The full decomposition: base tree, hammock forest, parent edges.
#[derive(Clone, Debug)]
pub struct HammockDecomposition {
    pub base_tree_verts: BTreeSet<VertexId>,
    pub base_tree_edges: BTreeSet<EdgeId>,
    pub forest: HammockForest,
    /// One entry per hammock, aligned with `forest.hammocks`: the parent
    /// edge of that hammock's `root_b` in the BFS tree.
    pub parent_edges: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub enum HammockError {
    Disconnected { unreachable: VertexId },
    NotUnitWeight,
    NotSeriesParallel(ClawedCycle),
    ClassLcaInsideSide { class: usize },
    TreesOverlap { class: usize },
    SideNotASubtree { class: usize },
    RootsRelated { class: usize },
    ForeignCrossEdge { class: usize, edge: EdgeId },
    SharedEdge { edge: EdgeId, a: usize, b: usize },
    ComponentSpansBothSides { class: usize, component_high: VertexId },
    NoValidAssignment { component_high: VertexId },
    LocalMaxNotUnique { component_high: VertexId, candidates: Vec<usize> },
    ReassignmentInvalid { component_high: VertexId, class: usize },
    SharedVertexCount { a: usize, b: usize, count: usize },
    SharedVertexNotRoot { child: usize, vertex: VertexId },
    AdjacencyCycle { class: usize },
    LcaPathOverlap { class: usize, vertex: VertexId },
    MissingParentEdge { class: usize },
    DanglingTreeUnattachable { high: VertexId },
    NoRootHammock { tree_member: usize },
    MultipleRootHammocks { tree_member: usize },
    Stage { stage: &'static str, source: alloc::boxed::Box<HammockError> },
}

impl fmt::Display for HammockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HammockError::Disconnected { unreachable } => {
                write!(f, "input disconnected: vertex {unreachable} unreachable")
            }
            HammockError::NotUnitWeight => write!(f, "input must have unit weights"),
            HammockError::NotSeriesParallel(_) => {
                write!(f, "input is not series-parallel (clawed cycle found)")
            }
            HammockError::ClassLcaInsideSide { class } => {
                write!(f, "class {class}: side meet is not below the class lca")
            }
            HammockError::TreesOverlap { class } => {
                write!(f, "hammock {class}: its two trees share a vertex")
            }
            HammockError::SideNotASubtree { class } => {
                write!(f, "hammock {class}: a side has no common ancestor inside it")
            }
            HammockError::RootsRelated { class } => {
                write!(f, "hammock {class}: hammock roots are related")
            }
            HammockError::ForeignCrossEdge { class, edge } => {
                write!(f, "hammock {class}: spans cross edge {edge} of another class")
            }
            HammockError::SharedEdge { edge, a, b } => {
                write!(f, "hammocks {a} and {b} share edge {edge}")
            }
            HammockError::ComponentSpansBothSides { class, component_high } => write!(
                f,
                "joining component at {component_high} touches both trees of hammock {class}"
            ),
            HammockError::NoValidAssignment { component_high } => {
                write!(f, "no valid hammock for joining component at {component_high}")
            }
            HammockError::LocalMaxNotUnique { component_high, .. } => write!(
                f,
                "joining component at {component_high} has no unique ancestor hammock"
            ),
            HammockError::ReassignmentInvalid { component_high, class } => write!(
                f,
                "ancestor hammock {class} is invalid for component at {component_high}"
            ),
            HammockError::SharedVertexCount { a, b, count } => {
                write!(f, "hammocks {a} and {b} share {count} vertices")
            }
            HammockError::SharedVertexNotRoot { child, vertex } => write!(
                f,
                "hammock {child} meets its parent at {vertex}, not at a hammock root"
            ),
            HammockError::AdjacencyCycle { class } => {
                write!(f, "hammock adjacency has a cycle through hammock {class}")
            }
            HammockError::LcaPathOverlap { class, vertex } => {
                write!(f, "lca path of hammock {class} collides at vertex {vertex}")
            }
            HammockError::MissingParentEdge { class } => {
                write!(f, "hammock {class}: root has no parent edge")
            }
            HammockError::DanglingTreeUnattachable { high } => {
                write!(f, "leftover subtree at {high} touches no hammock")
            }
            HammockError::NoRootHammock { tree_member } => write!(
                f,
                "tree of hammocks containing {tree_member} has no designated root in the base tree"
            ),
            HammockError::MultipleRootHammocks { tree_member } => write!(
                f,
                "tree of hammocks containing {tree_member} has several designated roots"
            ),
            HammockError::Stage { stage, source } => write!(f, "stage {stage}: {source}"),
        }
    }
}

fn induced_edges(g: &WeightedGraph, verts: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
    let mut out = BTreeSet::new();
    for &v in verts {
        for &(w, e) in g.neighbors(v) {
            if w > v && verts.contains(&w) {
                out.insert(e);
            }
        }
    }
    out
}

/// Partitions the cross edges of `t` into lca-equivalence classes: two
/// oriented cross edges `(u, v)` and `(u', v')` are equivalent when they
/// share their lca `l` and both `lca(u, u')` and `lca(v, v')` are strict
/// descendants of `l`. Each candidate edge is tested against the class
/// representative in both orientations.
pub fn cross_edge_classes(g: &WeightedGraph, t: &RootedBfsTree) -> Vec<CrossEdgeClass> {
    let mut classes: Vec<CrossEdgeClass> = Vec::new();
    for &e in t.cross_edges() {
        let (x, y) = g.edge(e).endpoints();
        let l = t.lca(x, y);
        let mut joined = false;
        for c in classes.iter_mut() {
            if c.lca != l {
                continue;
            }
            let (u0, v0) = (c.side_a[0], c.side_b[0]);
            let below = |p: VertexId, q: VertexId| t.is_strict_ancestor(l, t.lca(p, q));
            if below(x, u0) && below(y, v0) {
                c.edges.push(e);
                c.side_a.push(x);
                c.side_b.push(y);
                joined = true;
                break;
            }
            if below(y, u0) && below(x, v0) {
                c.edges.push(e);
                c.side_a.push(y);
                c.side_b.push(x);
                joined = true;
                break;
            }
        }
        if !joined {
            let id = classes.len();
            classes.push(CrossEdgeClass {
                id,
                lca: l,
                height: t.height(l),
                edges: vec![e],
                side_a: vec![x],
                side_b: vec![y],
            });
        }
    }
    classes
}

/// Tests whether tree edge `e = {parent, child}` can be reached from the
/// BFS root without entering the parent's subtree anywhere except the
/// child's subtree. Returns the witnessing path when it exists.
pub fn is_connected_below(g: &WeightedGraph, t: &RootedBfsTree, e: EdgeId) -> Option<Path> {
    let (x, y) = g.edge(e).endpoints();
    let (up, down) = if t.parent(y) == Some(x) {
        (x, y)
    } else if t.parent(x) == Some(y) {
        (y, x)
    } else {
        panic!("is_connected_below expects a tree edge");
    };
    // BFS from the root through vertices outside subtree(up); stop at the
    // first edge entering subtree(down).
    let r = t.root;
    if t.is_ancestor_or_self(up, r) {
        return None;
    }
    let n = g.vertex_count();
    let mut pred: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[r] = true;
    queue.push_back(r);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if seen[w] {
                continue;
            }
            if t.is_ancestor_or_self(down, w) {
                // Entered the child's subtree: reconstruct.
                let mut verts = vec![w, v];
                let mut cur = v;
                while let Some(p) = pred[cur] {
                    verts.push(p);
                    cur = p;
                }
                verts.reverse();
                return Some(Path::new(verts));
            }
            if !t.is_ancestor_or_self(up, w) {
                seen[w] = true;
                pred[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Stage 1: connect each class into its initial hammock. Each side is the
/// union of tree paths between that side's endpoints, which is the subtree
/// spanned by the endpoints below their common ancestor.
pub fn initial_hammocks(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    classes: &[CrossEdgeClass],
) -> Result<Vec<Hammock>, HammockError> {
    let mut hams = Vec::with_capacity(classes.len());
    for c in classes {
        let span = |side: &[VertexId]| -> Result<BTreeSet<VertexId>, HammockError> {
            let mut meet = side[0];
            for &s in &side[1..] {
                meet = t.lca(meet, s);
            }
            if !t.is_strict_ancestor(c.lca, meet) {
                return Err(HammockError::ClassLcaInsideSide { class: c.id });
            }
            let mut verts = BTreeSet::new();
            for &s in side {
                for &v in &t.tree_path(s, meet).verts {
                    verts.insert(v);
                }
            }
            Ok(verts)
        };
        let tree_a = span(&c.side_a)?;
        let tree_b = span(&c.side_b)?;
        let mut h = Hammock {
            class_id: c.id,
            tree_a,
            tree_b,
            root_a: 0,
            root_b: 0,
            edges: BTreeSet::new(),
            stage: HammockStage::Initial,
        };
        h.recompute(g, t)?;
        hams.push(h);
    }
    // Every cross edge spanned by a hammock must belong to its class, and
    // no edge may belong to two hammocks.
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for h in &hams {
        for &e in &h.edges {
            if let Some(&o) = owner.get(&e) {
                return Err(HammockError::SharedEdge { edge: e, a: o, b: h.class_id });
            }
            owner.insert(e, h.class_id);
        }
        for &e in &h.edges {
            if !t.is_tree_edge(e) && !classes[h.class_id].edges.contains(&e) {
                return Err(HammockError::ForeignCrossEdge { class: h.class_id, edge: e });
            }
        }
    }
    Ok(hams)
}

/// Stage 2a: the joining graph — the union of all tree paths between
/// distinct hammocks that avoid both hammocks' class lcas and whose
/// interior avoids both hammocks.
pub fn joining_graph(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    classes: &[CrossEdgeClass],
    hams: &[Hammock],
) -> BTreeSet<EdgeId> {
    let mut hj: BTreeSet<EdgeId> = BTreeSet::new();
    for i in 0..hams.len() {
        for j in i + 1..hams.len() {
            let (li, lj) = (classes[i].lca, classes[j].lca);
            let vi = hams[i].vertices();
            let vj = hams[j].vertices();
            for &x in &vi {
                if x == li || x == lj {
                    continue;
                }
                for &y in &vj {
                    if y == li || y == lj || y == x {
                        continue;
                    }
                    let p = t.tree_path(x, y);
                    let ok = p.verts.iter().all(|&v| v != li && v != lj)
                        && p.internal()
                            .iter()
                            .all(|v| !vi.contains(v) && !vj.contains(v));
                    if ok {
                        for (a, b) in p.edge_steps() {
                            hj.insert(g.edge_id(a, b).unwrap());
                        }
                    }
                }
            }
        }
    }
    hj
}

/// A connected component of the joining graph minus the hammock edges.
#[derive(Clone, Debug)]
struct JoiningComponent {
    verts: BTreeSet<VertexId>,
    high: VertexId,
    touched: Vec<usize>,
}

fn joining_components(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    hams: &[Hammock],
    hj: &BTreeSet<EdgeId>,
) -> Vec<JoiningComponent> {
    let owned: BTreeSet<EdgeId> = hams.iter().flat_map(|h| h.edges.iter().copied()).collect();
    let free: Vec<EdgeId> = hj.iter().copied().filter(|e| !owned.contains(e)).collect();
    let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for &e in &free {
        let (u, v) = g.edge(e).endpoints();
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    let mut out = Vec::new();
    for &e0 in &free {
        if seen.contains(&e0) {
            continue;
        }
        let mut verts = BTreeSet::new();
        let mut stack = vec![e0];
        seen.insert(e0);
        while let Some(e) = stack.pop() {
            let (u, v) = g.edge(e).endpoints();
            for x in [u, v] {
                if verts.insert(x) {
                    for &f in incident.get(&x).into_iter().flatten() {
                        if seen.insert(f) {
                            stack.push(f);
                        }
                    }
                }
            }
        }
        let vlist: Vec<VertexId> = verts.iter().copied().collect();
        let high = t.high(&vlist).expect("joining component is a subtree");
        let touched: Vec<usize> = hams
            .iter()
            .enumerate()
            .filter(|(_, h)| verts.iter().any(|&v| h.contains(v)))
            .map(|(i, _)| i)
            .collect();
        out.push(JoiningComponent { verts, high, touched });
    }
    out.sort_by_key(|c| c.high);
    out
}

fn merge_component_into(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    ham: &mut Hammock,
    comp: &JoiningComponent,
) -> Result<(), HammockError> {
    let touches_a = comp.verts.iter().any(|v| ham.tree_a.contains(v));
    let touches_b = comp.verts.iter().any(|v| ham.tree_b.contains(v));
    if touches_a && touches_b {
        return Err(HammockError::ComponentSpansBothSides {
            class: ham.class_id,
            component_high: comp.high,
        });
    }
    let side = if touches_a { &mut ham.tree_a } else { &mut ham.tree_b };
    side.extend(comp.verts.iter().copied());
    ham.recompute(g, t)
}

/// Builds the rooted forest over hammocks, designates the root of each tree
/// (maximum class-lca height, ties to the smallest class id, unless
/// `fixed_roots` dictates), and orients parents away from roots.
///
/// Several hammocks may meet at one articulation vertex (siblings hanging
/// off the same cut vertex of their common parent), so parent/child
/// structure is read off the bipartite incidence between hammocks and
/// shared vertices: rooted at the root hammock, the parent of a hammock is
/// the hammock above its attachment vertex. That incidence must be acyclic
/// for a valid forest of hammocks.
fn build_forest(
    classes: &[CrossEdgeClass],
    hams: Vec<Hammock>,
    fixed_roots: Option<&BTreeSet<usize>>,
) -> Result<HammockForest, HammockError> {
    let k = hams.len();
    let verts: Vec<BTreeSet<VertexId>> = hams.iter().map(|h| h.vertices()).collect();
    for i in 0..k {
        for j in i + 1..k {
            let common = verts[i].intersection(&verts[j]).count();
            if common > 1 {
                return Err(HammockError::SharedVertexCount { a: i, b: j, count: common });
            }
        }
    }
    // Vertices lying in at least two hammocks, with the hammocks they join.
    let mut member_of: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, vs) in verts.iter().enumerate() {
        for &v in vs {
            member_of.entry(v).or_default().push(i);
        }
    }
    let cuts: BTreeMap<VertexId, Vec<usize>> = member_of
        .into_iter()
        .filter(|(_, hs)| hs.len() >= 2)
        .collect();
    let mut cut_of_ham: Vec<Vec<VertexId>> = vec![Vec::new(); k];
    for (&v, hs) in &cuts {
        for &i in hs {
            cut_of_ham[i].push(v);
        }
    }

    // Connected components of the hammock-cut incidence.
    let mut comp_of = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let c = comps.len();
        let mut stack = vec![s];
        comp_of[s] = c;
        let mut members = vec![s];
        while let Some(i) = stack.pop() {
            for &v in &cut_of_ham[i] {
                for &j in &cuts[&v] {
                    if comp_of[j] == usize::MAX {
                        comp_of[j] = c;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    let mut parent_of = vec![None; k];
    let mut roots = Vec::new();
    for members in &comps {
        let root = match fixed_roots {
            Some(desig) => {
                let cand: Vec<usize> =
                    members.iter().copied().filter(|i| desig.contains(i)).collect();
                match cand.len() {
                    0 => return Err(HammockError::NoRootHammock { tree_member: members[0] }),
                    1 => cand[0],
                    _ => {
                        return Err(HammockError::MultipleRootHammocks {
                            tree_member: members[0],
                        })
                    }
                }
            }
            None => *members
                .iter()
                .max_by_key(|&&i| (classes[hams[i].class_id].height, core::cmp::Reverse(i)))
                .unwrap(),
        };
        roots.push(root);
        // BFS over the bipartite incidence from the root hammock. Reaching a
        // hammock or cut vertex twice means the incidence has a cycle.
        let mut seen_ham: BTreeSet<usize> = BTreeSet::new();
        let mut seen_cut: BTreeSet<VertexId> = BTreeSet::new();
        seen_ham.insert(root);
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(root);
        while let Some(i) = queue.pop_front() {
            for &v in &cut_of_ham[i] {
                if !seen_cut.insert(v) {
                    continue;
                }
                for &j in &cuts[&v] {
                    if j == i {
                        continue;
                    }
                    if seen_ham.insert(j) {
                        parent_of[j] = Some(i);
                        queue.push_back(j);
                    } else {
                        return Err(HammockError::AdjacencyCycle { class: hams[j].class_id });
                    }
                }
            }
        }
    }
    Ok(HammockForest { hammocks: hams, parent_of, roots })
}

/// Orients each non-root hammock so its `tree_a` root is the vertex shared
/// with the parent; root hammocks put the smaller root on the `a` side.
fn orient_sides(forest: &mut HammockForest, allow_swap: bool) -> Result<(), HammockError> {
    for i in 0..forest.hammocks.len() {
        match forest.parent_of[i] {
            Some(p) => {
                let shared: Vec<VertexId> = forest.hammocks[i]
                    .vertices()
                    .intersection(&forest.hammocks[p].vertices())
                    .copied()
                    .collect();
                debug_assert_eq!(shared.len(), 1);
                let v = shared[0];
                let h = &mut forest.hammocks[i];
                if h.root_a == v {
                    // oriented already
                } else if h.root_b == v && allow_swap {
                    core::mem::swap(&mut h.tree_a, &mut h.tree_b);
                    core::mem::swap(&mut h.root_a, &mut h.root_b);
                } else {
                    return Err(HammockError::SharedVertexNotRoot { child: i, vertex: v });
                }
            }
            None => {
                if allow_swap {
                    let h = &mut forest.hammocks[i];
                    if h.root_b < h.root_a {
                        core::mem::swap(&mut h.tree_a, &mut h.tree_b);
                        core::mem::swap(&mut h.root_a, &mut h.root_b);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Stage 2: assign every joining component to the hammock that is the
/// ancestor of all hammocks it touches, then build the rooted forest.
///
/// The assignment is computed in two rounds: first any valid assignment
/// (component goes to the smallest touched hammock whose class lca lies off
/// the component), then — in the forest that assignment induces — each
/// component is re-assigned to the unique local maximum among the hammocks
/// it touches. The local maximum does not depend on the first-round choice;
/// a duplicate maximum is reported as a structural failure.
pub fn assign_joining_components(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    classes: &[CrossEdgeClass],
    hams: &[Hammock],
    hj: &BTreeSet<EdgeId>,
) -> Result<HammockForest, HammockError> {
    let comps = joining_components(g, t, hams, hj);

    let valid = |c: &JoiningComponent, i: usize| !c.verts.contains(&classes[i].lca);
    let mut assign: Vec<usize> = Vec::with_capacity(comps.len());
    for c in &comps {
        let pick = c
            .touched
            .iter()
            .copied()
            .find(|&i| valid(c, i))
            .ok_or(HammockError::NoValidAssignment { component_high: c.high })?;
        assign.push(pick);
    }

    let build = |assign: &[usize]| -> Result<HammockForest, HammockError> {
        let mut merged = hams.to_vec();
        for (c, &i) in comps.iter().zip(assign) {
            merge_component_into(g, t, &mut merged[i], c)?;
        }
        for h in &mut merged {
            h.stage = HammockStage::Joined;
        }
        // Re-check edge-disjointness after merging.
        let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for h in &merged {
            for &e in &h.edges {
                if let Some(&o) = owner.get(&e) {
                    return Err(HammockError::SharedEdge { edge: e, a: o, b: h.class_id });
                }
                owner.insert(e, h.class_id);
            }
        }
        build_forest(classes, merged, None)
    };

    let provisional = build(&assign)?;

    // Re-assign each component to the unique local max among touched hammocks.
    let mut final_assign = assign.clone();
    for (ci, c) in comps.iter().enumerate() {
        let maxes: Vec<usize> = c
            .touched
            .iter()
            .copied()
            .filter(|&i| {
                c.touched
                    .iter()
                    .all(|&j| j == i || !provisional.is_descendant(i, j))
            })
            .collect();
        if maxes.len() != 1 {
            return Err(HammockError::LocalMaxNotUnique {
                component_high: c.high,
                candidates: maxes,
            });
        }
        let target = maxes[0];
        if !valid(c, target) {
            return Err(HammockError::ReassignmentInvalid {
                component_high: c.high,
                class: target,
            });
        }
        final_assign[ci] = target;
    }

    let mut forest = if final_assign == assign {
        provisional
    } else {
        build(&final_assign)?
    };
    orient_sides(&mut forest, true)?;
    Ok(forest)
}

/// Stage 3: extend each hammock's `b` side along the interior of the tree
/// path to the class lca; root hammocks extend both sides. The added paths
/// must be disjoint from one another and from every hammock.
pub fn extend_to_lca(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    classes: &[CrossEdgeClass],
    forest: &HammockForest,
) -> Result<HammockForest, HammockError> {
    let all_verts = forest.vertex_set();
    let mut claimed: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut additions: Vec<(usize, Vec<VertexId>, Vec<VertexId>)> = Vec::new();
    for (i, h) in forest.hammocks.iter().enumerate() {
        let l = classes[h.class_id].lca;
        let path_b: Vec<VertexId> = t.tree_path(h.root_b, l).internal().to_vec();
        let path_a: Vec<VertexId> = if forest.roots.contains(&i) {
            t.tree_path(h.root_a, l).internal().to_vec()
        } else {
            Vec::new()
        };
        for &v in path_b.iter().chain(path_a.iter()) {
            if all_verts.contains(&v) {
                return Err(HammockError::LcaPathOverlap { class: h.class_id, vertex: v });
            }
            if claimed.insert(v, i).is_some_and(|other| other != i) {
                return Err(HammockError::LcaPathOverlap { class: h.class_id, vertex: v });
            }
        }
        additions.push((i, path_a, path_b));
    }
    let mut hams = forest.hammocks.clone();
    for (i, path_a, path_b) in additions {
        hams[i].tree_a.extend(path_a);
        hams[i].tree_b.extend(path_b);
        hams[i].recompute(g, t)?;
        hams[i].stage = HammockStage::LcaExtended;
    }
    Ok(HammockForest {
        hammocks: hams,
        parent_of: forest.parent_of.clone(),
        roots: forest.roots.clone(),
    })
}

/// Stage 4: compute the parent edges, carve out the base tree around the
/// BFS root, and sweep every other leftover subtree into a hammock that
/// contains its highest vertex (smallest class id on ties).
pub fn attach_dangling_trees(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    classes: &[CrossEdgeClass],
    forest: &HammockForest,
) -> Result<HammockDecomposition, HammockError> {
    let mut parent_edges = Vec::with_capacity(forest.hammocks.len());
    for h in &forest.hammocks {
        let e = t
            .parent_edge(h.root_b)
            .ok_or(HammockError::MissingParentEdge { class: h.class_id })?;
        parent_edges.push(e);
    }
    let removed: BTreeSet<EdgeId> = parent_edges
        .iter()
        .copied()
        .chain(forest.edge_set())
        .collect();
    let free: Vec<EdgeId> = t
        .tree_edges()
        .iter()
        .copied()
        .filter(|e| !removed.contains(e))
        .collect();

    // Components of the free tree edges.
    let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for &e in &free {
        let (u, v) = g.edge(e).endpoints();
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    let mut seen_edge: BTreeSet<EdgeId> = BTreeSet::new();
    let mut components: Vec<(BTreeSet<VertexId>, BTreeSet<EdgeId>)> = Vec::new();
    for &e0 in &free {
        if seen_edge.contains(&e0) {
            continue;
        }
        let mut verts = BTreeSet::new();
        let mut edges = BTreeSet::new();
        let mut stack = vec![e0];
        seen_edge.insert(e0);
        while let Some(e) = stack.pop() {
            edges.insert(e);
            let (u, v) = g.edge(e).endpoints();
            for x in [u, v] {
                if verts.insert(x) {
                    for &f in incident.get(&x).into_iter().flatten() {
                        if seen_edge.insert(f) {
                            stack.push(f);
                        }
                    }
                }
            }
        }
        components.push((verts, edges));
    }

    let r = t.root;
    let mut base_tree_verts: BTreeSet<VertexId> = BTreeSet::new();
    let mut base_tree_edges: BTreeSet<EdgeId> = BTreeSet::new();
    base_tree_verts.insert(r);
    let mut hams = forest.hammocks.clone();
    let mut dangling: Vec<BTreeSet<VertexId>> = Vec::new();
    for (verts, edges) in components {
        if verts.contains(&r) {
            base_tree_verts.extend(verts.iter().copied());
            base_tree_edges.extend(edges.iter().copied());
        } else {
            dangling.push(verts);
        }
    }
    for verts in dangling {
        let vlist: Vec<VertexId> = verts.iter().copied().collect();
        let high = t.high(&vlist).expect("leftover component is a subtree");
        let owner = hams
            .iter()
            .position(|h| h.contains(high))
            .ok_or(HammockError::DanglingTreeUnattachable { high })?;
        let side_a = hams[owner].tree_a.contains(&high);
        let h = &mut hams[owner];
        if side_a {
            h.tree_a.extend(verts.iter().copied());
        } else {
            h.tree_b.extend(verts.iter().copied());
        }
        h.recompute(g, t)?;
    }
    for h in &mut hams {
        h.stage = HammockStage::Final;
    }

    // Designated roots: root hammocks of the previous stage whose `a` root
    // landed in the base tree.
    let designated: BTreeSet<usize> = forest
        .roots
        .iter()
        .copied()
        .filter(|&i| base_tree_verts.contains(&hams[i].root_a))
        .collect();
    let mut final_forest = build_forest(classes, hams, Some(&designated))?;
    orient_sides(&mut final_forest, false)?;
    Ok(HammockDecomposition {
        base_tree_verts,
        base_tree_edges,
        forest: final_forest,
        parent_edges,
    })
}

/// Runs the full pipeline on a connected, unit-weight, series-parallel
/// graph. Stage failures carry the stage name.
pub fn decompose(
    g: &WeightedGraph,
    root: VertexId,
) -> Result<(RootedBfsTree, HammockDecomposition), HammockError> {
    if !g.is_unit_weight() {
        return Err(HammockError::NotUnitWeight);
    }
    match is_series_parallel(g) {
        SpWitness::SeriesParallel => {}
        SpWitness::ClawedCycle(cc) => return Err(HammockError::NotSeriesParallel(cc)),
    }
    let t = RootedBfsTree::build(g, root).map_err(|e| match e {
        crate::graph::GraphError::Disconnected { unreachable } => {
            HammockError::Disconnected { unreachable }
        }
        _ => HammockError::Disconnected { unreachable: root },
    })?;
    let hd = decompose_with_tree(g, &t)?;
    Ok((t, hd))
}

/// The pipeline given a prebuilt BFS tree.
pub fn decompose_with_tree(
    g: &WeightedGraph,
    t: &RootedBfsTree,
) -> Result<HammockDecomposition, HammockError> {
    fn stage(name: &'static str) -> impl Fn(HammockError) -> HammockError {
        move |e| HammockError::Stage { stage: name, source: alloc::boxed::Box::new(e) }
    }
    let classes = cross_edge_classes(g, t);
    let initial = initial_hammocks(g, t, &classes).map_err(stage("initial-hammocks"))?;
    let hj = joining_graph(g, t, &classes, &initial);
    let joined =
        assign_joining_components(g, t, &classes, &initial, &hj).map_err(stage("joining"))?;
    let extended = extend_to_lca(g, t, &classes, &joined).map_err(stage("lca-extension"))?;
    attach_dangling_trees(g, t, &classes, &extended).map_err(stage("dangling-trees"))
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    EdgeUnassigned(EdgeId),
    EdgeMultiplyAssigned(EdgeId),
    HammockInvalid { class: usize, why: String },
    CycleSpansHammocks { witness_edge: EdgeId },
    SharedVertexCount { a: usize, b: usize, count: usize },
    SharedVertexNotArticulation { a: usize, b: usize, vertex: VertexId },
    ParentIntersection { child: usize, parent: usize },
    ChildRootParentEdge { child: usize },
    ChildLcaPlacement { child: usize },
    RootNotInBaseTree { class: usize },
    RootLcaCondition { class: usize },
    CrossPathEscapes { u: VertexId, v: VertexId },
    BaseTreeNotConnected,
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionViolation::EdgeUnassigned(e) => write!(f, "edge {e} unassigned"),
            DecompositionViolation::EdgeMultiplyAssigned(e) => {
                write!(f, "edge {e} assigned twice")
            }
            DecompositionViolation::HammockInvalid { class, why } => {
                write!(f, "hammock {class} invalid: {why}")
            }
            DecompositionViolation::CycleSpansHammocks { witness_edge } => {
                write!(f, "fundamental cycle of edge {witness_edge} spans several hammocks")
            }
            DecompositionViolation::SharedVertexCount { a, b, count } => {
                write!(f, "hammocks {a},{b} share {count} vertices")
            }
            DecompositionViolation::SharedVertexNotArticulation { a, b, vertex } => write!(
                f,
                "shared vertex {vertex} of hammocks {a},{b} is not an articulation point"
            ),
            DecompositionViolation::ParentIntersection { child, parent } => {
                write!(f, "hammock {child} does not meet parent {parent} exactly at its root")
            }
            DecompositionViolation::ChildRootParentEdge { child } => {
                write!(f, "hammock {child}: parent of its b-root is not the class lca")
            }
            DecompositionViolation::ChildLcaPlacement { child } => {
                write!(f, "hammock {child}: its lca is neither in the parent nor the parent's lca")
            }
            DecompositionViolation::RootNotInBaseTree { class } => {
                write!(f, "root hammock {class}: a-root not in the base tree")
            }
            DecompositionViolation::RootLcaCondition { class } => write!(
                f,
                "root hammock {class}: roots are not children of their lca in the base tree"
            ),
            DecompositionViolation::CrossPathEscapes { u, v } => {
                write!(f, "canonical cross-edge path {u}->{v} leaves the hammock forest")
            }
            DecompositionViolation::BaseTreeNotConnected => write!(f, "base tree not connected"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every definitional property of a hammock decomposition: the
/// three-way edge partition, hammockness of every part, the single-hammock
/// cycle property via fundamental cycles of a spanning forest, the
/// lca-respecting conditions with the base tree, and containment of every
/// canonical shortest cross-edge path in the forest.
pub fn verify_decomposition(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    metric: &Metric,
    hd: &HammockDecomposition,
) -> DecompositionReport {
    let mut violations = Vec::new();
    let hams = &hd.forest.hammocks;

    // (a) edge partition
    let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for &e in &hd.base_tree_edges {
        *count.entry(e).or_insert(0) += 1;
    }
    for &e in &hd.parent_edges {
        *count.entry(e).or_insert(0) += 1;
    }
    for h in hams {
        for &e in &h.edges {
            *count.entry(e).or_insert(0) += 1;
        }
    }
    for e in 0..g.edge_count() {
        match count.get(&e) {
            None => violations.push(DecompositionViolation::EdgeUnassigned(e)),
            Some(&1) => {}
            Some(_) => violations.push(DecompositionViolation::EdgeMultiplyAssigned(e)),
        }
    }

    // hammockness of each part
    for h in hams {
        if let Some(why) = hammock_defect(g, t, h) {
            violations.push(DecompositionViolation::HammockInvalid { class: h.class_id, why });
        }
    }

    // base tree: connected, contains the BFS root
    {
        let verts: Vec<VertexId> = hd.base_tree_verts.iter().copied().collect();
        if !verts.contains(&t.root) || g.induced_components(&verts).len() != 1 {
            violations.push(DecompositionViolation::BaseTreeNotConnected);
        }
    }

    // (b) cycle property via fundamental cycles of a spanning forest of G[H]
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, h) in hams.iter().enumerate() {
        for &e in &h.edges {
            owner.insert(e, i);
        }
    }
    {
        let hverts: BTreeSet<VertexId> = hd.forest.vertex_set();
        let mut parent: BTreeMap<VertexId, Option<(VertexId, EdgeId)>> = BTreeMap::new();
        let mut in_forest: BTreeSet<EdgeId> = BTreeSet::new();
        for &s in &hverts {
            if parent.contains_key(&s) {
                continue;
            }
            parent.insert(s, None);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, e) in g.neighbors(v) {
                    if owner.contains_key(&e) && !parent.contains_key(&w) {
                        parent.insert(w, Some((v, e)));
                        in_forest.insert(e);
                        stack.push(w);
                    }
                }
            }
        }
        let walk_up = |mut v: VertexId, anc: &mut Vec<VertexId>, edges: &mut Vec<EdgeId>| {
            anc.push(v);
            while let Some(Some((p, e))) = parent.get(&v) {
                edges.push(*e);
                v = *p;
                anc.push(v);
            }
        };
        for &e in owner.keys() {
            if in_forest.contains(&e) {
                continue;
            }
            let (u, v) = g.edge(e).endpoints();
            let mut anc_u = Vec::new();
            let mut edges_u = Vec::new();
            walk_up(u, &mut anc_u, &mut edges_u);
            let mut anc_v = Vec::new();
            let mut edges_v = Vec::new();
            walk_up(v, &mut anc_v, &mut edges_v);
            let pos_u: BTreeMap<VertexId, usize> =
                anc_u.iter().copied().zip(0..).collect();
            let meet_idx_v = anc_v
                .iter()
                .position(|x| pos_u.contains_key(x))
                .expect("endpoints share a spanning-forest component");
            let meet_idx_u = pos_u[&anc_v[meet_idx_v]];
            let mut cyc_edges: Vec<EdgeId> = vec![e];
            cyc_edges.extend_from_slice(&edges_u[..meet_idx_u]);
            cyc_edges.extend_from_slice(&edges_v[..meet_idx_v]);
            let owners: BTreeSet<usize> = cyc_edges.iter().map(|ce| owner[ce]).collect();
            if owners.len() != 1 {
                violations.push(DecompositionViolation::CycleSpansHammocks { witness_edge: e });
            }
        }
    }

    // shared vertices: at most one per hammock pair, each an articulation
    // point of the induced forest graph
    for i in 0..hams.len() {
        for j in i + 1..hams.len() {
            let vi = hams[i].vertices();
            let vj = hams[j].vertices();
            let common: Vec<VertexId> = vi.intersection(&vj).copied().collect();
            if common.len() > 1 {
                violations.push(DecompositionViolation::SharedVertexCount {
                    a: i,
                    b: j,
                    count: common.len(),
                });
            } else if common.len() == 1 {
                let v = common[0];
                if !is_articulation_of_forest_graph(g, &owner, v) {
                    violations.push(DecompositionViolation::SharedVertexNotArticulation {
                        a: i,
                        b: j,
                        vertex: v,
                    });
                }
            }
        }
    }

    // (c) lca-respecting conditions
    for (i, h) in hams.iter().enumerate() {
        let l = t.lca(h.root_a, h.root_b);
        match hd.forest.parent_of[i] {
            Some(p) => {
                let shared: Vec<VertexId> = h
                    .vertices()
                    .intersection(&hams[p].vertices())
                    .copied()
                    .collect();
                if shared != vec![h.root_a] {
                    violations.push(DecompositionViolation::ParentIntersection {
                        child: i,
                        parent: p,
                    });
                }
                if t.parent(h.root_b) != Some(l) {
                    violations.push(DecompositionViolation::ChildRootParentEdge { child: i });
                }
                let pl = t.lca(hams[p].root_a, hams[p].root_b);
                if !(hams[p].contains(l) || l == pl) {
                    violations.push(DecompositionViolation::ChildLcaPlacement { child: i });
                }
            }
            None => {
                if !hd.base_tree_verts.contains(&h.root_a) {
                    violations.push(DecompositionViolation::RootNotInBaseTree {
                        class: h.class_id,
                    });
                }
                if t.parent(h.root_a) != Some(l)
                    || t.parent(h.root_b) != Some(l)
                    || !hd.base_tree_verts.contains(&l)
                {
                    violations.push(DecompositionViolation::RootLcaCondition {
                        class: h.class_id,
                    });
                }
            }
        }
    }

    // (d) every canonical shortest cross-edge path stays inside the forest
    {
        let owned = hd.forest.edge_set();
        let cross: BTreeSet<EdgeId> = t.cross_edges().iter().copied().collect();
        let n = g.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                let p = metric.path(u, v).expect("connected");
                if p.verts.len() < 2 {
                    continue;
                }
                let ids = p.edge_ids_in(g);
                if cross.contains(&ids[0])
                    && cross.contains(ids.last().unwrap())
                    && !ids.iter().all(|e| owned.contains(e))
                {
                    violations.push(DecompositionViolation::CrossPathEscapes { u, v });
                }
            }
        }
    }

    DecompositionReport { violations }
}

fn is_articulation_of_forest_graph(
    g: &WeightedGraph,
    owner: &BTreeMap<EdgeId, usize>,
    v: VertexId,
) -> bool {
    // Component of G[H] containing v.
    let mut comp: BTreeSet<VertexId> = BTreeSet::new();
    comp.insert(v);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for &(w, e) in g.neighbors(x) {
            if owner.contains_key(&e) && comp.insert(w) {
                stack.push(w);
            }
        }
    }
    if comp.len() <= 2 {
        return false;
    }
    // Does the component stay connected without v, using only forest edges?
    let start = *comp.iter().find(|&&x| x != v).unwrap();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &(w, e) in g.neighbors(x) {
            if w != v && owner.contains_key(&e) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() != comp.len() - 1
}

/// Returns a description of the first hammock-definition defect, if any.
fn hammock_defect(g: &WeightedGraph, t: &RootedBfsTree, h: &Hammock) -> Option<String> {
    if !h.tree_a.is_disjoint(&h.tree_b) {
        return Some(format!("trees overlap"));
    }
    for (set, root) in [(&h.tree_a, h.root_a), (&h.tree_b, h.root_b)] {
        let verts: Vec<VertexId> = set.iter().copied().collect();
        match t.high(&verts) {
            Some(hi) if hi == root => {}
            _ => return Some(format!("side root mismatch")),
        }
        let subtree_ok = verts
            .iter()
            .filter(|&&v| v != root)
            .all(|&v| set.contains(&t.parent(v).unwrap()));
        if !subtree_ok {
            return Some(format!("side is not a connected subtree"));
        }
    }
    if !t.unrelated(h.root_a, h.root_b) {
        return Some(format!("roots related"));
    }
    let between: Vec<EdgeId> = h
        .edges
        .iter()
        .copied()
        .filter(|&e| {
            let (x, y) = g.edge(e).endpoints();
            (h.tree_a.contains(&x) && h.tree_b.contains(&y))
                || (h.tree_a.contains(&y) && h.tree_b.contains(&x))
        })
        .collect();
    if between.is_empty() {
        return Some(format!("no cross edges between the trees"));
    }
    if between.iter().any(|&e| t.is_tree_edge(e)) {
        return Some(format!("tree edge runs between the two sides"));
    }
    let verts = h.vertices();
    if h.edges != induced_edges(g, &verts) {
        return Some(format!("edge set is not induced"));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    fn full_check(g: &WeightedGraph, root: usize) -> (RootedBfsTree, HammockDecomposition) {
        let (t, hd) = decompose(g, root).expect("pipeline");
        let metric = Metric::new(g);
        let report = verify_decomposition(g, &t, &metric, &hd);
        assert!(report.passed(), "violations: {:?}", report.violations);
        (t, hd)
    }

    #[test]
    fn tree_input_has_empty_forest() {
        let g = unit_graph(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]);
        let (_, hd) = full_check(&g, 0);
        assert!(hd.forest.hammocks.is_empty());
        assert!(hd.parent_edges.is_empty());
        assert_eq!(hd.base_tree_edges.len(), 4);
    }

    #[test]
    fn six_cycle_single_hammock() {
        let g = unit_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let (_, hd) = full_check(&g, 0);
        assert_eq!(hd.forest.hammocks.len(), 1);
        assert_eq!(hd.parent_edges.len(), 1);
        let h = &hd.forest.hammocks[0];
        assert_eq!(h.tree_a, [1, 2, 3].into_iter().collect());
        assert_eq!(h.tree_b, [4, 5].into_iter().collect());
        assert_eq!((h.root_a, h.root_b), (1, 5));
        assert_eq!(hd.base_tree_verts, [0, 1].into_iter().collect());
        assert_eq!(hd.parent_edges, vec![g.edge_id(0, 5).unwrap()]);
    }

    #[test]
    fn triangle_class_is_singleton() {
        let g = unit_graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let classes = cross_edge_classes(&g, &t);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].lca, 0);
        full_check(&g, 0);
    }

    #[test]
    fn theta_like_graph_classes_and_pipeline() {
        // Root 0 with children 1, 2; cross edges (3,4) and (5,6) between the
        // two subtrees share lca 0 with side lcas strictly below: one class.
        let g = unit_graph(
            7,
            &[(0, 1), (0, 2), (1, 3), (1, 5), (2, 4), (2, 6), (3, 4), (5, 6)],
        );
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let classes = cross_edge_classes(&g, &t);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].edges.len(), 2);
        full_check(&g, 0);
    }

    #[test]
    fn equal_lca_distinct_classes() {
        // Two 4-cycles hanging off the root share the cross-edge lca (the
        // root) but stay in separate classes.
        let g = unit_graph(
            7,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 6), (5, 6)],
        );
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let classes = cross_edge_classes(&g, &t);
        assert_eq!(classes.len(), 2);
        full_check(&g, 0);
    }

    #[test]
    fn pairwise_class_definition_holds() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..30 {
            let g = generate_series_parallel(seed, 24, &cfg);
            let t = RootedBfsTree::build(&g, 0).unwrap();
            let classes = cross_edge_classes(&g, &t);
            for c in &classes {
                for i in 0..c.edges.len() {
                    for j in i + 1..c.edges.len() {
                        let l = c.lca;
                        assert!(t.is_strict_ancestor(l, t.lca(c.side_a[i], c.side_a[j])));
                        assert!(t.is_strict_ancestor(l, t.lca(c.side_b[i], c.side_b[j])));
                    }
                }
            }
            // Same-lca edges in different classes must fail the side test in
            // both orientations against the earlier class representative.
            for a in 0..classes.len() {
                for b in a + 1..classes.len() {
                    if classes[a].lca != classes[b].lca {
                        continue;
                    }
                    let l = classes[a].lca;
                    let (u0, v0) = (classes[a].side_a[0], classes[a].side_b[0]);
                    let (x, y) = (classes[b].side_a[0], classes[b].side_b[0]);
                    let below = |p, q| t.is_strict_ancestor(l, t.lca(p, q));
                    assert!(
                        !(below(x, u0) && below(y, v0)) && !(below(y, u0) && below(x, v0)),
                        "seed {seed}: classes {a},{b} should not merge"
                    );
                }
            }
        }
    }

    #[test]
    fn connected_below_examples() {
        // Non-root tree edges on a cycle through the root are connected
        // below; the root's own edges never are (their parent subtree is
        // the whole graph).
        let g = unit_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let e12 = g.edge_id(1, 2).unwrap();
        let w = is_connected_below(&g, &t, e12).expect("cycle edge");
        assert_eq!(w.first(), 0);
        assert!(is_connected_below(&g, &t, g.edge_id(0, 1).unwrap()).is_none());
        // Bridge to a pendant vertex is not connected below.
        let g2 = unit_graph(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 4)]);
        let t2 = RootedBfsTree::build(&g2, 0).unwrap();
        let e14 = g2.edge_id(1, 4).unwrap();
        assert!(is_connected_below(&g2, &t2, e14).is_none());
    }

    #[test]
    fn initial_hammock_and_joining_edges_are_connected_below() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..25 {
            let g = generate_series_parallel(seed, 30, &cfg);
            let t = RootedBfsTree::build(&g, 0).unwrap();
            let classes = cross_edge_classes(&g, &t);
            let initial = initial_hammocks(&g, &t, &classes).expect("series-parallel input");
            for h in &initial {
                for &e in &h.edges {
                    if t.is_tree_edge(e) {
                        assert!(
                            is_connected_below(&g, &t, e).is_some(),
                            "seed {seed} hammock edge {e}"
                        );
                    }
                }
            }
            for &e in &joining_graph(&g, &t, &classes, &initial) {
                assert!(
                    is_connected_below(&g, &t, e).is_some(),
                    "seed {seed} joining edge {e}"
                );
            }
        }
    }

    #[test]
    fn generated_instances_pass_full_verification() {
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..40 {
            let n = 8 + (seed as usize * 3) % 40;
            let g = generate_series_parallel(seed, n, &cfg);
            let (t, hd) = decompose(&g, 0).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let metric = Metric::new(&g);
            let report = verify_decomposition(&g, &t, &metric, &hd);
            assert!(
                report.passed(),
                "seed {seed} violations: {:?}",
                report.violations
            );
        }
    }

    #[test]
    fn corrupted_decompositions_fail_verification() {
        let g = unit_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let (t, hd) = decompose(&g, 0).unwrap();
        let metric = Metric::new(&g);

        // Move a hammock edge into the base tree: partition breaks.
        let mut bad = hd.clone();
        let stolen = *bad.forest.hammocks[0].edges.iter().next().unwrap();
        bad.forest.hammocks[0].edges.remove(&stolen);
        bad.base_tree_edges.insert(stolen);
        assert!(!verify_decomposition(&g, &t, &metric, &bad).passed());

        // Breaking parent pointers trips the lca-respecting checks.
        let g2 = unit_graph(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 5), (5, 6), (6, 7), (3, 7)],
        );
        let (t2, hd2) = decompose(&g2, 0).unwrap();
        if hd2.forest.hammocks.len() >= 2 {
            let mut bad2 = hd2.clone();
            for i in 0..bad2.forest.parent_of.len() {
                bad2.forest.parent_of[i] = match bad2.forest.parent_of[i] {
                    Some(_) => None,
                    None => Some((i + 1) % bad2.forest.hammocks.len()),
                };
            }
            let m2 = Metric::new(&g2);
            assert!(!verify_decomposition(&g2, &t2, &m2, &bad2).passed());
        }
    }

    #[test]
    fn k4_input_is_rejected_with_witness() {
        let g = unit_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        match decompose(&g, 0) {
            Err(HammockError::NotSeriesParallel(cc)) => {
                assert!(crate::recognize::check_clawed_cycle(&g, &cc).is_ok());
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }
}
