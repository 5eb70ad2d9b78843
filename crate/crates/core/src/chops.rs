//! Distance annuli ("chops"), fuzzy variants, and recursive chop trees.
//!
//! A width-`delta` chop assigns every vertex of a rooted graph to the
//! annulus `floor(d(r, v) / delta) + 1`. A `c`-fuzzy chop may displace each
//! vertex from its sharp annulus as long as the banded inequality
//! `(i-1)*delta - c*delta/2 <= d(r, v) <= i*delta + c*delta/2` still holds.
//! Recursive chopping re-chops each connected component of each annulus with
//! a fresh root; the leaves form a partition whose parts stay connected and
//! refine every earlier level.
//!
//! Widths are rationals: the recursive partition chops at a small fraction
//! of the target diameter, which can be below 1 on integer metrics.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{VertexId, WeightedGraph};
use crate::metric::{Metric, Path, SourcePaths};
use crate::ratio::{int_le, le_int, Ratio};
use crate::tree::RootedBfsTree;

/// Assignment of vertices to fuzzy annuli for one chop.
///
/// `annulus` and `dist` cover exactly the vertex set the chop was built on
/// (a connected component of some graph, identified by original vertex ids).
/// Index 0 is the explicit band below annulus 1 that fuzzing may push
/// shallow vertices into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyChop {
    pub delta: Ratio,
    pub fuzz: Ratio,
    pub root: VertexId,
    pub annulus: BTreeMap<VertexId, i64>,
    pub dist: BTreeMap<VertexId, u64>,
}

impl FuzzyChop {
    pub fn annulus_of(&self, v: VertexId) -> i64 {
        self.annulus[&v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.annulus.keys().copied()
    }

    /// Vertices of each nonempty annulus, keyed by annulus index.
    pub fn annuli(&self) -> BTreeMap<i64, Vec<VertexId>> {
        let mut out: BTreeMap<i64, Vec<VertexId>> = BTreeMap::new();
        for (&v, &i) in &self.annulus {
            out.entry(i).or_default().push(v);
        }
        out
    }
}

/// Sharp chop: annulus `i` holds the vertices at distance `[(i-1)d, i*d)`
/// from the root, so `annulus_of(v) = floor(d(r,v)/delta) + 1`.
pub fn delta_chop(t: &RootedBfsTree, delta: Ratio) -> FuzzyChop {
    assert!(delta.is_positive(), "chop width must be positive");
    let mut annulus = BTreeMap::new();
    let mut dist = BTreeMap::new();
    for v in 0..t.vertex_count() {
        let d = t.depth(v);
        // floor(d / delta) = floor(d * den / num)
        let idx = Ratio::new(d as i64 * delta.den(), delta.num()).floor() + 1;
        annulus.insert(v, idx);
        dist.insert(v, d);
    }
    FuzzyChop {
        delta,
        fuzz: Ratio::zero(),
        root: t.root,
        annulus,
        dist,
    }
}

/// Connected components of each fuzzy annulus, as sorted vertex lists
/// ordered by (annulus, smallest vertex).
pub fn chop_components(g: &WeightedGraph, chop: &FuzzyChop) -> Vec<Vec<VertexId>> {
    let mut parts = Vec::new();
    for (_, verts) in chop.annuli() {
        parts.extend(g.induced_components(&verts));
    }
    parts
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzyViolation {
    pub vertex: VertexId,
    pub annulus: i64,
    pub dist: u64,
}

#[derive(Clone, Debug, Default)]
pub struct FuzzyReport {
    pub violations: Vec<FuzzyViolation>,
}

impl FuzzyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the fuzzy band inequality for every vertex of the chop:
/// `(i-1)*delta - fuzz*delta/2 <= d(r,v) <= i*delta + fuzz*delta/2`.
///
/// Both bounds are inclusive. On integer metrics a move of exactly
/// `delta/3` past a sharp boundary is attainable, so the band closure is
/// what fuzzed chops actually satisfy; a sharp chop passes with fuzz 0
/// either way.
pub fn verify_fuzzy(chop: &FuzzyChop) -> FuzzyReport {
    let half_band = chop.delta.mul(chop.fuzz).div_int(2);
    let mut violations = Vec::new();
    for (&v, &i) in &chop.annulus {
        let d = chop.dist[&v] as i64;
        let lo = chop.delta.mul_int(i - 1).sub(half_band);
        let hi = chop.delta.mul_int(i).add(half_band);
        if !(le_int(lo, d) && int_le(d, hi)) {
            violations.push(FuzzyViolation {
                vertex: v,
                annulus: i,
                dist: chop.dist[&v],
            });
        }
    }
    FuzzyReport { violations }
}

/// Maximum distance *in the full graph* between any two vertices of `part`.
pub fn weak_diameter(metric: &Metric, part: &[VertexId]) -> u64 {
    let mut best = 0;
    for (k, &u) in part.iter().enumerate() {
        for &v in &part[k + 1..] {
            let d = metric.dist(u, v).expect("weak diameter needs connectivity");
            best = best.max(d);
        }
    }
    best
}

/// Number of consecutive path steps whose endpoints sit in different annuli.
pub fn count_cut_edges(p: &Path, chop: &FuzzyChop) -> usize {
    p.edge_steps()
        .filter(|&(a, b)| chop.annulus[&a] != chop.annulus[&b])
        .count()
}

/// A leaf part of a recursive chop: its vertices (original ids) and the
/// annulus index it landed in at each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChopLeaf {
    pub vertices: Vec<VertexId>,
    pub lineage: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ChopComponentTree {
    pub levels: usize,
    pub leaves: Vec<ChopLeaf>,
}

impl ChopComponentTree {
    pub fn parts(&self) -> Vec<Vec<VertexId>> {
        self.leaves.iter().map(|l| l.vertices.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub enum ChopError {
    Strategy(String),
}

impl fmt::Display for ChopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChopError::Strategy(s) => write!(f, "chop strategy failed: {s}"),
        }
    }
}

/// A rule producing one fuzzy chop of a connected graph from a given root.
pub trait ChopStrategy {
    fn chop(&self, g: &WeightedGraph, root: VertexId) -> Result<FuzzyChop, ChopError>;
}

/// The sharp chop as a strategy.
pub struct PlainChop {
    pub delta: Ratio,
}

impl ChopStrategy for PlainChop {
    fn chop(&self, g: &WeightedGraph, root: VertexId) -> Result<FuzzyChop, ChopError> {
        let t = RootedBfsTree::build(g, root)
            .map_err(|e| ChopError::Strategy(alloc::format!("{e}")))?;
        Ok(delta_chop(&t, self.delta))
    }
}

/// Applies `chopper` recursively: chop, split annuli into connected
/// components, recurse on each component `levels - 1` more times. Each
/// component is re-rooted at its lowest vertex id; distances inside the
/// recursion are those of the induced subgraph.
pub fn recursive_chops(
    g: &WeightedGraph,
    levels: usize,
    chopper: &dyn ChopStrategy,
) -> Result<ChopComponentTree, ChopError> {
    assert!(levels >= 1);
    let all: Vec<VertexId> = g.vertices().collect();
    let mut leaves = Vec::new();
    for comp in g.induced_components(&all) {
        rec(g, &comp, levels, chopper, &mut Vec::new(), &mut leaves)?;
    }
    Ok(ChopComponentTree { levels, leaves })
}

fn rec(
    g: &WeightedGraph,
    verts: &[VertexId],
    levels: usize,
    chopper: &dyn ChopStrategy,
    lineage: &mut Vec<i64>,
    leaves: &mut Vec<ChopLeaf>,
) -> Result<(), ChopError> {
    if levels == 0 {
        leaves.push(ChopLeaf {
            vertices: verts.to_vec(),
            lineage: lineage.clone(),
        });
        return Ok(());
    }
    let (sub, back) = g.induced_subgraph(verts);
    let root_local = 0; // lowest original id maps to local 0
    let chop = chopper.chop(&sub, root_local)?;
    for (idx, local_verts) in chop.annuli() {
        for local_comp in sub.induced_components(&local_verts) {
            let orig: Vec<VertexId> = local_comp.iter().map(|&v| back[v]).collect();
            lineage.push(idx);
            rec(g, &orig, levels - 1, chopper, lineage, leaves)?;
            lineage.pop();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let e: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        WeightedGraph::new(n, &e).unwrap()
    }

    fn path10() -> WeightedGraph {
        unit_graph(10, &(0..9).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn sharp_chop_on_unit_path() {
        let g = path10();
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(3));
        let annuli = chop.annuli();
        assert_eq!(annuli[&1], vec![0, 1, 2]);
        assert_eq!(annuli[&2], vec![3, 4, 5]);
        assert_eq!(annuli[&3], vec![6, 7, 8]);
        assert_eq!(annuli[&4], vec![9]);
        assert!(verify_fuzzy(&chop).passed());
    }

    #[test]
    fn huge_delta_gives_single_annulus() {
        let g = path10();
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(100));
        assert_eq!(chop.annuli().len(), 1);
        assert!(chop.annuli().contains_key(&1));
    }

    #[test]
    fn star_unit_delta_one() {
        let g = unit_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(1));
        let annuli = chop.annuli();
        assert_eq!(annuli[&1], vec![0]);
        assert_eq!(annuli[&2], vec![1, 2, 3, 4]);
    }

    #[test]
    fn components_split_disconnected_annuli() {
        // Two branches from the root: the depth-1 annulus splits in two.
        let g = unit_graph(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]);
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(1));
        let parts = chop_components(&g, &chop);
        assert_eq!(parts.len(), 5); // root + 2 + 2 singletons at two depths
        let g2 = path10();
        let t2 = RootedBfsTree::build(&g2, 0).unwrap();
        let chop2 = delta_chop(&t2, Ratio::int(3));
        assert_eq!(chop_components(&g2, &chop2).len(), 4);
    }

    #[test]
    fn component_count_matches_union_find_oracle_on_grid() {
        // 4x4 grid rooted at a corner, width 2.
        let idx = |r: usize, c: usize| r * 4 + c;
        let mut edges = Vec::new();
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
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(2));
        let parts = chop_components(&g, &chop);
        let mut by_oracle = 0;
        for (_, verts) in chop.annuli() {
            by_oracle += crate::oracle::union_find_component_count(&g, &verts);
        }
        assert_eq!(parts.len(), by_oracle);
    }

    #[test]
    fn verify_fuzzy_flags_a_shifted_vertex() {
        let g = path10();
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let mut chop = delta_chop(&t, Ratio::int(3));
        let old = chop.annulus[&4];
        chop.annulus.insert(4, old + 2);
        let report = verify_fuzzy(&chop);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].vertex, 4);
    }

    #[test]
    fn cut_edge_counting() {
        let g = path10();
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let chop = delta_chop(&t, Ratio::int(3));
        let inside = Path::new(vec![0, 1, 2]);
        assert_eq!(count_cut_edges(&inside, &chop), 0);
        let crossing = Path::new(vec![1, 2, 3, 4]);
        assert_eq!(count_cut_edges(&crossing, &chop), 1);
    }

    #[test]
    fn recursion_refines_and_keeps_parts_connected() {
        let idx = |r: usize, c: usize| r * 6 + c;
        let mut edges = Vec::new();
        for r in 0..6 {
            for c in 0..6 {
                if c + 1 < 6 {
                    edges.push((idx(r, c), idx(r, c + 1)));
                }
                if r + 1 < 6 {
                    edges.push((idx(r, c), idx(r + 1, c)));
                }
            }
        }
        let g = unit_graph(36, &edges);
        let strat = PlainChop { delta: Ratio::int(3) };
        let one = recursive_chops(&g, 1, &strat).unwrap();
        let t = RootedBfsTree::build(&g, 0).unwrap();
        let direct = chop_components(&g, &delta_chop(&t, Ratio::int(3)));
        let mut one_parts = one.parts();
        one_parts.sort();
        let mut direct_sorted = direct;
        direct_sorted.sort();
        assert_eq!(one_parts, direct_sorted);

        let three = recursive_chops(&g, 3, &strat).unwrap();
        // Refinement: every level-3 leaf sits inside one level-1 part.
        for leaf in &three.leaves {
            let inside = one
                .leaves
                .iter()
                .filter(|p| leaf.vertices.iter().all(|v| p.vertices.contains(v)))
                .count();
            assert_eq!(inside, 1);
        }
        // Connectivity of leaves.
        for leaf in &three.leaves {
            assert_eq!(g.induced_components(&leaf.vertices).len(), 1);
        }
        // Lineages have one entry per level.
        assert!(three.leaves.iter().all(|l| l.lineage.len() == 3));
    }

    #[test]
    fn weak_diameter_uses_the_full_graph() {
        // 6-cycle: vertices 1 and 4 are at distance 3 in g even when the
        // part {1, 4} itself is disconnected.
        let g = unit_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let m = Metric::new(&g);
        assert_eq!(weak_diameter(&m, &[1]), 0);
        assert_eq!(weak_diameter(&m, &[1, 4]), 3);
    }

    #[test]
    fn leaf_weak_diameter_obeys_the_chop_bound_on_sp_inputs() {
        // Three levels of sharp width-4 chops on generated series-parallel
        // graphs: every leaf has weak diameter at most 22 * 4 * 4.
        use crate::generate::{generate_series_parallel, GeneratorConfig};
        let cfg = GeneratorConfig::default();
        for seed in 0..20 {
            let g = generate_series_parallel(seed, 40, &cfg);
            let m = Metric::new(&g);
            let tree = recursive_chops(&g, 3, &PlainChop { delta: Ratio::int(4) }).unwrap();
            for leaf in &tree.leaves {
                assert!(weak_diameter(&m, &leaf.vertices) <= 22 * 4 * 4, "seed {seed}");
            }
        }
    }
}

/// Dijkstra distances within the subgraph induced by `verts`, from `root`.
/// Used by chop builders that need component-local metrics without
/// relabeling.
pub fn component_distances(
    g: &WeightedGraph,
    verts: &[VertexId],
    root: VertexId,
) -> BTreeMap<VertexId, u64> {
    let inset: BTreeSet<VertexId> = verts.iter().copied().collect();
    debug_assert!(inset.contains(&root));
    let (sub, back) = g.induced_subgraph(verts);
    let local_root = back.binary_search(&root).expect("root in component");
    let sp = SourcePaths::compute(&sub, local_root);
    let mut out = BTreeMap::new();
    for (local, &orig) in back.iter().enumerate() {
        if let Some(d) = sp.dist(local) {
            out.insert(orig, d);
        }
    }
    out
}
