//! JSON interchange formats.
//!
//! The graph format is the common currency of every command:
//! `{"n": int, "edges": [[u, v, w], ...], "root": int|null,
//! "terminals": [int, ...]|null}`. Serialization is deterministic (struct
//! field order, sorted edge lists), so identical inputs produce identical
//! bytes. Chop and partition files carry exact rational width fields next
//! to the float ones so that a round-trip loses nothing.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use hammock_core::chops::FuzzyChop;
use hammock_core::graph::{GraphError, VertexId, WeightedGraph};
use hammock_core::hammock::{Hammock, HammockDecomposition, HammockForest, HammockStage};
use hammock_core::ratio::Ratio;
use hammock_core::scattering::{ChopMove, MoveRule, ScatteringChop, ScatteringPartition};
use hammock_core::spr::{Distortion, SprMinor};
use hammock_core::tree::RootedBfsTree;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, u64)>,
    #[serde(default)]
    pub root: Option<usize>,
    #[serde(default)]
    pub terminals: Option<Vec<usize>>,
}

impl GraphJson {
    pub fn from_graph(g: &WeightedGraph, root: Option<usize>, terminals: Option<Vec<usize>>) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.u, e.v, e.w)).collect(),
            root,
            terminals,
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph, GraphError> {
        WeightedGraph::new(self.n, &self.edges)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HammockJson {
    pub class: usize,
    #[serde(rename = "treeA")]
    pub tree_a: Vec<usize>,
    #[serde(rename = "treeB")]
    pub tree_b: Vec<usize>,
    #[serde(rename = "rootA")]
    pub root_a: usize,
    #[serde(rename = "rootB")]
    pub root_b: usize,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DecompositionJson {
    pub t0: Vec<usize>,
    pub ep: Vec<(usize, usize)>,
    pub hammocks: Vec<HammockJson>,
}

impl DecompositionJson {
    pub fn from_decomposition(g: &WeightedGraph, hd: &HammockDecomposition) -> Self {
        let hams = &hd.forest.hammocks;
        DecompositionJson {
            t0: hd.base_tree_verts.iter().copied().collect(),
            ep: hd
                .parent_edges
                .iter()
                .map(|&e| {
                    let ed = g.edge(e);
                    (ed.u, ed.v)
                })
                .collect(),
            hammocks: hams
                .iter()
                .enumerate()
                .map(|(i, h)| HammockJson {
                    class: h.class_id,
                    tree_a: h.tree_a.iter().copied().collect(),
                    tree_b: h.tree_b.iter().copied().collect(),
                    root_a: h.root_a,
                    root_b: h.root_b,
                    parent: hd.forest.parent_of[i].map(|p| hams[p].class_id),
                })
                .collect(),
        }
    }

    /// Rebuilds the in-memory decomposition. Hammock edge sets are the
    /// induced edges; base tree edges are whatever remains unclaimed with
    /// both endpoints in `t0`, so a corrupted file still round-trips into
    /// something the verifier can judge.
    pub fn to_decomposition(
        &self,
        g: &WeightedGraph,
    ) -> Result<HammockDecomposition, String> {
        let mut hammocks = Vec::new();
        let mut class_to_index = BTreeMap::new();
        for (i, hj) in self.hammocks.iter().enumerate() {
            class_to_index.insert(hj.class, i);
        }
        let mut owned: BTreeSet<usize> = BTreeSet::new();
        for hj in &self.hammocks {
            let tree_a: BTreeSet<VertexId> = hj.tree_a.iter().copied().collect();
            let tree_b: BTreeSet<VertexId> = hj.tree_b.iter().copied().collect();
            for &v in tree_a.iter().chain(tree_b.iter()) {
                if v >= g.vertex_count() {
                    return Err(format!("hammock vertex {v} out of range"));
                }
            }
            let verts: BTreeSet<VertexId> = tree_a.union(&tree_b).copied().collect();
            let mut edges = BTreeSet::new();
            for &v in &verts {
                for &(w, e) in g.neighbors(v) {
                    if w > v && verts.contains(&w) {
                        edges.insert(e);
                    }
                }
            }
            owned.extend(edges.iter().copied());
            hammocks.push(Hammock {
                class_id: hj.class,
                tree_a,
                tree_b,
                root_a: hj.root_a,
                root_b: hj.root_b,
                edges,
                stage: HammockStage::Final,
            });
        }
        let mut parent_edges = Vec::new();
        for &(u, v) in &self.ep {
            let e = g
                .edge_id(u, v)
                .ok_or_else(|| format!("parent edge {u}-{v} not in graph"))?;
            parent_edges.push(e);
        }
        let mut parent_of = Vec::new();
        let mut roots = Vec::new();
        for (i, hj) in self.hammocks.iter().enumerate() {
            match hj.parent {
                Some(c) => {
                    let p = *class_to_index
                        .get(&c)
                        .ok_or_else(|| format!("unknown parent class {c}"))?;
                    parent_of.push(Some(p));
                }
                None => {
                    parent_of.push(None);
                    roots.push(i);
                }
            }
        }
        let base_tree_verts: BTreeSet<VertexId> = self.t0.iter().copied().collect();
        let ep_set: BTreeSet<usize> = parent_edges.iter().copied().collect();
        let base_tree_edges: BTreeSet<usize> = (0..g.edge_count())
            .filter(|e| !owned.contains(e) && !ep_set.contains(e))
            .filter(|&e| {
                let ed = g.edge(e);
                base_tree_verts.contains(&ed.u) && base_tree_verts.contains(&ed.v)
            })
            .collect();
        Ok(HammockDecomposition {
            base_tree_verts,
            base_tree_edges,
            forest: HammockForest { hammocks, parent_of, roots },
            parent_edges,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MoveJson {
    pub vertex: usize,
    pub from: i64,
    pub to: i64,
    pub rule: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChopJson {
    pub delta: f64,
    pub fuzz: f64,
    #[serde(rename = "deltaNum")]
    pub delta_num: i64,
    #[serde(rename = "deltaDen")]
    pub delta_den: i64,
    #[serde(rename = "fuzzNum")]
    pub fuzz_num: i64,
    #[serde(rename = "fuzzDen")]
    pub fuzz_den: i64,
    pub root: usize,
    pub annulus: Vec<i64>,
    #[serde(default)]
    pub moves: Vec<MoveJson>,
    #[serde(rename = "tauObserved", default)]
    pub tau_observed: Option<usize>,
}

fn rule_name(rule: MoveRule) -> &'static str {
    match rule {
        MoveRule::PullDown => "a-i",
        MoveRule::PushUp => "a-ii",
        MoveRule::BaseTree => "base-tree",
    }
}

impl ChopJson {
    pub fn from_fuzzy(chop: &FuzzyChop, n: usize) -> Self {
        let mut annulus = vec![0i64; n];
        for (&v, &i) in &chop.annulus {
            annulus[v] = i;
        }
        ChopJson {
            delta: chop.delta.to_f64(),
            fuzz: chop.fuzz.to_f64(),
            delta_num: chop.delta.num(),
            delta_den: chop.delta.den(),
            fuzz_num: chop.fuzz.num(),
            fuzz_den: chop.fuzz.den(),
            root: chop.root,
            annulus,
            moves: Vec::new(),
            tau_observed: None,
        }
    }

    pub fn from_scattering(sc: &ScatteringChop, n: usize) -> Self {
        let mut out = Self::from_fuzzy(&sc.chop, n);
        out.moves = sc
            .moves
            .iter()
            .map(|m: &ChopMove| MoveJson {
                vertex: m.vertex,
                from: m.from,
                to: m.to,
                rule: rule_name(m.rule).to_string(),
            })
            .collect();
        out.tau_observed = sc.tau_observed;
        out
    }

    /// Reconstructs the fuzzy chop; distances are recomputed from the graph.
    pub fn to_fuzzy(&self, g: &WeightedGraph) -> Result<FuzzyChop, String> {
        if self.annulus.len() != g.vertex_count() {
            return Err("annulus length mismatch".to_string());
        }
        let t = RootedBfsTree::build(g, self.root).map_err(|e| e.to_string())?;
        let mut annulus = BTreeMap::new();
        let mut dist = BTreeMap::new();
        for v in 0..g.vertex_count() {
            annulus.insert(v, self.annulus[v]);
            dist.insert(v, t.depth(v));
        }
        Ok(FuzzyChop {
            delta: Ratio::new(self.delta_num, self.delta_den),
            fuzz: Ratio::new(self.fuzz_num, self.fuzz_den),
            root: self.root,
            annulus,
            dist,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PartitionJson {
    pub delta: u64,
    pub parts: Vec<Vec<usize>>,
    #[serde(rename = "tauObserved")]
    pub tau_observed: usize,
    #[serde(rename = "tauBudget")]
    pub tau_budget: usize,
    #[serde(rename = "weakDiameters")]
    pub weak_diameters: Vec<u64>,
}

impl PartitionJson {
    pub fn from_partition(p: &ScatteringPartition) -> Self {
        PartitionJson {
            delta: p.delta,
            parts: p.parts.clone(),
            tau_observed: p.tau_observed,
            tau_budget: p.tau_budget,
            weak_diameters: p.weak_diameters.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SprResultJson {
    pub minor: GraphJson,
    /// Per graph vertex: the original id of the terminal it was contracted
    /// into, or null.
    pub witness: Vec<Option<usize>>,
    pub distortion: f64,
    #[serde(rename = "distortionNum")]
    pub distortion_num: u64,
    #[serde(rename = "distortionDen")]
    pub distortion_den: u64,
    pub argmax: (usize, usize),
}

impl SprResultJson {
    pub fn from_result(m: &SprMinor, d: &Distortion) -> Self {
        SprResultJson {
            minor: GraphJson::from_graph(&m.minor, None, Some(m.terminals.clone())),
            witness: (0..m.witness.len()).map(|v| m.assigned_terminal(v)).collect(),
            distortion: d.ratio(),
            distortion_num: d.numer,
            distortion_den: d.denom,
            argmax: d.argmax,
        }
    }

    pub fn to_minor(&self) -> Result<SprMinor, String> {
        let minor = self.minor.to_graph().map_err(|e| e.to_string())?;
        let terminals = self
            .minor
            .terminals
            .clone()
            .ok_or("minor graph missing terminal list")?;
        let index_of: BTreeMap<usize, usize> = terminals
            .iter()
            .copied()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let witness = self
            .witness
            .iter()
            .map(|w| match w {
                None => Ok(None),
                Some(t) => index_of
                    .get(t)
                    .copied()
                    .map(Some)
                    .ok_or_else(|| format!("witness terminal {t} unknown")),
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(SprMinor { minor, terminals, witness })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EarJson {
    pub verts: Vec<usize>,
    pub cross: (usize, usize),
    pub hammock: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EarsJson {
    pub ears: Vec<EarJson>,
}

/// Verification outcome of any artifact kind, as emitted by `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub kind: String,
    pub input: String,
    pub passed: bool,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, serde_json::Value>,
}

pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hammock_core::generate::{generate_series_parallel, GeneratorConfig};
    use hammock_core::hammock::decompose;

    #[test]
    fn graph_round_trip_is_exact() {
        let g = generate_series_parallel(3, 20, &GeneratorConfig::default());
        let j = GraphJson::from_graph(&g, Some(0), None);
        let text = to_pretty(&j);
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn decomposition_round_trip_preserves_structure() {
        let g = generate_series_parallel(11, 30, &GeneratorConfig::default());
        let (_t, hd) = decompose(&g, 0).unwrap();
        let j = DecompositionJson::from_decomposition(&g, &hd);
        let text = to_pretty(&j);
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let hd2 = back.to_decomposition(&g).unwrap();
        assert_eq!(hd2.base_tree_verts, hd.base_tree_verts);
        assert_eq!(hd2.base_tree_edges, hd.base_tree_edges);
        assert_eq!(hd2.parent_edges, hd.parent_edges);
        assert_eq!(hd2.forest.parent_of, hd.forest.parent_of);
        for (a, b) in hd2.forest.hammocks.iter().zip(&hd.forest.hammocks) {
            assert_eq!(a.tree_a, b.tree_a);
            assert_eq!(a.tree_b, b.tree_b);
            assert_eq!(a.edges, b.edges);
        }
    }
}
