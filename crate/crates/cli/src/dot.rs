//! DOT export for graphs and decompositions.

use std::fmt::Write;

use hammock_core::graph::WeightedGraph;
use hammock_core::hammock::HammockDecomposition;
use hammock_core::tree::RootedBfsTree;

const PALETTE: &[&str] = &[
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#1b9e77",
    "#7570b3", "#66a61e",
];

/// Graph with BFS tree edges solid and cross edges dashed.
pub fn graph_dot(g: &WeightedGraph, t: &RootedBfsTree) -> String {
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    let _ = writeln!(out, "  {} [shape=doublecircle];", t.root);
    for (id, e) in g.edges().iter().enumerate() {
        let style = if t.is_tree_edge(id) { "solid" } else { "dashed" };
        let label = if e.w != 1 {
            format!(", label=\"{}\"", e.w)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {} -- {} [style={}{}];", e.u, e.v, style, label);
    }
    out.push_str("}\n");
    out
}

/// Decomposition with one color per hammock, the base tree in dark red and
/// parent edges dotted.
pub fn decomposition_dot(
    g: &WeightedGraph,
    t: &RootedBfsTree,
    hd: &HammockDecomposition,
) -> String {
    let mut owner = vec![None; g.edge_count()];
    for (i, h) in hd.forest.hammocks.iter().enumerate() {
        for &e in &h.edges {
            owner[e] = Some(i);
        }
    }
    let ep: std::collections::BTreeSet<usize> = hd.parent_edges.iter().copied().collect();
    let mut out = String::from("graph {\n  node [shape=circle];\n");
    let _ = writeln!(out, "  {} [shape=doublecircle];", t.root);
    for (i, h) in hd.forest.hammocks.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for &v in h.tree_a.iter().chain(h.tree_b.iter()) {
            let _ = writeln!(out, "  {v} [color=\"{color}\"];");
        }
    }
    for (id, e) in g.edges().iter().enumerate() {
        let attr = if let Some(i) = owner[id] {
            let color = PALETTE[i % PALETTE.len()];
            let style = if t.is_tree_edge(id) { "solid" } else { "dashed" };
            format!("color=\"{color}\", style={style}, penwidth=2")
        } else if ep.contains(&id) {
            "style=dotted, penwidth=2".to_string()
        } else {
            "color=\"#8b0000\", style=bold".to_string()
        };
        let _ = writeln!(out, "  {} -- {} [{}];", e.u, e.v, attr);
    }
    out.push_str("}\n");
    out
}
