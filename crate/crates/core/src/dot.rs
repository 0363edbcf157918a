//! Graphviz export.

use std::fmt::Write;

use crate::digraph::Digraph;
use crate::minmax::{AuxGraph, AuxNode};

pub fn digraph_to_dot(g: &Digraph) -> String {
    render(g, |v| v.to_string())
}

/// Copies are labelled `i:v`, target vertices `v`, the `V*` layer `*v` and
/// bag vertices `b{j}`.
pub fn aux_to_dot(aux: &AuxGraph) -> String {
    render(&aux.graph, |x| match aux.node(x) {
        AuxNode::Copy { part, vertex } => format!("{part}:{vertex}"),
        AuxNode::Target(v) => v.to_string(),
        AuxNode::Star(v) => format!("*{v}"),
        AuxNode::Bag(j) => format!("b{j}"),
    })
}

fn render(g: &Digraph, label: impl Fn(usize) -> String) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", label(v));
    }
    for u in 0..g.vertex_count() {
        for &w in g.out_neighbors(u) {
            let _ = writeln!(out, "  {u} -> {w};");
        }
    }
    out.push_str("}\n");
    out
}

/// Vertex and edge statement counts of a DOT document produced here.
pub fn dot_counts(dot: &str) -> (usize, usize) {
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    let vertices = dot.lines().filter(|l| l.contains("[label=")).count();
    (vertices, edges)
}
