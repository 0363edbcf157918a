//! Auxiliary digraphs: disjoint copies of every `G_i`, followed by the
//! variant-specific target layers.

use crate::digraph::{Digraph, VertexSet};
use crate::error::Result;

use super::sequence::{DigraphSourceSequence, SetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxNode {
    /// Copy of `vertex` in entry `part`.
    Copy { part: usize, vertex: usize },
    /// Target vertex of the D construction.
    Target(usize),
    /// The layer `V*` of the T construction.
    Star(usize),
    /// The `b_j` vertex of bag `j`.
    Bag(usize),
}

#[derive(Clone, Debug)]
pub struct AuxGraph {
    pub graph: Digraph,
    pub sources: VertexSet,
    pub targets: VertexSet,
    pub nodes: Vec<AuxNode>,
    part_vertices: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    layer_start: usize,
}

impl AuxGraph {
    pub fn copy_of(&self, part: usize, vertex: usize) -> Option<usize> {
        self.part_vertices
            .get(part)?
            .binary_search(&vertex)
            .ok()
            .map(|pos| self.offsets[part] + pos)
    }

    pub fn copy_count(&self) -> usize {
        self.layer_start
    }

    pub fn node(&self, id: usize) -> AuxNode {
        self.nodes[id]
    }
}

struct Builder {
    nodes: Vec<AuxNode>,
    edges: Vec<(usize, usize)>,
    part_vertices: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    sources: VertexSet,
}

impl Builder {
    fn copies(seq: &DigraphSourceSequence) -> Self {
        let mut b = Builder {
            nodes: Vec::new(),
            edges: Vec::new(),
            part_vertices: Vec::new(),
            offsets: Vec::new(),
            sources: VertexSet::new(),
        };
        for (part, entry) in seq.entries().iter().enumerate() {
            let vertices = entry.vertices();
            let offset = b.nodes.len();
            let local = |v: usize| offset + vertices.binary_search(&v).expect("member vertex");
            b.nodes.extend(vertices.iter().map(|&vertex| AuxNode::Copy { part, vertex }));
            for &u in &vertices {
                for &w in entry.graph().out_neighbors(u) {
                    b.edges.push((local(u), local(w)));
                }
            }
            b.sources.extend(entry.sources().iter().map(|&s| local(s)));
            b.offsets.push(offset);
            b.part_vertices.push(vertices);
        }
        b
    }

    fn copies_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.part_vertices
            .iter()
            .zip(&self.offsets)
            .filter_map(move |(vs, &off)| vs.binary_search(&v).ok().map(|p| off + p))
    }

    fn finish(self, targets: VertexSet, layer_start: usize) -> AuxGraph {
        let graph = Digraph::new(self.nodes.len(), self.edges).expect("aux ids in range");
        AuxGraph {
            graph,
            sources: self.sources,
            targets,
            nodes: self.nodes,
            part_vertices: self.part_vertices,
            offsets: self.offsets,
            layer_start,
        }
    }
}

pub fn build_aux_d(seq: &DigraphSourceSequence, b: &VertexSet) -> Result<AuxGraph> {
    seq.check_in_universe(b)?;
    let mut builder = Builder::copies(seq);
    let layer_start = builder.nodes.len();
    let mut targets = VertexSet::new();
    for &w in b {
        let id = builder.nodes.len();
        builder.nodes.push(AuxNode::Target(w));
        targets.insert(id);
        let feeders: Vec<usize> = builder.copies_of(w).collect();
        builder.edges.extend(feeders.into_iter().map(|c| (c, id)));
    }
    Ok(builder.finish(targets, layer_start))
}

pub fn build_aux_t(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<AuxGraph> {
    fam.check_in(seq)?;
    let mut builder = Builder::copies(seq);
    let layer_start = builder.nodes.len();
    let star: Vec<usize> = fam.union().into_iter().collect();
    for &v in &star {
        let id = builder.nodes.len();
        builder.nodes.push(AuxNode::Star(v));
        let feeders: Vec<usize> = builder.copies_of(v).collect();
        builder.edges.extend(feeders.into_iter().map(|c| (c, id)));
    }
    let mut targets = VertexSet::new();
    for (j, bag) in fam.bags.iter().enumerate() {
        let id = builder.nodes.len();
        builder.nodes.push(AuxNode::Bag(j));
        targets.insert(id);
        for v in bag {
            let pos = star.binary_search(v).expect("bag member in union");
            builder.edges.push((layer_start + pos, id));
        }
    }
    Ok(builder.finish(targets, layer_start))
}

pub fn build_aux_r(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<AuxGraph> {
    fam.check_in(seq)?;
    let mut builder = Builder::copies(seq);
    let layer_start = builder.nodes.len();
    let mut targets = VertexSet::new();
    for (j, bag) in fam.bags.iter().enumerate() {
        let id = builder.nodes.len();
        builder.nodes.push(AuxNode::Bag(j));
        targets.insert(id);
        let feeders: Vec<usize> = bag.iter().flat_map(|&v| builder.copies_of(v)).collect();
        builder.edges.extend(feeders.into_iter().map(|c| (c, id)));
    }
    Ok(builder.finish(targets, layer_start))
}
