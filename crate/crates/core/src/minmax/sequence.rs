use std::collections::BTreeSet;

use crate::digraph::{Digraph, Path, VertexSet};
use crate::error::{Error, Result};

/// One `(G_i, S_i)` pair. `members` restricts `V(G_i)` to a subset of the
/// id range `0..n`; without it every id below `n` is a vertex of `G_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceEntry {
    graph: Digraph,
    sources: VertexSet,
    members: Option<VertexSet>,
}

impl SequenceEntry {
    pub fn new(graph: Digraph, sources: VertexSet) -> Result<Self> {
        graph.check_vertices(&sources)?;
        Ok(SequenceEntry { graph, sources, members: None })
    }

    pub fn with_members(graph: Digraph, sources: VertexSet, members: VertexSet) -> Result<Self> {
        graph.check_vertices(&members)?;
        if let Some(&s) = sources.iter().find(|s| !members.contains(s)) {
            return Err(Error::invalid(format!("source {s} is not a vertex of its digraph")));
        }
        if let Some(&(u, v)) = graph
            .edges()
            .iter()
            .find(|(u, v)| !members.contains(u) || !members.contains(v))
        {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) leaves the declared vertex set"
            )));
        }
        Ok(SequenceEntry { graph, sources, members: Some(members) })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn sources(&self) -> &VertexSet {
        &self.sources
    }

    pub fn members(&self) -> Option<&VertexSet> {
        self.members.as_ref()
    }

    pub fn contains(&self, v: usize) -> bool {
        match &self.members {
            Some(m) => m.contains(&v),
            None => v < self.graph.vertex_count(),
        }
    }

    /// `V(G_i)` in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        match &self.members {
            Some(m) => m.iter().copied().collect(),
            None => (0..self.graph.vertex_count()).collect(),
        }
    }
}

/// An ordered, non-empty list of digraphs with source sets over a shared
/// vertex universe: equal ids in different entries are the same vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphSourceSequence {
    entries: Vec<SequenceEntry>,
}

impl DigraphSourceSequence {
    pub fn new(entries: Vec<SequenceEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(DigraphSourceSequence { entries })
    }

    pub fn single(graph: Digraph, sources: VertexSet) -> Result<Self> {
        Self::new(vec![SequenceEntry::new(graph, sources)?])
    }

    /// `ell` copies of `(gs, s)` followed by `ell` copies of `(gt, t)`.
    pub fn doubled(gs: &Digraph, s: &VertexSet, gt: &Digraph, t: &VertexSet, ell: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(2 * ell);
        for _ in 0..ell {
            entries.push(SequenceEntry::new(gs.clone(), s.clone())?);
        }
        for _ in 0..ell {
            entries.push(SequenceEntry::new(gt.clone(), t.clone())?);
        }
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SequenceEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &SequenceEntry {
        &self.entries[i]
    }

    pub fn universe(&self) -> VertexSet {
        self.entries.iter().flat_map(|e| e.vertices()).collect()
    }

    pub fn check_in_universe<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        for &v in vs {
            if !self.entries.iter().any(|e| e.contains(v)) {
                return Err(Error::NotInUniverse(v));
            }
        }
        Ok(())
    }
}

/// An indexed family of vertex sets. Bags are identified by position, so
/// equal bags at different indices are different members of the family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetFamily {
    pub bags: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(bags: Vec<VertexSet>) -> Self {
        SetFamily { bags }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn union(&self) -> VertexSet {
        self.bags.iter().flatten().copied().collect()
    }

    pub fn union_of(&self, indices: &BTreeSet<usize>) -> VertexSet {
        indices.iter().flat_map(|&j| self.bags[j].iter().copied()).collect()
    }

    pub fn check_in(&self, seq: &DigraphSourceSequence) -> Result<()> {
        seq.check_in_universe(self.bags.iter().flatten())
    }
}

/// Paths grouped by sequence entry; for the T and R variants `assignment`
/// is parallel to `parts` and names the bag each path is matched to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RespectingPathSet {
    pub parts: Vec<Vec<Path>>,
    pub assignment: Option<Vec<Vec<usize>>>,
}

impl RespectingPathSet {
    pub fn empty(ell: usize, with_assignment: bool) -> Self {
        RespectingPathSet {
            parts: vec![Vec::new(); ell],
            assignment: with_assignment.then(|| vec![Vec::new(); ell]),
        }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn paths(&self) -> impl Iterator<Item = (usize, &Path)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, part)| part.iter().map(move |p| (i, p)))
    }

    pub fn bag_of(&self, part: usize, index: usize) -> Option<usize> {
        self.assignment.as_ref().map(|a| a[part][index])
    }

    /// Sorts each part by source, keeping the assignment aligned.
    pub fn canonicalize(&mut self) {
        for i in 0..self.parts.len() {
            let mut order: Vec<usize> = (0..self.parts[i].len()).collect();
            order.sort_by(|&x, &y| self.parts[i][x].cmp(&self.parts[i][y]));
            self.parts[i] = order.iter().map(|&x| self.parts[i][x].clone()).collect();
            if let Some(a) = &mut self.assignment {
                a[i] = order.iter().map(|&x| a[i][x]).collect();
            }
        }
    }
}
