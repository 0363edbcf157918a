use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::digraph::VertexSet;

use super::cut::{Cut, DCut};
use super::sequence::{DigraphSourceSequence, RespectingPathSet};
use super::Target;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

impl Violation {
    pub fn new(rule: &str, detail: impl Into<String>) -> Self {
        Violation { rule: rule.to_string(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, rule: &str, detail: impl Into<String>) {
        self.violations.push(Violation::new(rule, detail));
    }
}

/// Checks every defining condition of a respecting path set for the variant
/// named by `target`. Never panics on malformed candidates.
pub fn verify_paths(seq: &DigraphSourceSequence, target: Target<'_>, candidate: &RespectingPathSet) -> Verdict {
    let mut v = Verdict::default();
    if candidate.parts.len() != seq.len() {
        v.push(
            "partition",
            format!("{} parts for a sequence of size {}", candidate.parts.len(), seq.len()),
        );
        return v;
    }

    for (i, part) in candidate.parts.iter().enumerate() {
        let entry = seq.entry(i);
        let mut used = BTreeSet::new();
        for (j, p) in part.iter().enumerate() {
            if p.vertices().iter().any(|&x| !entry.contains(x)) || !p.is_path_in(entry.graph()) {
                v.push("path", format!("part {i} path {j} is not a path of its digraph"));
            }
            if !entry.sources().contains(&p.source()) {
                v.push("source", format!("part {i} path {j} does not start in the source set"));
            }
            for &x in p.vertices() {
                if !used.insert(x) {
                    v.push("disjoint", format!("part {i} uses vertex {x} twice"));
                }
            }
        }
    }

    let sinks: Vec<usize> = candidate.paths().map(|(_, p)| p.sink()).collect();
    if matches!(target, Target::D(_) | Target::T(_)) {
        let mut seen = BTreeSet::new();
        for &s in &sinks {
            if !seen.insert(s) {
                v.push("distinct-sinks", format!("sink {s} ends more than one path"));
            }
        }
    }

    match target {
        Target::D(b) => {
            for &s in &sinks {
                if !b.contains(&s) {
                    v.push("sink-in-target", format!("sink {s} is not in the target set"));
                }
            }
        }
        Target::T(fam) | Target::R(fam) => {
            let Some(assignment) = &candidate.assignment else {
                v.push("assignment", "missing sink-to-bag assignment");
                return v;
            };
            if assignment.len() != candidate.parts.len()
                || assignment.iter().zip(&candidate.parts).any(|(a, p)| a.len() != p.len())
            {
                v.push("assignment", "assignment shape does not match the paths");
                return v;
            }
            let mut owner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            for (i, part) in candidate.parts.iter().enumerate() {
                for (j, p) in part.iter().enumerate() {
                    let bag = assignment[i][j];
                    if bag >= fam.len() {
                        v.push("assignment", format!("bag index {bag} out of range"));
                        continue;
                    }
                    if !fam.bags[bag].contains(&p.sink()) {
                        v.push(
                            "sink-in-bag",
                            format!("sink {} of part {i} path {j} is not in bag {bag}", p.sink()),
                        );
                    }
                    if let Some((pi, pj)) = owner.insert(bag, (i, j)) {
                        v.push(
                            "injective",
                            format!("bag {bag} is assigned to part {pi} path {pj} and part {i} path {j}"),
                        );
                    }
                }
            }
        }
    }
    v
}

fn check_dcut(seq: &DigraphSourceSequence, b: &VertexSet, cut: &DCut, v: &mut Verdict) {
    if cut.xs.len() != seq.len() {
        v.push("shape", format!("{} separators for a sequence of size {}", cut.xs.len(), seq.len()));
        return;
    }
    if let Some(x) = cut.x0.iter().find(|x| !b.contains(x)) {
        v.push("x0-subset", format!("x0 vertex {x} is outside the target set"));
    }
    let rest: VertexSet = b.difference(&cut.x0).copied().collect();
    separates_all(seq, &rest, &cut.xs, v);
}

fn separates_all(seq: &DigraphSourceSequence, targets: &VertexSet, xs: &[VertexSet], v: &mut Verdict) {
    for (i, x) in xs.iter().enumerate() {
        let entry = seq.entry(i);
        if let Some(y) = x.iter().find(|&&y| !entry.contains(y)) {
            v.push("separator-subset", format!("separator {i} contains {y}, not a vertex of its digraph"));
        }
        if entry.graph().connects(entry.sources(), targets, x) {
            v.push("separates", format!("separator {i} leaves a path from the sources to the targets"));
        }
    }
}

fn check_kept(kept: &BTreeSet<usize>, bag_count: usize, actual: usize, v: &mut Verdict) -> bool {
    if bag_count != actual {
        v.push("shape", format!("cut counts {bag_count} bags, family has {actual}"));
        return false;
    }
    if let Some(j) = kept.iter().find(|&&j| j >= actual) {
        v.push("kept", format!("kept bag index {j} out of range"));
        return false;
    }
    true
}

/// Checks that a cut certificate is valid for the variant named by `target`.
pub fn verify_cut(seq: &DigraphSourceSequence, target: Target<'_>, candidate: &Cut) -> Verdict {
    let mut v = Verdict::default();
    match (target, candidate) {
        (Target::D(b), Cut::D(cut)) => check_dcut(seq, b, cut, &mut v),
        (Target::T(fam), Cut::T(cut)) => {
            if check_kept(&cut.kept, cut.bag_count, fam.len(), &mut v) {
                check_dcut(seq, &fam.union_of(&cut.kept), &cut.inner, &mut v);
            }
        }
        (Target::R(fam), Cut::R(cut)) => {
            if !check_kept(&cut.kept, cut.bag_count, fam.len(), &mut v) {
                return v;
            }
            if cut.xs.len() != seq.len() {
                v.push("shape", format!("{} separators for a sequence of size {}", cut.xs.len(), seq.len()));
                return v;
            }
            if cut.kept.is_empty() && cut.xs.iter().any(|x| !x.is_empty()) {
                v.push("empty-kept", "no bag is kept but some separator is non-empty");
            }
            separates_all(seq, &fam.union_of(&cut.kept), &cut.xs, &mut v);
        }
        (t, c) => v.push(
            "variant",
            format!("a {:?} cut cannot certify a {:?} target", c.variant(), t.variant()),
        ),
    }
    v
}
