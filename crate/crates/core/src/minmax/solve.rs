use std::collections::BTreeSet;

use crate::digraph::{Path, VertexSet};
use crate::error::Result;
use crate::menger::{menger, MengerCertificate};

use super::aux::{build_aux_d, build_aux_r, build_aux_t, AuxGraph, AuxNode};
use super::cut::{Cut, DCut, RCut, TCut};
use super::sequence::{DigraphSourceSequence, RespectingPathSet, SetFamily};
use super::Target;

/// Maps an aux path back to `(part, original path, final layer node)`,
/// dropping the trailing non-copy hops.
fn lift(aux: &AuxGraph, path: &Path) -> (usize, Path, AuxNode) {
    let vs = path.vertices();
    let last = aux.node(path.sink());
    let mut part = None;
    let mut original = Vec::new();
    for &x in vs {
        if let AuxNode::Copy { part: p, vertex } = aux.node(x) {
            part.get_or_insert(p);
            original.push(vertex);
        }
    }
    let part = part.expect("aux paths start at a copy");
    (part, Path::new(original).expect("copies of one part form a path"), last)
}

fn split_separator(aux: &AuxGraph, cert: &MengerCertificate, ell: usize) -> (Vec<VertexSet>, Vec<AuxNode>) {
    let mut xs = vec![VertexSet::new(); ell];
    let mut layer = Vec::new();
    for &x in &cert.separator {
        match aux.node(x) {
            AuxNode::Copy { part, vertex } => {
                xs[part].insert(vertex);
            }
            other => layer.push(other),
        }
    }
    (xs, layer)
}

/// Bags contained in some bag whose `b_j` vertex survives the separator.
fn kept_bags(fam: &SetFamily, cut_bags: &BTreeSet<usize>) -> BTreeSet<usize> {
    let surviving: Vec<usize> = (0..fam.len()).filter(|j| !cut_bags.contains(j)).collect();
    (0..fam.len())
        .filter(|&a| {
            surviving
                .iter()
                .any(|&m| fam.bags[a].is_subset(&fam.bags[m]))
        })
        .collect()
}

pub fn solve_dpaths(seq: &DigraphSourceSequence, b: &VertexSet) -> Result<(RespectingPathSet, DCut)> {
    let aux = build_aux_d(seq, b)?;
    let cert = menger(&aux.graph, &aux.sources, &aux.targets)?;
    let mut paths = RespectingPathSet::empty(seq.len(), false);
    for p in &cert.paths {
        let (part, path, _) = lift(&aux, p);
        paths.parts[part].push(path);
    }
    paths.canonicalize();
    let (xs, layer) = split_separator(&aux, &cert, seq.len());
    let x0 = layer
        .into_iter()
        .map(|node| match node {
            AuxNode::Target(w) => w,
            other => unreachable!("unexpected separator node {other:?}"),
        })
        .collect();
    Ok((paths, DCut { x0, xs }))
}

pub fn solve_tpaths(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<(RespectingPathSet, TCut)> {
    let aux = build_aux_t(seq, fam)?;
    let cert = menger(&aux.graph, &aux.sources, &aux.targets)?;
    let mut paths = RespectingPathSet::empty(seq.len(), true);
    for p in &cert.paths {
        let (part, path, last) = lift(&aux, p);
        let AuxNode::Bag(j) = last else {
            unreachable!("T paths end at a bag vertex")
        };
        paths.parts[part].push(path);
        paths.assignment.as_mut().expect("assignment")[part].push(j);
    }
    paths.canonicalize();

    let (xs, layer) = split_separator(&aux, &cert, seq.len());
    let mut star = VertexSet::new();
    let mut cut_bags = BTreeSet::new();
    for node in layer {
        match node {
            AuxNode::Star(v) => {
                star.insert(v);
            }
            AuxNode::Bag(j) => {
                cut_bags.insert(j);
            }
            other => unreachable!("unexpected separator node {other:?}"),
        }
    }
    let kept = kept_bags(fam, &cut_bags);
    let union = fam.union_of(&kept);
    let x0 = star.intersection(&union).copied().collect();
    let cut = TCut { kept, bag_count: fam.len(), inner: DCut { x0, xs } };
    Ok((paths, cut))
}

pub fn solve_rpaths(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<(RespectingPathSet, RCut)> {
    let aux = build_aux_r(seq, fam)?;
    let cert = menger(&aux.graph, &aux.sources, &aux.targets)?;
    let mut paths = RespectingPathSet::empty(seq.len(), true);
    for p in &cert.paths {
        let (part, path, last) = lift(&aux, p);
        let AuxNode::Bag(j) = last else {
            unreachable!("R paths end at a bag vertex")
        };
        paths.parts[part].push(path);
        paths.assignment.as_mut().expect("assignment")[part].push(j);
    }
    paths.canonicalize();

    let (mut xs, layer) = split_separator(&aux, &cert, seq.len());
    let cut_bags: BTreeSet<usize> = layer
        .into_iter()
        .map(|node| match node {
            AuxNode::Bag(j) => j,
            other => unreachable!("unexpected separator node {other:?}"),
        })
        .collect();
    let kept = kept_bags(fam, &cut_bags);
    if kept.is_empty() {
        xs.iter_mut().for_each(VertexSet::clear);
    }
    Ok((paths, RCut { kept, bag_count: fam.len(), xs }))
}

/// Solves whichever variant `target` names.
pub fn solve(seq: &DigraphSourceSequence, target: Target<'_>) -> Result<(RespectingPathSet, Cut)> {
    Ok(match target {
        Target::D(b) => {
            let (p, c) = solve_dpaths(seq, b)?;
            (p, Cut::D(c))
        }
        Target::T(fam) => {
            let (p, c) = solve_tpaths(seq, fam)?;
            (p, Cut::T(c))
        }
        Target::R(fam) => {
            let (p, c) = solve_rpaths(seq, fam)?;
            (p, Cut::R(c))
        }
    })
}
