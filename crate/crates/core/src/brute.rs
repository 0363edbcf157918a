//! Exhaustive ground truth for the path and cut problems on tiny instances.
//!
//! Path families are enumerated directly from the definitions; cuts are
//! minimised over every target subfamily with per-entry separators found by
//! trying every vertex subset. Nothing here uses max-flow.

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{Path, VertexSet};
use crate::error::{Error, Result};
use crate::minmax::{Cut, DCut, DigraphSourceSequence, RCut, RespectingPathSet, SequenceEntry, TCut, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleGate {
    pub max_total_vertices: usize,
    pub max_paths: usize,
    pub max_bags: usize,
}

impl Default for ScaleGate {
    fn default() -> Self {
        ScaleGate { max_total_vertices: 10, max_paths: 6, max_bags: 5 }
    }
}

#[derive(Clone, Debug)]
pub struct BruteMax {
    pub value: usize,
    pub witness: RespectingPathSet,
}

#[derive(Clone, Debug)]
pub struct BruteCut {
    pub value: usize,
    pub witness: Cut,
}

/// Bit positions for the vertices of the universe.
struct Bits {
    ids: Vec<usize>,
}

impl Bits {
    fn new(seq: &DigraphSourceSequence) -> Self {
        Bits { ids: seq.universe().into_iter().collect() }
    }

    fn bit(&self, v: usize) -> u64 {
        match self.ids.binary_search(&v) {
            Ok(p) => 1 << p,
            Err(_) => 0,
        }
    }

    fn mask<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> u64 {
        vs.into_iter().fold(0, |m, &v| m | self.bit(v))
    }

    fn set(&self, mask: u64) -> VertexSet {
        self.ids
            .iter()
            .enumerate()
            .filter(|(p, _)| mask >> p & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }
}

fn gate(seq: &DigraphSourceSequence, target: Target<'_>, gate: &ScaleGate) -> Result<()> {
    let universe = seq.universe().len();
    if universe > gate.max_total_vertices || universe > 63 {
        return Err(Error::TooLarge(format!(
            "{universe} vertices exceed the limit of {}",
            gate.max_total_vertices
        )));
    }
    let sources: usize = seq.entries().iter().map(|e| e.sources().len()).sum();
    let bound = match target {
        Target::D(b) => sources.min(b.len()),
        Target::T(fam) => {
            if fam.len() > gate.max_bags {
                return Err(Error::TooLarge(format!("{} bags exceed the limit of {}", fam.len(), gate.max_bags)));
            }
            sources.min(fam.len()).min(fam.union().len())
        }
        Target::R(fam) => {
            if fam.len() > gate.max_bags {
                return Err(Error::TooLarge(format!("{} bags exceed the limit of {}", fam.len(), gate.max_bags)));
            }
            sources.min(fam.len())
        }
    };
    if bound > gate.max_paths {
        return Err(Error::TooLarge(format!(
            "up to {bound} paths exceed the limit of {}",
            gate.max_paths
        )));
    }
    Ok(())
}

/// Every sink set of a family of disjoint paths from the sources of `entry`
/// with all sinks in `sink_ok`, with one witness family each.
fn linkable(entry: &SequenceEntry, bits: &Bits, sink_ok: u64) -> HashMap<u64, Vec<Path>> {
    struct Search<'a> {
        entry: &'a SequenceEntry,
        bits: &'a Bits,
        sink_ok: u64,
        sources: Vec<usize>,
        found: HashMap<u64, Vec<Path>>,
    }

    impl Search<'_> {
        fn families(&mut self, next: usize, used: u64, sinks: u64, chosen: &mut Vec<Path>) {
            self.found.entry(sinks).or_insert_with(|| chosen.clone());
            for j in next..self.sources.len() {
                let s = self.sources[j];
                if used & self.bits.bit(s) != 0 {
                    continue;
                }
                let mut walk = vec![s];
                self.extend(j, used | self.bits.bit(s), sinks, &mut walk, chosen);
            }
        }

        fn extend(&mut self, j: usize, used: u64, sinks: u64, walk: &mut Vec<usize>, chosen: &mut Vec<Path>) {
            let last = *walk.last().expect("non-empty");
            let b = self.bits.bit(last);
            if self.sink_ok & b != 0 {
                chosen.push(Path::new(walk.clone()).expect("simple by construction"));
                self.families(j + 1, used, sinks | b, chosen);
                chosen.pop();
            }
            let graph = self.entry.graph();
            for &w in graph.out_neighbors(last) {
                let wb = self.bits.bit(w);
                if used & wb == 0 {
                    walk.push(w);
                    self.extend(j, used | wb, sinks, walk, chosen);
                    walk.pop();
                }
            }
        }
    }

    let mut search = Search {
        entry,
        bits,
        sink_ok,
        sources: entry.sources().iter().copied().collect(),
        found: HashMap::new(),
    };
    search.families(0, 0, 0, &mut Vec::new());
    search.found
}

/// Maximum matching of sink bits into bag indices. Returns bag per sink bit.
fn match_into_bags(sinks: u64, bag_masks: &[u64]) -> HashMap<u32, usize> {
    fn try_bit(bit: u32, bag_masks: &[u64], seen: &mut [bool], owner: &mut [Option<u32>]) -> bool {
        for (j, &m) in bag_masks.iter().enumerate() {
            if m >> bit & 1 == 1 && !seen[j] {
                seen[j] = true;
                if owner[j].is_none() || try_bit(owner[j].unwrap(), bag_masks, seen, owner) {
                    owner[j] = Some(bit);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; bag_masks.len()];
    for bit in 0..64 {
        if sinks >> bit & 1 == 1 {
            let mut seen = vec![false; bag_masks.len()];
            try_bit(bit, bag_masks, &mut seen, &mut owner);
        }
    }
    owner
        .iter()
        .enumerate()
        .filter_map(|(j, o)| o.map(|b| (b, j)))
        .collect()
}

fn assemble(
    tables: &[HashMap<u64, Vec<Path>>],
    masks: &[u64],
    bag_for: impl Fn(usize, usize) -> Option<usize>,
) -> RespectingPathSet {
    let mut parts = Vec::new();
    let mut assignment = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        let part = tables[i][&m].clone();
        assignment.push(part.iter().filter_map(|p| bag_for(i, p.sink())).collect());
        parts.push(part);
    }
    RespectingPathSet { parts, assignment: Some(assignment) }
}

/// Largest D-, T- or R-path set, by enumeration.
pub fn brute_max_paths(seq: &DigraphSourceSequence, target: Target<'_>, scale: &ScaleGate) -> Result<BruteMax> {
    gate(seq, target, scale)?;
    let bits = Bits::new(seq);
    match target {
        Target::D(b) => seq.check_in_universe(b)?,
        Target::T(fam) | Target::R(fam) => fam.check_in(seq)?,
    }
    let sink_ok = match target {
        Target::D(b) => bits.mask(b),
        Target::T(fam) | Target::R(fam) => bits.mask(&fam.union()),
    };
    let tables: Vec<HashMap<u64, Vec<Path>>> =
        seq.entries().iter().map(|e| linkable(e, &bits, sink_ok)).collect();
    let ell = seq.len();

    match target {
        Target::D(_) | Target::T(_) => {
            let bag_masks: Vec<u64> = match target {
                Target::T(fam) => fam.bags.iter().map(|b| bits.mask(b)).collect(),
                _ => Vec::new(),
            };
            let is_t = matches!(target, Target::T(_));
            let mut choice = vec![0u64; ell];
            let mut best = (0usize, vec![0u64; ell]);
            disjoint_choice(&tables, 0, 0, &mut choice, &mut best, &|union| {
                !is_t || match_into_bags(union, &bag_masks).len() == union.count_ones() as usize
            });
            let (value, masks) = best;
            let witness = if is_t {
                let union = masks.iter().fold(0, |a, m| a | m);
                let matching = match_into_bags(union, &bag_masks);
                assemble(&tables, &masks, |_, sink| {
                    matching.get(&bits.bit(sink).trailing_zeros()).copied()
                })
            } else {
                let mut w = assemble(&tables, &masks, |_, _| None);
                w.assignment = None;
                w
            };
            Ok(BruteMax { value, witness })
        }
        Target::R(fam) => {
            let bag_masks: Vec<u64> = fam.bags.iter().map(|b| bits.mask(b)).collect();
            let mut state = RState {
                tables: &tables,
                bag_masks: &bag_masks,
                sinks: vec![0; ell],
                chosen: Vec::new(),
                best: (0, vec![0; ell], Vec::new()),
            };
            state.search(0, 0);
            let (value, masks, pairs) = state.best;
            let witness = assemble(&tables, &masks, |i, sink| {
                let b = bits.bit(sink).trailing_zeros();
                pairs.iter().find(|&&(_, pi, pb)| pi == i && pb == b).map(|&(j, _, _)| j)
            });
            Ok(BruteMax { value, witness })
        }
    }
}

fn disjoint_choice(
    tables: &[HashMap<u64, Vec<Path>>],
    i: usize,
    union: u64,
    choice: &mut Vec<u64>,
    best: &mut (usize, Vec<u64>),
    accept: &dyn Fn(u64) -> bool,
) {
    if i == tables.len() {
        let value = union.count_ones() as usize;
        if value > best.0 && accept(union) {
            *best = (value, choice.clone());
        }
        return;
    }
    let mut masks: Vec<u64> = tables[i].keys().copied().filter(|m| m & union == 0).collect();
    masks.sort_unstable();
    for m in masks {
        choice[i] = m;
        disjoint_choice(tables, i + 1, union | m, choice, best, accept);
    }
    choice[i] = 0;
}

struct RState<'a> {
    tables: &'a [HashMap<u64, Vec<Path>>],
    bag_masks: &'a [u64],
    sinks: Vec<u64>,
    // (bag, part, sink bit)
    chosen: Vec<(usize, usize, u32)>,
    best: (usize, Vec<u64>, Vec<(usize, usize, u32)>),
}

impl RState<'_> {
    fn search(&mut self, j: usize, value: usize) {
        if value > self.best.0 {
            self.best = (value, self.sinks.clone(), self.chosen.clone());
        }
        if j == self.bag_masks.len() || value + (self.bag_masks.len() - j) <= self.best.0 {
            return;
        }
        for i in 0..self.tables.len() {
            let mut free = self.bag_masks[j] & !self.sinks[i];
            while free != 0 {
                let bit = free.trailing_zeros();
                free &= free - 1;
                let next = self.sinks[i] | 1 << bit;
                if self.tables[i].contains_key(&next) {
                    let before = self.sinks[i];
                    self.sinks[i] = next;
                    self.chosen.push((j, i, bit));
                    self.search(j + 1, value + 1);
                    self.chosen.pop();
                    self.sinks[i] = before;
                }
            }
        }
        self.search(j + 1, value);
    }
}

/// For one entry: every vertex subset `X` with the set reachable from the
/// sources in `G_i - X`, smallest subsets first.
fn separations(entry: &SequenceEntry, bits: &Bits) -> Vec<(VertexSet, u64)> {
    let vertices = entry.vertices();
    let n = entry.graph().vertex_count();
    let mut subsets: Vec<u32> = (0..1u32 << vertices.len()).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    subsets
        .into_iter()
        .map(|s| {
            let x: VertexSet = vertices
                .iter()
                .enumerate()
                .filter(|(p, _)| s >> p & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let mut blocked = vec![false; n];
            for &v in &x {
                blocked[v] = true;
            }
            let seen = entry.graph().reachable_avoiding(entry.sources().iter().copied(), &blocked);
            let reach = bits.mask(&(0..n).filter(|&v| seen[v]).collect::<Vec<_>>());
            (x, reach)
        })
        .collect()
}

fn min_separator(table: &[(VertexSet, u64)], targets: u64) -> &VertexSet {
    &table
        .iter()
        .find(|(_, reach)| reach & targets == 0)
        .expect("removing every vertex separates")
        .0
}

fn best_dcut(tables: &[Vec<(VertexSet, u64)>], bits: &Bits, b: u64) -> DCut {
    let mut best: Option<DCut> = None;
    let mut x0 = b;
    // iterate all submasks of b, including b itself and 0
    loop {
        let rest = b & !x0;
        let cut = DCut {
            x0: bits.set(x0),
            xs: tables.iter().map(|t| min_separator(t, rest).clone()).collect(),
        };
        if best.as_ref().is_none_or(|c| cut.order() < c.order()) {
            best = Some(cut);
        }
        if x0 == 0 {
            break;
        }
        x0 = (x0 - 1) & b;
    }
    best.expect("at least one candidate")
}

/// Minimum-order D-, T- or R-cut, by exhaustive minimisation.
pub fn brute_min_cut(seq: &DigraphSourceSequence, target: Target<'_>, scale: &ScaleGate) -> Result<BruteCut> {
    gate(seq, target, scale)?;
    let bits = Bits::new(seq);
    let tables: Vec<Vec<(VertexSet, u64)>> = seq.entries().iter().map(|e| separations(e, &bits)).collect();
    let witness = match target {
        Target::D(b) => {
            seq.check_in_universe(b)?;
            Cut::D(best_dcut(&tables, &bits, bits.mask(b)))
        }
        Target::T(fam) => {
            fam.check_in(seq)?;
            let mut best: Option<TCut> = None;
            for kept in subfamilies(fam.len()) {
                let inner = best_dcut(&tables, &bits, bits.mask(&fam.union_of(&kept)));
                let cut = TCut { kept, bag_count: fam.len(), inner };
                if best.as_ref().is_none_or(|c| cut.order() < c.order()) {
                    best = Some(cut);
                }
            }
            Cut::T(best.expect("at least the empty subfamily"))
        }
        Target::R(fam) => {
            fam.check_in(seq)?;
            let mut best: Option<RCut> = None;
            for kept in subfamilies(fam.len()) {
                let union = bits.mask(&fam.union_of(&kept));
                let xs = tables.iter().map(|t| min_separator(t, union).clone()).collect();
                let cut = RCut { kept, bag_count: fam.len(), xs };
                if best.as_ref().is_none_or(|c| cut.order() < c.order()) {
                    best = Some(cut);
                }
            }
            Cut::R(best.expect("at least the empty subfamily"))
        }
    };
    Ok(BruteCut { value: witness.order(), witness })
}

fn subfamilies(r: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0..1u64 << r).map(move |m| (0..r).filter(|&j| m >> j & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::minmax::fixtures::*;
    use crate::minmax::{verify_cut, verify_paths, SetFamily};

    fn both(seq: &DigraphSourceSequence, target: Target<'_>) -> (usize, usize) {
        let gate = ScaleGate::default();
        let max = brute_max_paths(seq, target, &gate).unwrap();
        assert!(verify_paths(seq, target, &max.witness).ok(), "{:?}", verify_paths(seq, target, &max.witness));
        assert_eq!(max.witness.size(), max.value);
        let cut = brute_min_cut(seq, target, &gate).unwrap();
        assert!(verify_cut(seq, target, &cut.witness).ok());
        (max.value, cut.value)
    }

    #[test]
    fn small_instances() {
        assert_eq!(both(&three_sources(), Target::D(&both_sinks())), (2, 2));
        assert_eq!(both(&three_sources_with_union(), Target::T(&overlapping_bags())), (2, 2));
        assert_eq!(both(&three_sources(), Target::R(&overlapping_bags())), (3, 3));
    }

    #[test]
    fn no_sources() {
        let seq = DigraphSourceSequence::single(Digraph::complete(3), VertexSet::new()).unwrap();
        assert_eq!(both(&seq, Target::D(&[0, 1].into())), (0, 0));
    }

    #[test]
    fn unreachable_bags() {
        // sources 0 and 1 see nothing; five bags on the isolated vertices
        let g = Digraph::new(7, [(0, 1)]).unwrap();
        let seq = DigraphSourceSequence::single(g, [0, 1].into()).unwrap();
        let fam = SetFamily::new((2..7).map(|v| [v].into()).collect());
        assert_eq!(both(&seq, Target::R(&fam)), (0, 0));
    }

    #[test]
    fn gate_rejects_large() {
        let seq = DigraphSourceSequence::single(Digraph::complete(12), [0].into()).unwrap();
        assert!(matches!(
            brute_max_paths(&seq, Target::D(&[1].into()), &ScaleGate::default()),
            Err(Error::TooLarge(_))
        ));
    }
}
