//! Matroids given by independence oracles, gammoids, transversal matroids,
//! matroid union and intersection. Everything here is exhaustive and meant
//! for cross-checking the max-flow solvers on small instances.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::menger::{menger, min_separator_size};
use crate::minmax::{DigraphSourceSequence, SetFamily};

/// Largest set handed to an exhaustive rank formula.
pub const FORMULA_LIMIT: usize = 16;
/// Largest ground set for the intersection search.
pub const GROUND_LIMIT: usize = 24;

type Oracle = dyn Fn(&[usize]) -> bool + Send + Sync;

/// A ground set with a memoised independence predicate.
pub struct MatroidHandle {
    ground: Vec<usize>,
    oracle: Arc<Oracle>,
    memo: Mutex<HashMap<Vec<usize>, bool>>,
}

impl fmt::Debug for MatroidHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatroidHandle").field("ground", &self.ground).finish()
    }
}

impl MatroidHandle {
    pub fn new(ground: impl IntoIterator<Item = usize>, oracle: impl Fn(&[usize]) -> bool + Send + Sync + 'static) -> Self {
        let ground: BTreeSet<usize> = ground.into_iter().collect();
        MatroidHandle {
            ground: ground.into_iter().collect(),
            oracle: Arc::new(oracle),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn free(ground: impl IntoIterator<Item = usize>) -> Self {
        Self::new(ground, |_| true)
    }

    pub fn uniform(ground: impl IntoIterator<Item = usize>, rank: usize) -> Self {
        Self::new(ground, move |s| s.len() <= rank)
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    /// Independence of `set`; elements outside the ground set make it dependent.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        if key.len() != set.len() || key.iter().any(|e| self.ground.binary_search(e).is_err()) {
            return false;
        }
        if let Some(&hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit;
        }
        let answer = (self.oracle)(&key);
        self.memo.lock().expect("memo lock").insert(key, answer);
        answer
    }

    /// Rank by the greedy algorithm.
    pub fn rank(&self, set: &[usize]) -> usize {
        let mut basis = Vec::new();
        let mut elems: Vec<usize> = set.iter().copied().filter(|e| self.ground.binary_search(e).is_ok()).collect();
        elems.sort_unstable();
        elems.dedup();
        for e in elems {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }
}

/// Sinks of disjoint paths from `x` into `y` in `host`.
#[derive(Clone, Debug)]
pub struct Gammoid {
    pub host: Digraph,
    pub x: VertexSet,
    pub y: VertexSet,
}

impl Gammoid {
    pub fn handle(&self) -> MatroidHandle {
        let host = self.host.clone();
        let x = self.x.clone();
        MatroidHandle::new(self.y.iter().copied(), move |set| {
            let target: VertexSet = set.iter().copied().collect();
            menger(&host, &x, &target).map(|c| c.value() == target.len()).unwrap_or(false)
        })
    }
}

/// Size of a smallest `(x, u)`-separator.
pub fn gammoid_rank(gm: &Gammoid, u: &VertexSet) -> Result<usize> {
    if !u.is_subset(&gm.y) {
        return Err(Error::invalid("the subset is not inside the gammoid's ground set"));
    }
    min_separator_size(&gm.host, &gm.x, u)
}

/// Partial transversals of an indexed family.
#[derive(Clone, Debug)]
pub struct TransversalMatroid {
    pub family: SetFamily,
}

impl TransversalMatroid {
    pub fn handle(&self) -> MatroidHandle {
        let family = self.family.clone();
        MatroidHandle::new(self.family.union(), move |set| {
            let u: VertexSet = set.iter().copied().collect();
            matching_size(&family, &u) == set.len()
        })
    }
}

/// Maximum matching between the bags and the elements of `u` (Kuhn's algorithm).
fn matching_size(family: &SetFamily, u: &VertexSet) -> usize {
    fn augment(j: usize, family: &SetFamily, u: &VertexSet, seen: &mut BTreeSet<usize>, owner: &mut HashMap<usize, usize>) -> bool {
        for &e in family.bags[j].intersection(u) {
            if seen.insert(e) {
                match owner.get(&e).copied() {
                    Some(k) if !augment(k, family, u, seen, owner) => continue,
                    _ => {
                        owner.insert(e, j);
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut owner = HashMap::new();
    (0..family.len())
        .filter(|&j| augment(j, family, u, &mut BTreeSet::new(), &mut owner))
        .count()
}

pub fn transversal_rank(tm: &TransversalMatroid, u: &VertexSet) -> usize {
    matching_size(&tm.family, u)
}

/// Ore's formula: the minimum over subfamilies `I` of
/// `|J \ I| + |union over I of (A_i ∩ U)|`.
pub fn transversal_rank_formula(family: &SetFamily, u: &VertexSet) -> Result<usize> {
    let r = family.len();
    if r > FORMULA_LIMIT {
        return Err(Error::TooLarge(format!("{r} bags")));
    }
    Ok((0..1u64 << r)
        .map(|m| {
            let chosen: BTreeSet<usize> = (0..r).filter(|&j| m >> j & 1 == 1).collect();
            let covered = family.union_of(&chosen).intersection(u).count();
            r - chosen.len() + covered
        })
        .min()
        .unwrap_or(0))
}

fn subsets(elems: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..1u64 << elems.len()).map(move |m| {
        elems
            .iter()
            .enumerate()
            .filter(|(p, _)| m >> p & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

/// Rank of `u` in the union of `matroids`, by the min formula over `T ⊆ u`.
pub fn union_rank(matroids: &[MatroidHandle], u: &[usize]) -> Result<usize> {
    let mut elems = u.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.len() > FORMULA_LIMIT {
        return Err(Error::TooLarge(format!("{} elements", elems.len())));
    }
    if let Some(e) = elems.iter().find(|e| matroids.iter().all(|m| m.ground.binary_search(e).is_err())) {
        return Err(Error::invalid(format!("element {e} is in no ground set")));
    }
    if matroids.is_empty() {
        return Ok(0);
    }
    Ok(subsets(&elems)
        .map(|t| elems.len() - t.len() + matroids.iter().map(|m| m.rank(&t)).sum::<usize>())
        .min()
        .unwrap_or(0))
}

/// The union matroid as a handle of its own.
pub fn union_handle(matroids: Vec<MatroidHandle>) -> MatroidHandle {
    let ground: BTreeSet<usize> = matroids.iter().flat_map(|m| m.ground.iter().copied()).collect();
    let parts = Arc::new(matroids);
    MatroidHandle::new(ground, move |set| union_rank(&parts, set).map(|r| r == set.len()).unwrap_or(false))
}

fn same_ground(m1: &MatroidHandle, m2: &MatroidHandle) -> Result<()> {
    if m1.ground != m2.ground {
        return Err(Error::GroundSetMismatch);
    }
    if m1.ground.len() > GROUND_LIMIT {
        return Err(Error::TooLarge(format!("{} elements", m1.ground.len())));
    }
    Ok(())
}

/// Largest common independent set, by depth-first search over common
/// independent sets in increasing element order.
pub fn intersection_max(m1: &MatroidHandle, m2: &MatroidHandle) -> Result<usize> {
    same_ground(m1, m2)?;
    let ground = m1.ground.clone();
    let cap = m1.rank(&ground).min(m2.rank(&ground));

    fn grow(m1: &MatroidHandle, m2: &MatroidHandle, ground: &[usize], from: usize, set: &mut Vec<usize>, best: &mut usize, cap: usize) {
        *best = (*best).max(set.len());
        for p in from..ground.len() {
            if *best >= cap || set.len() + (ground.len() - p) <= *best {
                return;
            }
            set.push(ground[p]);
            if m1.is_independent(set) && m2.is_independent(set) {
                grow(m1, m2, ground, p + 1, set, best, cap);
            }
            set.pop();
        }
    }

    let mut best = 0;
    grow(m1, m2, &ground, 0, &mut Vec::new(), &mut best, cap);
    Ok(best)
}

/// `min over U of r1(U) + r2(E \ U)`, evaluated over every `U`.
pub fn intersection_min_formula(m1: &MatroidHandle, m2: &MatroidHandle) -> Result<usize> {
    same_ground(m1, m2)?;
    if m1.ground.len() > FORMULA_LIMIT {
        return Err(Error::TooLarge(format!("{} elements", m1.ground.len())));
    }
    let ground = m1.ground.clone();
    Ok(subsets(&ground)
        .map(|u| {
            let rest: Vec<usize> = ground.iter().copied().filter(|e| !u.contains(e)).collect();
            m1.rank(&u) + m2.rank(&rest)
        })
        .min()
        .unwrap_or(0))
}

fn part_gammoid(seq: &DigraphSourceSequence, i: usize, targets: &VertexSet) -> Gammoid {
    let e = seq.entry(i);
    Gammoid {
        host: e.graph().clone(),
        x: e.sources().clone(),
        y: targets.iter().copied().filter(|&v| e.contains(v)).collect(),
    }
}

fn dpaths_matroid(seq: &DigraphSourceSequence, targets: &VertexSet) -> MatroidHandle {
    let parts = (0..seq.len()).map(|i| part_gammoid(seq, i, targets).handle()).collect();
    union_handle(parts)
}

/// Rank of `b` in the union of the per-entry gammoids.
pub fn dpaths_value_via_matroids(seq: &DigraphSourceSequence, b: &VertexSet) -> Result<usize> {
    seq.check_in_universe(b)?;
    let parts: Vec<MatroidHandle> = (0..seq.len()).map(|i| part_gammoid(seq, i, b).handle()).collect();
    let elems: Vec<usize> = b.iter().copied().collect();
    union_rank(&parts, &elems)
}

/// Largest set independent in the D-paths matroid on the bag union and in
/// the transversal matroid of the bags.
pub fn tpaths_value_via_matroids(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<usize> {
    fam.check_in(seq)?;
    let union = fam.union();
    let m1 = dpaths_matroid(seq, &union);
    let m2 = TransversalMatroid { family: fam.clone() }.handle();
    let m1 = MatroidHandle::new(union.iter().copied(), move |s| m1.is_independent(s));
    intersection_max(&m1, &m2)
}

/// As [`tpaths_value_via_matroids`], with every entry treated as a disjoint
/// copy: element `(i, v)` is encoded as `i * stride + v`, and each bag holds
/// every copy of its vertices.
pub fn rpaths_value_via_matroids(seq: &DigraphSourceSequence, fam: &SetFamily) -> Result<usize> {
    fam.check_in(seq)?;
    let union = fam.union();
    let stride = seq.universe().last().map_or(1, |&m| m + 1);
    let mut parts = Vec::new();
    let mut ground = BTreeSet::new();
    for i in 0..seq.len() {
        let gm = part_gammoid(seq, i, &union);
        let inner = gm.handle();
        let offset = i * stride;
        ground.extend(gm.y.iter().map(|&v| offset + v));
        parts.push(MatroidHandle::new(gm.y.iter().map(|&v| offset + v), move |s| {
            let local: Vec<usize> = s.iter().map(|&e| e - offset).collect();
            inner.is_independent(&local)
        }));
    }
    let copies: Vec<VertexSet> = fam
        .bags
        .iter()
        .map(|bag| ground.iter().copied().filter(|&e| bag.contains(&(e % stride))).collect())
        .collect();
    let m1 = union_handle(parts);
    let m2 = TransversalMatroid { family: SetFamily::new(copies) }.handle();
    let m2 = MatroidHandle::new(ground.iter().copied(), move |s| m2.is_independent(s));
    let m1 = MatroidHandle::new(ground.iter().copied(), move |s| m1.is_independent(s));
    intersection_max(&m1, &m2)
}
