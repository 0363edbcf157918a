//! Brambles: families of strongly connected bags that pairwise touch or
//! are joined by edges in both directions.

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::minmax::{SetFamily, Verdict};

fn edge_between(g: &Digraph, from: &VertexSet, to: &VertexSet) -> bool {
    from.iter()
        .any(|&u| g.out_neighbors(u).iter().any(|w| to.contains(w)))
}

/// Whether bags `a` and `b` intersect or have edges between them both ways.
pub fn touch(g: &Digraph, a: &VertexSet, b: &VertexSet) -> bool {
    !a.is_disjoint(b) || (edge_between(g, a, b) && edge_between(g, b, a))
}

/// Lists every bag that is empty, out of range or not strongly connected,
/// and every pair of bags that do not touch.
pub fn validate(g: &Digraph, bags: &SetFamily) -> Verdict {
    let mut v = Verdict::default();
    let mut usable = vec![true; bags.len()];
    for (j, bag) in bags.bags.iter().enumerate() {
        if bag.is_empty() {
            v.push("empty-bag", format!("bag {j} is empty"));
            usable[j] = false;
        } else if let Some(x) = bag.iter().find(|&&x| !g.contains_vertex(x)) {
            v.push("range", format!("bag {j} contains {x}, which is not a vertex"));
            usable[j] = false;
        } else if !g.induces_strong(bag) {
            v.push("strong", format!("bag {j} does not induce a strongly connected subgraph"));
        }
    }
    for a in 0..bags.len() {
        for b in a + 1..bags.len() {
            if usable[a] && usable[b] && !touch(g, &bags.bags[a], &bags.bags[b]) {
                v.push(
                    "touch",
                    format!("bags {a} and {b} are disjoint without edges in both directions"),
                );
            }
        }
    }
    v
}

/// Largest number of bags sharing one vertex.
pub fn congestion(bags: &SetFamily) -> Result<usize> {
    if bags.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut count = std::collections::BTreeMap::new();
    for &x in bags.bags.iter().flatten() {
        *count.entry(x).or_insert(0usize) += 1;
    }
    Ok(count.values().copied().max().unwrap_or(0))
}

pub const HITTING_SET_LIMIT: usize = 20;

/// A smallest vertex set meeting every bag, by search over subsets of
/// increasing size.
pub fn min_hitting_set(g: &Digraph, bags: &SetFamily) -> Result<VertexSet> {
    let n = g.vertex_count();
    if n > HITTING_SET_LIMIT {
        return Err(Error::TooLarge(format!(
            "hitting sets are searched on at most {HITTING_SET_LIMIT} vertices, got {n}"
        )));
    }
    if bags.bags.iter().any(VertexSet::is_empty) {
        return Err(Error::invalid("an empty bag cannot be hit"));
    }
    let masks: Vec<u32> = bags
        .bags
        .iter()
        .map(|b| b.iter().fold(0u32, |m, &x| m | 1 << x))
        .collect();
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let m = pick.iter().fold(0u32, |m, &x| m | 1 << x);
            if masks.iter().all(|b| b & m != 0) {
                return Ok(pick.into_iter().collect());
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && pick[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            for j in i..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    unreachable!("the whole vertex set hits every non-empty bag")
}

/// `ceil(|bags| / c)`.
pub fn order_lower_bound(bag_count: usize, c: usize) -> Result<usize> {
    if c == 0 {
        return Err(Error::invalid("congestion must be positive"));
    }
    Ok(bag_count.div_ceil(c))
}

/// The sub-bramble made of the bags at `indices`.
pub fn subfamily(bags: &SetFamily, indices: impl IntoIterator<Item = usize>) -> SetFamily {
    SetFamily::new(indices.into_iter().map(|j| bags.bags[j].clone()).collect())
}

pub mod fixtures {
    use super::*;

    /// Two triangles through a centre vertex 0 (`0,1,2` and `0,3,4`) and a
    /// third triangle `5,6,7` joined to the centre by `5 -> 0` and `0 -> 6`.
    pub fn triangles() -> (Digraph, SetFamily) {
        let g = Digraph::new(
            8,
            [
                (0, 1), (1, 2), (2, 0),
                (0, 3), (3, 4), (4, 0),
                (5, 6), (6, 7), (7, 5),
                (5, 0), (0, 6),
            ],
        )
        .expect("valid");
        let bags = SetFamily::new(vec![[0, 1, 2].into(), [0, 3, 4].into(), [5, 6, 7].into()]);
        (g, bags)
    }
}
