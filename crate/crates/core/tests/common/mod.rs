#![allow(dead_code)]

use std::collections::BTreeSet;

use menger_linkage::{Digraph, VertexSet};

fn subsets_of(n: usize) -> impl Iterator<Item = VertexSet> {
    (0..1u32 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// Smallest `(a, b)`-separator by trying every vertex subset.
pub fn brute_separator(g: &Digraph, a: &VertexSet, b: &VertexSet) -> usize {
    subsets_of(g.vertex_count())
        .filter(|x| !g.connects(a, b, x))
        .map(|x| x.len())
        .min()
        .expect("the full vertex set separates")
}

/// Largest family of disjoint `a -> b` paths, by branch and bound over
/// path choices per source (sources in increasing order), capped by `bound`.
pub fn brute_disjoint_paths(g: &Digraph, a: &VertexSet, b: &VertexSet, bound: usize) -> usize {
    #[allow(clippy::too_many_arguments)]
    fn grow(g: &Digraph, sources: &[usize], b: &VertexSet, next: usize, used: &mut Vec<bool>, count: usize, best: &mut usize, bound: usize) {
        *best = (*best).max(count);
        if *best >= bound || count + (sources.len() - next) <= *best {
            return;
        }
        for j in next..sources.len() {
            let s = sources[j];
            if used[s] {
                continue;
            }
            used[s] = true;
            walk(g, sources, b, j, s, used, count, best, bound);
            used[s] = false;
            if *best >= bound {
                return;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(g: &Digraph, sources: &[usize], b: &VertexSet, j: usize, at: usize, used: &mut Vec<bool>, count: usize, best: &mut usize, bound: usize) {
        if b.contains(&at) {
            grow(g, sources, b, j + 1, used, count + 1, best, bound);
        }
        for &w in g.out_neighbors(at) {
            if *best >= bound {
                return;
            }
            if !used[w] {
                used[w] = true;
                walk(g, sources, b, j, w, used, count, best, bound);
                used[w] = false;
            }
        }
    }

    let sources: Vec<usize> = a.iter().copied().collect();
    let mut used = vec![false; g.vertex_count()];
    let mut best = 0;
    grow(g, &sources, b, 0, &mut used, 0, &mut best, bound);
    best
}

/// Whether deleting any set of fewer than `k` vertices leaves a strongly
/// connected digraph, with at least `k + 1` vertices overall.
pub fn brute_k_strong(g: &Digraph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 || n < k + 1 {
        return false;
    }
    subsets_of(n).filter(|x| x.len() < k).all(|x| {
        let rest: VertexSet = (0..n).filter(|v| !x.contains(v)).collect();
        g.induces_strong(&rest)
    })
}

pub fn mutually_reachable(g: &Digraph, u: usize, v: usize) -> bool {
    g.reachable_from([u])[v] && g.reachable_from([v])[u]
}

pub fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect::<BTreeSet<_>>()
}
