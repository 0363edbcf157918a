//! Seeded instance generators. The same seed always yields the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::linkage::{g, DdpInstance};
use crate::minmax::{DigraphSourceSequence, SequenceEntry, SetFamily};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("edge probability {p} is outside [0, 1]")));
    }
    Ok(())
}

/// Each ordered pair of distinct vertices becomes an edge with probability `p`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::invalid("a random digraph needs at least one vertex"));
    }
    check_p(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges)
}

/// Complete bidirected digraph with `s = 0..k`, `t = k..2k` and singleton
/// bags on the last `g(k, c)` vertices (fewer if `n` is too small).
pub fn complete_ddp(n: usize, k: usize, c: usize) -> Result<DdpInstance> {
    if n < 2 * k {
        return Err(Error::invalid(format!("{n} vertices cannot hold {k} disjoint terminal pairs")));
    }
    let bags = g(k, c)?.min(n - 2 * k);
    Ok(DdpInstance {
        graph: Digraph::complete(n),
        s: (0..k).collect(),
        t: (k..2 * k).collect(),
        c,
        bramble: SetFamily::new((n - bags..n).map(|v| [v].into()).collect()),
    })
}

/// A small source island next to a complete bidirected main island carrying
/// the bramble. With a seeded coin the island reaches the main island only
/// through one bridge vertex; otherwise it has no edges towards it at all.
/// The main island may have edges back into the source island.
pub fn two_island(n: usize, k: usize, c: usize, p: f64, seed: u64) -> Result<DdpInstance> {
    check_p(p)?;
    let need = g(k, c)?;
    let mut rng = rng(seed);
    let island = k + rng.gen_range(0..=2usize);
    let bridge = rng.gen_bool(0.5);
    let main_start = island + usize::from(bridge);
    if n < main_start + need + k {
        return Err(Error::invalid(format!(
            "{n} vertices leave no room for {need} bags and {k} sinks"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..island {
        for v in 0..island {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if bridge {
        let a = island;
        edges.extend((0..island).map(|u| (u, a)));
        edges.extend((main_start..n).map(|v| (a, v)));
    }
    for u in main_start..n {
        for v in main_start..n {
            if u != v {
                edges.push((u, v));
            }
        }
        if rng.gen_bool(p) {
            edges.push((u, rng.gen_range(0..island)));
        }
    }
    let mut sources: Vec<usize> = (0..island).collect();
    sources.shuffle(&mut rng);
    sources.truncate(k);
    Ok(DdpInstance {
        graph: Digraph::new(n, edges)?,
        s: sources,
        t: (n - k..n).collect(),
        c,
        bramble: SetFamily::new((main_start..main_start + need).map(|v| [v].into()).collect()),
    })
}

/// Size limits for [`random_sequence`].
#[derive(Clone, Copy, Debug)]
pub struct SequenceShape {
    pub max_len: usize,
    pub max_vertices: usize,
    pub max_sources: usize,
    pub max_bags: usize,
    pub max_bag_size: usize,
}

impl Default for SequenceShape {
    fn default() -> Self {
        SequenceShape { max_len: 3, max_vertices: 6, max_sources: 3, max_bags: 4, max_bag_size: 3 }
    }
}

fn random_subset(pool: &[usize], max: usize, rng: &mut impl Rng) -> VertexSet {
    let size = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, size).copied().collect()
}

/// A random sequence over a shared universe `0..n` with a random target set
/// and bag family. Entries are random digraphs, sometimes restricted to a
/// subset of the universe, sometimes repeated or reversed.
pub fn random_sequence(shape: &SequenceShape, rng: &mut impl Rng) -> (DigraphSourceSequence, VertexSet, SetFamily) {
    let n = rng.gen_range(1..=shape.max_vertices);
    let ell = rng.gen_range(1..=shape.max_len);
    let p = rng.gen_range(0.15..0.6);
    let universe: Vec<usize> = (0..n).collect();
    let mut entries: Vec<SequenceEntry> = Vec::new();
    while entries.len() < ell {
        if !entries.is_empty() && rng.gen_bool(0.2) {
            let prev = entries[rng.gen_range(0..entries.len())].clone();
            let graph = if rng.gen_bool(0.5) { prev.graph().reverse() } else { prev.graph().clone() };
            let members: Vec<usize> = prev.vertices();
            let sources = random_subset(&members, shape.max_sources, rng);
            let entry = match prev.members() {
                Some(m) => SequenceEntry::with_members(graph, sources, m.clone()),
                None => SequenceEntry::new(graph, sources),
            };
            entries.push(entry.expect("derived from a valid entry"));
            continue;
        }
        let members: Vec<usize> = if rng.gen_bool(0.3) {
            let mut m: Vec<usize> = random_subset(&universe, n, rng).into_iter().collect();
            if m.is_empty() {
                m.push(rng.gen_range(0..n));
            }
            m
        } else {
            universe.clone()
        };
        let mut edges = Vec::new();
        for &u in &members {
            for &v in &members {
                if u != v && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let graph = Digraph::new(n, edges).expect("ids below n");
        let sources = random_subset(&members, shape.max_sources, rng);
        let entry = if members.len() == n {
            SequenceEntry::new(graph, sources)
        } else {
            SequenceEntry::with_members(graph, sources, members.into_iter().collect())
        };
        entries.push(entry.expect("members are in range"));
    }
    let seq = DigraphSourceSequence::new(entries).expect("non-empty");
    let present: Vec<usize> = seq.universe().into_iter().collect();
    let b = random_subset(&present, present.len(), rng);
    let bag_count = rng.gen_range(0..=shape.max_bags);
    let bags = (0..bag_count)
        .map(|_| random_subset(&present, shape.max_bag_size, rng))
        .collect();
    (seq, b, SetFamily::new(bags))
}

/// A sparse random sequence of `ell` entries over `n` vertices each, with
/// `bags` random bags, for timing runs.
pub fn sparse_sequence(ell: usize, n: usize, bags: usize, degree: f64, rng: &mut impl Rng) -> Result<(DigraphSourceSequence, SetFamily)> {
    let p = (degree / n.max(1) as f64).min(1.0);
    let mut entries = Vec::with_capacity(ell);
    let universe: Vec<usize> = (0..n).collect();
    for _ in 0..ell {
        let graph = gnp(n, p, rng)?;
        let sources: VertexSet = universe.choose_multiple(rng, 3.min(n)).copied().collect();
        entries.push(SequenceEntry::new(graph, sources)?);
    }
    let seq = DigraphSourceSequence::new(entries)?;
    let fam = (0..bags)
        .map(|_| universe.choose_multiple(rng, 2.min(n)).copied().collect())
        .collect();
    Ok((seq, SetFamily::new(fam)))
}
