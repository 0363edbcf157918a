//! D-, T- and R-paths over digraph-source sequences, their cuts, and the
//! max-flow solvers that return a maximum path set together with a cut of
//! equal order.

mod aux;
mod cut;
mod sequence;
mod solve;
mod verify;

pub use aux::{build_aux_d, build_aux_r, build_aux_t, AuxGraph, AuxNode};
pub use cut::{Cut, DCut, RCut, TCut, Variant};
pub use sequence::{DigraphSourceSequence, RespectingPathSet, SequenceEntry, SetFamily};
pub use solve::{solve, solve_dpaths, solve_rpaths, solve_tpaths};
pub use verify::{verify_cut, verify_paths, Verdict, Violation};

use crate::digraph::VertexSet;

/// The target of a path problem; the variant follows from the shape.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    D(&'a VertexSet),
    T(&'a SetFamily),
    R(&'a SetFamily),
}

impl Target<'_> {
    pub fn variant(&self) -> Variant {
        match self {
            Target::D(_) => Variant::D,
            Target::T(_) => Variant::T,
            Target::R(_) => Variant::R,
        }
    }
}

/// Small hand-built instances shared by tests, the CLI and the docs.
pub mod fixtures {
    use super::*;
    use crate::digraph::Digraph;

    pub const S1: usize = 0;
    pub const S2: usize = 1;
    pub const S3: usize = 2;
    pub const U: usize = 3;
    pub const V: usize = 4;

    fn entry(edges: &[(usize, usize)], source: &[usize], members: &[usize]) -> SequenceEntry {
        SequenceEntry::with_members(
            Digraph::new(5, edges.iter().copied()).expect("ids below 5"),
            source.iter().copied().collect(),
            members.iter().copied().collect(),
        )
        .expect("valid entry")
    }

    /// Three digraphs `s1 -> u`, `s2 -> {u, v}`, `s3 -> v` with one source each.
    pub fn three_sources() -> DigraphSourceSequence {
        DigraphSourceSequence::new(vec![
            entry(&[(S1, U)], &[S1], &[S1, U]),
            entry(&[(S2, U), (S2, V)], &[S2], &[S2, U, V]),
            entry(&[(S3, V)], &[S3], &[S3, V]),
        ])
        .expect("non-empty")
    }

    /// [`three_sources`] plus a fourth entry holding the union of the three
    /// digraphs with all three sources.
    pub fn three_sources_with_union() -> DigraphSourceSequence {
        let mut entries = three_sources().entries().to_vec();
        entries.push(entry(
            &[(S1, U), (S2, U), (S2, V), (S3, V)],
            &[S1, S2, S3],
            &[S1, S2, S3, U, V],
        ));
        DigraphSourceSequence::new(entries).expect("non-empty")
    }

    /// The target set `{u, v}`.
    pub fn both_sinks() -> VertexSet {
        [U, V].into()
    }

    /// Bags `{u}`, `{u, v}`, `{v}`.
    pub fn overlapping_bags() -> SetFamily {
        SetFamily::new(vec![[U].into(), [U, V].into(), [V].into()])
    }
}
