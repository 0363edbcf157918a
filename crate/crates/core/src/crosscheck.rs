//! Agreement between the max-flow solvers and the independent routes.

use crate::brute::{brute_max_paths, brute_min_cut, ScaleGate};
use crate::error::Result;
use crate::io::AgreementRow;
use crate::matroid::{dpaths_value_via_matroids, rpaths_value_via_matroids, tpaths_value_via_matroids};
use crate::minmax::{solve, verify_cut, verify_paths, DigraphSourceSequence, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Routes {
    pub brute: bool,
    pub matroid: bool,
}

pub fn matroid_value(seq: &DigraphSourceSequence, target: Target<'_>) -> Result<usize> {
    match target {
        Target::D(b) => dpaths_value_via_matroids(seq, b),
        Target::T(fam) => tpaths_value_via_matroids(seq, fam),
        Target::R(fam) => rpaths_value_via_matroids(seq, fam),
    }
}

/// Solves one instance and compares against the requested routes. The row
/// agrees when the solver's certificates verify, their sizes match, and
/// every computed value is equal.
pub fn agreement(index: usize, seq: &DigraphSourceSequence, target: Target<'_>, routes: Routes) -> Result<AgreementRow> {
    let (paths, cut) = solve(seq, target)?;
    let mut agree = verify_paths(seq, target, &paths).ok()
        && verify_cut(seq, target, &cut).ok()
        && paths.size() == cut.order();
    let value = paths.size();
    let mut row = AgreementRow {
        instance: index,
        variant: target.variant().name().to_string(),
        solver: value,
        brute_paths: None,
        brute_cut: None,
        matroid: None,
        agree: false,
    };
    if routes.brute {
        let gate = ScaleGate::default();
        let max = brute_max_paths(seq, target, &gate)?;
        let min = brute_min_cut(seq, target, &gate)?;
        agree &= max.value == value && min.value == value;
        row.brute_paths = Some(max.value);
        row.brute_cut = Some(min.value);
    }
    if routes.matroid {
        let m = matroid_value(seq, target)?;
        agree &= m == value;
        row.matroid = Some(m);
    }
    row.agree = agree;
    Ok(row)
}
