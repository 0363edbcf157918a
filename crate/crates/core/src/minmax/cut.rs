use std::collections::BTreeSet;

use crate::digraph::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    D,
    T,
    R,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::D => "d",
            Variant::T => "t",
            Variant::R => "r",
        }
    }
}

/// `xs[i]` separates `S_i` from `B \ x0` in `G_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DCut {
    pub x0: VertexSet,
    pub xs: Vec<VertexSet>,
}

impl DCut {
    pub fn empty(ell: usize) -> Self {
        DCut { x0: VertexSet::new(), xs: vec![VertexSet::new(); ell] }
    }

    pub fn order(&self) -> usize {
        self.x0.len() + self.xs.iter().map(BTreeSet::len).sum::<usize>()
    }
}

/// Keeps the bags `kept` and cuts the rest; `inner` is a D-cut with respect
/// to the union of the kept bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCut {
    pub kept: BTreeSet<usize>,
    pub bag_count: usize,
    pub inner: DCut,
}

impl TCut {
    pub fn order(&self) -> usize {
        self.bag_count.saturating_sub(self.kept.len()) + self.inner.order()
    }
}

/// Keeps the bags `kept`; `xs[i]` separates `S_i` from their union in `G_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCut {
    pub kept: BTreeSet<usize>,
    pub bag_count: usize,
    pub xs: Vec<VertexSet>,
}

impl RCut {
    pub fn order(&self) -> usize {
        self.bag_count.saturating_sub(self.kept.len())
            + self.xs.iter().map(BTreeSet::len).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cut {
    D(DCut),
    T(TCut),
    R(RCut),
}

impl Cut {
    pub fn order(&self) -> usize {
        match self {
            Cut::D(c) => c.order(),
            Cut::T(c) => c.order(),
            Cut::R(c) => c.order(),
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Cut::D(_) => Variant::D,
            Cut::T(_) => Variant::T,
            Cut::R(_) => Variant::R,
        }
    }
}
