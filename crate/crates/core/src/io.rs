//! JSON instance and result documents.
//!
//! Every document carries a top-level `kind`. Vertex-set lists are emitted
//! sorted, so equal results serialize to identical bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Path, VertexSet};
use crate::error::{Error, Result};
use crate::linkage::{DdpInstance, RoutingOutcome};
use crate::menger::MengerCertificate;
use crate::minmax::{Cut, DCut, DigraphSourceSequence, RCut, RespectingPathSet, SequenceEntry, SetFamily, TCut, Variant, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DigraphJson {
    pub fn to_digraph(&self) -> Result<Digraph> {
        Digraph::new(self.n, self.edges.iter().copied())
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        DigraphJson { n: g.vertex_count(), edges: g.edges().to_vec() }
    }
}

/// A sequence entry: either an inline digraph or a reference to an earlier
/// entry, optionally reversed. `vertices` restricts the entry's vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Ref {
        #[serde(rename = "ref")]
        index: usize,
        #[serde(default)]
        reverse: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<usize>>,
    },
    Inline {
        n: usize,
        edges: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub graphs: Vec<GraphSpec>,
    pub sources: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bags: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceProblem {
    pub seq: DigraphSourceSequence,
    pub targets: Option<VertexSet>,
    pub bags: Option<SetFamily>,
}

fn sorted(vs: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = vs.iter().copied().collect();
    set.into_iter().collect()
}

fn family(bags: &[Vec<usize>]) -> SetFamily {
    SetFamily::new(bags.iter().map(|b| b.iter().copied().collect()).collect())
}

fn bags_json(fam: &SetFamily) -> Vec<Vec<usize>> {
    fam.bags.iter().map(|b| b.iter().copied().collect()).collect()
}

impl SequenceJson {
    pub fn to_problem(&self) -> Result<SequenceProblem> {
        if self.graphs.len() != self.sources.len() {
            return Err(Error::invalid(format!(
                "{} graphs but {} source lists",
                self.graphs.len(),
                self.sources.len()
            )));
        }
        let mut resolved: Vec<(Digraph, Option<VertexSet>)> = Vec::new();
        for (i, spec) in self.graphs.iter().enumerate() {
            let entry = match spec {
                GraphSpec::Inline { n, edges, vertices } => (
                    Digraph::new(*n, edges.iter().copied())?,
                    vertices.as_ref().map(|v| v.iter().copied().collect()),
                ),
                GraphSpec::Ref { index, reverse, vertices } => {
                    if *index >= i {
                        return Err(Error::invalid(format!("entry {i} refers forward to entry {index}")));
                    }
                    let (g, members) = &resolved[*index];
                    let g = if *reverse { g.reverse() } else { g.clone() };
                    let members = match vertices {
                        Some(v) => Some(v.iter().copied().collect()),
                        None => members.clone(),
                    };
                    (g, members)
                }
            };
            resolved.push(entry);
        }
        let entries = resolved
            .into_iter()
            .zip(&self.sources)
            .map(|((g, members), s)| {
                let s: VertexSet = s.iter().copied().collect();
                match members {
                    Some(m) => SequenceEntry::with_members(g, s, m),
                    None => SequenceEntry::new(g, s),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let seq = DigraphSourceSequence::new(entries)?;
        let targets: Option<VertexSet> = self.targets.as_ref().map(|t| t.iter().copied().collect());
        if let Some(t) = &targets {
            seq.check_in_universe(t)?;
        }
        let bags = self.bags.as_deref().map(family);
        if let Some(f) = &bags {
            f.check_in(&seq)?;
        }
        Ok(SequenceProblem { seq, targets, bags })
    }

    /// Inline form of a sequence (no references).
    pub fn from_problem(p: &SequenceProblem) -> Self {
        SequenceJson {
            graphs: p
                .seq
                .entries()
                .iter()
                .map(|e| GraphSpec::Inline {
                    n: e.graph().vertex_count(),
                    edges: e.graph().edges().to_vec(),
                    vertices: e.members().map(|m| m.iter().copied().collect()),
                })
                .collect(),
            sources: p.seq.entries().iter().map(|e| e.sources().iter().copied().collect()).collect(),
            targets: p.targets.as_ref().map(|t| t.iter().copied().collect()),
            bags: p.bags.as_ref().map(bags_json),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BagsJson {
    pub bags: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrambleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<DigraphJson>,
    pub bags: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdpJson {
    pub graph: DigraphJson,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub c: usize,
    pub bramble: BagsJson,
}

impl DdpJson {
    pub fn to_instance(&self) -> Result<DdpInstance> {
        Ok(DdpInstance {
            graph: self.graph.to_digraph()?,
            s: self.s.clone(),
            t: self.t.clone(),
            c: self.c,
            bramble: family(&self.bramble.bags),
        })
    }

    pub fn from_instance(inst: &DdpInstance) -> Self {
        DdpJson {
            graph: DigraphJson::from_digraph(&inst.graph),
            s: inst.s.clone(),
            t: inst.t.clone(),
            c: inst.c,
            bramble: BagsJson { bags: bags_json(&inst.bramble) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Digraph(DigraphJson),
    Sequence(SequenceJson),
    Bramble(BrambleJson),
    Ddp(DdpJson),
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed instance: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerResult {
    pub value: usize,
    pub paths: Vec<Vec<usize>>,
    pub separator: Vec<usize>,
}

impl MengerResult {
    pub fn from_certificate(c: &MengerCertificate) -> Self {
        MengerResult {
            value: c.value(),
            paths: c.paths.iter().map(|p| p.vertices().to_vec()).collect(),
            separator: c.separator.iter().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CutJson {
    D { x0: Vec<usize>, xs: Vec<Vec<usize>> },
    T { kept: Vec<usize>, bag_count: usize, x0: Vec<usize>, xs: Vec<Vec<usize>> },
    R { kept: Vec<usize>, bag_count: usize, xs: Vec<Vec<usize>> },
}

fn sets(xs: &[VertexSet]) -> Vec<Vec<usize>> {
    xs.iter().map(|x| x.iter().copied().collect()).collect()
}

fn unsets(xs: &[Vec<usize>]) -> Vec<VertexSet> {
    xs.iter().map(|x| x.iter().copied().collect()).collect()
}

impl CutJson {
    pub fn from_cut(cut: &Cut) -> Self {
        match cut {
            Cut::D(c) => CutJson::D { x0: c.x0.iter().copied().collect(), xs: sets(&c.xs) },
            Cut::T(c) => CutJson::T {
                kept: c.kept.iter().copied().collect(),
                bag_count: c.bag_count,
                x0: c.inner.x0.iter().copied().collect(),
                xs: sets(&c.inner.xs),
            },
            Cut::R(c) => CutJson::R {
                kept: c.kept.iter().copied().collect(),
                bag_count: c.bag_count,
                xs: sets(&c.xs),
            },
        }
    }

    pub fn to_cut(&self) -> Cut {
        match self {
            CutJson::D { x0, xs } => Cut::D(DCut { x0: x0.iter().copied().collect(), xs: unsets(xs) }),
            CutJson::T { kept, bag_count, x0, xs } => Cut::T(TCut {
                kept: kept.iter().copied().collect(),
                bag_count: *bag_count,
                inner: DCut { x0: x0.iter().copied().collect(), xs: unsets(xs) },
            }),
            CutJson::R { kept, bag_count, xs } => Cut::R(RCut {
                kept: kept.iter().copied().collect(),
                bag_count: *bag_count,
                xs: unsets(xs),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinmaxResult {
    pub variant: String,
    pub value: usize,
    pub paths: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<Vec<usize>>>,
    pub cut: CutJson,
    pub order: usize,
}

impl MinmaxResult {
    pub fn new(paths: &RespectingPathSet, cut: &Cut) -> Self {
        MinmaxResult {
            variant: cut.variant().name().to_string(),
            value: paths.size(),
            paths: paths
                .parts
                .iter()
                .map(|part| part.iter().map(|p| p.vertices().to_vec()).collect())
                .collect(),
            assignment: paths.assignment.clone(),
            cut: CutJson::from_cut(cut),
            order: cut.order(),
        }
    }

    pub fn to_paths(&self) -> Result<RespectingPathSet> {
        let parts = self
            .paths
            .iter()
            .map(|part| part.iter().map(|p| Path::new(p.clone())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RespectingPathSet { parts, assignment: self.assignment.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RoutingResult {
    SeparatorAtSource { kept: Vec<usize>, xs: Vec<usize> },
    SeparatorAtSink { kept: Vec<usize>, xt: Vec<usize> },
    Solution { paths: Vec<Vec<usize>>, single_vertex: Vec<usize> },
}

impl RoutingResult {
    pub fn from_outcome(o: &RoutingOutcome) -> Self {
        match o {
            RoutingOutcome::SeparatorAtSource { kept, xs } => RoutingResult::SeparatorAtSource {
                kept: kept.iter().copied().collect(),
                xs: xs.iter().copied().collect(),
            },
            RoutingOutcome::SeparatorAtSink { kept, xt } => RoutingResult::SeparatorAtSink {
                kept: kept.iter().copied().collect(),
                xt: xt.iter().copied().collect(),
            },
            RoutingOutcome::Solution { paths, single_vertex } => RoutingResult::Solution {
                paths: paths.iter().map(|p| p.vertices().to_vec()).collect(),
                single_vertex: single_vertex.clone(),
            },
        }
    }

    pub fn to_outcome(&self) -> Result<RoutingOutcome> {
        Ok(match self {
            RoutingResult::SeparatorAtSource { kept, xs } => RoutingOutcome::SeparatorAtSource {
                kept: kept.iter().copied().collect(),
                xs: xs.iter().copied().collect(),
            },
            RoutingResult::SeparatorAtSink { kept, xt } => RoutingOutcome::SeparatorAtSink {
                kept: kept.iter().copied().collect(),
                xt: xt.iter().copied().collect(),
            },
            RoutingResult::Solution { paths, single_vertex } => RoutingOutcome::Solution {
                paths: paths.iter().map(|p| Path::new(p.clone())).collect::<Result<_>>()?,
                single_vertex: single_vertex.clone(),
            },
        })
    }
}

/// One instance of a cross-check: the max-flow value and whichever
/// independent values were computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub instance: usize,
    pub variant: String,
    pub solver: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_paths: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_cut: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub route: String,
    pub rows: Vec<AgreementRow>,
    pub all_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrambleReport {
    pub valid: bool,
    pub bag_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congestion: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_lower_bound: Option<usize>,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ResultFile {
    Menger(MengerResult),
    Minmax(MinmaxResult),
    Routing(RoutingResult),
    Verify(VerifyReport),
    Bramble(BrambleReport),
}

impl ResultFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed result: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }
}

pub fn variant_from_name(name: &str) -> Result<Variant> {
    match name.to_ascii_lowercase().as_str() {
        "d" => Ok(Variant::D),
        "t" => Ok(Variant::T),
        "r" => Ok(Variant::R),
        other => Err(Error::invalid(format!("unknown variant {other:?}"))),
    }
}

/// Sorted, de-duplicated copy of a vertex list.
pub fn canonical(vs: &[usize]) -> Vec<usize> {
    sorted(vs)
}
