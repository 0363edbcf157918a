//! Routing `k` terminal pairs with congestion `c` through a large bramble:
//! either a set of `s_i -> t_i` paths using every vertex at most `c` times,
//! or a separator of size below `k` cutting the terminals off from most of
//! the bramble.

use std::collections::{BTreeMap, BTreeSet};

use crate::bramble;
use crate::digraph::{shorten_walk, Digraph, Path, VertexSet, Walk};
use crate::error::{Error, Result};
use crate::minmax::{solve_rpaths, DigraphSourceSequence, RespectingPathSet, SetFamily, Verdict};

/// Number of bramble bags the routing needs: `2k(ck - c + 2) + c(k - 1)`.
pub fn g(k: usize, c: usize) -> Result<usize> {
    if k < 2 || c < 2 {
        return Err(Error::invalid(format!("g(k, c) needs k, c >= 2, got k = {k}, c = {c}")));
    }
    Ok(2 * k * (c * k - c + 2) + c * (k - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdpInstance {
    pub graph: Digraph,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub c: usize,
    pub bramble: SetFamily,
}

impl DdpInstance {
    pub fn k(&self) -> usize {
        self.s.len()
    }

    /// Every violated precondition of the routing algorithm.
    pub fn check(&self) -> Verdict {
        let mut v = Verdict::default();
        let k = self.s.len();
        if k != self.t.len() {
            v.push("terminals", format!("{} sources but {} sinks", k, self.t.len()));
        }
        if k < 2 {
            v.push("terminals", "at least two terminal pairs are needed");
        }
        if self.c < 2 {
            v.push("congestion", "the congestion bound must be at least 2");
        }
        for &x in self.s.iter().chain(&self.t) {
            if !self.graph.contains_vertex(x) {
                v.push("range", format!("terminal {x} is not a vertex"));
            }
        }
        v.violations.extend(bramble::validate(&self.graph, &self.bramble).violations);
        match bramble::congestion(&self.bramble) {
            Ok(cong) if cong > self.c => v.push(
                "congestion",
                format!("the bramble has congestion {cong}, above {}", self.c),
            ),
            Ok(_) => {}
            Err(e) => v.push("bramble", e.to_string()),
        }
        if let Ok(need) = g(k, self.c) {
            if self.bramble.len() < need {
                v.push(
                    "bramble-size",
                    format!("the bramble has {} bags, {need} are needed", self.bramble.len()),
                );
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoutingOutcome {
    /// No path from `s` reaches a kept bag once `xs` is deleted.
    SeparatorAtSource { kept: BTreeSet<usize>, xs: VertexSet },
    /// No kept bag reaches `t` once `xt` is deleted.
    SeparatorAtSink { kept: BTreeSet<usize>, xt: VertexSet },
    /// `paths[i]` runs from `s[i]` to `t[i]`; `single_vertex` lists the
    /// indices whose path is the single vertex `s[i] = t[i]`.
    Solution { paths: Vec<Path>, single_vertex: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RpathsOrCut {
    Paths(RespectingPathSet),
    Cut { kept: BTreeSet<usize>, xs: VertexSet, xt: VertexSet },
}

/// R-paths for `ell` copies of `(gs, s)` followed by `ell` copies of
/// `(gt, t)`, or a cut whose separators repeat one `xs` and one `xt` with
/// `|xs| + |xt| <= 2k - 1`.
pub fn rpaths_or_small_cut(
    gs: &Digraph,
    gt: &Digraph,
    s: &VertexSet,
    t: &VertexSet,
    ell: usize,
    fam: &SetFamily,
) -> Result<RpathsOrCut> {
    let k = s.len();
    if t.len() != k {
        return Err(Error::invalid(format!("{} sources but {} sinks", k, t.len())));
    }
    if ell == 0 {
        return Err(Error::invalid("ell must be positive"));
    }
    if fam.len() < 2 * ell * k {
        return Err(Error::invalid(format!(
            "{} bags, at least {} are needed",
            fam.len(),
            2 * ell * k
        )));
    }
    let seq = DigraphSourceSequence::doubled(gs, s, gt, t, ell)?;
    let (paths, cut) = solve_rpaths(&seq, fam)?;
    if paths.size() >= 2 * ell * k {
        return Ok(RpathsOrCut::Paths(paths));
    }
    let smallest = |range: std::ops::Range<usize>| {
        cut.xs[range]
            .iter()
            .min_by_key(|x| x.len())
            .cloned()
            .unwrap_or_default()
    };
    let xs = smallest(0..ell);
    let xt = smallest(ell..2 * ell);
    if cut.kept.is_empty() || xs.len() + xt.len() > 2 * k - 1 {
        return Err(Error::Internal(format!(
            "a cut of order {} below {} keeps {} bags with separators of size {} and {}",
            cut.order(),
            2 * ell * k,
            cut.kept.len(),
            xs.len(),
            xt.len()
        )));
    }
    Ok(RpathsOrCut::Cut { kept: cut.kept, xs, xt })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignedPath {
    pub path: Path,
    pub bag: usize,
}

fn bags_by_vertex(fam: &SetFamily) -> BTreeMap<usize, Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, bag) in fam.bags.iter().enumerate() {
        for &v in bag {
            map.entry(v).or_default().push(j);
        }
    }
    map
}

/// Truncates paths at internal vertices lying in bags that no path is
/// assigned to, reassigning the path to that bag, until no path has such
/// an internal vertex. Paths are scanned in order, vertices front to back.
pub fn make_b_minimal(paths: &RespectingPathSet, fam: &SetFamily) -> Result<RespectingPathSet> {
    let Some(assignment) = &paths.assignment else {
        return Err(Error::invalid("an assignment of paths to bags is required"));
    };
    let mut out = paths.clone();
    let mut assignment = assignment.clone();
    let by_vertex = bags_by_vertex(fam);
    let mut used: BTreeSet<usize> = assignment.iter().flatten().copied().collect();
    loop {
        let mut changed = false;
        #[allow(clippy::needless_range_loop)]
        for i in 0..out.parts.len() {
            for j in 0..out.parts[i].len() {
                let path = &out.parts[i][j];
                let hit = path.internal().iter().enumerate().find_map(|(pos, v)| {
                    by_vertex
                        .get(v)?
                        .iter()
                        .find(|b| !used.contains(b))
                        .map(|&b| (pos + 1, b))
                });
                if let Some((pos, bag)) = hit {
                    out.parts[i][j] = path.truncated(pos);
                    used.remove(&assignment[i][j]);
                    used.insert(bag);
                    assignment[i][j] = bag;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    out.assignment = Some(assignment);
    Ok(out)
}

/// Keeps the out-edges of `V_S` (non-sink path vertices plus the assigned
/// bags) and of vertices outside every bag; symmetric for the sink side.
pub fn build_refined(
    gs: &Digraph,
    gt: &Digraph,
    source_side: &[AssignedPath],
    sink_side: &[AssignedPath],
    fam: &SetFamily,
) -> (Digraph, Digraph) {
    let all = fam.union();
    let refine = |g: &Digraph, side: &[AssignedPath]| {
        let mut keep = VertexSet::new();
        for ap in side {
            let vs = ap.path.vertices();
            keep.extend(&vs[..vs.len() - 1]);
            keep.extend(&fam.bags[ap.bag]);
        }
        let cut: VertexSet = all.difference(&keep).copied().collect();
        g.without_out_edges(&cut)
    };
    (refine(gs, source_side), refine(gt, sink_side))
}

fn split_sides(paths: &RespectingPathSet, ell: usize) -> (Vec<AssignedPath>, Vec<AssignedPath>) {
    let assignment = paths.assignment.as_ref().expect("R-paths carry an assignment");
    let collect = |range: std::ops::Range<usize>| {
        range
            .flat_map(|i| {
                paths.parts[i]
                    .iter()
                    .zip(&assignment[i])
                    .map(|(p, &b)| AssignedPath { path: p.clone(), bag: b })
            })
            .collect::<Vec<_>>()
    };
    (collect(0..ell), collect(ell..2 * ell))
}

/// Intermediate results of [`route`], for inspection and testing.
#[derive(Clone, Debug, Default)]
pub struct RouteTrace {
    pub first: Option<RespectingPathSet>,
    pub minimal: Option<RespectingPathSet>,
    pub refined: Option<(Digraph, Digraph)>,
    pub second: Option<RespectingPathSet>,
}

pub fn route(instance: &DdpInstance) -> Result<RoutingOutcome> {
    route_with_trace(instance).map(|(outcome, _)| outcome)
}

pub fn route_with_trace(instance: &DdpInstance) -> Result<(RoutingOutcome, RouteTrace)> {
    let problems = instance.check();
    if !problems.ok() {
        return Err(Error::InvalidInstance(
            problems.violations.into_iter().map(|v| v.detail).collect(),
        ));
    }
    let mut trace = RouteTrace::default();
    let (k, c) = (instance.k(), instance.c);
    let g_s = instance.graph.clone();
    let g_t = instance.graph.reverse();
    let s: VertexSet = instance.s.iter().copied().collect();
    let t: VertexSet = instance.t.iter().copied().collect();
    let fam = &instance.bramble;
    let ell = c * k - c + 1;
    let disjoint_from =
        |x: &VertexSet| -> BTreeSet<usize> { (0..fam.len()).filter(|&j| fam.bags[j].is_disjoint(x)).collect() };
    // a repeated terminal makes the terminal set itself a separator below k
    if s.len() < k {
        return Ok((RoutingOutcome::SeparatorAtSource { kept: disjoint_from(&s), xs: s }, trace));
    }
    if t.len() < k {
        return Ok((RoutingOutcome::SeparatorAtSink { kept: disjoint_from(&t), xt: t }, trace));
    }

    let first = match rpaths_or_small_cut(&g_s, &g_t, &s, &t, ell, fam)? {
        RpathsOrCut::Cut { xs, xt, .. } => {
            let outcome = if xs.len() < k {
                RoutingOutcome::SeparatorAtSource { kept: disjoint_from(&xs), xs }
            } else {
                RoutingOutcome::SeparatorAtSink { kept: disjoint_from(&xt), xt }
            };
            return Ok((outcome, trace));
        }
        RpathsOrCut::Paths(p) => p,
    };
    trace.first = Some(first.clone());

    let minimal = make_b_minimal(&first, fam)?;
    trace.minimal = Some(minimal.clone());
    let (source_side, sink_side) = split_sides(&minimal, ell);
    let (gs_refined, gt_refined) = build_refined(&g_s, &g_t, &source_side, &sink_side, fam);
    trace.refined = Some((gs_refined.clone(), gt_refined.clone()));

    let used: BTreeSet<usize> = source_side.iter().chain(&sink_side).map(|a| a.bag).collect();
    let unused: Vec<usize> = (0..fam.len()).filter(|j| !used.contains(j)).collect();
    let rest = SetFamily::new(unused.iter().map(|&j| fam.bags[j].clone()).collect());
    let second = match rpaths_or_small_cut(&gs_refined, &gt_refined, &s, &t, 1, &rest)? {
        RpathsOrCut::Paths(p) => p,
        RpathsOrCut::Cut { xs, xt, .. } => {
            return Err(Error::Internal(format!(
                "the refined digraphs admit a small cut (|xs| = {}, |xt| = {})",
                xs.len(),
                xt.len()
            )));
        }
    };
    // report bags by their index in the whole bramble
    let mut second = second;
    if let Some(a) = &mut second.assignment {
        a.iter_mut().flatten().for_each(|b| *b = unused[*b]);
    }
    trace.second = Some(second.clone());

    let (front, back) = split_sides(&second, 1);
    let mut paths = Vec::with_capacity(k);
    for i in 0..k {
        let (si, ti) = (instance.s[i], instance.t[i]);
        let q_s = front
            .iter()
            .find(|a| a.path.source() == si)
            .ok_or_else(|| Error::Internal(format!("no source-side path starts at {si}")))?;
        let q_t = back
            .iter()
            .find(|a| a.path.source() == ti)
            .ok_or_else(|| Error::Internal(format!("no sink-side path starts at {ti}")))?;
        let q_t_path = q_t.path.reversed();
        let mut allowed = vec![false; instance.graph.vertex_count()];
        for &v in fam.bags[q_s.bag].iter().chain(&fam.bags[q_t.bag]) {
            allowed[v] = true;
        }
        let glue = instance
            .graph
            .shortest_path_within(q_s.path.sink(), q_t_path.source(), &allowed)
            .ok_or_else(|| Error::Internal(format!("bags {} and {} are not joined", q_s.bag, q_t.bag)))?;
        let mut walk = q_s.path.vertices().to_vec();
        walk.extend(&glue.vertices()[1..]);
        walk.extend(&q_t_path.vertices()[1..]);
        paths.push(shorten_walk(&Walk(walk))?);
    }

    let load = usage(&paths);
    if let Some((&v, &n)) = load.iter().find(|(_, &n)| n > c) {
        return Err(Error::Internal(format!("vertex {v} lies on {n} paths, above {c}")));
    }
    let single_vertex = (0..k).filter(|&i| paths[i].len() == 1).collect();
    Ok((RoutingOutcome::Solution { paths, single_vertex }, trace))
}

/// Number of paths through each vertex, counting each path once.
pub fn usage(paths: &[Path]) -> BTreeMap<usize, usize> {
    let mut load = BTreeMap::new();
    for p in paths {
        for &v in p.vertices() {
            *load.entry(v).or_insert(0) += 1;
        }
    }
    load
}

/// Re-checks every guarantee of a routing outcome from scratch.
pub fn check_outcome(instance: &DdpInstance, outcome: &RoutingOutcome) -> Verdict {
    let mut v = Verdict::default();
    let k = instance.k();
    let c = instance.c;
    let fam = &instance.bramble;
    let mut check_separator = |kept: &BTreeSet<usize>, x: &VertexSet, graph: &Digraph, ends: &[usize]| {
        if x.len() >= k.max(1) {
            v.push("separator-size", format!("separator has {} vertices, at most {} allowed", x.len(), k - 1));
        }
        if let Some(j) = kept.iter().find(|&&j| j >= fam.len()) {
            v.push("kept", format!("kept bag {j} does not exist"));
            return;
        }
        if let Ok(need) = g(k, c) {
            let floor = need.saturating_sub(c * (k - 1));
            if kept.len() < floor {
                v.push("kept", format!("{} bags kept, at least {floor} required", kept.len()));
            }
        }
        for &j in kept {
            if !fam.bags[j].is_disjoint(x) {
                v.push("kept-disjoint", format!("kept bag {j} meets the separator"));
            }
        }
        let from: VertexSet = ends.iter().copied().collect();
        if graph.connects(&from, &fam.union_of(kept), x) {
            v.push("separates", "a terminal still reaches a kept bag");
        }
    };
    match outcome {
        RoutingOutcome::SeparatorAtSource { kept, xs } => {
            check_separator(kept, xs, &instance.graph, &instance.s)
        }
        RoutingOutcome::SeparatorAtSink { kept, xt } => {
            check_separator(kept, xt, &instance.graph.reverse(), &instance.t)
        }
        RoutingOutcome::Solution { paths, single_vertex } => {
            if paths.len() != k {
                v.push("count", format!("{} paths for {k} terminal pairs", paths.len()));
                return v;
            }
            for (i, p) in paths.iter().enumerate() {
                if !p.is_path_in(&instance.graph) {
                    v.push("path", format!("path {i} is not a path of the digraph"));
                }
                if p.source() != instance.s[i] || p.sink() != instance.t[i] {
                    v.push("endpoints", format!("path {i} does not run from s[{i}] to t[{i}]"));
                }
            }
            for (vertex, n) in usage(paths) {
                if n > c {
                    v.push("congestion", format!("vertex {vertex} lies on {n} paths"));
                }
            }
            let singles: Vec<usize> = (0..k).filter(|&i| paths[i].len() == 1).collect();
            if &singles != single_vertex {
                v.push("single-vertex", "single-vertex flags do not match the paths");
            }
        }
    }
    v
}
