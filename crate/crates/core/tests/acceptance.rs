//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::*;
use menger_linkage::brute::{brute_max_paths, brute_min_cut, ScaleGate};
use menger_linkage::crosscheck::matroid_value;
use menger_linkage::generate::{complete_ddp, gnp, random_sequence, rng, sparse_sequence, two_island, SequenceShape};
use menger_linkage::linkage::{check_outcome, g, route, usage, RoutingOutcome};
use menger_linkage::minmax::fixtures::{both_sinks, overlapping_bags, three_sources, three_sources_with_union};
use menger_linkage::minmax::{solve, solve_dpaths, solve_rpaths, solve_tpaths, verify_cut, verify_paths};
use menger_linkage::{
    menger, shorten_walk, Cut, DCut, DigraphSourceSequence, RCut, SetFamily, TCut, Target, VertexSet, Walk,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn targets<'a>(b: &'a VertexSet, fam: &'a SetFamily) -> [Target<'a>; 3] {
    [Target::D(b), Target::T(fam), Target::R(fam)]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn duality_exactness() -> Outcome {
    let start = Instant::now();
    let gate = ScaleGate::default();
    let shape = SequenceShape::default();
    for variant in 0..3 {
        for i in 0..500u64 {
            let (seq, b, fam) = random_sequence(&shape, &mut rng(1_000 * variant + i));
            let target = targets(&b, &fam)[variant as usize];
            let (paths, cut) = solve(&seq, target).map_err(|e| e.to_string())?;
            let max = brute_max_paths(&seq, target, &gate).map_err(|e| e.to_string())?;
            let min = brute_min_cut(&seq, target, &gate).map_err(|e| e.to_string())?;
            let values = [paths.size(), cut.order(), max.value, min.value];
            ensure(values.iter().all(|&v| v == values[0]), || {
                format!("{} instance {i}: solver/cut/brute/brute-cut = {values:?}", target.variant().name())
            })?;
            ensure(verify_paths(&seq, target, &paths).ok() && verify_cut(&seq, target, &cut).ok(), || {
                format!("{} instance {i}: solver certificate rejected", target.variant().name())
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("1500 instances agree in {:.2?}", elapsed))
}

fn fixture_values() -> Outcome {
    let gate = ScaleGate::default();
    let (plain, with_union, sinks, bags) = (three_sources(), three_sources_with_union(), both_sinks(), overlapping_bags());
    let cases: [(&DigraphSourceSequence, Target<'_>, usize); 3] = [
        (&plain, Target::D(&sinks), 2),
        (&with_union, Target::T(&bags), 2),
        (&plain, Target::R(&bags), 3),
    ];
    let mut seen = Vec::new();
    for (seq, target, want) in cases {
        let solver = solve(seq, target).map_err(|e| e.to_string())?.0.size();
        let brute = brute_max_paths(seq, target, &gate).map_err(|e| e.to_string())?.value;
        let matroid = matroid_value(seq, target).map_err(|e| e.to_string())?;
        ensure(solver == want && brute == want && matroid == want, || {
            format!("{}: solver {solver}, brute {brute}, matroid {matroid}, want {want}", target.variant().name())
        })?;
        seen.push(format!("{}={want}", target.variant().name().to_uppercase()));
    }
    Ok(seen.join(" "))
}

fn matroid_crosscheck() -> Outcome {
    let shape = SequenceShape::default();
    for variant in 0..3 {
        for i in 0..200u64 {
            let (seq, b, fam) = random_sequence(&shape, &mut rng(50_000 + 1_000 * variant + i));
            let target = targets(&b, &fam)[variant as usize];
            let solver = solve(&seq, target).map_err(|e| e.to_string())?.0.size();
            let m = matroid_value(&seq, target).map_err(|e| e.to_string())?;
            ensure(solver == m, || format!("{} instance {i}: solver {solver}, matroid {m}", target.variant().name()))?;
        }
    }
    Ok("600 instances agree".into())
}

fn menger_core() -> Outcome {
    let mut r = rng(4);
    for i in 0..300 {
        let n = r.gen_range(1..=8);
        let p = r.gen_range(0.1..0.6);
        let graph = gnp(n, p, &mut r).map_err(|e| e.to_string())?;
        let a: VertexSet = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        let b: VertexSet = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        let cert = menger(&graph, &a, &b).map_err(|e| e.to_string())?;
        let sep = brute_separator(&graph, &a, &b);
        let paths = brute_disjoint_paths(&graph, &a, &b, n);
        ensure(cert.paths.len() == paths && cert.separator.len() == sep, || {
            format!("digraph {i}: menger {}/{}, exhaustive {paths}/{sep}", cert.paths.len(), cert.separator.len())
        })?;
    }
    Ok("300 digraphs agree".into())
}

fn complete_routing() -> Outcome {
    let mut lines = Vec::new();
    for (n, k) in [(24, 2), (48, 3), (50, 3)] {
        let inst = complete_ddp(n, k, 2).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let outcome = route(&inst).map_err(|e| format!("n={n}: {e}"))?;
        let elapsed = start.elapsed();
        let RoutingOutcome::Solution { paths, .. } = &outcome else {
            return Err(format!("n={n}, k={k}: no solution"));
        };
        for (i, p) in paths.iter().enumerate() {
            ensure(p.is_path_in(&inst.graph) && p.source() == inst.s[i] && p.sink() == inst.t[i], || {
                format!("n={n}: path {i} has wrong endpoints")
            })?;
        }
        let worst = usage(paths).into_values().max().unwrap_or(0);
        ensure(paths.len() == k && worst <= 2, || format!("n={n}: {} paths, max usage {worst}", paths.len()))?;
        ensure(check_outcome(&inst, &outcome).ok(), || format!("n={n}: outcome check failed"))?;
        ensure(elapsed < Duration::from_secs(10), || format!("n={n}: took {elapsed:?}"))?;
        lines.push(format!("n={n} k={k} in {elapsed:.2?}"));
    }
    Ok(lines.join(", "))
}

fn separator_outcomes() -> Outcome {
    let floor = g(2, 2).map_err(|e| e.to_string())? - 2;
    for seed in 0..20 {
        let p = [0.0, 0.3, 0.7][seed as usize % 3];
        let inst = two_island(26, 2, 2, p, seed).map_err(|e| e.to_string())?;
        let outcome = route(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let (kept, x, graph, ends) = match &outcome {
            RoutingOutcome::SeparatorAtSource { kept, xs } => (kept, xs, inst.graph.clone(), &inst.s),
            RoutingOutcome::SeparatorAtSink { kept, xt } => (kept, xt, inst.graph.reverse(), &inst.t),
            RoutingOutcome::Solution { .. } => return Err(format!("seed {seed}: got a solution")),
        };
        ensure(x.len() <= 1 && kept.len() >= floor, || {
            format!("seed {seed}: |X| = {}, {} bags kept", x.len(), kept.len())
        })?;
        let union = inst.bramble.union_of(kept);
        ensure(union.is_disjoint(x), || format!("seed {seed}: kept bags meet X"))?;
        // plain BFS from the terminals avoiding X
        let mut seen = vec![false; graph.vertex_count()];
        let mut queue: Vec<usize> = ends.iter().copied().filter(|v| !x.contains(v)).collect();
        queue.iter().for_each(|&v| seen[v] = true);
        while let Some(u) = queue.pop() {
            for &w in graph.out_neighbors(u) {
                if !seen[w] && !x.contains(&w) {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        ensure(union.iter().all(|&v| !seen[v]), || format!("seed {seed}: a kept bag is reachable"))?;
    }
    Ok("20 instances separate".into())
}

fn g_formula() -> Outcome {
    let fixed = [((2, 2), 18), ((3, 2), 40), ((2, 3), 23)];
    for ((k, c), want) in fixed {
        let got = g(k, c).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("g({k},{c}) = {got}, want {want}"))?;
    }
    for k in 2..=10 {
        let got = g(k, 2).map_err(|e| e.to_string())?;
        ensure(got == 4 * k * k + 2 * k - 2, || format!("g({k},2) = {got}"))?;
    }
    Ok("all values exact".into())
}

fn random_cut(seq: &DigraphSourceSequence, target: Target<'_>, r: &mut ChaCha8Rng) -> Cut {
    let mut pick = |pool: Vec<usize>| -> VertexSet { pool.into_iter().filter(|_| r.gen_bool(0.4)).collect() };
    let xs: Vec<VertexSet> = seq.entries().iter().map(|e| pick(e.vertices())).collect();
    match target {
        Target::D(b) => Cut::D(DCut { x0: pick(b.iter().copied().collect()), xs }),
        Target::T(fam) | Target::R(fam) => {
            let kept: BTreeSet<usize> = pick((0..fam.len()).collect());
            let x0 = pick(fam.union_of(&kept).into_iter().collect());
            if matches!(target, Target::T(_)) {
                Cut::T(TCut { kept, bag_count: fam.len(), inner: DCut { x0, xs } })
            } else {
                Cut::R(RCut { kept, bag_count: fam.len(), xs })
            }
        }
    }
}

fn property_suite() -> Outcome {
    let gate = ScaleGate::default();
    let shape = SequenceShape::default();
    let mut r = rng(8);
    let mut random_cuts = 0;
    for i in 0..1000 {
        let (seq, b, fam) = random_sequence(&shape, &mut r);
        for target in targets(&b, &fam) {
            let (paths, cut) = solve(&seq, target).map_err(|e| e.to_string())?;
            let max = brute_max_paths(&seq, target, &gate).map_err(|e| e.to_string())?;
            let min = brute_min_cut(&seq, target, &gate).map_err(|e| e.to_string())?;
            let mut cuts = vec![cut, min.witness];
            for _ in 0..4 {
                let c = random_cut(&seq, target, &mut r);
                if verify_cut(&seq, target, &c).ok() {
                    random_cuts += 1;
                    cuts.push(c);
                }
            }
            for p in [&paths, &max.witness] {
                ensure(verify_paths(&seq, target, p).ok(), || format!("trial {i}: path set rejected"))?;
                for c in &cuts {
                    ensure(p.size() <= c.order(), || {
                        format!("trial {i}: weak duality {} > {}", p.size(), c.order())
                    })?;
                }
            }
        }
        let t = solve_tpaths(&seq, &fam).map_err(|e| e.to_string())?.0.size();
        let rv = solve_rpaths(&seq, &fam).map_err(|e| e.to_string())?.0.size();
        ensure(t <= rv, || format!("trial {i}: T {t} > R {rv}"))?;

        let universe: Vec<usize> = seq.universe().into_iter().collect();
        let extra = *universe.choose(&mut r).expect("non-empty universe");
        let mut bigger_b = b.clone();
        bigger_b.insert(extra);
        let mut bigger = fam.clone();
        bigger.bags.push([extra].into());
        let d0 = solve_dpaths(&seq, &b).map_err(|e| e.to_string())?.0.size();
        let d1 = solve_dpaths(&seq, &bigger_b).map_err(|e| e.to_string())?.0.size();
        let r1 = solve_rpaths(&seq, &bigger).map_err(|e| e.to_string())?.0.size();
        let t1 = solve_tpaths(&seq, &bigger).map_err(|e| e.to_string())?.0.size();
        ensure(d0 <= d1 && rv <= r1 && t <= t1, || format!("trial {i}: monotonicity fails"))?;

        let graph = gnp(r.gen_range(1..10), 0.4, &mut r).map_err(|e| e.to_string())?;
        ensure(graph.reverse().reverse() == graph, || format!("trial {i}: reverse is not an involution"))?;

        let mut walk = vec![r.gen_range(0..graph.vertex_count())];
        for _ in 0..r.gen_range(0..15) {
            let out = graph.out_neighbors(*walk.last().expect("non-empty"));
            match out.choose(&mut r) {
                Some(&w) => walk.push(w),
                None => break,
            }
        }
        let p = shorten_walk(&Walk(walk.clone())).map_err(|e| e.to_string())?;
        ensure(
            p.source() == walk[0] && p.sink() == *walk.last().expect("non-empty") && p.is_path_in(&graph),
            || format!("trial {i}: shortened walk lost an endpoint"),
        )?;
    }
    Ok(format!("1000 trials each, {random_cuts} random cuts verified"))
}

fn scaling() -> Outcome {
    // min over repeats of the summed solve time on a fixed batch
    let time = |ell: usize, n: usize, bags: usize| -> Result<Duration, String> {
        let batch: Vec<_> = (0..8)
            .map(|s| sparse_sequence(ell, n, bags, 3.0, &mut rng(900 + s)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let start = Instant::now();
            for (seq, fam) in &batch {
                solve_rpaths(seq, fam).map_err(|e| e.to_string())?;
            }
            best = best.min(start.elapsed());
        }
        Ok(best)
    };
    let small = time(4, 45, 20)?;
    let large = time(8, 45, 40)?;
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);
    ensure(ratio <= 6.0, || format!("200 -> 400 took {small:.2?} -> {large:.2?}, ratio {ratio:.2}"))?;
    Ok(format!("200 -> 400: {small:.2?} -> {large:.2?}, ratio {ratio:.2}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("duality exactness", duality_exactness),
        ("small instance values", fixture_values),
        ("matroid cross-check", matroid_crosscheck),
        ("menger core", menger_core),
        ("complete digraph routing", complete_routing),
        ("separator outcomes", separator_outcomes),
        ("g formula", g_formula),
        ("property suite", property_suite),
        ("scaling", scaling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
