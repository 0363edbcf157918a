mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use menger_linkage::bramble::{self, min_hitting_set, order_lower_bound};
use menger_linkage::brute::{brute_max_paths, brute_min_cut, ScaleGate};
use menger_linkage::generate::{gnp, random_sequence, rng, two_island, SequenceShape};
use menger_linkage::io::{MinmaxResult, ResultFile};
use menger_linkage::linkage::{check_outcome, g, route, route_with_trace, usage, DdpInstance, RoutingOutcome};
use menger_linkage::matroid::{
    gammoid_rank, intersection_max, intersection_min_formula, transversal_rank, transversal_rank_formula, Gammoid,
    MatroidHandle, TransversalMatroid,
};
use menger_linkage::minmax::{solve, solve_dpaths, solve_rpaths, solve_tpaths, verify_cut, verify_paths};
use menger_linkage::{
    is_k_strong, menger, shorten_walk, strong_components, Digraph, SetFamily, Target, VertexSet, Walk,
};

fn random_subset(n: usize, r: &mut impl Rng) -> VertexSet {
    (0..n).filter(|_| r.gen_bool(0.4)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reverse_is_an_involution(seed in any::<u64>(), n in 1usize..12) {
        let g = gnp(n, 0.3, &mut rng(seed)).unwrap();
        prop_assert_eq!(g.reverse().reverse(), g);
    }

    #[test]
    fn components_partition_by_mutual_reachability(seed in any::<u64>(), n in 1usize..10) {
        let g = gnp(n, 0.25, &mut rng(seed)).unwrap();
        let comps = strong_components(&g);
        let mut seen = BTreeSet::new();
        for c in &comps {
            for &v in c {
                prop_assert!(seen.insert(v));
            }
        }
        prop_assert_eq!(seen.len(), n);
        let mut id = vec![0; n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                id[v] = i;
            }
        }
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(mutually_reachable(&g, u, v), id[u] == id[v]);
            }
        }
    }

    #[test]
    fn shortened_walks_keep_endpoints(seed in any::<u64>(), n in 1usize..9, len in 1usize..20) {
        let mut r = rng(seed);
        let g = gnp(n, 0.5, &mut r).unwrap();
        let mut walk = vec![r.gen_range(0..n)];
        while walk.len() < len {
            let out = g.out_neighbors(*walk.last().unwrap());
            if out.is_empty() {
                break;
            }
            walk.push(out[r.gen_range(0..out.len())]);
        }
        let w = Walk(walk.clone());
        prop_assert!(w.is_walk_in(&g));
        let p = shorten_walk(&w).unwrap();
        prop_assert_eq!(p.source(), walk[0]);
        prop_assert_eq!(p.sink(), *walk.last().unwrap());
        prop_assert!(p.vertices().iter().all(|v| walk.contains(v)));
        prop_assert!(p.is_path_in(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_strong_matches_subset_removal(seed in any::<u64>(), n in 2usize..10, k in 1usize..4) {
        let p = rng(seed).gen_range(0.4..0.95);
        let g = gnp(n, p, &mut rng(seed ^ 1)).unwrap();
        prop_assert_eq!(is_k_strong(&g, k), brute_k_strong(&g, k));
    }

    #[test]
    fn menger_matches_exhaustive_search(seed in any::<u64>(), n in 1usize..9) {
        let mut r = rng(seed);
        let g = gnp(n, r.gen_range(0.1..0.5), &mut r).unwrap();
        let a = random_subset(n, &mut r);
        let b = random_subset(n, &mut r);
        let cert = menger(&g, &a, &b).unwrap();
        let sep = brute_separator(&g, &a, &b);
        prop_assert_eq!(cert.separator.len(), sep);
        prop_assert_eq!(brute_disjoint_paths(&g, &a, &b, sep), sep);
        prop_assert_eq!(cert.paths.len(), sep);
        prop_assert!(!g.connects(&a, &b, &cert.separator));
        let mut used = BTreeSet::new();
        for p in &cert.paths {
            prop_assert!(p.is_path_in(&g));
            prop_assert!(a.contains(&p.source()) && b.contains(&p.sink()));
            for &v in p.vertices() {
                prop_assert!(used.insert(v));
            }
        }
        prop_assert_eq!(menger(&g, &a, &b).unwrap(), cert);
    }

    #[test]
    fn solvers_match_the_oracle(seed in any::<u64>()) {
        let (seq, b, fam) = random_sequence(&SequenceShape::default(), &mut rng(seed));
        let gate = ScaleGate::default();
        for target in [Target::D(&b), Target::T(&fam), Target::R(&fam)] {
            let (paths, cut) = solve(&seq, target).unwrap();
            prop_assert!(verify_paths(&seq, target, &paths).ok());
            prop_assert!(verify_cut(&seq, target, &cut).ok());
            let max = brute_max_paths(&seq, target, &gate).unwrap();
            let min = brute_min_cut(&seq, target, &gate).unwrap();
            prop_assert!(verify_paths(&seq, target, &max.witness).ok());
            prop_assert!(verify_cut(&seq, target, &min.witness).ok());
            prop_assert_eq!(paths.size(), cut.order());
            prop_assert_eq!(max.value, paths.size());
            prop_assert_eq!(min.value, paths.size());
        }
    }

    #[test]
    fn monotone_in_targets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (seq, b, fam) = random_sequence(&SequenceShape::default(), &mut r);
        let universe: Vec<usize> = seq.universe().into_iter().collect();
        let mut bigger_b = b.clone();
        bigger_b.insert(universe[r.gen_range(0..universe.len())]);
        prop_assert!(solve_dpaths(&seq, &bigger_b).unwrap().0.size() >= solve_dpaths(&seq, &b).unwrap().0.size());
        let mut bigger = fam.clone();
        bigger.bags.push([universe[r.gen_range(0..universe.len())]].into());
        prop_assert!(solve_rpaths(&seq, &bigger).unwrap().0.size() >= solve_rpaths(&seq, &fam).unwrap().0.size());
        prop_assert!(solve_tpaths(&seq, &fam).unwrap().0.size() <= solve_rpaths(&seq, &fam).unwrap().0.size());
    }

    #[test]
    fn results_round_trip(seed in any::<u64>()) {
        let (seq, b, fam) = random_sequence(&SequenceShape::default(), &mut rng(seed));
        for target in [Target::D(&b), Target::T(&fam), Target::R(&fam)] {
            let (paths, cut) = solve(&seq, target).unwrap();
            let doc = ResultFile::Minmax(MinmaxResult::new(&paths, &cut));
            let back = ResultFile::parse(&doc.to_json()).unwrap();
            prop_assert_eq!(&back, &doc);
            let ResultFile::Minmax(m) = back else { unreachable!() };
            prop_assert_eq!(m.to_paths().unwrap(), paths);
            prop_assert_eq!(m.cut.to_cut(), cut);
        }
    }

    #[test]
    fn gammoid_rank_axioms(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let host = gnp(n, 0.35, &mut r).unwrap();
        let gm = Gammoid { host, x: random_subset(n, &mut r), y: (0..n).collect() };
        let x = random_subset(n, &mut r);
        let y = random_subset(n, &mut r);
        let rank = |s: &VertexSet| gammoid_rank(&gm, s).unwrap();
        let union: VertexSet = x.union(&y).copied().collect();
        let inter: VertexSet = x.intersection(&y).copied().collect();
        prop_assert!(rank(&union) + rank(&inter) <= rank(&x) + rank(&y));
        prop_assert!(rank(&inter) <= rank(&x) && rank(&x) <= rank(&union));
        prop_assert!(rank(&x) <= x.len());
        let h = gm.handle();
        let xv: Vec<usize> = x.iter().copied().collect();
        prop_assert_eq!(h.rank(&xv), rank(&x));
    }

    #[test]
    fn transversal_rank_is_ores_formula(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bags = (0..r.gen_range(0..=6)).map(|_| random_subset(6, &mut r)).collect();
        let family = SetFamily::new(bags);
        let u = random_subset(6, &mut r);
        let tm = TransversalMatroid { family: family.clone() };
        prop_assert_eq!(transversal_rank(&tm, &u), transversal_rank_formula(&family, &u).unwrap());
    }

    #[test]
    fn intersection_meets_min_formula(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ground: Vec<usize> = (0..r.gen_range(1..=7)).collect();
        let fam = |r: &mut rand_chacha::ChaCha8Rng| {
            let bags: Vec<VertexSet> = (0..r.gen_range(0..=4))
                .map(|_| ground.iter().copied().filter(|_| r.gen_bool(0.4)).collect())
                .collect();
            let tm = TransversalMatroid { family: SetFamily::new(bags) }.handle();
            MatroidHandle::new(ground.clone(), move |s| tm.is_independent(s))
        };
        let m1 = fam(&mut r);
        let m2 = fam(&mut r);
        prop_assert_eq!(intersection_max(&m1, &m2).unwrap(), intersection_min_formula(&m1, &m2).unwrap());
    }

    #[test]
    fn matroid_exchange_holds(seed in any::<u64>(), n in 2usize..7) {
        let mut r = rng(seed);
        let gm = Gammoid { host: gnp(n, 0.4, &mut r).unwrap(), x: random_subset(n, &mut r), y: (0..n).collect() };
        let h = gm.handle();
        let pick = |r: &mut rand_chacha::ChaCha8Rng| -> Vec<usize> { (0..n).filter(|_| r.gen_bool(0.5)).collect() };
        let (a, b) = (pick(&mut r), pick(&mut r));
        if h.is_independent(&a) && h.is_independent(&b) && a.len() < b.len() {
            let extendable = b.iter().filter(|e| !a.contains(e)).any(|&e| {
                let mut s = a.clone();
                s.push(e);
                h.is_independent(&s)
            });
            prop_assert!(extendable);
        }
        prop_assert!(h.is_independent(&[]));
    }

    #[test]
    fn brambles_in_complete_digraphs(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let g = Digraph::complete(n);
        let bags: Vec<VertexSet> = (0..r.gen_range(1..6))
            .map(|_| {
                let mut b = random_subset(n, &mut r);
                b.insert(r.gen_range(0..n));
                b
            })
            .collect();
        let fam = SetFamily::new(bags);
        prop_assert!(bramble::validate(&g, &fam).ok());
        let c = bramble::congestion(&fam).unwrap();
        let hit = min_hitting_set(&g, &fam).unwrap();
        prop_assert!(hit.len() >= order_lower_bound(fam.len(), c).unwrap());
        prop_assert!(fam.bags.iter().all(|b| !b.is_disjoint(&hit)));
        let sub = bramble::subfamily(&fam, (0..fam.len()).step_by(2));
        prop_assert!(bramble::validate(&g, &sub).ok());
    }

    #[test]
    fn bramble_violations_are_real(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let g = gnp(n, 0.5, &mut r).unwrap();
        let bags: Vec<VertexSet> = (0..r.gen_range(1..5)).map(|_| random_subset(n, &mut r)).collect();
        let fam = SetFamily::new(bags);
        let verdict = bramble::validate(&g, &fam);
        let edge = |a: &VertexSet, b: &VertexSet| a.iter().any(|&u| b.iter().any(|&v| g.has_edge(u, v)));
        for (i, a) in fam.bags.iter().enumerate() {
            let strong_ok = !a.is_empty() && g.induces_strong(a);
            for (j, b) in fam.bags.iter().enumerate().skip(i + 1) {
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let touch = !a.is_disjoint(b) || (edge(a, b) && edge(b, a));
                let reported = verdict.violations.iter().any(|v| v.rule == "touch" && v.detail.starts_with(&format!("bags {i} and {j} ")));
                prop_assert_eq!(reported, !touch);
            }
            let reported = verdict.violations.iter().any(|v| (v.rule == "strong" || v.rule == "empty-bag") && v.detail.starts_with(&format!("bag {i} ")));
            prop_assert_eq!(reported, !strong_ok);
        }
    }
}

fn core_instance(seed: u64, n_extra: usize, k: usize, c: usize, p: f64) -> DdpInstance {
    // a complete core carrying singleton bags plus random extra vertices
    let mut r = rng(seed);
    let need = g(k, c).unwrap();
    let core = need + 1;
    let n = core + n_extra;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && ((u < core && v < core) || r.gen_bool(p)) {
                edges.push((u, v));
            }
        }
    }
    let pick = |r: &mut rand_chacha::ChaCha8Rng| (0..k).map(|_| r.gen_range(0..n)).collect::<Vec<_>>();
    let s = pick(&mut r);
    let t = pick(&mut r);
    DdpInstance {
        graph: Digraph::new(n, edges).unwrap(),
        s,
        t,
        c,
        bramble: SetFamily::new((0..need).map(|v| [v].into()).collect()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routing_outcomes_check_out(seed in any::<u64>(), extra in 0usize..8, p in 0.0f64..0.6, c in 2usize..4) {
        let inst = core_instance(seed, extra, 2, c, p);
        let (outcome, trace) = route_with_trace(&inst).unwrap();
        let verdict = check_outcome(&inst, &outcome);
        prop_assert!(verdict.ok(), "{:?}", verdict);
        let distinct = inst.s[0] != inst.s[1] && inst.t[0] != inst.t[1];
        if distinct && is_k_strong(&inst.graph, 2) {
            let solved = matches!(outcome, RoutingOutcome::Solution { .. });
            prop_assert!(solved, "expected a solution");
        }
        if let Some(first) = &trace.first {
            let ell = c * 2 - c + 1;
            prop_assert_eq!(first.parts.len(), 2 * ell);
            prop_assert!(first.parts.iter().all(|p| p.len() == 2));
            let minimal = trace.minimal.as_ref().unwrap();
            let used: BTreeSet<usize> = minimal.assignment.as_ref().unwrap().iter().flatten().copied().collect();
            let unused: VertexSet = (0..inst.bramble.len()).filter(|j| !used.contains(j)).flat_map(|j| inst.bramble.bags[j].clone()).collect();
            for (_, path) in minimal.paths() {
                prop_assert!(path.internal().iter().all(|v| !unused.contains(v)));
            }
            prop_assert_eq!(minimal.size(), first.size());
        }
        if let RoutingOutcome::Solution { paths, .. } = &outcome {
            let bag_vertices = inst.bramble.union();
            for (v, count) in usage(paths) {
                prop_assert!(count <= c);
                if !bag_vertices.contains(&v) {
                    prop_assert!(count <= 2);
                }
            }
        }
    }

    #[test]
    fn two_islands_give_separators(seed in any::<u64>(), p in 0.0f64..1.0) {
        let inst = two_island(30, 2, 2, p, seed).unwrap();
        let outcome = route(&inst).unwrap();
        let at_source = matches!(outcome, RoutingOutcome::SeparatorAtSource { .. });
        prop_assert!(at_source, "expected a source-side separator");
        prop_assert!(check_outcome(&inst, &outcome).ok());
    }
}
