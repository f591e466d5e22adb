//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a failure status if any criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reconf_core::dsr::solve_dsr;
use reconf_core::engine::{bfs_reconfig, is_feasible, verify_sequence, Verdict};
use reconf_core::generate::{gen_random_degenerate, plant_dsr_instance, plant_isr_instance};
use reconf_core::hardness::{gadget_size, isr_to_dsr};
use reconf_core::isr_degenerate::{kernelize_degenerate, outside_bound, solve_isr_degenerate};
use reconf_core::isr_quasiwide::{solve_isr_quasiwide, QuasiWideParams};
use reconf_core::sunflower::{find_sunflower, sunflower_threshold, SetFamily};
use reconf_core::{Instance, Problem, Vertex, VertexSet, DEFAULT_STATE_BUDGET};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// 500 planted ISR instances: n in 6..=18, d in {1, 2}, k in {2, 3, 4}.
fn isr_corpus() -> Vec<(usize, Instance)> {
    let mut out = Vec::new();
    let mut i: u64 = 0;
    while out.len() < 500 {
        let n = 6 + (i % 13) as usize;
        let d = 1 + ((i / 13) % 2) as usize;
        let k = 2 + ((i / 26) % 3) as usize;
        let g = gen_random_degenerate(n, d, i);
        if let Some(inst) = plant_isr_instance(&g, k, i.wrapping_mul(7919)) {
            out.push((d, inst));
        }
        i += 1;
    }
    out
}

/// 300 planted DSR instances: n in 4..=14, d in {1, 2, 3}, k in {1, 2, 3}.
fn dsr_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    let mut i: u64 = 0;
    while out.len() < 300 && i < 100_000 {
        let n = 4 + (i % 11) as usize;
        let d = 1 + ((i / 11) % 3) as usize;
        let k = 1 + ((i / 33) % 3) as usize;
        let g = gen_random_degenerate(n, d, 1_000_000 + i);
        if let Some(inst) = plant_dsr_instance(&g, k, i) {
            out.push(inst);
        }
        i += 1;
    }
    out
}

fn distance(inst: &Instance) -> Option<usize> {
    let out = bfs_reconfig(inst, DEFAULT_STATE_BUDGET);
    assert_ne!(out.verdict, Verdict::Exhausted, "oracle ran out of budget");
    out.sequence.map(|s| s.len())
}

fn criterion_1(corpus: &[(usize, Instance)]) -> Outcome {
    let mut agree = 0;
    let mut problems = Vec::new();
    for (idx, (_, inst)) in corpus.iter().enumerate() {
        let oracle = bfs_reconfig(inst, DEFAULT_STATE_BUDGET).verdict;
        let sol = solve_isr_degenerate(inst, DEFAULT_STATE_BUDGET).expect("ISR instance");
        let mut ok = sol.outcome.verdict == oracle;
        if let Some(seq) = &sol.outcome.sequence {
            let deleted: VertexSet = sol.log.deleted().into_iter().collect();
            ok &= verify_sequence(inst, seq).is_ok() && seq.touched().is_disjoint(&deleted);
        }
        if ok {
            agree += 1;
        } else if problems.len() < 5 {
            problems.push(idx);
        }
    }
    outcome(
        agree == corpus.len(),
        if problems.is_empty() {
            format!("{agree}/{} verdicts agree with the oracle", corpus.len())
        } else {
            format!(
                "{agree}/{} verdicts agree with the oracle, problems: {problems:?}",
                corpus.len()
            )
        },
    )
}

fn criterion_2(corpus: &[(usize, Instance)]) -> Outcome {
    let mut runs = 0;
    let mut agree = 0;
    let mut fired = 0;
    for (_, inst) in corpus {
        let oracle = bfs_reconfig(inst, DEFAULT_STATE_BUDGET).verdict;
        let k = inst.k;
        for class_threshold in [2 * k, 8, 32] {
            for max_deletions in [0, 1, 2] {
                let params = QuasiWideParams {
                    class_threshold,
                    max_deletions,
                    ..QuasiWideParams::default()
                };
                let sol = solve_isr_quasiwide(inst, &params, DEFAULT_STATE_BUDGET)
                    .expect("valid parameters");
                runs += 1;
                fired += sol
                    .log
                    .steps
                    .iter()
                    .filter(|s| s.rule == reconf_core::Rule::QuasiWide)
                    .count();
                let valid = sol
                    .outcome
                    .sequence
                    .as_ref()
                    .is_none_or(|seq| verify_sequence(inst, seq).is_ok());
                if sol.outcome.verdict == oracle && valid {
                    agree += 1;
                }
            }
        }
    }
    outcome(
        agree == runs,
        format!("{agree}/{runs} runs agree with the oracle ({fired} sunflower deletions)"),
    )
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut equal = 0;
    let mut yes = 0;
    for inst in corpus {
        let original = distance(inst);
        let sol = solve_dsr(inst, DEFAULT_STATE_BUDGET, None).expect("DSR instance");
        let kernel = sol.outcome.sequence.as_ref().map(|s| s.len());
        let valid = sol
            .outcome
            .sequence
            .as_ref()
            .is_none_or(|seq| verify_sequence(inst, seq).is_ok());
        yes += usize::from(original.is_some());
        if kernel == original && valid {
            equal += 1;
        }
    }
    outcome(
        equal == corpus.len() && corpus.len() == 300,
        format!(
            "{equal}/{} kernel distances equal the original ({yes} reachable)",
            corpus.len()
        ),
    )
}

/// Random distinct nonempty sets of size at most `d`, one more than the
/// sunflower threshold plus a random surplus.
fn random_family(d: usize, petals: usize, seed: u64) -> SetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = sunflower_threshold(d, petals) as usize;
    let count = threshold + 1 + rng.random_range(0..=threshold);
    // smallest universe with room for the family, so members overlap a lot
    let room = |u: usize| {
        (1..=d)
            .map(|s| (0..u).combinations(s).count())
            .sum::<usize>()
    };
    let tight = (d..).find(|&u| room(u) >= 2 * count).expect("finite");
    let universe = rng.random_range(tight..=2 * tight);
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < count {
        let size = rng.random_range(1..=d);
        let set: Vec<u32> = index::sample(&mut rng, universe, size)
            .into_iter()
            .map(|x| x as u32)
            .sorted()
            .collect();
        seen.insert(set);
    }
    let members: Vec<Vec<u32>> = seen.into_iter().collect();
    SetFamily::new(members, d).expect("distinct sets within the bound")
}

fn pairwise_core_check(fam: &SetFamily, core: &[u32], petals: &[usize]) -> bool {
    petals.iter().tuple_combinations().all(|(&a, &b)| {
        let sa = &fam.members()[a];
        let sb = &fam.members()[b];
        let inter: Vec<u32> = sa.iter().copied().filter(|x| sb.contains(x)).collect();
        inter == core
    }) && petals.iter().all(|&p| fam.members()[p].len() > core.len())
}

fn criterion_4() -> Outcome {
    let mut good = 0;
    let mut absent = 0;
    for i in 0..1000u64 {
        let d = 2 + (i % 2) as usize;
        let petals = 3 + ((i / 2) % 2) as usize;
        let fam = random_family(d, petals, i);
        match find_sunflower(&fam, petals) {
            Some(sf) => {
                if sf.petal_count() >= petals
                    && sf.check(&fam).is_ok()
                    && pairwise_core_check(&fam, &sf.core, &sf.petal_indices)
                {
                    good += 1;
                }
            }
            None => absent += 1,
        }
    }
    outcome(
        good == 1000,
        format!("{good}/1000 families yield a checked sunflower ({absent} absent)"),
    )
}

fn criterion_5(corpus: &[(usize, Instance)]) -> Outcome {
    let mut within = 0;
    let mut worst = 0.0f64;
    for (d, inst) in corpus {
        let kernel = kernelize_degenerate(inst).expect("kernel invariants hold");
        let outside = kernel.kernel.graph.n() - kernel.kernel.anchors().len();
        let bound = outside_bound(kernel.degeneracy, inst.k);
        if kernel.degeneracy <= *d && (outside as u128) <= bound {
            within += 1;
        }
        worst = worst.max(outside as f64 / bound as f64);
    }
    outcome(
        within == corpus.len() && outside_bound(1, 2) == 486,
        format!(
            "{within}/{} kernels within (2d+1)(2d+1)!(2k-1)^(2d+1); largest ratio {worst:.4}",
            corpus.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut instances = Vec::new();
    let mut i: u64 = 0;
    while instances.len() < 100 {
        let n = 2 + (i % 4) as usize;
        let d = 1 + ((i / 4) % 2) as usize;
        let g = gen_random_degenerate(n, d, 5_000_000 + i);
        if let Some(inst) = plant_isr_instance(&g, 2, i) {
            instances.push(inst);
        }
        i += 1;
    }
    let mut same_verdict = 0;
    let mut structural = 0;
    let mut sized = 0;
    let mut mismatches = Vec::new();
    for (idx, inst) in instances.iter().enumerate() {
        let (dsr, gm) = isr_to_dsr(inst).expect("dense ISR instance");
        let g = &dsr.graph;
        let k = inst.k;
        if g.n() == gadget_size(inst.graph.n(), inst.graph.m(), k) {
            sized += 1;
        }
        let no_small = g
            .vertices()
            .combinations(k - 1)
            .all(|c| !is_feasible(g, Problem::Dsr, &c.into_iter().collect()));
        let clique_of: HashMap<Vertex, (usize, usize)> = gm
            .clique_vertex
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().enumerate().map(move |(p, &x)| (x, (i, p))))
            .collect();
        let picks_ok = g.vertices().combinations(k).all(|c| {
            let set: VertexSet = c.iter().copied().collect();
            if !is_feasible(g, Problem::Dsr, &set) {
                return true;
            }
            let located: Option<Vec<(usize, usize)>> =
                c.iter().map(|x| clique_of.get(x).copied()).collect();
            let Some(located) = located else {
                return false;
            };
            let cliques: VertexSet = located.iter().map(|&(i, _)| i as Vertex).collect();
            let chosen: VertexSet = located.iter().map(|&(_, p)| p as Vertex).collect();
            cliques.len() == k
                && chosen.len() == k
                && is_feasible(&inst.graph, Problem::Isr, &chosen)
        });
        if no_small && picks_ok {
            structural += 1;
        }
        let isr = bfs_reconfig(inst, DEFAULT_STATE_BUDGET).verdict;
        let via = bfs_reconfig(&dsr, DEFAULT_STATE_BUDGET).verdict;
        if isr == via {
            same_verdict += 1;
        } else if mismatches.len() < 3 {
            mismatches.push(idx);
        }
    }
    outcome(
        same_verdict == 100 && structural == 100 && sized == 100,
        format!(
            "verdicts equal {same_verdict}/100 (first mismatches {mismatches:?}), \
             structure {structural}/100, vertex count {sized}/100"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut ok = 0;
    for i in 0..200u64 {
        let n = 5 + (i as usize * 37) % 300;
        let d = 1 + (i % 4) as usize;
        let g = gen_random_degenerate(n, d, 9_000_000 + i);
        let low = g
            .vertices()
            .filter(|&v| g.degree(v).unwrap() <= 2 * d)
            .count();
        let s = low + 1;
        if g.n() <= (2 * d + 1) * s && g.m() <= d * g.n() {
            ok += 1;
        }
    }
    outcome(
        ok == 200,
        format!("{ok}/200 graphs satisfy both counting bounds"),
    )
}

/// Distance in the explicitly built reconfiguration graph.
fn materialized_distance(inst: &Instance) -> Option<usize> {
    let g = &inst.graph;
    let (lo, hi) = inst.problem.size_bounds(inst.k);
    let mut rg: UnGraph<VertexSet, ()> = UnGraph::new_undirected();
    let mut ids: HashMap<VertexSet, NodeIndex> = HashMap::new();
    for size in lo..=hi {
        for c in g.vertices().combinations(size) {
            let set: VertexSet = c.into_iter().collect();
            if is_feasible(g, inst.problem, &set) {
                let node = rg.add_node(set.clone());
                ids.insert(set, node);
            }
        }
    }
    for (set, &node) in &ids {
        if set.len() == hi {
            continue;
        }
        for v in g.vertices().filter(|v| !set.contains(v)) {
            let mut bigger = set.clone();
            bigger.insert(v);
            if let Some(&other) = ids.get(&bigger) {
                rg.add_edge(node, other, ());
            }
        }
    }
    let from = ids[&inst.source];
    let to = ids[&inst.target];
    let dist = petgraph::algo::dijkstra(&rg, from, Some(to), |_| 1usize);
    dist.get(&to).copied()
}

fn criterion_8(isr: &[(usize, Instance)], dsr: &[Instance]) -> Outcome {
    let small: Vec<&Instance> = isr
        .iter()
        .map(|(_, i)| i)
        .chain(dsr)
        .filter(|i| i.graph.n() <= 12)
        .collect();
    let equal = small
        .iter()
        .filter(|inst| distance(inst) == materialized_distance(inst))
        .count();
    outcome(
        equal == small.len() && !small.is_empty(),
        format!(
            "{equal}/{} search lengths equal materialized distances",
            small.len()
        ),
    )
}

fn report(n: usize, name: &str, elapsed: Duration, o: &Outcome) -> bool {
    println!(
        "criterion {n} [{}] {name}: {} ({:.1}s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64()
    );
    o.pass
}

fn timed(f: impl FnOnce() -> Outcome) -> (Duration, Outcome) {
    let start = Instant::now();
    let o = f();
    (start.elapsed(), o)
}

fn main() {
    let isr = isr_corpus();
    let dsr = dsr_corpus();
    let mut all = true;

    let (t, mut o) = timed(|| criterion_1(&isr));
    if t > Duration::from_secs(300) {
        o.pass = false;
        o.detail.push_str("; exceeded 5 minutes");
    }
    all &= report(1, "degenerate ISR soundness", t, &o);
    let (t, o) = timed(|| criterion_2(&isr));
    all &= report(2, "quasi-wide ISR soundness", t, &o);
    let (t, o) = timed(|| criterion_3(&dsr));
    all &= report(3, "DSR distance preservation", t, &o);
    let (t, o) = timed(criterion_4);
    all &= report(4, "sunflower guarantee", t, &o);
    let (t, o) = timed(|| criterion_5(&isr));
    all &= report(5, "degenerate kernel bound", t, &o);
    let (t, o) = timed(criterion_6);
    all &= report(6, "hardness reduction equivalence", t, &o);
    let (t, o) = timed(criterion_7);
    all &= report(7, "low-degree counting bound", t, &o);
    let (t, o) = timed(|| criterion_8(&isr, &dsr));
    all &= report(8, "search minimality", t, &o);

    if !all {
        std::process::exit(1);
    }
}
