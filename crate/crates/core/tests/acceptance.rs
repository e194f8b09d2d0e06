//! Acceptance gate. Every criterion runs in sequence (criterion 4 is a
//! timing measurement, so nothing else should compete for the CPU) and
//! prints one PASS/FAIL line.
//!
//! Criterion 1 asks for `is_p5_free(C6) = true`, which is false: vertices
//! 1-2-3-4-5 of the six-cycle induce a path on five vertices. The check is
//! run as stated and reported as FAIL; the gate requires that it keeps
//! failing for exactly that reason and that everything else passes.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcst_core::cliquewidth::{self, build, evaluate, parse_expression, solve_cliquewidth, KeySpace, DEFAULT_TABLE_CAP};
use mcst_core::domination::repair_boundary;
use mcst_core::generators::{random_connected_graph, random_diameter_two_graph, random_generator_ready_cnf, random_p5_free_graph};
use mcst_core::graph::{
    boundary_component_count, cut_condition_holds, diameter, has_covered_spanning_tree, is_p5_free, named,
    structural_checks, DEFAULT_CUT_BOUND,
};
use mcst_core::interval::{random_interval_graph, solve_interval};
use mcst_core::oracle::{all_minimum_dominating_sets, decide_mcst, gamma, tau_star, DEFAULT_ORACLE_BOUND};
use mcst_core::reduction::{
    assignment_to_cover, build_sat_instance, check_assignment, expand_to_unit_disk, gadget_size, lift_cover,
    validate_cnf, CnfInstance, GridEmbedding,
};
use mcst_core::{Error, Graph, VertexSet};

const BOUND: usize = DEFAULT_ORACLE_BOUND;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn c1_c6_ground_truth() -> Check {
    let start = Instant::now();
    let c6 = named::cycle(6);
    let g = gamma(&c6, BOUND).map_err(|e| e.to_string())?.value;
    let t = tau_star(&c6, BOUND).map_err(|e| e.to_string())?.value;
    let d = diameter(&c6).map_err(|e| e.to_string())?;
    ensure(g == 2 && common::reference_gamma(&c6) == 2, || format!("gamma = {g}"))?;
    ensure(t == 3 && common::reference_tau(&c6) == 3, || format!("tau* = {t}"))?;
    ensure(d == 3, || format!("diameter = {d}"))?;
    let (free, witness) = is_p5_free(&c6);
    if !free {
        let w = witness.expect("a witness accompanies a negative answer");
        let ids: Vec<String> = w.vertices.iter().map(|v| (v + 1).to_string()).collect();
        return Err(format!(
            "gamma = 2, tau* = 3, diameter = 3 hold, but is_p5_free(C6) = false: induced P5 {} (holds in C6: {})",
            ids.join("-"),
            w.holds_in(&c6)
        ));
    }
    within(Duration::from_secs(1), start)?;
    Ok("gamma = 2, tau* = 3, diameter = 3, P5-free".into())
}

fn random_subset(n: usize, rng: &mut impl Rng) -> VertexSet {
    let p = rng.gen_range(0.1..0.9);
    VertexSet::from_vertices(n, (0..n).filter(|_| rng.gen_bool(p))).unwrap()
}

fn c2_cut_condition() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut checks, mut feasible) = (0, 0);
    for i in 0..500 {
        let n = rng.gen_range(2..=10);
        let g = random_connected_graph(n, rng.gen_range(0.0..0.8), &mut rng);
        for _ in 0..50 {
            let s = random_subset(n, &mut rng);
            let cut = cut_condition_holds(&g, &s, DEFAULT_CUT_BOUND).map_err(|e| e.to_string())?;
            let tree = has_covered_spanning_tree(&g, &s);
            ensure(cut == tree, || format!("graph {i} {:?}, S = {:?}: cut {cut}, tree {tree}", g.edges().collect::<Vec<_>>(), s.to_vec()))?;
            checks += 1;
            feasible += tree as usize;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checks} pairs agree ({feasible} feasible)"))
}

fn c3_interval_optimality() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200 {
        let n = rng.gen_range(1..=14);
        let avg = rng.gen_range(1.0..8.0);
        let seed = rng.gen();
        let (g, ord) = random_interval_graph(n, avg, seed);
        let sol = solve_interval(&g, &ord, true).map_err(|e| format!("instance {i} (seed {seed}): {e}"))?;
        let t = tau_star(&g, BOUND).map_err(|e| e.to_string())?.value;
        ensure(sol.cover.len() == t, || format!("instance {i} (seed {seed}): sweep {} vs tau* {t}", sol.cover.len()))?;
        ensure(has_covered_spanning_tree(&g, &sol.cover), || format!("instance {i}: cover infeasible"))?;
    }
    within(Duration::from_secs(120), start)?;
    Ok("200 instances optimal, sweep invariants held".into())
}

/// Mean over a few instances per size of the best of several runs. Runs
/// cycle through the sizes so background load hits all of them alike, and
/// several instances average out per-allocation memory layout effects.
fn interval_times(sizes: &[usize]) -> Vec<Duration> {
    const INSTANCES: u64 = 4;
    const RUNS: usize = 15;
    let instances: Vec<Vec<_>> = sizes
        .iter()
        .map(|&n| (0..INSTANCES).map(|seed| random_interval_graph(n, 6.0, seed)).collect())
        .collect();
    let mut best = vec![vec![Duration::MAX; INSTANCES as usize]; sizes.len()];
    for _ in 0..RUNS {
        for (i, per_size) in instances.iter().enumerate() {
            for (j, (g, ord)) in per_size.iter().enumerate() {
                let t = Instant::now();
                let sol = solve_interval(g, ord, false).unwrap();
                best[i][j] = best[i][j].min(t.elapsed());
                assert!(!sol.cover.is_empty());
            }
        }
    }
    best.iter().map(|b| b.iter().sum::<Duration>() / INSTANCES as u32).collect()
}

fn c4_interval_linear_time() -> Check {
    let times = interval_times(&[50_000, 100_000, 200_000]);
    let r1 = times[1].as_secs_f64() / times[0].as_secs_f64();
    let r2 = times[2].as_secs_f64() / times[1].as_secs_f64();
    let summary = format!("50k {:.2?}, 100k {:.2?}, 200k {:.2?}, ratios {r1:.2} {r2:.2}", times[0], times[1], times[2]);
    ensure(times[2] < Duration::from_secs(2), || summary.clone())?;
    ensure(r1 <= 2.5 && r2 <= 2.5, || summary.clone())?;
    Ok(summary)
}

fn c5_cliquewidth() -> Check {
    let start = Instant::now();
    let mut corpus = vec![
        ("K2", build::complete(2)),
        ("K3", build::complete(3)),
        ("K5", build::complete(5)),
        ("P4", build::path(4)),
        ("P5", build::path(5)),
        ("C5", parse_expression(build::C5).unwrap()),
        ("C6", parse_expression(build::C6).unwrap()),
    ];
    for leaves in 1..=11 {
        corpus.push(("star", build::star(leaves)));
    }
    for seed in 0..40 {
        corpus.push(("cograph", build::random_cograph(2 + seed as usize % 11, seed)));
    }
    for seed in 0..20 {
        corpus.push(("random w3", build::random_expression(3 + seed as usize % 10, 3, seed)));
    }
    for (name, tree) in &corpus {
        ensure(tree.width() <= 3 && tree.vertex_count() <= 12, || format!("{name} outside the corpus bounds"))?;
        let (g, sol) = solve_cliquewidth(tree, 0, DEFAULT_TABLE_CAP).map_err(|e| format!("{name}: {e}"))?;
        let t = tau_star(&g, BOUND).map_err(|e| e.to_string())?.value;
        ensure(sol.tau == t, || format!("{name} {tree}: dp {} vs tau* {t}", sol.tau))?;
        ensure(sol.witness.len() == t && has_covered_spanning_tree(&g, &sol.witness), || {
            format!("{name}: witness {:?} invalid", sol.witness.to_vec())
        })?;
    }
    for w in 1..=cliquewidth::MAX_DP_WIDTH {
        let ks = KeySpace::new(w).map_err(|e| e.to_string())?;
        ensure(ks.len() == 3usize.pow(w), || format!("width {w}: {} keys", ks.len()))?;
    }
    ensure(KeySpace::new(cliquewidth::MAX_DP_WIDTH + 1).is_err(), || "width above the maximum accepted".into())?;
    let c6 = parse_expression(build::C6).unwrap();
    let full = evaluate(&c6, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?.max_table_len();
    match evaluate(&c6, full - 1) {
        Err(Error::TableBlowup { size, cap }) if size > cap && cap == full - 1 => {}
        other => return Err(format!("cap {} below the peak table {full} gave {other:?}", full - 1)),
    }
    ensure(evaluate(&c6, full).is_ok(), || "cap equal to the peak table rejected".into())?;
    within(Duration::from_secs(120), start)?;
    Ok(format!("{} expressions agree, key counts 3^w for w <= {}, cap enforced", corpus.len(), cliquewidth::MAX_DP_WIDTH))
}

fn domination_family(label: &str, graphs: &[Graph]) -> Result<usize, String> {
    let mut sets = 0;
    for (i, g) in graphs.iter().enumerate() {
        let gm = gamma(g, BOUND).map_err(|e| e.to_string())?.value;
        let t = tau_star(g, BOUND).map_err(|e| e.to_string())?.value;
        let edges = || format!("{label} {i}: {:?}", g.edges().collect::<Vec<_>>());
        ensure(gm == t, || format!("{}: gamma {gm} vs tau* {t}", edges()))?;
        for d in all_minimum_dominating_sets(g, BOUND).map_err(|e| e.to_string())? {
            let (fixed, trace) = repair_boundary(g, &d).map_err(|e| format!("{}: {e}", edges()))?;
            ensure(fixed.len() == d.len() && has_covered_spanning_tree(g, &fixed), || {
                format!("{}: repair of {:?} gave {:?}", edges(), d.to_vec(), fixed.to_vec())
            })?;
            let mut count = boundary_component_count(g, &d);
            for step in &trace.steps {
                ensure(step.components_before == count && step.components_after < count, || {
                    format!("{}: non-decreasing step {step:?}", edges())
                })?;
                count = step.components_after;
            }
            ensure(count == 1, || format!("{}: ended with {count} components", edges()))?;
            sets += 1;
        }
    }
    Ok(sets)
}

fn c6_domination() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let diam2: Vec<Graph> = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=16);
            random_diameter_two_graph(n, &mut rng)
        })
        .collect();
    let p5free: Vec<Graph> = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=16);
            random_p5_free_graph(n, &mut rng)
        })
        .collect();
    for g in &p5free {
        ensure(g.is_connected() && is_p5_free(g).0, || "sampler returned a graph outside the family".into())?;
    }
    let a = domination_family("diameter-2", &diam2)?;
    let b = domination_family("P5-free", &p5free)?;
    let far = p5free.iter().filter(|g| diameter(g).unwrap() >= 3).count();
    Ok(format!("gamma = tau* on 200 graphs, {} dominating sets repaired ({far} P5-free graphs of diameter >= 3)", a + b))
}

fn satisfiable(c: &CnfInstance) -> Option<Vec<bool>> {
    (0u32..1 << c.n_vars)
        .map(|m| (0..c.n_vars).map(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .find(|a| check_assignment(c, a).is_ok())
}

/// Every generator-ready formula over at most two variables whose gadget has
/// at most 18 vertices, as multisets of clauses.
fn small_formulas() -> Vec<CnfInstance> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        let kinds: Vec<Vec<i32>> = if n == 1 {
            vec![vec![1], vec![-1]]
        } else {
            vec![vec![1], vec![2], vec![1, 2], vec![-1], vec![-2], vec![-1, -2]]
        };
        let combos = 3usize.pow(kinds.len() as u32);
        for code in 0..combos {
            let mut clauses = Vec::new();
            let mut c = code;
            for k in &kinds {
                for _ in 0..c % 3 {
                    clauses.push(k.clone());
                }
                c /= 3;
            }
            let f = CnfInstance { n_vars: n, clauses };
            if validate_cnf(&f).generator_ready() && gadget_size(n, f.clauses.len()) <= 18 {
                out.push(f);
            }
        }
    }
    out
}

fn fig3_formula() -> CnfInstance {
    CnfInstance {
        n_vars: 4,
        clauses: vec![vec![1, 3, 4], vec![1, 2, 3], vec![-3, -4], vec![-1, -2, -4]],
    }
}

fn c7_sat_soundness() -> Check {
    let start = Instant::now();
    let unsat = CnfInstance {
        n_vars: 1,
        clauses: vec![vec![1], vec![-1]],
    };
    let gi = build_sat_instance(&unsat).map_err(|e| e.to_string())?;
    let (yes, _) = decide_mcst(&gi.graph, 2, BOUND).map_err(|e| e.to_string())?;
    ensure(!yes && gi.k == 2, || "(x1)(not x1) decided yes".into())?;

    let formulas = small_formulas();
    let mut sat = 0;
    for f in &formulas {
        let gi = build_sat_instance(f).map_err(|e| e.to_string())?;
        let k = 3 * f.n_vars - 1;
        ensure(gi.k == k && gi.graph.n() <= 18, || format!("{f:?}: k {} n {}", gi.k, gi.graph.n()))?;
        let (yes, _) = decide_mcst(&gi.graph, k, BOUND).map_err(|e| e.to_string())?;
        match satisfiable(f) {
            Some(a) => {
                sat += 1;
                ensure(yes, || format!("{f:?} satisfiable but decided no"))?;
                let cover = assignment_to_cover(f, &a, &gi).map_err(|e| e.to_string())?;
                ensure(cover.len() == k && has_covered_spanning_tree(&gi.graph, &cover), || {
                    format!("{f:?}: assignment cover {:?} fails", cover.to_vec())
                })?;
            }
            None => ensure(!yes, || format!("{f:?} unsatisfiable but decided yes"))?,
        }
    }
    let fig3 = fig3_formula();
    let gi = build_sat_instance(&fig3).map_err(|e| e.to_string())?;
    let a = satisfiable(&fig3).ok_or("four-variable formula unsatisfiable")?;
    let cover = assignment_to_cover(&fig3, &a, &gi).map_err(|e| e.to_string())?;
    ensure(gi.graph.n() == 33 && cover.len() == 11 && has_covered_spanning_tree(&gi.graph, &cover), || {
        format!("33-vertex gadget: n {} cover {}", gi.graph.n(), cover.len())
    })?;
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "unsat pair says no; {} small formulas ({sat} satisfiable) decided correctly; 11-vertex cover verifies",
        formulas.len()
    ))
}

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |m| VertexSet::from_vertices(n, (0..n).filter(|&v| m >> v & 1 == 1)).unwrap())
}

fn c8_expansion() -> Check {
    let cases: Vec<(&str, Graph, Vec<(i64, i64)>)> = vec![
        ("K2", named::complete(2), vec![(0, 0), (1, 0)]),
        ("K2 far", named::complete(2), vec![(0, 0), (2, 1)]),
        ("P3", named::path(3), vec![(0, 0), (1, 0), (2, 0)]),
        ("P3 bent", named::path(3), vec![(0, 0), (1, 1), (2, 1)]),
        ("K3", named::complete(3), vec![(0, 0), (1, 0), (0, 1)]),
        ("C4", named::cycle(4), vec![(0, 0), (1, 0), (1, 1), (0, 1)]),
    ];
    let mut lifted = 0;
    for (name, g, coords) in cases {
        let emb = GridEmbedding::new(coords).map_err(|e| e.to_string())?;
        let t = tau_star(&g, BOUND).map_err(|e| e.to_string())?.value;
        let ex = expand_to_unit_disk(&g, &emb, t).map_err(|e| e.to_string())?;
        let sum_m = ex.total_triples();
        ensure(ex.graph.n() <= 20, || format!("{name}: {} vertices", ex.graph.n()))?;
        let tp = tau_star(&ex.graph, BOUND).map_err(|e| e.to_string())?.value;
        ensure(tp == t + sum_m && ex.k_prime == t + sum_m, || format!("{name}: tau*(G') {tp} vs {t} + {sum_m}"))?;
        for s in subsets(g.n()).filter(|s| has_covered_spanning_tree(&g, s)) {
            let l = lift_cover(&ex, &g, &s).map_err(|e| e.to_string())?;
            ensure(l.len() == s.len() + sum_m && has_covered_spanning_tree(&ex.graph, &l), || {
                format!("{name}: lift of {:?} fails", s.to_vec())
            })?;
            lifted += 1;
        }
    }
    Ok(format!("6 expansions exact, {lifted} lifted covers verify"))
}

fn c9_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut formulas = small_formulas();
    formulas.push(fig3_formula());
    formulas.push(CnfInstance {
        n_vars: 1,
        clauses: vec![vec![1], vec![-1]],
    });
    for _ in 0..300 {
        let n = rng.gen_range(1..=40);
        formulas.push(random_generator_ready_cnf(n, &mut rng));
    }
    for f in &formulas {
        let gi = build_sat_instance(f).map_err(|e| format!("{f:?}: {e}"))?;
        let r = structural_checks(&gi.graph);
        ensure(r.bipartite && r.max_degree <= 4 && r.connected, || format!("{f:?}: {r:?}"))?;
    }
    Ok(format!("{} gadgets bipartite with max degree <= 4", formulas.len()))
}

/// Criteria whose statement is false as written. Each must still fail.
const EXPECTED_FAIL: &[usize] = &[1];

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("C6 ground truth", c1_c6_ground_truth),
        ("cut condition equivalence", c2_cut_condition),
        ("interval optimality", c3_interval_optimality),
        ("interval linear time", c4_interval_linear_time),
        ("clique-width DP", c5_cliquewidth),
        ("domination on diameter-2 and P5-free graphs", c6_domination),
        ("SAT reduction soundness", c7_sat_soundness),
        ("unit-disk expansion exactness", c8_expansion),
        ("gadget structure", c9_structure),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match &result {
            Ok(detail) => println!("PASS [{id}] {name} ({secs:.2}s): {detail}"),
            Err(detail) => println!("FAIL [{id}] {name} ({secs:.2}s): {detail}"),
        }
        if result.is_ok() == EXPECTED_FAIL.contains(&id) {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
