//! Solver-versus-oracle batteries over random instances. Every instance is
//! generated from its own seed, so a mismatch can be replayed in isolation.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cliquewidth::{build, solve_cliquewidth, DEFAULT_TABLE_CAP};
use crate::domination::solve_via_domination;
use crate::error::Result;
use crate::generators::{
    random_connected_graph, random_diameter_two_graph, random_embedding, random_generator_ready_cnf,
    random_p5_free_graph,
};
use crate::graph::{has_covered_spanning_tree, Graph};
use crate::interval::{random_interval_graph, solve_interval};
use crate::io::{serialize_coords, serialize_dimacs_cnf, serialize_graph, serialize_ordering};
use crate::oracle::{all_minimum_dominating_sets, decide_mcst, gamma, tau_star};
use crate::reduction::{
    assignment_to_cover, build_sat_instance, check_assignment, expand_to_unit_disk, gadget_size, lift_cover,
    CnfInstance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Interval,
    Cliquewidth,
    Domset,
    Reductions,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Interval => "interval",
            Suite::Cliquewidth => "cliquewidth",
            Suite::Domset => "domset",
            Suite::Reductions => "reductions",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "interval" => Suite::Interval,
            "cliquewidth" => Suite::Cliquewidth,
            "domset" => Suite::Domset,
            "reductions" => Suite::Reductions,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub instance: usize,
    pub seed: u64,
    pub detail: String,
    /// The instance in file formats, enough to replay it by hand.
    pub dump: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub suite: Suite,
    pub instances: usize,
    /// Individual solver runs checked (a domset instance checks every
    /// minimum dominating set).
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct CompareConfig {
    pub count: usize,
    /// Largest graph handed to the oracle.
    pub max_n: usize,
    pub seed: u64,
    pub oracle_bound: usize,
}

fn instance_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

struct Outcome {
    checks: usize,
    failure: Option<(String, String)>,
}

impl Outcome {
    fn ok(checks: usize) -> Self {
        Outcome { checks, failure: None }
    }

    fn fail(checks: usize, detail: String, dump: String) -> Self {
        Outcome {
            checks,
            failure: Some((detail, dump)),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &CompareConfig) -> Result<CompareReport> {
    let start = Instant::now();
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for i in 0..cfg.count {
        let seed = instance_seed(cfg.seed, i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = match suite {
            Suite::Interval => interval_case(&mut rng, seed, cfg)?,
            Suite::Cliquewidth => cliquewidth_case(&mut rng, seed, i, cfg)?,
            Suite::Domset => domset_case(&mut rng, i, cfg)?,
            Suite::Reductions => reduction_case(&mut rng, i, cfg)?,
        };
        checks += out.checks;
        if let Some((detail, dump)) = out.failure {
            mismatches.push(Mismatch {
                instance: i,
                seed,
                detail,
                dump,
            });
        }
    }
    Ok(CompareReport {
        suite,
        instances: cfg.count,
        checks,
        mismatches,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn interval_case(rng: &mut ChaCha8Rng, seed: u64, cfg: &CompareConfig) -> Result<Outcome> {
    let n = rng.gen_range(1..=cfg.max_n);
    let avg = rng.gen_range(1.0..5.0);
    let (g, ord) = random_interval_graph(n, avg, seed);
    let dump = || format!("{}{}", serialize_graph(&g), serialize_ordering(ord.order()));
    let sol = match solve_interval(&g, &ord, true) {
        Ok(sol) => sol,
        Err(e) => return Ok(Outcome::fail(1, format!("solver error: {e}"), dump())),
    };
    let truth = tau_star(&g, cfg.oracle_bound)?.value;
    if sol.cover.len() != truth || !has_covered_spanning_tree(&g, &sol.cover) {
        return Ok(Outcome::fail(
            1,
            format!("interval cover {:?} (size {}) but tau* = {truth}", sol.cover, sol.cover.len()),
            dump(),
        ));
    }
    Ok(Outcome::ok(1))
}

fn cliquewidth_case(rng: &mut ChaCha8Rng, seed: u64, i: usize, cfg: &CompareConfig) -> Result<Outcome> {
    let n = rng.gen_range(1..=cfg.max_n);
    let tree = match i % 3 {
        0 => build::random_cograph(n, seed),
        1 => build::random_expression(n, 2, seed),
        _ => build::random_expression(n, 3, seed),
    };
    let dump = || format!("{tree}\n");
    let (g, sol) = match solve_cliquewidth(&tree, 0, DEFAULT_TABLE_CAP) {
        Ok(r) => r,
        Err(e) => return Ok(Outcome::fail(1, format!("solver error: {e}"), dump())),
    };
    let truth = tau_star(&g, cfg.oracle_bound)?.value;
    if sol.tau != truth || sol.witness.len() != truth || !has_covered_spanning_tree(&g, &sol.witness) {
        return Ok(Outcome::fail(
            1,
            format!("dp value {} witness {:?} but tau* = {truth}", sol.tau, sol.witness),
            dump(),
        ));
    }
    Ok(Outcome::ok(1))
}

fn domset_case(rng: &mut ChaCha8Rng, i: usize, cfg: &CompareConfig) -> Result<Outcome> {
    let n = rng.gen_range(1..=cfg.max_n);
    let g = if i % 2 == 0 {
        random_diameter_two_graph(n, rng)
    } else {
        random_p5_free_graph(n, rng)
    };
    check_domination_instance(&g, cfg.oracle_bound)
}

/// gamma = tau*, and every minimum dominating set repairs to a cover of the
/// same size with strictly decreasing component counts.
fn check_domination_instance(g: &Graph, bound: usize) -> Result<Outcome> {
    let dump = || serialize_graph(g);
    let gam = gamma(g, bound)?.value;
    let tau = tau_star(g, bound)?.value;
    if gam != tau && g.n() > 1 {
        return Ok(Outcome::fail(1, format!("gamma = {gam} but tau* = {tau}"), dump()));
    }
    let sets = all_minimum_dominating_sets(g, bound)?;
    for (checked, d) in sets.iter().enumerate() {
        let sol = match solve_via_domination(g, d) {
            Ok(sol) => sol,
            Err(e) => return Ok(Outcome::fail(checked + 1, format!("from {d:?}: {e}"), dump())),
        };
        let monotone = sol.trace.steps.iter().all(|s| s.components_after < s.components_before);
        if sol.value != gam || !has_covered_spanning_tree(g, &sol.cover) || !monotone {
            return Ok(Outcome::fail(
                checked + 1,
                format!("from {d:?}: cover {:?} trace {:?}", sol.cover, sol.trace),
                dump(),
            ));
        }
    }
    Ok(Outcome::ok(sets.len()))
}

fn satisfying_assignment(c: &CnfInstance) -> Option<Vec<bool>> {
    (0u64..1 << c.n_vars)
        .map(|m| (0..c.n_vars).map(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .find(|a| check_assignment(c, a).is_ok())
}

/// Satisfiable exactly when the gadget admits a cover of size `3n - 1`;
/// satisfying assignments map to verifying covers.
pub fn check_sat_instance(c: &CnfInstance, bound: usize) -> Result<std::result::Result<(), String>> {
    let gi = build_sat_instance(c)?;
    let sat = satisfying_assignment(c);
    let (yes, _) = decide_mcst(&gi.graph, gi.k, bound)?;
    if yes != sat.is_some() {
        return Ok(Err(format!("satisfiable = {}, decide_mcst(G, {}) = {yes}", sat.is_some(), gi.k)));
    }
    if let Some(a) = sat {
        let cover = assignment_to_cover(c, &a, &gi)?;
        if cover.len() != gi.k || !has_covered_spanning_tree(&gi.graph, &cover) {
            return Ok(Err(format!("assignment {a:?} gives a bad cover {cover:?}")));
        }
    }
    Ok(Ok(()))
}

fn reduction_case(rng: &mut ChaCha8Rng, i: usize, cfg: &CompareConfig) -> Result<Outcome> {
    let limit = cfg.max_n.min(cfg.oracle_bound);
    if i % 2 == 0 {
        // smallest gadget is 7 vertices; fall through to an expansion when
        // the limit is below that
        for _ in 0..100 {
            let n_vars = rng.gen_range(1..=3);
            let c = random_generator_ready_cnf(n_vars, rng);
            if gadget_size(c.n_vars, c.clauses.len()) > limit {
                continue;
            }
            return Ok(match check_sat_instance(&c, cfg.oracle_bound)? {
                Ok(()) => Outcome::ok(1),
                Err(detail) => Outcome::fail(1, detail, serialize_dimacs_cnf(&c)),
            });
        }
    }
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4);
        let g = random_connected_graph(n, 0.4, rng);
        let emb = random_embedding(n, 3, rng);
        let total: usize = g.edges().map(|(u, v)| emb.distance(u, v) as usize).sum();
        if n + 3 * total > limit {
            continue;
        }
        let dump = || format!("{}{}", serialize_graph(&g), serialize_coords(&emb));
        let base = tau_star(&g, cfg.oracle_bound)?;
        let ex = expand_to_unit_disk(&g, &emb, base.value)?;
        let expanded = tau_star(&ex.graph, cfg.oracle_bound)?.value;
        if expanded != base.value + total || ex.k_prime != expanded {
            return Ok(Outcome::fail(
                1,
                format!("tau*(G') = {expanded}, tau*(G) + sum M = {}", base.value + total),
                dump(),
            ));
        }
        let lifted = lift_cover(&ex, &g, &base.witness)?;
        if lifted.len() != ex.k_prime || !has_covered_spanning_tree(&ex.graph, &lifted) {
            return Ok(Outcome::fail(1, format!("lifted cover {lifted:?} fails"), dump()));
        }
        return Ok(Outcome::ok(1));
    }
    Ok(Outcome::ok(0))
}
