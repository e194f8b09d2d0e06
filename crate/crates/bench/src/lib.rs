//! Fixed-seed instances shared by the benchmarks.

use mcst_core::cliquewidth::{build, ExpressionTree};
use mcst_core::interval::{random_interval_graph, IntervalOrdering};
use mcst_core::reduction::{build_sat_instance, CnfInstance};
use mcst_core::Graph;

pub const SEED: u64 = 0x5eed;

pub fn interval_instance(n: usize) -> (Graph, IntervalOrdering) {
    random_interval_graph(n, 6.0, SEED)
}

/// Cycle with one chord, small enough for the exhaustive oracle.
pub fn chorded_cycle(n: usize) -> Graph {
    let edges = (0..n).map(|v| (v, (v + 1) % n)).chain(std::iter::once((0, n / 2)));
    Graph::from_edges(n, edges).expect("chorded cycle is simple")
}

pub fn cograph_expression(n: usize) -> ExpressionTree {
    build::random_cograph(n, SEED)
}

pub fn width_three_expression(n: usize) -> ExpressionTree {
    build::random_expression(n, 3, SEED)
}

/// Chain formula over `n` variables: `(x_i or x_{i+1})`, `(not x_i)`, plus
/// unit clauses on both end variables.
pub fn sat_gadget_formula(n: usize) -> CnfInstance {
    let mut clauses = Vec::new();
    for v in 1..=n as i32 {
        clauses.push(vec![-v]);
        if v < n as i32 {
            clauses.push(vec![v, v + 1]);
        }
    }
    clauses.push(vec![1]);
    clauses.push(vec![n as i32]);
    CnfInstance { n_vars: n, clauses }
}

pub fn sat_gadget(n: usize) -> Graph {
    build_sat_instance(&sat_gadget_formula(n)).expect("formula is generator-ready").graph
}
