//! Algorithm dispatch shared by the command-line tool and the tests.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::cliquewidth::{realize_graph, root_extract, evaluate, ExpressionTree};
use crate::domination::solve_via_domination;
use crate::error::{Error, Result};
use crate::graph::{
    diameter, extract_covered_spanning_tree, has_covered_spanning_tree, is_p5_free, is_vertex_cover, Graph,
    SpanningTree, Vertex, VertexSet,
};
use crate::interval::{solve_interval, IntervalOrdering};
use crate::oracle::{gamma, tau_star};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Brute,
    Interval,
    Cliquewidth,
    Domset,
    Auto,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Brute => "brute",
            Algorithm::Interval => "interval",
            Algorithm::Cliquewidth => "cliquewidth",
            Algorithm::Domset => "domset",
            Algorithm::Auto => "auto",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "brute" => Algorithm::Brute,
            "interval" => Algorithm::Interval,
            "cliquewidth" => Algorithm::Cliquewidth,
            "domset" => Algorithm::Domset,
            "auto" => Algorithm::Auto,
            other => return Err(format!("unknown algorithm {other:?}")),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub k: Option<usize>,
    pub order: Option<Vec<Vertex>>,
    pub expr: Option<ExpressionTree>,
    pub domset: Option<VertexSet>,
    pub verify: bool,
    pub oracle_bound: usize,
    pub table_cap: usize,
}

impl SolveOptions {
    pub fn new() -> Self {
        SolveOptions {
            oracle_bound: crate::oracle::DEFAULT_ORACLE_BOUND,
            table_cap: crate::cliquewidth::DEFAULT_TABLE_CAP,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub phase: &'static str,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub value: usize,
    pub k: Option<usize>,
    /// `value <= k` when `k` was given.
    pub yes: Option<bool>,
    pub cover: VertexSet,
    pub tree: SpanningTree,
    pub timings: Vec<Timing>,
    /// Set only when verification was requested.
    pub verified: Option<bool>,
}

struct Timer(Vec<Timing>);

impl Timer {
    fn run<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push(Timing {
            phase,
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }
}

/// Maps expression vertices onto `g` by name (names must be the 1-based ids
/// of `g`) and checks the expression realizes exactly `g`.
pub fn expression_vertex_map(g: &Graph, tree: &ExpressionTree) -> Result<Vec<Vertex>> {
    let (h, _) = realize_graph(tree);
    if h.n() != g.n() {
        return Err(Error::Precondition(format!(
            "expression has {} vertices, graph has {}",
            h.n(),
            g.n()
        )));
    }
    let map: Vec<Vertex> = (0..h.n())
        .map(|v| {
            let name = h.name(v);
            match name.parse::<usize>() {
                Ok(id) if (1..=g.n()).contains(&id) => Ok(id - 1),
                _ => Err(Error::Precondition(format!(
                    "expression vertex {name:?} is not a graph vertex id"
                ))),
            }
        })
        .collect::<Result<_>>()?;
    let mut mapped: Vec<(Vertex, Vertex)> = h
        .edges()
        .map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
        .collect();
    mapped.sort_unstable();
    if mapped != g.edges().collect::<Vec<_>>() {
        return Err(Error::Precondition("expression does not realize the graph".into()));
    }
    Ok(map)
}

fn diameter_at_most_two_or_p5_free(g: &Graph) -> bool {
    matches!(diameter(g), Ok(d) if d <= 2) || (g.is_connected() && is_p5_free(g).0)
}

fn resolve(g: &Graph, opts: &SolveOptions) -> Result<Algorithm> {
    if opts.order.is_some() {
        return Ok(Algorithm::Interval);
    }
    if opts.expr.is_some() {
        return Ok(Algorithm::Cliquewidth);
    }
    let in_bound = g.n() <= opts.oracle_bound.min(crate::oracle::MAX_ORACLE_BOUND);
    // gamma(K1) = 1 but the optimum is the empty set
    if g.n() > 1 && (opts.domset.is_some() || in_bound) && diameter_at_most_two_or_p5_free(g) {
        return Ok(Algorithm::Domset);
    }
    if in_bound {
        return Ok(Algorithm::Brute);
    }
    Err(Error::NoApplicableAlgorithm(format!(
        "no ordering, expression or dominating set given, and {} vertices exceed the exhaustive bound {}",
        g.n(),
        opts.oracle_bound
    )))
}

/// Computes a minimum cover with the chosen algorithm, a spanning tree it
/// covers, and optionally re-checks both.
pub fn solve(g: &Graph, algorithm: Algorithm, opts: &SolveOptions) -> Result<RunReport> {
    let algorithm = match algorithm {
        Algorithm::Auto => resolve(g, opts)?,
        a => a,
    };
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut timer = Timer(Vec::new());
    let cover = match algorithm {
        Algorithm::Brute => timer.run("solve", || tau_star(g, opts.oracle_bound))?.witness,
        Algorithm::Interval => {
            let order = opts
                .order
                .clone()
                .ok_or_else(|| Error::Precondition("the interval algorithm needs an ordering".into()))?;
            let ord = IntervalOrdering::new(g, order)?;
            timer.run("solve", || solve_interval(g, &ord, opts.verify))?.cover
        }
        Algorithm::Cliquewidth => {
            let tree = opts
                .expr
                .as_ref()
                .ok_or_else(|| Error::Precondition("the cliquewidth algorithm needs an expression".into()))?;
            let map = expression_vertex_map(g, tree)?;
            let ans = timer.run("solve", || {
                evaluate(tree, opts.table_cap).and_then(|eval| root_extract(tree, &eval, opts.k.unwrap_or(0)))
            })?;
            VertexSet::from_vertices(g.n(), ans.witness.iter().map(|v| map[v]))?
        }
        Algorithm::Domset => {
            let domset = match &opts.domset {
                Some(d) => d.clone(),
                None => timer.run("dominating-set", || gamma(g, opts.oracle_bound))?.witness,
            };
            timer.run("solve", || solve_via_domination(g, &domset))?.cover
        }
        Algorithm::Auto => unreachable!("resolved above"),
    };
    let tree = timer.run("extract-tree", || extract_covered_spanning_tree(g, &cover))?;
    let verified = opts.verify.then(|| {
        timer.run("verify", || {
            has_covered_spanning_tree(g, &cover) && tree.is_spanning_tree_of(g) && is_vertex_cover(&tree.edges, &cover)
        })
    });
    Ok(RunReport {
        algorithm,
        value: cover.len(),
        k: opts.k,
        yes: opts.k.map(|k| cover.len() <= k),
        cover,
        tree,
        timings: timer.0,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliquewidth::parse_expression;
    use crate::graph::named;

    fn opts() -> SolveOptions {
        SolveOptions {
            verify: true,
            ..SolveOptions::new()
        }
    }

    #[test]
    fn brute_on_c6() {
        let r = solve(&named::cycle(6), Algorithm::Brute, &SolveOptions { k: Some(3), ..opts() }).unwrap();
        assert_eq!((r.value, r.yes, r.verified), (3, Some(true), Some(true)));
        assert_eq!(r.tree.edges.len(), 5);
    }

    #[test]
    fn interval_on_p5() {
        let o = SolveOptions {
            order: Some((0..5).collect()),
            ..opts()
        };
        let r = solve(&named::path(5), Algorithm::Auto, &o).unwrap();
        assert_eq!(r.algorithm, Algorithm::Interval);
        assert_eq!(r.cover.to_vec(), vec![1, 3]);
    }

    #[test]
    fn cliquewidth_maps_names() {
        // names list the path 1-2-3 in a different leaf order
        let expr = parse_expression("(join 1 2 (union (intro 1 2) (union (intro 2 1) (intro 2 3))))").unwrap();
        let o = SolveOptions {
            expr: Some(expr),
            k: Some(1),
            ..opts()
        };
        let r = solve(&named::path(3), Algorithm::Auto, &o).unwrap();
        assert_eq!(r.algorithm, Algorithm::Cliquewidth);
        assert_eq!(r.cover.to_vec(), vec![1]);
        assert_eq!(r.yes, Some(true));
        let wrong = SolveOptions {
            expr: Some(parse_expression("(join 1 2 (union (intro 1 1) (union (intro 2 2) (intro 2 3))))").unwrap()),
            ..opts()
        };
        assert!(matches!(solve(&named::path(3), Algorithm::Cliquewidth, &wrong), Err(Error::Precondition(_))));
    }

    #[test]
    fn auto_dispatch() {
        let r = solve(&named::cycle(5), Algorithm::Auto, &opts()).unwrap();
        assert_eq!((r.algorithm, r.value), (Algorithm::Domset, 2));
        let r = solve(&named::cycle(6), Algorithm::Auto, &opts()).unwrap();
        assert_eq!((r.algorithm, r.value), (Algorithm::Brute, 3));
        let r = solve(&Graph::empty(1), Algorithm::Auto, &opts()).unwrap();
        assert_eq!((r.algorithm, r.value), (Algorithm::Brute, 0));
        let big = named::cycle(30);
        assert!(matches!(
            solve(&big, Algorithm::Auto, &opts()),
            Err(Error::NoApplicableAlgorithm(_))
        ));
        assert!(matches!(
            solve(&big, Algorithm::Brute, &opts()),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn missing_inputs() {
        assert!(matches!(
            solve(&named::path(3), Algorithm::Interval, &opts()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            solve(&named::path(3), Algorithm::Cliquewidth, &opts()),
            Err(Error::Precondition(_))
        ));
    }
}
