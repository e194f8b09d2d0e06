//! Linear-time minimum spanning-tree cover on interval graphs.
//!
//! Positions below are 0-based; error messages and the sweep trace report
//! them 1-based to line up with the usual `v_1 .. v_n` notation.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A vertex sequence in which every vertex's earlier neighbours form a
/// contiguous block ending right before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOrdering {
    order: Vec<Vertex>,
    // u32 keeps the table small; lookups are random-access in the sweep
    position: Vec<u32>,
}

impl IntervalOrdering {
    /// Validates `order` against `g`.
    pub fn new(g: &Graph, order: Vec<Vertex>) -> Result<Self> {
        let position = positions(g.n(), &order)?;
        if let Some((a, b, c)) = first_violation(g, &order, &position) {
            return Err(Error::NotIntervalOrdering {
                a: a + 1,
                b: b + 1,
                c: c + 1,
            });
        }
        Ok(IntervalOrdering { order, position })
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v] as usize
    }
}

fn positions(n: usize, order: &[Vertex]) -> Result<Vec<u32>> {
    if n >= u32::MAX as usize {
        return Err(Error::Precondition(format!("{n} vertices exceed the ordering limit")));
    }
    let mut position = vec![u32::MAX; n];
    if order.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    for (p, &v) in order.iter().enumerate() {
        if v >= n || position[v] != u32::MAX {
            return Err(Error::NotAPermutation { n });
        }
        position[v] = p as u32;
    }
    Ok(position)
}

fn first_violation(g: &Graph, order: &[Vertex], position: &[u32]) -> Option<(usize, usize, usize)> {
    for (c, &vc) in order.iter().enumerate() {
        let (mut count, mut lowest) = (0, usize::MAX);
        for &w in g.neighbors(vc) {
            let p = position[w] as usize;
            if p < c {
                count += 1;
                lowest = lowest.min(p);
            }
        }
        if count > 0 && count != c - lowest {
            let mut back = vec![false; c - lowest];
            for &w in g.neighbors(vc) {
                let p = position[w] as usize;
                if (lowest..c).contains(&p) {
                    back[p - lowest] = true;
                }
            }
            let b = lowest + back.iter().position(|&x| !x).expect("a gap exists");
            return Some((lowest, b, c));
        }
    }
    None
}

/// Checks the ordering property in `O(n + m)`; on failure returns a violating
/// triple `(a, b, c)` of 1-based positions with `v_a v_c` an edge and
/// `v_b v_c` not.
pub fn verify_interval_ordering(g: &Graph, order: &[Vertex]) -> Result<(bool, Option<(usize, usize, usize)>)> {
    let position = positions(g.n(), order)?;
    Ok(match first_violation(g, order, &position) {
        None => (true, None),
        Some((a, b, c)) => (false, Some((a + 1, b + 1, c + 1))),
    })
}

/// Per-iteration indices of the sweep, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepStep {
    pub t1: usize,
    pub t2: usize,
    pub t: usize,
    pub s: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalSolution {
    pub cover: VertexSet,
    pub steps: Vec<SweepStep>,
}

#[derive(Clone, Copy, Default)]
struct Span {
    low: u32,
    reach: u32,
    earlier: u32,
}

/// Greedy sweep:
///
/// ```text
/// S = {}, V_T = {v1}
/// while V_T != V:
///     t1 = min index outside V_T;  t2 = max index inside V_T
///     t  = min(t1, t2);            s  = max index in N[v_t]
///     S += v_s;                    V_T += N[v_s]
/// ```
///
/// With `verify` set, the structural invariants of the sweep are checked
/// every iteration (quadratic in the worst case); otherwise the run is
/// `O(n + m)`.
pub fn solve_interval(g: &Graph, ord: &IntervalOrdering, verify: bool) -> Result<IntervalSolution> {
    let n = g.n();
    if ord.order.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut cover = VertexSet::new(n);
    let mut steps = Vec::new();
    if n <= 1 {
        return Ok(IntervalSolution { cover, steps });
    }
    let pos = &ord.position;
    let at = &ord.order;
    // Per position: lowest and highest position in the closed neighbourhood,
    // and the number of earlier neighbours. Filled in vertex-id order so the
    // adjacency arrays are streamed once; the sweep never touches them again.
    let mut span = vec![Span::default(); n];
    for v in 0..n {
        let p = pos[v];
        let mut sp = Span { low: p, reach: p, earlier: 0 };
        for &w in g.neighbors(v) {
            let q = pos[w];
            sp.low = sp.low.min(q);
            sp.reach = sp.reach.max(q);
            sp.earlier += (q < p) as u32;
        }
        span[p as usize] = sp;
    }
    // Earlier neighbours must fill the block right before each position; an
    // ordering built for another graph is caught here.
    if span.iter().enumerate().any(|(p, sp)| sp.earlier as usize != p - sp.low as usize) {
        let (a, b, c) = first_violation(g, at, pos).expect("a block is broken");
        return Err(Error::NotIntervalOrdering {
            a: a + 1,
            b: b + 1,
            c: c + 1,
        });
    }
    // Along an interval ordering the graph is connected iff every proper
    // prefix has an edge leaving it.
    let mut furthest = 0;
    for (p, sp) in span[..n - 1].iter().enumerate() {
        furthest = furthest.max(sp.reach as usize);
        if furthest <= p {
            return Err(Error::Disconnected);
        }
    }

    let mut in_tree = vec![false; n];
    in_tree[0] = true;
    let mut covered = 1;
    let mut t1 = 0;
    let mut t2 = 0;
    let mut prev_s: Option<usize> = None;
    while covered < n {
        while in_tree[t1] {
            t1 += 1;
        }
        let t = t1.min(t2);
        let s = span[t].reach as usize;
        if verify {
            check_before(&in_tree, t1, t2, t, s, prev_s, g, at, steps.len() + 1)?;
        }
        let t2_used = t2;
        cover.insert(at[s]);
        // N[v_s] is the block low..=s plus the later positions whose own
        // block reaches back to s. All of s..reach(s) neighbour v_reach(s),
        // and no other chosen s lands on the same reach, so the scans total
        // O(n + m).
        let mut mark = |q: usize| {
            if !in_tree[q] {
                in_tree[q] = true;
                covered += 1;
                t2 = t2.max(q);
            }
        };
        (span[s].low as usize..=s).for_each(&mut mark);
        (s + 1..=span[s].reach as usize)
            .filter(|&q| span[q].low as usize <= s)
            .for_each(&mut mark);
        if verify {
            if let Some(p) = (0..=s).find(|&p| !in_tree[p]) {
                return Err(Error::SweepInvariant {
                    iteration: steps.len() + 1,
                    detail: format!("v_{} not covered although s = {}", p + 1, s + 1),
                });
            }
        }
        steps.push(SweepStep {
            t1: t1 + 1,
            t2: t2_used + 1,
            t: t + 1,
            s: s + 1,
        });
        prev_s = Some(s);
    }
    Ok(IntervalSolution { cover, steps })
}

#[allow(clippy::too_many_arguments)]
fn check_before(
    in_tree: &[bool],
    t1: usize,
    t2: usize,
    t: usize,
    s: usize,
    prev_s: Option<usize>,
    g: &Graph,
    at: &[Vertex],
    iteration: usize,
) -> Result<()> {
    let fail = |detail: String| Err(Error::SweepInvariant { iteration, detail });
    // V[1..t1-1] ⊆ V_T ⊆ V[1..t2]
    if (0..t1).any(|p| !in_tree[p]) || (t2 + 1..in_tree.len()).any(|p| in_tree[p]) {
        return fail(format!("V_T not sandwiched between prefixes t1 = {}, t2 = {}", t1 + 1, t2 + 1));
    }
    if let Some(ps) = prev_s {
        if ps >= t {
            return fail(format!("s of previous iteration {} >= t = {}", ps + 1, t + 1));
        }
    }
    if t >= s {
        return fail(format!("t = {} not below s = {}", t + 1, s + 1));
    }
    if !(t <= t1 && t1 <= s && t <= t2 && t2 <= s) {
        return fail(format!(
            "indices out of order: t = {}, t1 = {}, t2 = {}, s = {}",
            t + 1,
            t1 + 1,
            t2 + 1,
            s + 1
        ));
    }
    let vs = at[s];
    for (name, p) in [("t1", t1), ("t2", t2)] {
        if p != s && !g.has_edge(at[p], vs) {
            return fail(format!("v_{name} = v_{} not adjacent to v_s = v_{}", p + 1, s + 1));
        }
    }
    Ok(())
}

/// A random connected interval graph together with an interval ordering of
/// it (intervals sorted by right endpoint). Vertex ids are shuffled so the
/// ordering is not the identity. Deterministic in `seed`.
///
/// Intervals have integer endpoints; `avg_degree` sets the expected gap
/// between consecutive left endpoints relative to interval length.
pub fn random_interval_graph(n: usize, avg_degree: f64, seed: u64) -> (Graph, IntervalOrdering) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const LEN: i64 = 1_000;
    // Left endpoints advance by a random step; mean step chosen so that an
    // interval of mean length overlaps about `avg_degree` others.
    let mean_step = ((2 * LEN) as f64 / avg_degree.max(0.5)).max(1.0);
    let mut intervals: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut left = 0i64;
    let mut max_right = i64::MIN;
    for i in 0..n {
        if i > 0 {
            left += rng.gen_range(0..=(2.0 * mean_step) as i64);
            // keep the union of intervals gap-free so the graph is connected
            left = left.min(max_right);
        }
        let right = left + rng.gen_range(LEN / 4..=2 * LEN - LEN / 4);
        max_right = max_right.max(right);
        intervals.push((left, right));
    }
    let mut ids: Vec<Vertex> = (0..n).collect();
    for i in (1..n).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    // intervals are generated by increasing left endpoint
    let mut edges = Vec::new();
    for i in 0..n {
        let r = intervals[i].1;
        for j in i + 1..n {
            if intervals[j].0 > r {
                break;
            }
            edges.push((ids[i], ids[j]));
        }
    }
    let g = Graph::from_edges(n, edges).expect("intervals give a simple graph");
    let mut by_right: Vec<usize> = (0..n).collect();
    by_right.sort_by_key(|&i| (intervals[i].1, i));
    let order: Vec<Vertex> = by_right.into_iter().map(|i| ids[i]).collect();
    let position = positions(n, &order).expect("permutation");
    debug_assert!(first_violation(&g, &order, &position).is_none());
    (g, IntervalOrdering { order, position })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::has_covered_spanning_tree;

    fn ordering(g: &Graph, order: &[Vertex]) -> IntervalOrdering {
        IntervalOrdering::new(g, order.to_vec()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let p5 = path(5);
        assert_eq!(verify_interval_ordering(&p5, &[0, 1, 2, 3, 4]).unwrap(), (true, None));
        // star: centre 0, leaves 1..3
        let star = star(3);
        assert_eq!(verify_interval_ordering(&star, &[1, 2, 3, 0]).unwrap(), (true, None));
        assert_eq!(
            verify_interval_ordering(&star, &[1, 0, 2, 3]).unwrap(),
            (false, Some((2, 3, 4)))
        );
        assert!(matches!(
            verify_interval_ordering(&star, &[1, 1, 2, 3]),
            Err(Error::NotAPermutation { n: 4 })
        ));
        assert!(matches!(
            IntervalOrdering::new(&star, vec![1, 0, 2, 3]),
            Err(Error::NotIntervalOrdering { a: 2, b: 3, c: 4 })
        ));
    }

    #[test]
    fn p5_trace() {
        let g = path(5);
        let sol = solve_interval(&g, &ordering(&g, &[0, 1, 2, 3, 4]), true).unwrap();
        assert_eq!(sol.cover.to_vec(), vec![1, 3]);
        assert_eq!(
            sol.steps,
            vec![
                SweepStep { t1: 2, t2: 1, t: 1, s: 2 },
                SweepStep { t1: 4, t2: 3, t: 3, s: 4 },
            ]
        );
    }

    #[test]
    fn k2_and_star() {
        let g = path(2);
        let sol = solve_interval(&g, &ordering(&g, &[0, 1]), true).unwrap();
        assert_eq!(sol.cover.to_vec(), vec![1]);
        let g = star(3);
        let sol = solve_interval(&g, &ordering(&g, &[1, 2, 3, 0]), true).unwrap();
        assert_eq!(sol.cover.to_vec(), vec![0]);
        assert_eq!(sol.steps, vec![SweepStep { t1: 2, t2: 1, t: 1, s: 4 }]);
    }

    #[test]
    fn single_vertex_and_disconnected() {
        let g = Graph::empty(1);
        assert!(solve_interval(&g, &ordering(&g, &[0]), true).unwrap().cover.is_empty());
        let g = Graph::empty(2);
        assert!(matches!(
            solve_interval(&g, &ordering(&g, &[0, 1]), false),
            Err(Error::Disconnected)
        ));
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(matches!(
            solve_interval(&g, &ordering(&g, &[2, 0, 1, 4, 3]), true),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn random_generator_is_valid_and_deterministic() {
        for seed in 0..20 {
            let (g, ord) = random_interval_graph(60, 5.0, seed);
            assert!(g.is_connected());
            assert_eq!(verify_interval_ordering(&g, ord.order()).unwrap(), (true, None));
            let sol = solve_interval(&g, &ord, true).unwrap();
            assert!(has_covered_spanning_tree(&g, &sol.cover));
        }
        let (a, oa) = random_interval_graph(100, 4.0, 7);
        let (b, ob) = random_interval_graph(100, 4.0, 7);
        assert_eq!(a, b);
        assert_eq!(oa, ob);
    }
}
