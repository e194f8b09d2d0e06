//! Exhaustive ground-truth solvers for the minimum spanning-tree cover number
//! and the domination number. Subsets are enumerated by cardinality, then
//! lexicographically, so witnesses are deterministic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_ORACLE_BOUND: usize = 24;

/// Masks are `u64`, so no bound may exceed this.
pub const MAX_ORACLE_BOUND: usize = 63;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub value: usize,
    pub witness: VertexSet,
    /// Number of subsets examined.
    pub enumerated: u64,
}

/// Lexicographic `k`-combinations of `0..n` as bitmasks.
struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            idx: (0..k).collect(),
            n,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | (1 << i));
        let k = self.idx.len();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_ORACLE_BOUND);
    if g.n() > bound {
        return Err(Error::InstanceTooLarge { n: g.n(), bound });
    }
    Ok(())
}

/// Boundary-subgraph connectivity on bitmasks.
pub(crate) fn boundary_connected_mask(adj: &[u64], s: u64) -> bool {
    let n = adj.len();
    if n <= 1 {
        return true;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // every vertex outside S needs a neighbour in S
    let mut outside = all & !s;
    while outside != 0 {
        let v = outside.trailing_zeros() as usize;
        outside &= outside - 1;
        if adj[v] & s == 0 {
            return false;
        }
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let reach = if s >> v & 1 == 1 { adj[v] } else { adj[v] & s };
        let fresh = reach & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == all
}

fn dominating_mask(adj: &[u64], d: u64) -> bool {
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut covered = d;
    let mut rest = d;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        covered |= adj[v];
    }
    covered == all
}

fn first_feasible(
    g: &Graph,
    sizes: impl Iterator<Item = usize>,
    feasible: impl Fn(&[u64], u64) -> bool,
) -> (Option<(usize, u64)>, u64) {
    let adj = g.adjacency_masks();
    let mut enumerated = 0;
    for k in sizes {
        for mask in Combinations::new(g.n(), k) {
            enumerated += 1;
            if feasible(&adj, mask) {
                return (Some((k, mask)), enumerated);
            }
        }
    }
    (None, enumerated)
}

/// Minimum size of a set whose boundary subgraph is connected.
pub fn tau_star(g: &Graph, bound: usize) -> Result<OracleResult> {
    check_bound(g, bound)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (found, enumerated) = first_feasible(g, 0..=g.n(), boundary_connected_mask);
    let (value, mask) = found.expect("the full vertex set covers every spanning tree");
    Ok(OracleResult {
        value,
        witness: VertexSet::from_mask(g.n(), mask),
        enumerated,
    })
}

/// Minimum dominating set size.
pub fn gamma(g: &Graph, bound: usize) -> Result<OracleResult> {
    check_bound(g, bound)?;
    let (found, enumerated) = first_feasible(g, 0..=g.n(), dominating_mask);
    let (value, mask) = found.expect("the full vertex set dominates");
    Ok(OracleResult {
        value,
        witness: VertexSet::from_mask(g.n(), mask),
        enumerated,
    })
}

/// Every minimum dominating set, in lexicographic order.
pub fn all_minimum_dominating_sets(g: &Graph, bound: usize) -> Result<Vec<VertexSet>> {
    let k = gamma(g, bound)?.value;
    let adj = g.adjacency_masks();
    Ok(Combinations::new(g.n(), k)
        .filter(|&m| dominating_mask(&adj, m))
        .map(|m| VertexSet::from_mask(g.n(), m))
        .collect())
}

/// Decides whether some spanning tree has a vertex cover of size at most `k`,
/// returning the lexicographically first witness of minimum size on yes.
pub fn decide_mcst(g: &Graph, k: usize, bound: usize) -> Result<(bool, Option<VertexSet>)> {
    check_bound(g, bound)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (found, _) = first_feasible(g, 0..=k.min(g.n()), boundary_connected_mask);
    Ok(match found {
        Some((_, mask)) => (true, Some(VertexSet::from_mask(g.n(), mask))),
        None => (false, None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{has_covered_spanning_tree, is_dominating_set};

    const B: usize = DEFAULT_ORACLE_BOUND;

    #[test]
    fn combinations_are_lexicographic() {
        let got: Vec<u64> = Combinations::new(4, 2).collect();
        assert_eq!(got, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn c6_values() {
        let c6 = cycle(6);
        assert_eq!(tau_star(&c6, B).unwrap().value, 3);
        assert_eq!(gamma(&c6, B).unwrap().value, 2);
        assert!(!decide_mcst(&c6, 2, B).unwrap().0);
        let (yes, w) = decide_mcst(&c6, 3, B).unwrap();
        assert!(yes && has_covered_spanning_tree(&c6, &w.unwrap()));
    }

    #[test]
    fn complete_graphs() {
        for n in 2..=8 {
            assert_eq!(tau_star(&complete(n), B).unwrap().value, 1);
            assert_eq!(gamma(&complete(n), B).unwrap().value, 1);
        }
    }

    #[test]
    fn p5_and_p4() {
        let r = tau_star(&path(5), B).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.to_vec(), vec![1, 3]);
        assert_eq!(gamma(&path(4), B).unwrap().value, 2);
    }

    #[test]
    fn single_vertex() {
        let k1 = crate::graph::Graph::empty(1);
        assert_eq!(tau_star(&k1, B).unwrap().value, 0);
        assert_eq!(gamma(&k1, B).unwrap().value, 1);
        assert!(decide_mcst(&k1, 0, B).unwrap().0);
    }

    #[test]
    fn errors() {
        assert!(matches!(tau_star(&path(25), B), Err(Error::InstanceTooLarge { n: 25, bound: 24 })));
        assert!(matches!(
            tau_star(&crate::graph::Graph::empty(3), B),
            Err(Error::Disconnected)
        ));
        assert!(matches!(gamma(&path(25), B), Err(Error::InstanceTooLarge { .. })));
    }

    #[test]
    fn all_min_dom_sets_of_c6() {
        let sets = all_minimum_dominating_sets(&cycle(6), B).unwrap();
        assert_eq!(sets.len(), 3); // {0,3}, {1,4}, {2,5}
        assert!(sets.iter().all(|s| is_dominating_set(&cycle(6), s)));
    }
}
