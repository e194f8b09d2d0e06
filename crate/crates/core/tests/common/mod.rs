//! Reference values computed without touching the library's solvers: every
//! spanning tree is enumerated explicitly and its minimum vertex cover found
//! by a tree DP.

#![allow(dead_code)]

use mcst_core::Graph;

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Minimum vertex cover of a tree given as an edge list on `n` vertices.
fn tree_cover(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // (size without v, size with v) per subtree, iterative post-order
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v] {
            if w != parent[v] {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut best = vec![(0usize, 1usize); n];
    for &v in order.iter().rev() {
        for &w in &adj[v] {
            if w != parent[v] {
                best[v].0 += best[w].1;
                best[v].1 += best[w].0.min(best[w].1);
            }
        }
    }
    best[0].0.min(best[0].1)
}

/// Minimum over all spanning trees of the tree's vertex cover number.
/// Exponential in the edge count; meant for a handful of edges.
pub fn reference_tau(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 24, "reference oracle is exponential in m");
    let mut best = usize::MAX;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut chosen = Vec::with_capacity(n - 1);
        let mut acyclic = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    acyclic = false;
                    break;
                }
                parent[a] = b;
                chosen.push((u, v));
            }
        }
        if acyclic {
            best = best.min(tree_cover(n, &chosen));
        }
    }
    best
}

/// Domination number by plain subset enumeration.
pub fn reference_gamma(g: &Graph) -> usize {
    let n = g.n();
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &w| m | 1 << w))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    (0u32..=full)
        .filter(|&s| (0..n).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | closed[v]) == full)
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}
