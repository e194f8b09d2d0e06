//! Random instance families for the oracle comparisons.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{bfs_distances, is_p5_free, Graph, Vertex};
use crate::reduction::{CnfInstance, GridEmbedding};

fn relabel(n: usize, edges: Vec<(Vertex, Vertex)>, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v]))).expect("generated graphs are simple")
}

/// Random spanning tree plus each remaining pair independently with
/// probability `p`, with shuffled vertex ids.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present[u][v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    relabel(n, edges, rng)
}

/// Random connected graph of diameter at most 2: a random graph whose
/// far-apart pairs are then joined one at a time until none remain.
pub fn random_diameter_two_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let p = rng.gen_range(0.05..0.6);
    let mut g = random_connected_graph(n, p, rng);
    loop {
        let far = (0..n).find_map(|u| {
            let d = bfs_distances(&g, u);
            let mut far: Vec<Vertex> = (u + 1..n).filter(|&v| d[v].map_or(true, |d| d > 2)).collect();
            far.shuffle(rng);
            far.first().map(|&v| (u, v))
        });
        match far {
            None => return g,
            Some(e) => {
                let edges: Vec<_> = g.edges().chain(std::iter::once(e)).collect();
                g = Graph::from_edges(n, edges).unwrap();
            }
        }
    }
}

/// Random connected P5-free graph. Candidates substitute random modules
/// into a small random skeleton (P5-freeness is preserved by substitution
/// when both parts are P5-free) and are kept only if connected and P5-free.
pub fn random_p5_free_graph(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    loop {
        let s = rng.gen_range(1..=n.min(6));
        let skeleton = random_connected_graph(s, rng.gen_range(0.0..0.7), rng);
        // module sizes: each skeleton vertex gets at least one vertex
        let mut owner: Vec<usize> = (0..s).collect();
        owner.extend((s..n).map(|_| rng.gen_range(0..s)));
        owner.sort_unstable();
        let mut edges = Vec::new();
        let q = rng.gen_range(0.0..1.0);
        for u in 0..n {
            for v in u + 1..n {
                let joined = if owner[u] == owner[v] {
                    rng.gen_bool(q)
                } else {
                    skeleton.has_edge(owner[u], owner[v])
                };
                if joined {
                    edges.push((u, v));
                }
            }
        }
        let g = relabel(n, edges, rng);
        if g.is_connected() && is_p5_free(&g).0 {
            return g;
        }
    }
}

/// Random generator-ready formula: every variable gets one or two positive
/// and one or two negative occurrences (three at most in total), packed into
/// monotone clauses of size one to three.
pub fn random_generator_ready_cnf(n_vars: usize, rng: &mut impl Rng) -> CnfInstance {
    let mut clauses = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for v in 1..=n_vars as i32 {
        let (p, q) = [(1, 1), (1, 2), (2, 1)][rng.gen_range(0..3)];
        pos.extend(std::iter::repeat(v).take(p));
        neg.extend(std::iter::repeat(-v).take(q));
    }
    for mut lits in [pos, neg] {
        lits.shuffle(rng);
        let mut open: Vec<Vec<i32>> = Vec::new();
        for lit in lits {
            let target = rng.gen_range(1..=3);
            match open
                .iter_mut()
                .find(|c| c.len() < target && !c.contains(&lit))
            {
                Some(c) => c.push(lit),
                None => open.push(vec![lit]),
            }
        }
        for c in &mut open {
            c.sort_unstable_by_key(|l| l.abs());
        }
        clauses.extend(open);
    }
    clauses.shuffle(rng);
    CnfInstance { n_vars, clauses }
}

/// Distinct random coordinates in `[0, side)^2`.
pub fn random_embedding(n: usize, side: i64, rng: &mut impl Rng) -> GridEmbedding {
    assert!((side * side) as usize >= n);
    let mut cells: Vec<(i64, i64)> = (0..side).flat_map(|x| (0..side).map(move |y| (x, y))).collect();
    cells.shuffle(rng);
    cells.truncate(n);
    GridEmbedding::new(cells).expect("cells are distinct")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::diameter;

    #[test]
    fn samplers_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut diam3 = 0;
        for _ in 0..40 {
            let n = rng.gen_range(1..=12);
            let g = random_connected_graph(n, 0.2, &mut rng);
            assert!(g.is_connected() && g.n() == n);
            let g = random_diameter_two_graph(n, &mut rng);
            assert!(diameter(&g).unwrap() <= 2);
            let g = random_p5_free_graph(n, &mut rng);
            assert!(g.is_connected() && is_p5_free(&g).0);
            if diameter(&g).unwrap() >= 3 {
                diam3 += 1;
            }
        }
        // the P5-free family should not collapse to diameter <= 2
        assert!(diam3 > 0);
    }

    #[test]
    fn random_cnfs_are_generator_ready() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=6 {
            for _ in 0..20 {
                let c = random_generator_ready_cnf(n, &mut rng);
                let d = crate::reduction::validate_cnf(&c);
                assert!(d.generator_ready(), "{c:?}: {d}");
            }
        }
    }
}
