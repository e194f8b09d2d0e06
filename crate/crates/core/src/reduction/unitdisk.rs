use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{has_covered_spanning_tree, Graph, Vertex, VertexSet};

pub fn manhattan(p: (i64, i64), q: (i64, i64)) -> u64 {
    p.0.abs_diff(q.0) + p.1.abs_diff(q.1)
}

/// Integer coordinates for every vertex, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridEmbedding {
    coords: Vec<(i64, i64)>,
}

impl GridEmbedding {
    pub fn new(coords: Vec<(i64, i64)>) -> Result<Self> {
        let mut sorted: Vec<(i64, i64, usize)> = coords.iter().enumerate().map(|(v, &(x, y))| (x, y, v)).collect();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::InvalidEmbedding(format!(
                    "vertices {} and {} share coordinates ({}, {})",
                    w[0].2 + 1,
                    w[1].2 + 1,
                    w[0].0,
                    w[0].1
                )));
            }
        }
        Ok(GridEmbedding { coords })
    }

    pub fn coords(&self) -> &[(i64, i64)] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> u64 {
        manhattan(self.coords[u], self.coords[v])
    }
}

/// The triangle chain that replaced edge `u < v`; each triple is
/// `[l_i, s_i, r_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeChain {
    pub u: Vertex,
    pub v: Vertex,
    pub triples: Vec<[Vertex; 3]>,
}

#[derive(Clone, Debug)]
pub struct ExpandedInstance {
    /// Original vertices keep their ids; chain vertices follow.
    pub graph: Graph,
    pub k_prime: usize,
    /// One chain per original edge, in lexicographic edge order.
    pub chain_map: Vec<EdgeChain>,
}

impl ExpandedInstance {
    pub fn total_triples(&self) -> usize {
        self.chain_map.iter().map(|c| c.triples.len()).sum()
    }
}

/// Replaces every edge `uv` by a chain of `M(u, v)` triangles
/// `<l_i, s_i, r_i>` joined as `u l_1`, `r_i l_(i+1)`, `r_M v`, and sets
/// `k' = k + sum M(u, v)`.
pub fn expand_to_unit_disk(g: &Graph, emb: &GridEmbedding, k: usize) -> Result<ExpandedInstance> {
    if emb.len() != g.n() {
        return Err(Error::InvalidEmbedding(format!(
            "{} coordinates for {} vertices",
            emb.len(),
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut next = g.n();
    let mut edges = Vec::new();
    let mut names: Vec<String> = (0..g.n()).map(|v| g.name(v)).collect();
    let mut chain_map = Vec::with_capacity(g.m());
    for (u, v) in g.edges() {
        let alpha = emb.distance(u, v) as usize;
        if alpha == 0 {
            return Err(Error::CoincidentEndpoints { u, v });
        }
        let mut triples = Vec::with_capacity(alpha);
        let mut prev = u;
        for i in 0..alpha {
            let (l, s, r) = (next, next + 1, next + 2);
            next += 3;
            for tag in ["l", "s", "r"] {
                names.push(format!("{tag}{}_{}_{}", i + 1, g.name(u), g.name(v)));
            }
            edges.extend([(prev, l), (l, s), (s, r), (l, r)]);
            triples.push([l, s, r]);
            prev = r;
        }
        edges.push((prev, v));
        chain_map.push(EdgeChain { u, v, triples });
    }
    let total: usize = chain_map.iter().map(|c| c.triples.len()).sum();
    let graph = Graph::from_edges(next, edges)?.with_names(names)?;
    Ok(ExpandedInstance {
        graph,
        k_prime: k + total,
        chain_map,
    })
}

/// Maps a cover of `g` to one of the expanded graph: per edge, add the
/// chain's `l` vertices when only `v` is in `s`, otherwise its `r` vertices.
pub fn lift_cover(expanded: &ExpandedInstance, g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    if s.universe() != g.n() {
        return Err(Error::Precondition(format!(
            "set over {} vertices for a graph on {}",
            s.universe(),
            g.n()
        )));
    }
    if !has_covered_spanning_tree(g, s) {
        return Err(Error::Precondition("boundary subgraph of the set is disconnected".into()));
    }
    let mut lifted = VertexSet::new(expanded.graph.n());
    for v in s.iter() {
        lifted.insert(v);
    }
    for chain in &expanded.chain_map {
        let pick = if !s.contains(chain.u) && s.contains(chain.v) { 0 } else { 2 };
        for t in &chain.triples {
            lifted.insert(t[pick]);
        }
    }
    Ok(lifted)
}
