//! Undirected simple graphs over contiguous vertex ids, vertex subsets, and
//! the boundary-subgraph machinery that characterizes which vertex sets cover
//! some spanning tree.
//!
//! The central fact used throughout the crate: a set `S` covers a spanning
//! tree of `G` iff the spanning subgraph keeping exactly the edges incident to
//! `S` (the *boundary subgraph*) is connected. The boundary subgraph always
//! keeps all `n` vertices, so a vertex outside `S` with no neighbour in `S`
//! is an isolated vertex and disconnects it.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Default bound for the exhaustive cut enumeration in [`cut_condition_holds`].
pub const DEFAULT_CUT_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    // compressed adjacency: neighbours of v are nbrs[offsets[v]..offsets[v + 1]]
    offsets: Vec<usize>,
    nbrs: Vec<Vertex>,
    names: Option<Vec<String>>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            nbrs: Vec::new(),
            names: None,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut offsets = vec![0; n + 1];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut nbrs = vec![0; 2 * edges.len()];
        for &(u, v) in &edges {
            nbrs[fill[u]] = v;
            fill[u] += 1;
            nbrs[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            let list = &mut nbrs[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    v.min(w[0]),
                    v.max(w[0])
                )));
            }
        }
        Ok(Graph {
            offsets,
            nbrs,
            names: None,
        })
    }

    /// Attaches external vertex names. Names must be distinct.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "{} names for {} vertices",
                names.len(),
                self.n()
            )));
        }
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, v: Vertex) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.names.as_ref()?.iter().position(|s| s == name)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Adjacency rows as bitmasks. Only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        (0..self.n())
            .map(|u| self.neighbors(u).iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }

    /// Induced subgraph on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.neighbors(v)
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && i < index[w]).then(|| (i, index[w])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph is simple")
    }
}

/// A subset of the vertices of a host graph, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(universe: usize, vertices: I) -> Result<Self> {
        let mut s = Self::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_mask(universe: usize, mask: u64) -> Self {
        let mut s = Self::new(universe);
        if universe > 0 {
            s.bits[0] = mask;
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let had = self.contains(v);
        self.bits[v / 64] |= 1 << (v % 64);
        !had
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let had = self.contains(v);
        if had {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
        had
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub edges: Vec<(Vertex, Vertex)>,
}

impl SpanningTree {
    /// True iff the edges form a spanning tree of `g` (all edges present in
    /// `g`, `n - 1` of them, acyclic).
    pub fn is_spanning_tree_of(&self, g: &Graph) -> bool {
        let n = g.n();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        self.edges
            .iter()
            .all(|&(u, v)| u < n && v < n && g.has_edge(u, v) && uf.union(u, v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    InducedP5,
    OddCycle,
    DiameterPair,
}

/// A certificate for a structural predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
}

impl Witness {
    /// Checks that the witness realizes the claimed structure in `g`.
    /// `DiameterPair` is checked as "the two vertices are at distance > 2".
    pub fn holds_in(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        match self.kind {
            WitnessKind::InducedP5 => {
                vs.len() == 5
                    && (0..5).all(|i| {
                        (i + 1..5).all(|j| g.has_edge(vs[i], vs[j]) == (j == i + 1) && vs[i] != vs[j])
                    })
            }
            WitnessKind::OddCycle => {
                let k = vs.len();
                k >= 3 && k % 2 == 1 && (0..k).all(|i| g.has_edge(vs[i], vs[(i + 1) % k]))
            }
            WitnessKind::DiameterPair => {
                vs.len() == 2 && bfs_distances(g, vs[0])[vs[1]].map_or(true, |d| d > 2)
            }
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already in the same set.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.sets -= 1;
        true
    }

    pub(crate) fn sets(&self) -> usize {
        self.sets
    }
}

/// Spanning subgraph of `g` keeping exactly the edges with an endpoint in `s`.
pub fn boundary_subgraph(g: &Graph, s: &VertexSet) -> Graph {
    let edges: Vec<_> = g.edges().filter(|&(u, v)| s.contains(u) || s.contains(v)).collect();
    let mut h = Graph::from_edges(g.n(), edges).expect("subgraph of a simple graph");
    h.names = g.names.clone();
    h
}

/// Number of components of the boundary subgraph, without materializing it.
pub fn boundary_component_count(g: &Graph, s: &VertexSet) -> usize {
    let mut uf = UnionFind::new(g.n());
    for v in s.iter() {
        for &w in g.neighbors(v) {
            uf.union(v, w);
        }
    }
    uf.sets()
}

/// Components as sorted vertex lists, ordered by their minimum vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut block = Vec::new();
        while let Some(v) = queue.pop_front() {
            block.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Whether some spanning tree of `g` is covered by `s`; equivalently whether
/// the boundary subgraph for `s` is connected. A single vertex is covered by
/// any set, including the empty one.
pub fn has_covered_spanning_tree(g: &Graph, s: &VertexSet) -> bool {
    g.n() <= 1 || boundary_component_count(g, s) == 1
}

/// Grows a spanning tree from vertex 0, each step adding the lexicographically
/// smallest crossing edge `(u, v)` (`u` in the tree, `v` outside) with an
/// endpoint in `s`.
pub fn extract_covered_spanning_tree(g: &Graph, s: &VertexSet) -> Result<SpanningTree> {
    let n = g.n();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return Ok(SpanningTree { edges });
    }
    let mut in_tree = vec![false; n];
    in_tree[0] = true;
    // Min-heap of admissible crossing edges; stale entries are skipped.
    let mut heap = std::collections::BinaryHeap::new();
    let push_from = |u: Vertex, heap: &mut std::collections::BinaryHeap<std::cmp::Reverse<(Vertex, Vertex)>>, in_tree: &[bool]| {
        for &v in g.neighbors(u) {
            if !in_tree[v] && (s.contains(u) || s.contains(v)) {
                heap.push(std::cmp::Reverse((u, v)));
            }
        }
    };
    push_from(0, &mut heap, &in_tree);
    while edges.len() + 1 < n {
        let next = loop {
            match heap.pop() {
                Some(std::cmp::Reverse((u, v))) if !in_tree[v] => break Some((u, v)),
                Some(_) => continue,
                None => break None,
            }
        };
        let Some((u, v)) = next else {
            return Err(Error::NotCoverable { reached: edges.len() + 1 });
        };
        in_tree[v] = true;
        edges.push((u, v));
        push_from(v, &mut heap, &in_tree);
    }
    Ok(SpanningTree { edges })
}

pub fn is_vertex_cover(edges: &[(Vertex, Vertex)], s: &VertexSet) -> bool {
    edges.iter().all(|&(u, v)| s.contains(u) || s.contains(v))
}

/// Exhaustive check that every nonempty proper cut `(C, V \ C)` is crossed by
/// an edge with an endpoint in `s`. Enumerates all `2^n - 2` cuts, so it is
/// guarded by `bound`.
pub fn cut_condition_holds(g: &Graph, s: &VertexSet, bound: usize) -> Result<bool> {
    let n = g.n();
    if n > bound || n > 63 {
        return Err(Error::InstanceTooLarge { n, bound: bound.min(63) });
    }
    if n < 2 {
        return Ok(true);
    }
    let edges: Vec<(Vertex, Vertex, bool)> = g
        .edges()
        .map(|(u, v)| (u, v, s.contains(u) || s.contains(v)))
        .collect();
    // Fix vertex n-1 outside C: every cut appears once up to complement, and
    // the crossing condition is symmetric in the two sides.
    for cut in 1u64..(1u64 << (n - 1)) {
        let crossed = edges
            .iter()
            .any(|&(u, v, ok)| ok && ((cut >> u) & 1) != ((cut >> v) & 1));
        if !crossed {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn bfs_distances(g: &Graph, src: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Maximum eccentricity, with a farthest pair. `n = 1` gives `(0, [0, 0])`.
pub fn diameter_with_pair(g: &Graph) -> Result<(usize, (Vertex, Vertex))> {
    if g.n() == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let mut best = (0, (0, 0));
    for u in 0..g.n() {
        for (v, d) in bfs_distances(g, u).into_iter().enumerate() {
            let d = d.ok_or(Error::Disconnected)?;
            if d > best.0 {
                best = (d, (u, v));
            }
        }
    }
    Ok(best)
}

pub fn diameter(g: &Graph) -> Result<usize> {
    diameter_with_pair(g).map(|(d, _)| d)
}

/// Searches for an induced path on five vertices. Returns `(true, None)` if
/// none exists, otherwise `(false, Some(witness))` with the vertices in path
/// order.
pub fn is_p5_free(g: &Graph) -> (bool, Option<Witness>) {
    match find_induced_path(g, 5) {
        Some(path) => (
            false,
            Some(Witness {
                kind: WitnessKind::InducedP5,
                vertices: path,
            }),
        ),
        None => (true, None),
    }
}

/// Ordered DFS over induced paths, pruning any extension that would create a
/// chord. Returns the first induced path on `len` vertices found with the
/// first endpoint smaller than the last.
pub fn find_induced_path(g: &Graph, len: usize) -> Option<Vec<Vertex>> {
    fn extend(g: &Graph, path: &mut Vec<Vertex>, on_path: &mut [bool], len: usize) -> bool {
        if path.len() == len {
            return path[0] < path[len - 1];
        }
        let last = *path.last().unwrap();
        for &v in g.neighbors(last) {
            if on_path[v] {
                continue;
            }
            // v may only touch `last` among the path vertices.
            if path[..path.len() - 1].iter().any(|&p| g.has_edge(p, v)) {
                continue;
            }
            path.push(v);
            on_path[v] = true;
            if extend(g, path, on_path, len) {
                return true;
            }
            on_path[v] = false;
            path.pop();
        }
        false
    }
    if len == 0 {
        return None;
    }
    let mut on_path = vec![false; g.n()];
    for start in 0..g.n() {
        let mut path = vec![start];
        on_path[start] = true;
        if len == 1 || extend(g, &mut path, &mut on_path, len) {
            return Some(path);
        }
        on_path[start] = false;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub bipartite: bool,
    pub max_degree: usize,
    pub connected: bool,
    pub odd_cycle: Option<Witness>,
}

pub fn structural_checks(g: &Graph) -> StructuralReport {
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut odd_cycle = None;
    'outer: for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for &w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        parent[w] = v;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => {
                        odd_cycle = Some(odd_cycle_through(&parent, v, w));
                        break 'outer;
                    }
                    Some(_) => {}
                }
            }
        }
    }
    StructuralReport {
        bipartite: odd_cycle.is_none(),
        max_degree: (0..n).map(|v| g.degree(v)).max().unwrap_or(0),
        connected: g.is_connected(),
        odd_cycle: odd_cycle.map(|vertices| Witness {
            kind: WitnessKind::OddCycle,
            vertices,
        }),
    }
}

/// `v` and `w` are adjacent and on the same BFS level parity; the tree paths
/// to their lowest common ancestor plus the edge `vw` form an odd cycle.
fn odd_cycle_through(parent: &[usize], v: Vertex, w: Vertex) -> Vec<Vertex> {
    let root_path = |mut x: Vertex| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pv = root_path(v);
    let pw = root_path(w);
    let mut common = 0;
    while common < pv.len().min(pw.len()) && pv[pv.len() - 1 - common] == pw[pw.len() - 1 - common] {
        common += 1;
    }
    // pv[..=pv.len()-common] runs v .. lca
    let mut cycle: Vec<Vertex> = pv[..=pv.len() - common].to_vec();
    cycle.extend(pw[..pw.len() - common].iter().rev());
    cycle
}

/// Whether `d` dominates `g`: every vertex outside `d` has a neighbour in it.
pub fn is_dominating_set(g: &Graph, d: &VertexSet) -> bool {
    first_undominated(g, d).is_none()
}

pub(crate) fn first_undominated(g: &Graph, d: &VertexSet) -> Option<Vertex> {
    (0..g.n()).find(|&v| !d.contains(v) && !g.neighbors(v).iter().any(|&w| d.contains(w)))
}

/// Small named graphs used in tests, examples and the CLI corpus.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// Two triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `2-3`.
    pub fn bridged_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]).unwrap()
    }

    /// Complete split graph: a clique on `0..k` and an independent set on
    /// `k..k+i`, every independent vertex adjacent to the whole clique.
    pub fn complete_split(k: usize, i: usize) -> Graph {
        let clique = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
        let cross = (0..k).flat_map(|u| (k..k + i).map(move |v| (u, v)));
        Graph::from_edges(k + i, clique.chain(cross).collect::<Vec<_>>()).unwrap()
    }
}
