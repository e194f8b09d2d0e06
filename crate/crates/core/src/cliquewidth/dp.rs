use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use super::expr::{ExpressionTree, Label, Node};
use crate::error::{Error, Result};
use crate::graph::{UnionFind, VertexSet};

/// Default limit on the number of functions in one table.
pub const DEFAULT_TABLE_CAP: usize = 1 << 20;

/// Widths above this are rejected; the key index is a `4^w` array.
pub const MAX_DP_WIDTH: u32 = 8;

/// Label-set bitmask; bit `l - 1` stands for label `l`.
pub type LabelMask = u32;

/// The `3^w` keys `(C, X)` with `X ⊆ C ⊆ [w]`, ordered by `|C|`, then `C`,
/// then `X`.
#[derive(Clone, Debug)]
pub struct KeySpace {
    w: u32,
    keys: Vec<(LabelMask, LabelMask)>,
    index: Vec<u32>,
}

impl KeySpace {
    pub fn new(w: u32) -> Result<Self> {
        if w > MAX_DP_WIDTH {
            return Err(Error::Precondition(format!(
                "width {w} exceeds the supported maximum {MAX_DP_WIDTH}"
            )));
        }
        let mut cs: Vec<LabelMask> = (0..1u32 << w).collect();
        cs.sort_by_key(|c| (c.count_ones(), *c));
        let mut keys = Vec::new();
        for c in cs {
            let mut xs: Vec<LabelMask> = (0..1u32 << w).filter(|x| x & !c == 0).collect();
            xs.sort_unstable();
            keys.extend(xs.into_iter().map(|x| (c, x)));
        }
        let mut index = vec![u32::MAX; 1 << (2 * w)];
        for (k, &(c, x)) in keys.iter().enumerate() {
            index[((c << w) | x) as usize] = k as u32;
        }
        Ok(KeySpace { w, keys, index })
    }

    pub fn width(&self) -> u32 {
        self.w
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, k: usize) -> (LabelMask, LabelMask) {
        self.keys[k]
    }

    pub fn index_of(&self, c: LabelMask, x: LabelMask) -> usize {
        let k = self.index[((c << self.w) | x) as usize];
        assert!(k != u32::MAX, "({c:b}, {x:b}) is not a key");
        k as usize
    }
}

/// A map from keys to `{0, 1, 2}` (2 meaning "two or more"), packed two bits
/// per key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DpFunction {
    words: Box<[u64]>,
}

impl DpFunction {
    pub fn zero(ks: &KeySpace) -> Self {
        DpFunction {
            words: vec![0; ks.len().div_ceil(32)].into_boxed_slice(),
        }
    }

    /// Builds a function from `(C, X, count)` triples; counts add up and are
    /// capped at 2.
    pub fn from_counts(ks: &KeySpace, counts: impl IntoIterator<Item = (LabelMask, LabelMask, usize)>) -> Self {
        let mut f = Self::zero(ks);
        for (c, x, n) in counts {
            f.add(ks.index_of(c, x), n);
        }
        f
    }

    pub fn get(&self, k: usize) -> u8 {
        ((self.words[k / 32] >> (2 * (k % 32))) & 3) as u8
    }

    fn set(&mut self, k: usize, v: u8) {
        let shift = 2 * (k % 32);
        let w = &mut self.words[k / 32];
        *w = (*w & !(3 << shift)) | ((v as u64) << shift);
    }

    fn add(&mut self, k: usize, n: usize) {
        let v = (self.get(k) as usize + n).min(2);
        self.set(k, v as u8);
    }

    /// Keys with a nonzero value, ascending, with their values.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize / 2;
                rest &= !(3 << (2 * bit));
                let v = ((word >> (2 * bit)) & 3) as u8;
                Some((wi * 32 + bit, v))
            })
        })
    }

    /// True when exactly one key has value 1 and all others are 0, i.e. the
    /// boundary subgraph is connected.
    pub fn is_connected(&self) -> bool {
        let mut it = self.support();
        matches!((it.next(), it.next()), (Some((_, 1)), None))
    }
}

impl fmt::Debug for DpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.support()).finish()
    }
}

/// How an entry was produced; indices point into the child tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backref {
    Introduce { in_set: bool },
    Union { left: usize, right: usize },
    Unary { child: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub cost: usize,
    pub back: Backref,
}

/// Minimum set size realizing each reachable function.
#[derive(Clone, Debug, Default)]
pub struct DpTable {
    pub entries: IndexMap<DpFunction, Entry>,
}

impl DpTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn cost(&self, f: &DpFunction) -> Option<usize> {
        self.entries.get(f).map(|e| e.cost)
    }

    fn offer(&mut self, f: DpFunction, cost: usize, back: Backref, cap: usize) -> Result<()> {
        match self.entries.get_mut(&f) {
            Some(e) if e.cost <= cost => {}
            Some(e) => *e = Entry { cost, back },
            None => {
                if self.entries.len() >= cap {
                    return Err(Error::TableBlowup {
                        size: self.entries.len() + 1,
                        cap,
                    });
                }
                self.entries.insert(f, Entry { cost, back });
            }
        }
        Ok(())
    }
}

fn bit(l: Label) -> LabelMask {
    1 << (l - 1)
}

pub fn dp_introduce(ks: &KeySpace, label: Label) -> DpTable {
    let b = bit(label);
    let mut t = DpTable::default();
    t.entries.insert(
        DpFunction::from_counts(ks, [(b, 0, 1)]),
        Entry {
            cost: 0,
            back: Backref::Introduce { in_set: false },
        },
    );
    t.entries.insert(
        DpFunction::from_counts(ks, [(b, b, 1)]),
        Entry {
            cost: 1,
            back: Backref::Introduce { in_set: true },
        },
    );
    t
}

pub fn dp_union(left: &DpTable, right: &DpTable, cap: usize) -> Result<DpTable> {
    let mut t = DpTable::default();
    for (li, (lf, le)) in left.entries.iter().enumerate() {
        for (ri, (rf, re)) in right.entries.iter().enumerate() {
            let mut f = lf.clone();
            for (k, v) in rf.support() {
                f.add(k, v as usize);
            }
            t.offer(
                f,
                le.cost + re.cost,
                Backref::Union { left: li, right: ri },
                cap,
            )?;
        }
    }
    Ok(t)
}

pub fn dp_relabel(ks: &KeySpace, from: Label, to: Label, child: &DpTable, cap: usize) -> Result<DpTable> {
    let (fb, tb) = (bit(from), bit(to));
    let move_label = |m: LabelMask| if m & fb != 0 { (m & !fb) | tb } else { m };
    let map: Vec<usize> = (0..ks.len())
        .map(|k| {
            let (c, x) = ks.key(k);
            ks.index_of(move_label(c), move_label(x))
        })
        .collect();
    let mut t = DpTable::default();
    for (ci, (f, e)) in child.entries.iter().enumerate() {
        let mut g = DpFunction::zero(ks);
        for (k, v) in f.support() {
            g.add(map[k], v as usize);
        }
        t.offer(g, e.cost, Backref::Unary { child: ci }, cap)?;
    }
    Ok(t)
}

/// Adds all edges between labels `a` and `b`. Components of the boundary
/// subgraph are merged whenever one holds a set vertex of one label and the
/// other holds any vertex of the other label.
pub fn dp_join(ks: &KeySpace, a: Label, b: Label, child: &DpTable, cap: usize) -> Result<DpTable> {
    let (ab, bb) = (bit(a), bit(b));
    let linked = |(_, xu): (LabelMask, LabelMask), (cv, _): (LabelMask, LabelMask)| {
        (xu & ab != 0 && cv & bb != 0) || (xu & bb != 0 && cv & ab != 0)
    };
    let mut t = DpTable::default();
    let mut copies: Vec<(LabelMask, LabelMask)> = Vec::new();
    for (ci, (f, e)) in child.entries.iter().enumerate() {
        copies.clear();
        for (k, v) in f.support() {
            for _ in 0..v {
                copies.push(ks.key(k));
            }
        }
        let mut uf = UnionFind::new(copies.len());
        for u in 0..copies.len() {
            for v in u + 1..copies.len() {
                if linked(copies[u], copies[v]) || linked(copies[v], copies[u]) {
                    uf.union(u, v);
                }
            }
        }
        let mut merged: Vec<(LabelMask, LabelMask)> = vec![(0, 0); copies.len()];
        for (u, &(c, x)) in copies.iter().enumerate() {
            let r = uf.find(u);
            merged[r].0 |= c;
            merged[r].1 |= x;
        }
        let g = DpFunction::from_counts(
            ks,
            (0..copies.len())
                .filter(|&u| uf.find(u) == u)
                .map(|u| (merged[u].0, merged[u].1, 1)),
        );
        t.offer(g, e.cost, Backref::Unary { child: ci }, cap)?;
    }
    Ok(t)
}

/// All node tables of an expression, indexed like its nodes.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub keys: KeySpace,
    pub tables: Vec<DpTable>,
}

impl Evaluation {
    pub fn root_table(&self) -> &DpTable {
        self.tables.last().expect("expressions are non-empty")
    }

    pub fn max_table_len(&self) -> usize {
        self.tables.iter().map(DpTable::len).max().unwrap_or(0)
    }
}

/// Bottom-up evaluation of every node.
pub fn evaluate(tree: &ExpressionTree, cap: usize) -> Result<Evaluation> {
    let ks = KeySpace::new(tree.width())?;
    let mut tables: Vec<DpTable> = Vec::with_capacity(tree.nodes().len());
    for node in tree.nodes() {
        let t = match node {
            Node::Introduce { label, .. } => dp_introduce(&ks, *label),
            Node::Union { left, right } => dp_union(&tables[*left], &tables[*right], cap)?,
            Node::Relabel { from, to, child } => dp_relabel(&ks, *from, *to, &tables[*child], cap)?,
            Node::Join { a, b, child } => dp_join(&ks, *a, *b, &tables[*child], cap)?,
        };
        tables.push(t);
    }
    Ok(Evaluation { keys: ks, tables })
}

#[derive(Clone, Debug, Serialize)]
pub struct RootAnswer {
    /// Minimum cover size over all spanning trees.
    pub tau: usize,
    pub yes: bool,
    /// A set of size `tau`, over realized vertex ids.
    pub witness: VertexSet,
}

/// Reads the optimum off the root table and reconstructs a witness through
/// the back-references.
pub fn root_extract(tree: &ExpressionTree, eval: &Evaluation, k: usize) -> Result<RootAnswer> {
    let root = eval.root_table();
    let best = root
        .entries
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| f.is_connected())
        .min_by_key(|(i, (_, e))| (e.cost, *i))
        .map(|(i, (_, e))| (i, e.cost));
    let Some((idx, tau)) = best else {
        return Err(Error::NoConnectedFunction);
    };
    let mut witness = VertexSet::new(tree.vertex_count());
    let mut stack = vec![(tree.root(), idx)];
    while let Some((node, i)) = stack.pop() {
        let (_, entry) = eval.tables[node].entries.get_index(i).expect("valid backref");
        match (&tree.nodes()[node], entry.back) {
            (Node::Introduce { .. }, Backref::Introduce { in_set }) => {
                if in_set {
                    witness.insert(tree.leaf_vertex(node).expect("leaf"));
                }
            }
            (Node::Union { left, right }, Backref::Union { left: li, right: ri }) => {
                stack.push((*left, li));
                stack.push((*right, ri));
            }
            (Node::Relabel { child, .. } | Node::Join { child, .. }, Backref::Unary { child: ci }) => {
                stack.push((*child, ci));
            }
            (n, b) => unreachable!("backref {b:?} does not match node {n:?}"),
        }
    }
    debug_assert_eq!(witness.len(), tau);
    Ok(RootAnswer {
        tau,
        yes: tau <= k,
        witness,
    })
}
