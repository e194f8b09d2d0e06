use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Vertex label, `1..=w`.
pub type Label = u32;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Introduce { label: Label, name: String },
    Union { left: NodeId, right: NodeId },
    Relabel { from: Label, to: Label, child: NodeId },
    Join { a: Label, b: Label, child: NodeId },
}

/// A validated w-expression. Nodes are stored so that every child precedes
/// its parent; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressionTree {
    nodes: Vec<Node>,
    width: Label,
    /// Realized vertex id of each introduce node.
    leaf_vertex: Vec<Option<Vertex>>,
    names: Vec<String>,
}

impl ExpressionTree {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    /// Largest label used.
    pub fn width(&self) -> Label {
        self.width
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn leaf_vertex(&self, node: NodeId) -> Option<Vertex> {
        self.leaf_vertex[node]
    }

    /// Vertex names, indexed by realized vertex id (left-to-right leaf order).
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Renames the vertices `1..=n` in realized order.
    pub fn with_sequential_names(mut self) -> Self {
        for (i, name) in self.names.iter_mut().enumerate() {
            *name = (i + 1).to_string();
        }
        for (id, node) in self.nodes.iter_mut().enumerate() {
            if let (Node::Introduce { name, .. }, Some(v)) = (node, self.leaf_vertex[id]) {
                *name = (v + 1).to_string();
            }
        }
        self
    }

    /// The labeled graph built by the subtree at `node`: the realized ids of
    /// its vertices (ascending), their labels, and its edges.
    pub fn realize_node(&self, node: NodeId) -> LabeledGraph {
        let mut built: Vec<Option<LabeledGraph>> = vec![None; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate().take(node + 1) {
            let lg = match n {
                Node::Introduce { label, .. } => LabeledGraph {
                    vertices: vec![self.leaf_vertex[id].unwrap()],
                    labels: vec![*label],
                    edges: Vec::new(),
                },
                Node::Union { left, right } => {
                    let mut l = built[*left].take().unwrap();
                    let r = built[*right].take().unwrap();
                    l.vertices.extend(r.vertices);
                    l.labels.extend(r.labels);
                    l.edges.extend(r.edges);
                    l
                }
                Node::Relabel { from, to, child } => {
                    let mut g = built[*child].take().unwrap();
                    for l in g.labels.iter_mut().filter(|l| **l == *from) {
                        *l = *to;
                    }
                    g
                }
                Node::Join { a, b, child } => {
                    let mut g = built[*child].take().unwrap();
                    let mut existing: HashSet<(Vertex, Vertex)> = g.edges.iter().copied().collect();
                    for i in 0..g.vertices.len() {
                        for j in 0..g.vertices.len() {
                            if g.labels[i] == *a && g.labels[j] == *b {
                                let (u, v) = (g.vertices[i], g.vertices[j]);
                                let e = (u.min(v), u.max(v));
                                if existing.insert(e) {
                                    g.edges.push(e);
                                }
                            }
                        }
                    }
                    g
                }
            };
            built[id] = Some(lg);
        }
        let mut g = built[node].take().unwrap();
        let mut idx: Vec<usize> = (0..g.vertices.len()).collect();
        idx.sort_by_key(|&i| g.vertices[i]);
        g.labels = idx.iter().map(|&i| g.labels[i]).collect();
        g.vertices = idx.iter().map(|&i| g.vertices[i]).collect();
        g.edges.sort_unstable();
        g
    }
}

/// Labeled graph over realized vertex ids of the whole expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: Vec<Vertex>,
    pub labels: Vec<Label>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl LabeledGraph {
    /// Renumbers vertices to `0..len` (preserving order) and builds a graph.
    pub fn to_graph(&self) -> Graph {
        let index = |v: Vertex| self.vertices.binary_search(&v).unwrap();
        Graph::from_edges(
            self.vertices.len(),
            self.edges.iter().map(|&(u, v)| (index(u), index(v))).collect::<Vec<_>>(),
        )
        .expect("expression graphs are simple")
    }
}

/// The graph built by the whole expression with external names attached,
/// plus the final label of each vertex.
pub fn realize_graph(t: &ExpressionTree) -> (Graph, Vec<Label>) {
    let lg = t.realize_node(t.root());
    let g = lg
        .to_graph()
        .with_names(t.names.clone())
        .expect("names validated at construction");
    (g, lg.labels)
}

/// Incremental construction of expression trees; [`ExprBuilder::finish`]
/// validates and compacts the part reachable from the chosen root.
#[derive(Default, Debug)]
pub struct ExprBuilder {
    nodes: Vec<Node>,
}

impl ExprBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn intro(&mut self, label: Label, name: impl Into<String>) -> NodeId {
        self.push(Node::Introduce {
            label,
            name: name.into(),
        })
    }

    pub fn union(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.push(Node::Union { left, right })
    }

    pub fn relabel(&mut self, from: Label, to: Label, child: NodeId) -> NodeId {
        self.push(Node::Relabel { from, to, child })
    }

    pub fn join(&mut self, a: Label, b: Label, child: NodeId) -> NodeId {
        self.push(Node::Join { a, b, child })
    }

    pub fn finish(self, root: NodeId) -> Result<ExpressionTree> {
        if root >= self.nodes.len() {
            return Err(Error::ExprInvalid(format!("root {root} does not exist")));
        }
        // Iterative post-order from the root; each node may be used once.
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut used = vec![false; self.nodes.len()];
        let mut stack = vec![(root, false)];
        used[root] = true;
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            stack.push((id, true));
            let children: Vec<NodeId> = match &self.nodes[id] {
                Node::Introduce { .. } => vec![],
                Node::Union { left, right } => vec![*right, *left],
                Node::Relabel { child, .. } | Node::Join { child, .. } => vec![*child],
            };
            for c in children {
                if c >= self.nodes.len() {
                    return Err(Error::ExprInvalid(format!("child {c} does not exist")));
                }
                if used[c] {
                    return Err(Error::ExprInvalid(format!("node {c} used twice")));
                }
                used[c] = true;
                stack.push((c, false));
            }
        }
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        for (i, &old) in order.iter().enumerate() {
            new_id[old] = i;
        }
        let mut nodes = Vec::with_capacity(order.len());
        let mut leaf_vertex = Vec::with_capacity(order.len());
        let mut names = Vec::new();
        let mut seen_names = HashSet::new();
        let mut width = 0;
        for &old in &order {
            let node = match &self.nodes[old] {
                Node::Introduce { label, name } => {
                    check_label(*label)?;
                    if name.is_empty() {
                        return Err(Error::ExprInvalid("empty vertex name".into()));
                    }
                    if !seen_names.insert(name.clone()) {
                        return Err(Error::ExprInvalid(format!("vertex name {name:?} introduced twice")));
                    }
                    width = width.max(*label);
                    names.push(name.clone());
                    Node::Introduce {
                        label: *label,
                        name: name.clone(),
                    }
                }
                Node::Union { left, right } => Node::Union {
                    left: new_id[*left],
                    right: new_id[*right],
                },
                Node::Relabel { from, to, child } => {
                    check_pair("relabel", *from, *to)?;
                    width = width.max(*from).max(*to);
                    Node::Relabel {
                        from: *from,
                        to: *to,
                        child: new_id[*child],
                    }
                }
                Node::Join { a, b, child } => {
                    check_pair("join", *a, *b)?;
                    width = width.max(*a).max(*b);
                    Node::Join {
                        a: *a,
                        b: *b,
                        child: new_id[*child],
                    }
                }
            };
            leaf_vertex.push(matches!(node, Node::Introduce { .. }).then(|| names.len() - 1));
            nodes.push(node);
        }
        Ok(ExpressionTree {
            nodes,
            width,
            leaf_vertex,
            names,
        })
    }
}

fn check_label(l: Label) -> Result<()> {
    if l == 0 {
        return Err(Error::ExprInvalid("labels start at 1".into()));
    }
    Ok(())
}

fn check_pair(op: &str, i: Label, j: Label) -> Result<()> {
    check_label(i)?;
    check_label(j)?;
    if i == j {
        return Err(Error::ExprInvalid(format!("{op} with identical labels {i} {j}")));
    }
    Ok(())
}

impl fmt::Display for ExpressionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &ExpressionTree, id: NodeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match &t.nodes[id] {
                Node::Introduce { label, name } => write!(f, "(intro {label} {name})"),
                Node::Union { left, right } => {
                    write!(f, "(union ")?;
                    go(t, *left, f)?;
                    write!(f, " ")?;
                    go(t, *right, f)?;
                    write!(f, ")")
                }
                Node::Relabel { from, to, child } => {
                    write!(f, "(relabel {from} {to} ")?;
                    go(t, *child, f)?;
                    write!(f, ")")
                }
                Node::Join { a, b, child } => {
                    write!(f, "(join {a} {b} ")?;
                    go(t, *child, f)?;
                    write!(f, ")")
                }
            }
        }
        go(self, self.root(), f)
    }
}

// ---------------------------------------------------------------------------
// s-expression parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open(usize),
    Close(usize),
    Atom(usize, &'a str),
}

fn tokenize(text: &str) -> Vec<Tok<'_>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                toks.push(Tok::Open(i));
                i += 1;
            }
            b')' => {
                toks.push(Tok::Close(i));
                i += 1;
            }
            b';' => {
                // comment to end of line
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'(' | b')' | b';') {
                    i += 1;
                }
                toks.push(Tok::Atom(start, &text[start..i]));
            }
        }
    }
    toks
}

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    at: usize,
    end: usize,
    builder: ExprBuilder,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::ExprSyntax { pos, msg: msg.into() })
    }

    fn pos(&self) -> usize {
        match self.toks.get(self.at) {
            Some(Tok::Open(p) | Tok::Close(p) | Tok::Atom(p, _)) => *p,
            None => self.end,
        }
    }

    fn atom(&mut self) -> Result<(usize, &'a str)> {
        match self.toks.get(self.at) {
            Some(Tok::Atom(p, s)) => {
                self.at += 1;
                Ok((*p, s))
            }
            _ => self.err(self.pos(), "expected an atom"),
        }
    }

    fn label(&mut self) -> Result<Label> {
        let (p, s) = self.atom()?;
        match s.parse::<Label>() {
            Ok(l) if l >= 1 && s.bytes().all(|b| b.is_ascii_digit()) => Ok(l),
            _ => self.err(p, format!("expected a positive label, found {s:?}")),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.toks.get(self.at) {
            Some(Tok::Close(_)) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err(self.pos(), "expected ')'"),
        }
    }

    fn expr(&mut self) -> Result<NodeId> {
        match self.toks.get(self.at) {
            Some(Tok::Open(_)) => self.at += 1,
            _ => return self.err(self.pos(), "expected '('"),
        }
        let (p, op) = self.atom()?;
        let id = match op {
            "intro" => {
                let label = self.label()?;
                let (np, name) = self.atom()?;
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                    return self.err(np, format!("invalid vertex name {name:?}"));
                }
                self.builder.intro(label, name)
            }
            "union" => {
                let l = self.expr()?;
                let r = self.expr()?;
                self.builder.union(l, r)
            }
            "relabel" | "join" => {
                let i = self.label()?;
                let j = self.label()?;
                if i == j {
                    return self.err(p, format!("{op} requires distinct labels, found {i} {j}"));
                }
                let c = self.expr()?;
                if op == "relabel" {
                    self.builder.relabel(i, j, c)
                } else {
                    self.builder.join(i, j, c)
                }
            }
            other => return self.err(p, format!("unknown operation {other:?}")),
        };
        self.close()?;
        Ok(id)
    }
}

/// Parses `(intro <label> <name>)`, `(union <t> <t>)`,
/// `(relabel <i> <j> <t>)` and `(join <i> <j> <t>)`. Whitespace-insensitive;
/// `;` starts a comment.
pub fn parse_expression(text: &str) -> Result<ExpressionTree> {
    let mut p = Parser {
        toks: tokenize(text),
        at: 0,
        end: text.len(),
        builder: ExprBuilder::new(),
    };
    let root = p.expr()?;
    if p.at != p.toks.len() {
        return p.err(p.pos(), "trailing input after expression");
    }
    p.builder.finish(root)
}
