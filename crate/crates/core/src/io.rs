//! Line-oriented text formats. Ids are 1-based in files and 0-based in
//! memory. Lines starting with `c` and blank lines are ignored everywhere.
//!
//! ```text
//! p mcst <n> <m>      graph header, followed by m lines `e <u> <v>`
//! o <v1> ... <vn>     vertex ordering (may span several `o` lines)
//! v <id> <x> <y>      grid coordinates, one line per vertex
//! s <v1> ... <vk>     vertex set (cover or dominating set)
//! ```
//!
//! Spanning trees use the graph format. CNF files are DIMACS `p cnf`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, SpanningTree, Vertex, VertexSet};
use crate::reduction::{CnfInstance, GridEmbedding};

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(f) if f.starts_with('c') && f.len() == 1 => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn parse_num<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {field:?}")))
}

fn parse_id(line: usize, field: &str, n: usize) -> Result<Vertex> {
    let id: usize = parse_num(line, field, "a vertex id")?;
    if id == 0 || id > n {
        return Err(Error::parse(line, format!("vertex id {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

/// Edge list of a `p mcst` file, checked for loops, duplicates and range.
fn parse_edge_file(text: &str) -> Result<(usize, Vec<(Vertex, Vertex)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut last_line = 0;
    for (line, f) in content_lines(text) {
        last_line = line;
        match f[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line, "second header line"));
                }
                if f.len() != 4 || f[1] != "mcst" {
                    return Err(Error::parse(line, "expected `p mcst <n> <m>`"));
                }
                header = Some((
                    parse_num(line, f[2], "a vertex count")?,
                    parse_num(line, f[3], "an edge count")?,
                ));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(Error::parse(line, "edge before the `p mcst` header"));
                };
                if f.len() != 3 {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                }
                let u = parse_id(line, f[1], n)?;
                let v = parse_id(line, f[2], n)?;
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at vertex {}", u + 1)));
                }
                let key = (u.min(v), u.max(v));
                if let Some(first) = seen.insert(key, line) {
                    return Err(Error::parse(
                        line,
                        format!("duplicate edge {} {} (first on line {first})", key.0 + 1, key.1 + 1),
                    ));
                }
                edges.push((u, v));
            }
            other => return Err(Error::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p mcst <n> <m>` header"));
    };
    if edges.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_edge_file(text)?;
    Graph::from_edges(n, edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p mcst {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses a spanning tree in graph format; `n` must match the host graph.
pub fn parse_tree(text: &str, n: usize) -> Result<SpanningTree> {
    let (tn, edges) = parse_edge_file(text)?;
    if tn != n {
        return Err(Error::parse(1, format!("tree has {tn} vertices, graph has {n}")));
    }
    Ok(SpanningTree { edges })
}

pub fn serialize_tree(t: &SpanningTree, n: usize) -> String {
    let mut out = format!("p mcst {} {}\n", n, t.edges.len());
    for &(u, v) in &t.edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Ordering file; checks ids are in range but not that they form a
/// permutation (the interval module does that).
pub fn parse_ordering(text: &str, n: usize) -> Result<Vec<Vertex>> {
    let mut order = Vec::with_capacity(n);
    for (line, f) in content_lines(text) {
        if f[0] != "o" {
            return Err(Error::parse(line, format!("expected `o <v1> ... <vn>`, found {:?}", f[0])));
        }
        for field in &f[1..] {
            order.push(parse_id(line, field, n)?);
        }
    }
    Ok(order)
}

pub fn serialize_ordering(order: &[Vertex]) -> String {
    let ids: Vec<String> = order.iter().map(|v| (v + 1).to_string()).collect();
    format!("o {}\n", ids.join(" "))
}

pub fn parse_coords(text: &str, n: usize) -> Result<GridEmbedding> {
    let mut coords: Vec<Option<(i64, i64)>> = vec![None; n];
    for (line, f) in content_lines(text) {
        if f[0] != "v" || f.len() != 4 {
            return Err(Error::parse(line, "expected `v <id> <x> <y>`"));
        }
        let v = parse_id(line, f[1], n)?;
        let x = parse_num(line, f[2], "an integer coordinate")?;
        let y = parse_num(line, f[3], "an integer coordinate")?;
        if coords[v].replace((x, y)).is_some() {
            return Err(Error::parse(line, format!("vertex {} placed twice", v + 1)));
        }
    }
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::InvalidEmbedding(format!("vertex {} has no coordinates", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    GridEmbedding::new(coords)
}

pub fn serialize_coords(emb: &GridEmbedding) -> String {
    let mut out = String::new();
    for (v, (x, y)) in emb.coords().iter().enumerate() {
        let _ = writeln!(out, "v {} {x} {y}", v + 1);
    }
    out
}

/// Vertex-set file: `s` lines listing 1-based ids. An `s` line with no ids
/// denotes the empty set.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut set = VertexSet::new(n);
    for (line, f) in content_lines(text) {
        if f[0] != "s" {
            return Err(Error::parse(line, format!("expected `s <v1> ... <vk>`, found {:?}", f[0])));
        }
        for field in &f[1..] {
            if !set.insert(parse_id(line, field, n)?) {
                return Err(Error::parse(line, format!("vertex {field} listed twice")));
            }
        }
    }
    Ok(set)
}

pub fn serialize_vertex_set(s: &VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
    if ids.is_empty() {
        "s\n".into()
    } else {
        format!("s {}\n", ids.join(" "))
    }
}

/// DIMACS CNF. Clauses end with `0` and may span lines; a `%` line ends the
/// input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (line, f) in content_lines(text) {
        last_line = line;
        if f[0] == "%" {
            break;
        }
        if f[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(line, "second header line"));
            }
            if f.len() != 4 || f[1] != "cnf" {
                return Err(Error::parse(line, "expected `p cnf <vars> <clauses>`"));
            }
            header = Some((
                parse_num(line, f[2], "a variable count")?,
                parse_num(line, f[3], "a clause count")?,
            ));
            continue;
        }
        let Some((n_vars, _)) = header else {
            return Err(Error::parse(line, "clause before the `p cnf` header"));
        };
        for field in &f {
            let lit: i32 = parse_num(line, field, "a literal")?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > n_vars {
                return Err(Error::parse(line, format!("literal {lit} exceeds {n_vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((n_vars, m)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header declares {m} clauses but {} were given", clauses.len()),
        ));
    }
    Ok(CnfInstance { n_vars, clauses })
}

pub fn serialize_dimacs_cnf(c: &CnfInstance) -> String {
    let mut out = format!("p cnf {} {}\n", c.n_vars, c.clauses.len());
    for clause in &c.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn parse_err_line(r: Result<impl std::fmt::Debug>) -> usize {
        match r {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("p mcst 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, named::path(2));
        let c6 = named::cycle(6);
        let text = serialize_graph(&c6);
        let back = parse_graph(&text).unwrap();
        assert_eq!((back.n(), back.m()), (6, 6));
        assert_eq!(back, c6);
        let with_comments = "c a comment\n\np mcst 3 2\nc edges\ne 2 1\n  e 3 2  \n";
        assert_eq!(parse_graph(with_comments).unwrap(), named::path(3));
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        assert_eq!(parse_err_line(parse_graph("p mcst 2 1\ne 1 1\n")), 2);
        assert_eq!(parse_err_line(parse_graph("p mcst 3 2\ne 1 2\ne 2 1\n")), 3);
        assert_eq!(parse_err_line(parse_graph("p mcst 2 1\ne 1 3\n")), 2);
        assert_eq!(parse_err_line(parse_graph("e 1 2\n")), 1);
        assert_eq!(parse_err_line(parse_graph("p mcst 2 2\ne 1 2\n")), 2);
        assert_eq!(parse_err_line(parse_graph("p mcst 2 1\nx 1 2\n")), 2);
        assert_eq!(parse_err_line(parse_graph("p mcst 2 1\ne 1 two\n")), 2);
        assert_eq!(parse_err_line(parse_graph("")), 1);
    }

    #[test]
    fn ordering_and_sets() {
        assert_eq!(parse_ordering("o 1 2\no 3\n", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(serialize_ordering(&[2, 0, 1]), "o 3 1 2\n");
        assert_eq!(parse_err_line(parse_ordering("o 1 4\n", 3)), 1);
        let s = parse_vertex_set("s 2 4\n", 5).unwrap();
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(serialize_vertex_set(&s), "s 2 4\n");
        assert!(parse_vertex_set("s\n", 2).unwrap().is_empty());
        assert_eq!(serialize_vertex_set(&VertexSet::new(2)), "s\n");
        assert_eq!(parse_err_line(parse_vertex_set("s 1 1\n", 2)), 1);
    }

    #[test]
    fn coords() {
        let emb = parse_coords("v 2 1 0\nv 1 0 0\n", 2).unwrap();
        assert_eq!(emb.coords(), &[(0, 0), (1, 0)]);
        assert_eq!(parse_coords(&serialize_coords(&emb), 2).unwrap(), emb);
        assert!(matches!(parse_coords("v 1 0 0\n", 2), Err(Error::InvalidEmbedding(_))));
        assert!(matches!(parse_coords("v 1 0 0\nv 2 0 0\n", 2), Err(Error::InvalidEmbedding(_))));
        assert_eq!(parse_err_line(parse_coords("v 1 0 0\nv 1 1 1\n", 2)), 2);
    }

    #[test]
    fn tree_files() {
        let t = SpanningTree {
            edges: vec![(0, 1), (1, 2)],
        };
        let text = serialize_tree(&t, 3);
        assert_eq!(parse_tree(&text, 3).unwrap(), t);
        assert!(parse_tree(&text, 4).is_err());
    }

    #[test]
    fn dimacs() {
        let text = "c fig\np cnf 4 4\n1 3 4 0\n1 2\n3 0\n-3 -4 0 -1 -2 -4 0\n";
        let c = parse_dimacs_cnf(text).unwrap();
        assert_eq!(c.n_vars, 4);
        assert_eq!(c.clauses, vec![vec![1, 3, 4], vec![1, 2, 3], vec![-3, -4], vec![-1, -2, -4]]);
        assert_eq!(parse_dimacs_cnf(&serialize_dimacs_cnf(&c)).unwrap(), c);
        assert_eq!(parse_err_line(parse_dimacs_cnf("p cnf 1 1\n2 0\n")), 2);
        assert_eq!(parse_err_line(parse_dimacs_cnf("p cnf 1 1\n1\n")), 2);
        assert_eq!(parse_err_line(parse_dimacs_cnf("p cnf 1 2\n1 0\n")), 2);
        assert_eq!(parse_dimacs_cnf("p cnf 1 1\n1 0\n%\n0\n").unwrap().clauses.len(), 1);
    }
}
