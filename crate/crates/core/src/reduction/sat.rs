use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{structural_checks, Graph, Vertex, VertexSet};

/// A CNF formula; literals are DIMACS-style signed 1-based variable ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfInstance {
    pub n_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CnfViolation {
    LiteralOutOfRange { clause: usize, literal: i32 },
    ClauseSize { clause: usize, len: usize },
    NotSimple { clause: usize, var: usize },
    NotMonotone { clause: usize },
    NotThreeBounded { var: usize, occurrences: usize },
    /// Generator-readiness: 1 or 2 positive and 1 or 2 negative occurrences.
    Occurrences { var: usize, positive: usize, negative: usize },
}

impl fmt::Display for CnfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfViolation::LiteralOutOfRange { clause, literal } => {
                write!(f, "clause {}: literal {literal} out of range", clause + 1)
            }
            CnfViolation::ClauseSize { clause, len } => {
                write!(f, "clause {}: {len} literals, expected 1 to 3", clause + 1)
            }
            CnfViolation::NotSimple { clause, var } => {
                write!(f, "clause {}: variable x{var} occurs more than once", clause + 1)
            }
            CnfViolation::NotMonotone { clause } => {
                write!(f, "clause {}: mixes positive and negative literals", clause + 1)
            }
            CnfViolation::NotThreeBounded { var, occurrences } => {
                write!(f, "variable x{var}: occurs in {occurrences} clauses, at most 3 allowed")
            }
            CnfViolation::Occurrences { var, positive, negative } => write!(
                f,
                "variable x{var}: {positive} positive and {negative} negative clauses, need 1 or 2 of each"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CnfDiagnostics {
    pub violations: Vec<CnfViolation>,
}

impl CnfDiagnostics {
    /// Simple, monotone, 3-bounded, clause sizes 1 to 3.
    pub fn restrictions_hold(&self) -> bool {
        self.violations
            .iter()
            .all(|v| matches!(v, CnfViolation::Occurrences { .. }))
    }

    pub fn generator_ready(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CnfDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn occurrences(c: &CnfInstance) -> (Vec<usize>, Vec<usize>) {
    let mut pos = vec![0; c.n_vars + 1];
    let mut neg = vec![0; c.n_vars + 1];
    for clause in &c.clauses {
        let mut seen = BTreeSet::new();
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            if v == 0 || v > c.n_vars || !seen.insert(lit) {
                continue;
            }
            if lit > 0 {
                pos[v] += 1;
            } else {
                neg[v] += 1;
            }
        }
    }
    (pos, neg)
}

pub fn validate_cnf(c: &CnfInstance) -> CnfDiagnostics {
    let mut violations = Vec::new();
    for (j, clause) in c.clauses.iter().enumerate() {
        if clause.is_empty() || clause.len() > 3 {
            violations.push(CnfViolation::ClauseSize { clause: j, len: clause.len() });
        }
        let mut vars = BTreeSet::new();
        for &lit in clause {
            let v = lit.unsigned_abs() as usize;
            if v == 0 || v > c.n_vars {
                violations.push(CnfViolation::LiteralOutOfRange { clause: j, literal: lit });
            } else if !vars.insert(v) {
                violations.push(CnfViolation::NotSimple { clause: j, var: v });
            }
        }
        if clause.iter().any(|&l| l > 0) && clause.iter().any(|&l| l < 0) {
            violations.push(CnfViolation::NotMonotone { clause: j });
        }
    }
    let (pos, neg) = occurrences(c);
    for v in 1..=c.n_vars {
        if pos[v] + neg[v] > 3 {
            violations.push(CnfViolation::NotThreeBounded {
                var: v,
                occurrences: pos[v] + neg[v],
            });
        }
    }
    for v in 1..=c.n_vars {
        if !(1..=2).contains(&pos[v]) || !(1..=2).contains(&neg[v]) {
            violations.push(CnfViolation::Occurrences {
                var: v,
                positive: pos[v],
                negative: neg[v],
            });
        }
    }
    CnfDiagnostics { violations }
}

/// Result of removing pure and absent variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub cnf: CnfInstance,
    /// Values fixed for removed variables (1-based original ids).
    pub fixed: BTreeMap<usize, bool>,
    /// Original id of each remaining variable, indexed by new id - 1.
    pub original: Vec<usize>,
}

impl Normalized {
    /// Extends an assignment of the normalized formula to the original one.
    /// Variables that occurred nowhere are set to false.
    pub fn lift_assignment(&self, n_vars: usize, assignment: &[bool]) -> Vec<bool> {
        let mut out = vec![false; n_vars];
        for (&v, &val) in &self.fixed {
            out[v - 1] = val;
        }
        for (i, &v) in self.original.iter().enumerate() {
            out[v - 1] = assignment[i];
        }
        out
    }
}

/// Repeatedly sets variables that occur with only one sign so their clauses
/// are satisfied, drops those clauses, and renumbers what is left.
pub fn normalize_pure(c: &CnfInstance) -> Normalized {
    let mut clauses: Vec<Vec<i32>> = c.clauses.clone();
    let mut fixed = BTreeMap::new();
    loop {
        let live = CnfInstance {
            n_vars: c.n_vars,
            clauses: clauses.clone(),
        };
        let (pos, neg) = occurrences(&live);
        let pure: Vec<(usize, bool)> = (1..=c.n_vars)
            .filter(|v| !fixed.contains_key(v))
            .filter_map(|v| match (pos[v], neg[v]) {
                (p, 0) if p > 0 => Some((v, true)),
                (0, n) if n > 0 => Some((v, false)),
                _ => None,
            })
            .collect();
        if pure.is_empty() {
            break;
        }
        for (v, val) in pure {
            fixed.insert(v, val);
            let lit = if val { v as i32 } else { -(v as i32) };
            clauses.retain(|cl| !cl.contains(&lit));
        }
    }
    let used: BTreeSet<usize> = clauses.iter().flatten().map(|l| l.unsigned_abs() as usize).collect();
    let original: Vec<usize> = used.into_iter().collect();
    let new_id: BTreeMap<usize, i32> = original.iter().enumerate().map(|(i, &v)| (v, i as i32 + 1)).collect();
    let clauses = clauses
        .into_iter()
        .map(|cl| {
            cl.into_iter()
                .map(|l| new_id[&(l.unsigned_abs() as usize)] * l.signum())
                .collect()
        })
        .collect();
    Normalized {
        cnf: CnfInstance {
            n_vars: original.len(),
            clauses,
        },
        fixed,
        original,
    }
}

/// Whether `assignment` (indexed by variable id - 1) satisfies every clause;
/// on failure returns the first unsatisfied clause index.
pub fn check_assignment(c: &CnfInstance, assignment: &[bool]) -> std::result::Result<(), usize> {
    for (j, clause) in c.clauses.iter().enumerate() {
        let sat = clause.iter().any(|&l| {
            let val = assignment[l.unsigned_abs() as usize - 1];
            if l > 0 {
                val
            } else {
                !val
            }
        });
        if !sat {
            return Err(j);
        }
    }
    Ok(())
}

/// Gadget vertex roles; variable and connector indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "role", content = "index", rename_all = "kebab-case")]
pub enum Role {
    U(usize),
    UBar(usize),
    R(usize),
    T(usize),
    S(usize),
    H(usize),
    Q(usize),
    L(usize),
    W(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::U(i) => write!(f, "u{i}"),
            Role::UBar(i) => write!(f, "ubar{i}"),
            Role::R(i) => write!(f, "r{i}"),
            Role::T(i) => write!(f, "t{i}"),
            Role::S(i) => write!(f, "s{i}"),
            Role::H(i) => write!(f, "h{i}"),
            Role::Q(i) => write!(f, "q{i}"),
            Role::L(i) => write!(f, "l{i}"),
            Role::W(j) => write!(f, "w{j}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    /// Vertex names are the role tags.
    pub graph: Graph,
    pub k: usize,
    pub roles: Vec<Role>,
}

impl GadgetInstance {
    pub fn vertex(&self, role: Role) -> Option<Vertex> {
        self.roles.iter().position(|&r| r == role)
    }
}

/// Number of vertices of the gadget graph for `n` variables and `m` clauses.
pub fn gadget_size(n: usize, m: usize) -> usize {
    5 * n + 3 * n.saturating_sub(1) + m
}

// Layout: variable i (0-based) owns 5i..5i+5 as u, r, ubar, t, s; connector i
// owns 5n + 3i.. as h, q, l; clause j is 5n + 3(n-1) + j.
fn var_vertex(i: usize, offset: usize) -> Vertex {
    5 * i + offset
}

/// Builds the gadget graph with `k = 3n - 1`. Bipartiteness and maximum
/// degree 4 are checked on the result.
pub fn build_sat_instance(c: &CnfInstance) -> Result<GadgetInstance> {
    let diag = validate_cnf(c);
    if !diag.generator_ready() {
        return Err(Error::NotGeneratorReady(diag.to_string()));
    }
    let n = c.n_vars;
    let m = c.clauses.len();
    let mut roles = Vec::with_capacity(gadget_size(n, m));
    let mut edges = Vec::new();
    for i in 0..n {
        let id = i + 1;
        roles.extend([Role::U(id), Role::R(id), Role::UBar(id), Role::T(id), Role::S(id)]);
        let (u, r, ub, t, s) = (
            var_vertex(i, 0),
            var_vertex(i, 1),
            var_vertex(i, 2),
            var_vertex(i, 3),
            var_vertex(i, 4),
        );
        edges.extend([(u, r), (r, ub), (ub, t), (t, u), (t, s)]);
    }
    let (pos, _) = occurrences(c);
    for i in 0..n.saturating_sub(1) {
        let id = i + 1;
        let base = 5 * n + 3 * i;
        roles.extend([Role::H(id), Role::Q(id), Role::L(id)]);
        let (h, q, l) = (base, base + 1, base + 2);
        edges.extend([(h, q), (q, l), (h, var_vertex(i, 3))]);
        let next = if pos[i + 2] == 1 {
            var_vertex(i + 1, 0)
        } else {
            var_vertex(i + 1, 2)
        };
        edges.push((q, next));
    }
    let w0 = 5 * n + 3 * n.saturating_sub(1);
    for (j, clause) in c.clauses.iter().enumerate() {
        roles.push(Role::W(j + 1));
        for &lit in clause {
            let i = lit.unsigned_abs() as usize - 1;
            let lit_vertex = if lit > 0 { var_vertex(i, 0) } else { var_vertex(i, 2) };
            edges.push((lit_vertex, w0 + j));
        }
    }
    let names = roles.iter().map(ToString::to_string).collect();
    let graph = Graph::from_edges(roles.len(), edges)?.with_names(names)?;
    let report = structural_checks(&graph);
    if !report.bipartite || report.max_degree > 4 {
        return Err(Error::TheoremViolated(format!(
            "gadget graph is not bipartite with maximum degree 4: {report:?}"
        )));
    }
    Ok(GadgetInstance {
        graph,
        k: (3 * n).saturating_sub(1),
        roles,
    })
}

/// `{t_i, u_i}` for true variables, `{t_i, ubar_i}` for false ones, plus every
/// connector's `q_i`.
pub fn assignment_to_cover(c: &CnfInstance, assignment: &[bool], gi: &GadgetInstance) -> Result<VertexSet> {
    if assignment.len() != c.n_vars {
        return Err(Error::Precondition(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            c.n_vars
        )));
    }
    check_assignment(c, assignment).map_err(|j| Error::AssignmentNotSatisfying { clause: j + 1 })?;
    let mut cover = VertexSet::new(gi.graph.n());
    for (i, &val) in assignment.iter().enumerate() {
        cover.insert(var_vertex(i, 3));
        cover.insert(var_vertex(i, if val { 0 } else { 2 }));
    }
    for i in 0..c.n_vars.saturating_sub(1) {
        cover.insert(5 * c.n_vars + 3 * i + 1);
    }
    Ok(cover)
}
