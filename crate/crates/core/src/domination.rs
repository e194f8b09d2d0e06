//! Spanning-tree covers from minimum dominating sets.
//!
//! On graphs of diameter at most 2 the boundary subgraph of any minimum
//! dominating set is already connected. On connected P5-free graphs it may
//! not be, but a swap `S' = S + {r1, r2} - {s1, s2}` along an induced path
//! `s1 r1 r2 s2` between two boundary components keeps `S'` a minimum
//! dominating set and strictly reduces the number of components. Iterating
//! the swap yields a cover of the same size.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    boundary_component_count, diameter_with_pair, first_undominated, has_covered_spanning_tree, is_p5_free,
    Graph, UnionFind, Vertex, VertexSet, Witness, WitnessKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairStep {
    pub s1: Vertex,
    pub s2: Vertex,
    pub r1: Vertex,
    pub r2: Vertex,
    pub components_before: usize,
    pub components_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RepairTrace {
    pub steps: Vec<RepairStep>,
}

/// Component id of every vertex in the boundary subgraph, plus the count.
fn boundary_labels(g: &Graph, s: &VertexSet) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::new(g.n());
    for v in s.iter() {
        for &w in g.neighbors(v) {
            uf.union(v, w);
        }
    }
    let count = uf.sets();
    ((0..g.n()).map(|v| uf.find(v)).collect(), count)
}

fn lowest_neighbor_in(g: &Graph, v: Vertex, s: &VertexSet) -> Option<Vertex> {
    g.neighbors(v).iter().copied().find(|&w| s.contains(w))
}

/// Runs the component-merging swap until the boundary subgraph of the set is
/// connected. `s` must be a minimum dominating set of a connected P5-free
/// graph; otherwise the loop may get stuck, which is reported as an error.
///
/// Ties: the first component is the one containing vertex 0, `(r1, r2)` is
/// the lexicographically smallest admissible edge, and `s1`, `s2` are the
/// lowest-id set neighbours of `r1`, `r2`.
pub fn repair_boundary(g: &Graph, s: &VertexSet) -> Result<(VertexSet, RepairTrace)> {
    let mut current = s.clone();
    let mut trace = RepairTrace::default();
    if g.n() <= 1 {
        return Ok((current, trace));
    }
    loop {
        let (comp, count) = boundary_labels(g, &current);
        if count == 1 {
            return Ok((current, trace));
        }
        let step = trace.steps.len();
        let stuck = |detail: String| Error::RepairStuck {
            step,
            components: count,
            detail,
        };
        if let Some(v) = first_undominated(g, &current) {
            return Err(stuck(format!("vertex {v} is not dominated")));
        }
        let first = comp[0];
        let edge = (0..g.n())
            .filter(|&r1| comp[r1] == first && !current.contains(r1))
            .find_map(|r1| {
                g.neighbors(r1)
                    .iter()
                    .find(|&&r2| comp[r2] != first && !current.contains(r2))
                    .map(|&r2| (r1, r2))
            });
        let Some((r1, r2)) = edge else {
            return Err(stuck("no edge between the non-set parts of two components".into()));
        };
        let s1 = lowest_neighbor_in(g, r1, &current).expect("dominated");
        let s2 = lowest_neighbor_in(g, r2, &current).expect("dominated");
        current.remove(s1);
        current.remove(s2);
        current.insert(r1);
        current.insert(r2);
        let after = boundary_component_count(g, &current);
        trace.steps.push(RepairStep {
            s1,
            s2,
            r1,
            r2,
            components_before: count,
            components_after: after,
        });
        if after >= count {
            return Err(stuck(format!(
                "swap ({s1},{s2}) -> ({r1},{r2}) did not reduce components ({count} -> {after})"
            )));
        }
    }
}

/// Which structural class admitted the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominationClass {
    DiameterAtMostTwo,
    P5Free,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationSolution {
    pub value: usize,
    pub cover: VertexSet,
    pub class: DominationClass,
    pub trace: RepairTrace,
}

/// Turns a minimum dominating set into a minimum spanning-tree cover on
/// graphs of diameter at most 2 or connected P5-free graphs. Minimality of
/// `domset` is the caller's responsibility; domination itself is checked.
pub fn solve_via_domination(g: &Graph, domset: &VertexSet) -> Result<DominationSolution> {
    if domset.universe() != g.n() {
        return Err(Error::Precondition(format!(
            "dominating set over {} vertices for a graph on {}",
            domset.universe(),
            g.n()
        )));
    }
    let (diam, pair) = diameter_with_pair(g)?;
    if let Some(v) = first_undominated(g, domset) {
        return Err(Error::NotDominating { vertex: v });
    }
    if diam <= 2 {
        if !has_covered_spanning_tree(g, domset) {
            return Err(Error::TheoremViolated(format!(
                "boundary subgraph of dominating set {domset:?} is disconnected on a diameter-{diam} graph"
            )));
        }
        return Ok(DominationSolution {
            value: domset.len(),
            cover: domset.clone(),
            class: DominationClass::DiameterAtMostTwo,
            trace: RepairTrace::default(),
        });
    }
    match is_p5_free(g) {
        (true, _) => {
            let (cover, trace) = repair_boundary(g, domset)?;
            Ok(DominationSolution {
                value: cover.len(),
                cover,
                class: DominationClass::P5Free,
                trace,
            })
        }
        (false, p5) => Err(Error::ClassPreconditionFailed {
            diameter: Witness {
                kind: WitnessKind::DiameterPair,
                vertices: vec![pair.0, pair.1],
            },
            p5: p5.expect("witness accompanies a negative answer"),
        }),
    }
}
