//! Minimum spanning-tree cover on graphs given by a w-expression.
//!
//! For each node of the expression the table maps a census function to the
//! smallest set realizing it. The census counts, for every pair `(C, X)` of
//! label sets, how many boundary components use exactly the labels `C` and
//! have set vertices with exactly the labels `X` (capped at two).

pub mod build;
mod dp;
mod expr;

pub use dp::{
    dp_introduce, dp_join, dp_relabel, dp_union, evaluate, root_extract, Backref, DpFunction, DpTable, Entry,
    Evaluation, KeySpace, LabelMask, RootAnswer, DEFAULT_TABLE_CAP, MAX_DP_WIDTH,
};
pub use expr::{parse_expression, realize_graph, ExprBuilder, ExpressionTree, Label, LabeledGraph, Node, NodeId};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, Serialize)]
pub struct CliqueWidthSolution {
    pub tau: usize,
    pub yes: bool,
    /// Over the realized graph's vertex ids.
    pub witness: VertexSet,
    pub width: Label,
    pub max_table_len: usize,
}

/// Evaluates the expression and answers whether `tau <= k`.
pub fn solve_cliquewidth(tree: &ExpressionTree, k: usize, cap: usize) -> Result<(Graph, CliqueWidthSolution)> {
    let (g, _) = realize_graph(tree);
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let eval = evaluate(tree, cap)?;
    let ans = root_extract(tree, &eval, k)?;
    Ok((
        g,
        CliqueWidthSolution {
            tau: ans.tau,
            yes: ans.yes,
            witness: ans.witness,
            width: tree.width(),
            max_table_len: eval.max_table_len(),
        },
    ))
}
