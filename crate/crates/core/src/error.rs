use thiserror::Error;

use crate::graph::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("instance too large: {n} vertices exceeds the exhaustive bound {bound}")]
    InstanceTooLarge { n: usize, bound: usize },

    #[error("not coverable: no admissible crossing edge after reaching {reached} vertices")]
    NotCoverable { reached: usize },

    #[error("vertex {vertex} is not dominated")]
    NotDominating { vertex: usize },

    #[error("repair stuck at step {step} with {components} boundary components: {detail}")]
    RepairStuck {
        step: usize,
        components: usize,
        detail: String,
    },

    #[error("graph is neither of diameter <= 2 nor P5-free (diameter witness {diameter:?}, induced P5 {p5:?})")]
    ClassPreconditionFailed { diameter: Witness, p5: Witness },

    #[error("theorem violated: {0}")]
    TheoremViolated(String),

    #[error("ordering is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },

    #[error("not an interval ordering: positions ({a}, {b}, {c}) (1-based) violate the ordering property")]
    NotIntervalOrdering { a: usize, b: usize, c: usize },

    #[error("sweep invariant violated at iteration {iteration}: {detail}")]
    SweepInvariant { iteration: usize, detail: String },

    #[error("expression syntax error at byte {pos}: {msg}")]
    ExprSyntax { pos: usize, msg: String },

    #[error("invalid expression: {0}")]
    ExprInvalid(String),

    #[error("dp table blow-up: {size} stored functions exceeds cap {cap}")]
    TableBlowup { size: usize, cap: usize },

    #[error("root table holds no single-component function (realized graph disconnected?)")]
    NoConnectedFunction,

    #[error("formula is not generator-ready: {0}")]
    NotGeneratorReady(String),

    #[error("assignment does not satisfy clause {clause} (1-based)")]
    AssignmentNotSatisfying { clause: usize },

    #[error("edge ({u}, {v}) has coincident endpoints in the embedding")]
    CoincidentEndpoints { u: usize, v: usize },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no applicable algorithm: {0}")]
    NoApplicableAlgorithm(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
