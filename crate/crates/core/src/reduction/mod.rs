//! Hardness constructions used as instance generators: the SAT gadget graph
//! (bipartite, maximum degree 4, `k = 3n - 1`) and the triangle-chain
//! expansion of grid-embedded graphs.

mod sat;
mod unitdisk;

pub use sat::{
    assignment_to_cover, build_sat_instance, check_assignment, gadget_size, normalize_pure, validate_cnf,
    CnfDiagnostics, CnfInstance, CnfViolation, GadgetInstance, Normalized, Role,
};
pub use unitdisk::{expand_to_unit_disk, lift_cover, manhattan, EdgeChain, ExpandedInstance, GridEmbedding};
