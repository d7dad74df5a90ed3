//! Sets of isomorphism types presented by oracles, and the finite checks
//! that such a set is an ideal, extends, and amalgamates.

mod amalgams;
mod checks;
mod extend;
mod oracle;
mod registry;

pub use amalgams::{
    all_loops_point, single_cross_family, is_minimal_cover, minimal_amalgams,
    minimal_amalgams_with_representatives, no_loops_point, MINIMAL_AMALGAM_FREE_LIMIT,
};
pub use checks::{
    hat_closure_member, is_initial_segment, is_up_directed, reduct_shadow, spot_check_invariance,
    DirectedReport, SegmentViolation,
};
pub use extend::{
    amalgamate, extend, is_extendable, Amalgam, AmalgamInstance, Extension, DEFAULT_SEARCH_BUDGET,
};
pub(crate) use oracle::check_generator_bound;
pub use oracle::{
    chain, dedup_members, full_oracle, is_simple_graph, is_strict_linear_order, linear_orders,
    member_codes, members_up_to, simple_graphs, triangle_free, Generator, IdealOracle,
    PredicateOracle,
};
pub use registry::{oracle_from_token, RegistryOptions};
