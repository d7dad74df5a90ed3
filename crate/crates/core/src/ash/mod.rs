//! Ashes: families of colour sets, and the edge-coloured complete graphs
//! whose colour sets at every vertex lie in the family.

mod axioms;
mod colored;
mod family;

pub use axioms::{check_ash_axioms, AxiomReport};
pub use colored::{
    as_membership, directed_join, find_member, representation_size_bound, AshOracle, Join, SizeBound, SizeCertificate,
    Verdict, COLOURING_BUDGET, SUBSET_CHECK_LIMIT,
};
pub use family::{graph_ash, graph_to_space, poset_ash, space_to_graph, standard_ash, subset_poset, Ash, AshFlavor};
