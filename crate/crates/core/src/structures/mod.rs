//! Finite relational structures: construction, restriction, reducts,
//! embeddings, canonical forms and ages.

mod age;
mod canon;
mod embed;
mod signature;
mod structure;
pub mod text;

pub use age::{
    age, age_with_representatives, all_structures, cell_count, iso_classes, skeleton,
    ENUMERATION_CELL_LIMIT,
};
pub use canon::{canonical_form, canonical_labeling, canonical_structure, IsoType};
pub use embed::{
    are_isomorphic, count_embeddings, embeds, find_embedding, for_each_embedding, is_embedding,
    isomorphisms, ElementMap,
};
pub use signature::{Entry, Signature};
pub use structure::{Structure, StructureBuilder, Tuple};
pub use text::{parse_structure, write_structure};
