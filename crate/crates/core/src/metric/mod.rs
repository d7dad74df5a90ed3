//! Finite metric spaces: threshold encodings, spectra and separation,
//! embeddings into the line and into Euclidean space, growth omitting
//! distances, and isometries of subgroups of the rationals.

mod embed;
mod encoding;
mod group;
mod grow;
mod oracle;
mod packing;
mod scalar;
mod space;

pub use embed::{
    check_n_plus_3, embed_euclid, embed_euclid_with, embed_line, rectangle, GramTolerance,
    NPlus3Report,
};
pub use encoding::{
    auto_thresholds, decode_rel, encode_auto, encode_rel, threshold_signature, ThresholdEncoding,
};
pub use group::{
    group_homogeneity_extend, in_subgroup, subgroup_closure_defects, subgroup_generator,
    GroupIsometry, IsometryKind,
};
pub use grow::{omit_distance_grow, OmitGrowth, Placement, PLACEMENT_GRID};
pub use oracle::{GridCondition, LineGridOracle, DEFAULT_LEVELS};
pub use packing::{
    age_minus_a_member, age_t_member, omega_t, packing_bound, Separation, OMEGA_EXACT_LIMIT,
};
pub use scalar::{name_fragment, parse_name_fragment, Rational, Scalar, DEFAULT_TOLERANCE};
pub use space::{euclidean, parse_metric, write_metric, MetricSpace};
