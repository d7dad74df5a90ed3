//! Finite relational structures and their ages.
//!
//! The crate computes with finite structures over a signature of relation
//! symbols: embeddings and canonical forms, ages and ideals of isomorphism
//! types, amalgams, stage-by-stage realisation of an ideal as an age, metric
//! spaces encoded as threshold relations, ashes and the edge-coloured graph
//! ideals they generate, and a rigid encoding of binary structures into a
//! single ternary relation.
//!
//! Every existential search takes an explicit bound; "not found" always means
//! "not found within the bound".
//!
//! ```
//! use relage::structures::{age, find_embedding, Signature, Structure};
//!
//! let sig = Signature::binary(1);
//! let edge = Structure::from_tuples(sig.clone(), 2, [(0, vec![0, 1])]).unwrap();
//! let cycle = Structure::from_tuples(
//!     sig,
//!     3,
//!     [(0, vec![0, 1]), (0, vec![1, 2]), (0, vec![2, 0])],
//! )
//! .unwrap();
//!
//! let f = find_embedding(&edge, &cycle).unwrap().unwrap();
//! assert_eq!(f.images(), &[0, 1]);
//! assert_eq!(age(&cycle, 2).len(), 3);
//! ```

pub mod ash;
pub mod combinatorics;
pub mod encode3;
mod error;
pub mod fraisse;
pub mod ideals;
pub mod metric;
pub mod structures;

pub use error::{Error, Result};
