//! Exact verification of EKR and EKR-module properties for transitive
//! permutation groups, with character tables over cyclotomic fields,
//! ratio-bound certificates and Peisert-type graphs.

pub mod action;
pub mod chartable;
pub mod clique;
pub mod cyclotomic;
pub mod ekr;
pub mod error;
pub mod group;
pub mod job;
pub mod linalg;
pub mod peisert;
pub mod perm;
pub mod reproduce;
pub mod spectral;

pub use error::{Error, Result};
pub use group::{ConjugacyClasses, ElementTable, PermGroup, SubgroupSpec};
pub use perm::Permutation;
