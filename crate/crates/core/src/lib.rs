//! Automorphisms of the depth-`n` rooted binary tree and conjugacy of their
//! subgroups by the bottom-level kernel `K_n`.
//!
//! Leaves are numbered `1..=2^n` left to right in text and `0..2^n`
//! internally. Products apply the right factor first, and `x^g = g x g^-1`.

pub mod conjugacy;
pub mod error;
pub mod f2;
pub mod harness;
pub mod markov;
pub mod notation;
pub mod subgroup;
pub mod tree;

pub use conjugacy::{
    is_elementwise_conjugate, is_globally_conjugate, property_p, ConjugacyCertificate, Hypotheses,
    PairVerdict, PropertyPReport,
};
pub use error::{Error, Result};
pub use f2::{F2AffineSet, F2Subspace, F2Vector};
pub use harness::{PairRecord, SweepConfig, SweepReport};
pub use markov::{markov_group, MarkovGroupSpec};
pub use subgroup::Subgroup;
pub use tree::{Depth, KnVector, TreeAutomorphism};
