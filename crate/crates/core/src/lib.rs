//! Finite semigroup computations centered on block-groups.
//!
//! A finite semigroup is a block-group when every element has at most one
//! inverse — equivalently, when no R-class or L-class holds two
//! idempotents. On block-groups the right-translation maps x ↦ xs become
//! injective partial maps, giving a representation into the symmetric
//! inverse semigroup whose kernel is the largest congruence separating
//! regular elements; the idempotent actions e ↦ (es)⁻¹(es) give the
//! analogous representation on idempotents whose kernel is the largest
//! idempotent-separating congruence. This crate computes both families,
//! verifies their properties, and cross-checks the kernels against
//! brute-force congruence-lattice oracles.
//!
//! Ingestion and generation live alongside: multiplication-table and DFA
//! files, transformation-semigroup closure, syntactic monoids, a named
//! example corpus, an exhaustive sweep of all tables of order ≤ 3, ω-term
//! pseudoidentity evaluation, and a `certify` battery that ties it all
//! together.

pub mod certify;
pub mod congruence;
pub mod corpus;
pub mod dfa;
pub mod green;
pub mod pinj;
pub mod regularity;
pub mod rep;
pub mod report;
pub mod semigroup;
pub mod table_io;
pub mod transform;
mod util;
pub mod variety;

pub use congruence::{Congruence, CongruenceError, OracleOutcome};
pub use dfa::{Dfa, DfaError};
pub use pinj::{PartialInjection, PinjError};
pub use rep::{RepError, RepKind, Representation};
pub use semigroup::{
    BlockGroupCheck, ClassKind, FiniteSemigroup, IdempotentClash, SemigroupError,
};
pub use variety::{Pseudoidentity, PseudoTerm, VarietyError};

use thiserror::Error;

/// Any error the pipeline can produce.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Pinj(#[from] PinjError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    IdentityParse(#[from] variety::IdentityParseError),
    #[error(transparent)]
    Table(#[from] table_io::TableError),
    #[error(transparent)]
    Dfa(#[from] DfaError),
    #[error(transparent)]
    Transform(#[from] transform::TransformError),
    #[error(transparent)]
    Sweep(#[from] corpus::SweepError),
}
