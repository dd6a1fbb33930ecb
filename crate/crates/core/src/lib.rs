//! Exact Cox-ring computations for iterated blow-ups of projective space
//! along linear subspaces.
//!
//! The Cox ring of such a blow-up is the ring of invariants of an additive
//! group acting on the polynomial Cox ring of a toric model. This crate builds
//! that toric model, the group action, and the graded linear algebra needed to
//! compute graded pieces, effective classes, generators and relations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod boundary;
pub mod derivation;
pub mod discovery;
pub mod error;
pub mod graded;
pub mod matrix;
pub mod model;
pub mod monomial;
pub mod polynomial;
pub mod scalar;

pub use boundary::{
    boundary_invariants, laurent_rewrite, BoundaryInvariant, BoundaryKind, RewriteCertificate,
};
pub use derivation::{
    apply_derivation, fixed_components, group_substitute, is_derivation_kernel, is_invariant,
    FixedComponent,
};
pub use discovery::{
    discover_generators, discover_relations, evaluate_relation, ClassStep, GeneratorDiscovery,
    GeneratorRecord, Limits, RelationDiscovery, RelationRecord, RelationStep,
};
pub use error::{Error, Result};
pub use graded::{
    derivation_kernel_basis, enumerate_piece, enumerate_piece_capped, invariant_basis,
    is_effective, GradedPiece, InvariantBasis,
};
pub use matrix::{kernel_basis, row_space_dim, ExactMatrix};
pub use model::{build_linear, build_m0n, BlowupModel, ConfigKind, ConfigSpec, PicClass, Var};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use scalar::{Field, Scalar};
