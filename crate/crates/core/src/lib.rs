//! Computational workbench for finite-dimensional epsilon-hermitian
//! sesquilinear spaces over finite fields with involution, together with
//! their endomorphism *-rings and subspace/projection lattices.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: finite fields `GF(p^k)` carrying an involution;
//! - [`mat`]: dense matrices over such fields (RREF, kernels, solving);
//! - [`subspace`]: row-space subspaces with canonical bases;
//! - [`space`]: Gram-matrix sesquilinear spaces, classification, and the
//!   orthogonality calculus (radicals, summands, subquotients);
//! - [`lattice`]: finite lattices with involution and their law checks
//!   (modular, Arguesian, Galois, polarity, ortho);
//! - [`congruence`]: congruence lattices, quotients, products, and
//!   lattice homomorphism tools;
//! - [`ring`]: matrix *-rings and their regularity calculus
//!   (quasi-inverses, idempotent and projection generators);
//! - [`hom`]: ring homomorphisms with involution and quasi-inverse lifting;
//! - [`reconstruct`]: rebuilding a space from its endomorphism *-ring;
//! - [`bridge`]: the lattice representations of spaces and rings, and the
//!   isomorphism between them;
//! - [`geometry`]: orthogeometries (point sets with collinearity and
//!   perpendicularity) and their interplay with lattices;
//! - [`construct`]: field embeddings, extension of spaces along them, and
//!   joint extensions of pairs of spaces;
//! - [`verify`]: the bundled verification suite over a deterministic grid
//!   of example spaces;
//! - [`json`]: wire formats and DOT export.

pub mod bridge;
pub mod congruence;
pub mod construct;
pub mod error;
pub mod field;
pub mod geometry;
pub mod hom;
pub mod json;
pub mod lattice;
pub mod mat;
pub mod reconstruct;
pub mod ring;
pub mod space;
pub mod subspace;
pub mod verify;

pub use bridge::{
    lattice_of_ring, lattice_of_space, lattice_of_space_capped, lrep_check, LrepReport,
    RingLattice, SpaceLattice,
};
pub use congruence::{Congruence, CongruenceReport, HomReport, LatticeHom};
pub use error::{Error, Result};
pub use construct::{
    field_embedding, joint_extension, lift_ring_embedding, tensorial_embed, JointExtension,
    LiftedEmbedding, TensorialEmbedding,
};
pub use field::{Fel, FieldEmbedding, Involution, InvolutiveField};
pub use geometry::{
    arg2_roundtrip, geometry_of_lattice, geometry_of_space, lattice_of_geometry,
    polarity_subalgebra_search, GeometryLattice, GeometryReport, Orthogeometry,
    PolaritySearchReport,
};
pub use hom::{lift_quasi_inverse, HomMap, RingHom, RingHomReport};
pub use json::{lattice_dot, ring_hom_from_spec, ring_hom_to_spec, RingHomKind, RingHomSpec};
pub use lattice::{CheckMethod, GaloisLattice, Law, LawCheckConfig, LawReport};
pub use mat::Mat;
pub use reconstruct::{find_rank1_idempotent, reconstruct_space, Reconstruction};
pub use ring::{RElem, RegularityReport, StarRing};
pub use space::{GramSpace, RadicalReport, SpaceClass};
pub use subspace::Subspace;
pub use verify::{
    default_grid, orthosymmetric_spaces, orthosymmetric_spaces_capped, run_suite, sample_spaces,
    CheckRecord, CheckStatus, GridSpace, SuiteConfig, VerificationReport, GRAM_SCAN_CAP,
    SUITE_SEED,
};
