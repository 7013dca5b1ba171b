//! Symbolic derivation of adjunctibility and dualizability data from finite
//! presentations of higher-category fragments.
//!
//! The crate is organized around a globular term language ([`term`]), a
//! directed normalization engine ([`normalize`]), adjunction bookkeeping and
//! obligation trees ([`adjunction`]), the oplax arrow category ([`arrow`]),
//! handle bookkeeping ([`handles`]), the functor-induced bimodule rewrite
//! theory ([`casebook`]), and a text format for presentations ([`dsl`]).
//!
//! The companion guide in `book/` walks through the concepts with runnable
//! examples; its code blocks compile as doctests of this crate.

pub mod adjunction;
pub mod casebook;
pub mod functor;
pub mod normalize;
pub mod presentation;
pub mod term;

pub use adjunction::{
    adjunctibility_tree, dualizable_object, mate_phi, mate_phi_inv, mate_psi, mate_psi_inv,
    nc_dualizable_object, try_adjoint, validate_adjunction, AdjointResult, DerivationTree, Node,
    NodeKind, Requirement, Status,
};
pub use normalize::{normalize, normalize_structural, Equation, Fuel, RewriteRules, SnakePair};
pub use presentation::{AdjunctionDecl, Presentation, Query, QueryKind, Side, TermEquation};
pub use term::{
    boundary, boundary_at, dim, struct_eq, structurally_equal, typecheck, End, GenDecl, Signature,
    Term, TermError,
};
