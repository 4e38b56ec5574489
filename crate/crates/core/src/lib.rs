//! Exact construction and verification of a family of groups acting simply
//! transitively on products of two (q+1)-regular trees, built from a
//! quaternion algebra over the rational function field `F_q(t)`.
//!
//! The crate provides:
//!
//! * exact arithmetic in `F_q`, its quadratic extension, `F_q(t)` and a
//!   quaternion algebra over it ([`gf`], [`funcfield`], [`quaternion`]);
//! * the conic-indexed generator sets with their relation solvers and the
//!   VH-structure axioms ([`vh_core`]);
//! * one-vertex square complexes, links and their serialization
//!   ([`square_complex`]), and the census of all such complexes by two
//!   independent counting methods ([`mass_formula`]);
//! * finite presentations, abelianization and uniform quotients
//!   ([`presentation`]), the solved word problem with sphere counts
//!   ([`normal_form`]), local permutation groups and the classification of
//!   the family by parameter ([`structure`]);
//! * numeric surface invariants of the quotient ([`invariants`]) and an
//!   aggregated verification battery ([`checks`]).

pub mod error;
pub mod funcfield;
pub mod gf;
pub mod invariants;
pub mod mass_formula;
pub mod normal_form;
pub mod presentation;
pub mod quaternion;
pub mod square_complex;
pub mod structure;
pub mod vh_core;

pub mod checks;

pub use error::{Error, Result};
