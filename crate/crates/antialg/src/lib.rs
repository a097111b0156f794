//! # antialg
//!
//! Exact computer algebra for Lie antialgebras over ℚ.
//!
//! A Lie antialgebra is a ℤ₂-graded commutative algebra whose even part is
//! associative and acts on the odd part with weight ½, subject to a Leibniz
//! rule and a Jacobi-type identity on odd triples. This crate builds the
//! standard examples (the simple algebra asl(2), the Heisenberg family
//! ah₁(κ), the conformal antialgebra and the Neveu-Schwarz superalgebra it is
//! paired with), verifies the axioms exactly, and computes the structures
//! attached to these objects:
//!
//! - derivation superalgebras and the conformal symmetry action,
//! - the associator picture: antialgebra axioms as the partial
//!   skew-symmetrization of an associativity equation for a split bilinear map,
//! - the superization functor sending an antialgebra to a Lie superalgebra on
//!   the symmetric square of its odd part,
//! - matrix and polynomial-superspace representations, the ghost Casimir
//!   identity and the finite-dimensional triviality certificate,
//! - the odd bivector on ℝ^{2|1} whose degree-one functions reproduce the
//!   conformal antialgebra, with invariance checks,
//! - the full cochain complex, coboundary operators, cohomology dimensions,
//!   module and algebra extensions, and the dual one-cocycle on the conformal
//!   antialgebra.
//!
//! Every computation is exact: scalars are arbitrary-precision rationals and
//! infinite families are handled through total index rules, never truncated
//! tables. Where the defining relations leave a sign or scalar convention
//! open, a calibration routine selects the unique convention that reproduces
//! the defining relations of the catalog algebras, and the choice is recorded
//! in a [`conventions::ConventionLedger`].
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `antialg` binary exposes the same checks as subcommands.

pub mod algebra;
pub mod associator;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod conventions;
pub mod derivations;
pub mod error;
pub mod geometry;
pub mod graded;
pub mod linalg;
pub mod osp;
pub mod rational;
pub mod superization;
pub mod superspace;
pub mod report;
pub mod representations;

pub use algebra::{AlgebraKind, AlgebraTable, FamilyRule, Window};
pub use error::{AlgError, Result};
pub use graded::{BasisLabel, GradedVector, HalfInt, Parity};
pub use linalg::{quotient, QuotientSpace, RatMatrix};
pub use rational::{int, rat, Rat};
pub use report::{Report, Violation};
