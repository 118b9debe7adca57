//! Exact computational algebra for lattices in solvable Lie groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, exact matrices over ℚ and ℤ, univariate polynomials
//!   and certified real-root isolation.
//! * [`multipoly`]: multivariate polynomials, Buchberger's algorithm,
//!   elimination and resultants.
//! * [`liealg`]: Lie algebras given by structure constants, together with the
//!   concrete algebras studied here.
//! * [`ceh`]: Chevalley–Eilenberg cohomology, cup products, symplectic forms
//!   and the Hard Lefschetz test.
//! * [`obstruct`]: certificate-producing proofs that certain groups admit no
//!   lattice.
//! * [`lattice`]: construction and verification of an explicit lattice.
//! * [`registry`]: named algebras used by the command line and bindings.

pub mod ceh;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod liealg;
pub mod multipoly;
pub mod obstruct;
pub mod registry;

pub use error::{Error, Result};
pub use exact::{MatrixQ, Rational, UniPoly};
pub use liealg::LieAlgebra;
