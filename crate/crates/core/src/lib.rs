//! Exact workbench for q-Schur algebras of type A.
//!
//! The convolution algebra on pairs of partial flags over finite fields is
//! built from first principles: flags are enumerated explicitly over prime
//! fields, orbits of flag pairs are classified by intersection profiles,
//! structure constants are point counts interpolated to exact polynomials in
//! q, and the standard basis is normalized so that the presented quantum
//! algebra maps onto it with the divided-power shifts on the nose. On top of
//! that sit the bar involution, canonical bases, and the companion orbit
//! calculus for representations of the doubled type-A quiver.
//!
//! Module map:
//! - [`laurent`]: integer Laurent polynomials, quantum integers/binomials, bar.
//! - [`gf`]: dense linear algebra over prime fields, canonical subspaces.
//! - [`matrix`]: profile matrices (orbit labels), margins, closure order.
//! - [`flagcount`]: flag enumeration, convolution fiber counts, interpolation.
//! - [`udot`]: the presented algebra as syntax; relations; evaluation traits.
//! - [`schur`]: the convolution algebra, d-exponents, the homomorphism psi.
//! - [`canonical`]: monomial family, bar involution, canonical bases.
//! - [`quiver`]: interval modules of the doubled quiver, orbit dimensions,
//!   resolution dimension bookkeeping, and the reorientation shift checks.
//! - [`cache`]: persistence and audit for the expensive tables.

pub mod cache;
pub mod canonical;
pub mod error;
pub mod flagcount;
pub mod gf;
pub mod laurent;
pub mod matrix;
pub mod quiver;
pub mod schur;
pub mod sweep;
pub mod udot;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matrix::{MatrixIdx, ProfileMatrix};
pub use schur::{SchurContext, SchurElem};
