//! Exact arithmetic for the isomorphisms `ZR/I^n -> W_n(R)` between quotients
//! of the monoid algebra of a finite perfect `F_p`-algebra `R` by powers of
//! its augmentation ideal and the truncated `p`-typical Witt vectors of `R`.
//!
//! * [`perfect_algebra`]: finite fields and finite products of them.
//! * [`monoid_algebra`]: `ZR`, the augmentation, `φ` and the arithmetic
//!   derivation `δ`.
//! * [`witt_core`]: Witt coordinates on `ZR/I^n` by closed formulas.
//! * [`witt_oracle`]: the Galois-ring model of `W_n(R)`, used as ground truth.
//! * [`witt_polynomials`]: universal Witt addition and multiplication
//!   polynomials, generated from ghost components.
//! * [`text`] and [`json`]: the textual and JSON interchange formats.
//! * [`verify`]: the property suites behind the `check` command.

pub mod error;
pub mod perfect_algebra;
pub mod monoid_algebra;
pub mod witt_core;
pub mod witt_oracle;
pub mod witt_polynomials;
pub mod text;
pub mod json;
pub mod verify;

pub use error::{Error, Result};
pub use monoid_algebra::MonoidAlgebraElement;
pub use perfect_algebra::{Algebra, AlgebraDescriptor, AlgebraElement, FactorSpec};
pub use witt_core::{alpha, beta, congruent_mod_ideal_power, WittVector};
pub use witt_oracle::{canonical_map, WittOracle};
pub use witt_polynomials::{IntegerPolynomial, RationalPolynomial, SparsePolynomial, WittPolynomialSet};
