//! Exact arithmetic for the birational maps `J = J₂ ∘ J₁`, `Φ`, `Φ⁻¹`
//! and `Ψ` on square matrices over noncommutative rings.
//!
//! The algebra is generic over [`ring::Ring`]. [`ring::RingElem`] picks the
//! ring at run time (fractions, residues mod p, block matrices);
//! [`num_rational::BigRational`] is the plain commutative case.

pub mod birational;
pub mod domain;
pub mod error;
pub mod harness;
pub mod json;
pub mod matrix;
pub mod ring;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Matrices over a ring chosen at run time.
pub type DynMatrix = matrix::Matrix<ring::RingElem>;
/// Hatted parameters over a ring chosen at run time.
pub type DynHat = birational::HatParams<ring::RingElem>;
/// Matrices over the rationals.
pub type QMatrix = matrix::Matrix<BigRational>;
/// Hatted parameters over the rationals.
pub type QHat = birational::HatParams<BigRational>;
