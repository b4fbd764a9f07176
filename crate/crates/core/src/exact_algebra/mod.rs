//! Exact arithmetic substrate shared by every other module.

mod galois_ring;
mod half_power;
mod matrix;
pub mod modular;
mod symbolic;

pub use galois_ring::{Elem, Embedding, GaloisRing, MAX_DEGREE};
pub use half_power::HalfPowerLaurent;
pub use matrix::{Matrix, ScaledMatrix};
pub use symbolic::{Cyclotomic, Monomial, RationalMatrix, SymPoly, XPoly};

/// Exact rationals used for Cartan data and symbolic coefficients.
pub type Rational = num_rational::Ratio<i128>;
