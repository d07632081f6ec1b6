//! Tet-volume of sphere triangulations.
//!
//! Geometry, potentials and the simplex engine are generic over [`scalar::Scalar`],
//! implemented for `f32`, `f64` and [`num_rational::BigRational`]. The aliases
//! below name the instantiations the rest of the crate and the CLI use.

pub mod complex;
pub mod flip;
pub mod lp;
pub mod opt;
pub mod phyllo;
pub mod potential;
pub mod scalar;

pub use num_rational::BigRational;

/// Exact rational, used for every certified value.
pub type Rational = BigRational;

/// Tetration with integer coefficients.
pub type Tetration = complex::Chain3<i64>;
/// 3-chain with rational coefficients, as produced by an LP relaxation.
pub type FractionalChain = complex::Chain3<Rational>;

pub type ExactVolumePotential = potential::VolumePotential<Rational>;
pub type FloatVolumePotential = potential::VolumePotential<f64>;
pub type ExactGapPotential = potential::GapPotential<Rational>;
pub type FloatGapPotential = potential::GapPotential<f64>;
pub type ExactCylinderPotential = potential::CylinderPotential<Rational>;
