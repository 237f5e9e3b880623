//! Exact separable solutions of the displacement equations of linear
//! elastodynamics in cylindrical coordinates, built from three scalar
//! potentials: two coupled compressional-type potentials and one rotational
//! potential.
//!
//! The crate constructs parametrized solution families for every radial
//! classification (oscillatory, monotone and degenerate branches, coupled
//! and decoupled), solves two boundary value problems on the solid cylinder
//! in closed form (forced harmonic vibration and forced relaxation), and
//! verifies every assembled field by substituting it back into the
//! governing equations with finite differences.
//!
//! Modules:
//! - [`specfun`]: cylinder functions of integer order and their derivatives.
//! - [`model`]: material constants, separation constants and the radial
//!   branch classification.
//! - [`potentials`]: separated factors and assembled scalar potentials.
//! - [`sov`]: standalone separation of variables for the rotational wave
//!   equation, including complex-order radial solutions.
//! - [`fields`]: displacement, stress and strain assembly.
//! - [`vibration`]: the harmonically forced cylinder.
//! - [`relaxation`]: the geometrically decaying axial-growth load.
//! - [`verify`]: finite-difference residual checks of all fields.
//! - [`sweep`]: randomized family generation across all regimes.

pub mod error;
pub mod fields;
pub mod model;
pub mod potentials;
pub mod relaxation;
pub mod sov;
pub mod specfun;
pub mod sweep;
pub mod verify;
pub mod vibration;

pub use error::{Error, Result};
pub use fields::{FamilyDiagnostics, FieldSample, SolutionFamily, StrainSample, StressSample};
pub use model::{Material, ModeParams, RadialKind};
pub use potentials::Coefficients;
