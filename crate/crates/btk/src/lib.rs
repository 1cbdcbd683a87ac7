//! Numerical toolkit for block Toeplitz operators with rational matrix symbols.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar_inner`]: finite Blaschke products and atomic singular inner functions.
//! * [`matrix_inner`]: Blaschke-Potapov products and their divisibility theory.
//! * [`symbol`]: rational matrix symbols, splitting, coprime factorizations.
//! * [`hardy_ops`]: truncated Toeplitz/Hankel matrices, commutators, model spaces.
//! * [`analysis`]: interpolation, hyponormality, pairs, completions, rank formulas.
//! * [`cli`]: JSON file formats and the command dispatcher behind the `btk` binary.
//!
//! [`poly`], [`ratmat`] and [`linalg`] hold the shared numerical plumbing.

pub mod acceptance;
pub mod analysis;
pub mod cli;
pub mod error;
pub mod hardy_ops;
pub mod linalg;
pub mod matrix_inner;
pub mod poly;
pub mod ratmat;
pub mod scalar_inner;
pub mod symbol;

pub use error::{BtkError, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;

/// Shorthand constructor for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
