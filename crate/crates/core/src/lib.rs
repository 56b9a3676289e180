//! Exact-arithmetic superpotential perturbation scheme for the quartic
//! anharmonic oscillator `V = x² + g x⁴` (units `ħ = 2m = 1`).
//!
//! The pipeline generates the coefficient polynomials `f_N(a)`
//! ([`recursion`]), solves the order-N constraint for the scale parameter
//! `a` with certified root isolation ([`rootfind`], [`croots`]), and reports
//! `E_n = 2a(n + ½)` ([`spectrum`]). An independent matrix diagonalisation
//! ([`oracle`]) supplies reference eigenvalues, and [`wavefn`] evaluates the
//! corresponding approximate wavefunctions.

pub mod croots;
pub mod decimal;
pub mod error;
pub mod oracle;
pub mod ratpoly;
pub mod recursion;
pub mod reference;
pub mod rootfind;
pub mod spectrum;
pub mod wavefn;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use ratpoly::Poly;
pub use recursion::CoefficientTable;
pub use rootfind::{RefinedRoot, RootBracket};
pub use spectrum::{energy, scan, ConvergenceScan, EnergyEstimate, OscillatorProblem, RootRule};
