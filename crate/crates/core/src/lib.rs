//! Exact-arithmetic toolkit for inhomogeneous spin q-Whittaker polynomials.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`], [`series`], [`mpoly`] — exact scalars: big rationals, truncated power
//!   series in a grading variable `t`, and sparse multivariate (symmetric) polynomials.
//! - [`qkit`] — q-Pochhammer symbols and q-multinomial ratios with signed-index conventions.
//! - [`partitions`] — partitions, interlacing, parameter sequences and evaluation points.
//! - [`weights`] — the q-Hahn vertex weights Φ, W^a, W^b, the fused R-matrix, and
//!   Yang-Baxter checkers.
//! - [`transfer`] — rank-1 transfer matrices, row operators B/B*, the duality coefficient ψ,
//!   and the q-Gauss / exchange-relation verifiers.
//! - [`sqw`] — the polynomials F_{λ/μ}, duals F*, the G-basis, vanishing values H_λ, and the
//!   Cauchy / characterization verifiers.
//! - [`degen`] — the two degenerate families F̃ (q-Whittaker type) and F^el (elementary type).
//! - [`interp`] — the n-grid interpolation framework: exact solver, hook normalization,
//!   Pieri rule, explicit small cases, and the perfect-grid classifier.
//! - [`sample`], [`report`] — seeded random rational draws and JSON report types.

pub mod degen;
pub mod error;
pub mod interp;
pub mod linsolve;
pub mod mpoly;
pub mod partitions;
pub mod qkit;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod sqw;
pub mod suite;
pub mod transfer;
pub mod weights;

pub use error::Error;
pub use scalar::{Rat, Scalar};
