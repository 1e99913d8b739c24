//! Rényi / Tsallis / Shannon entropy powers and escort Fisher information for
//! densities sampled on uniform grids, numerical checks of the associated
//! estimation-theory inequalities, and reconstruction of the information
//! distribution of a density from a ladder of entropy powers.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`grid`] | grids, densities, wavefunctions, quadrature, gradients, convolution, Fourier conjugation |
//! | [`states`] | Gaussian, uniform and cat-state generators; [`fixtures`] holds the standard test set |
//! | [`entropy`] | Shannon, Rényi and Tsallis entropies and entropy powers |
//! | [`estimation`] | escort distributions, order-q Fisher matrices, inequality checks |
//! | [`infodist`] | information random variable, its CDF, histograms, moment identity |
//! | [`cumulants`] | cumulants from entropy-power ladders and by direct integration |
//! | [`reconstruct`] | shifted-gamma reference, Gram–Charlier A and Edgeworth series, the scan |
//! | [`io`] | `.grid.json` files, JSON reports and CSV writers |
//! | [`cli`] | the `repscan` command line |

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cumulants;
pub mod entropy;
mod error;
pub mod estimation;
pub mod fixtures;
pub mod grid;
pub mod infodist;
pub mod io;
pub mod reconstruct;
pub mod states;

pub use error::{Error, Result};
pub use grid::{Axis, GridSpec, GriddedDensity, VectorField, WaveFunction};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;

/// log₂ e, the nats-to-bits factor.
pub const LOG2_E: f64 = std::f64::consts::LOG2_E;
