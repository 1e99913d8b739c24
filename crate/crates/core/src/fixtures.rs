//! The standard test densities and wavefunctions, on 2048-point grids.

use crate::grid::{normalize, GridSpec, GriddedDensity, WaveFunction};
use crate::states::{self, CatStateParams};
use crate::Result;

pub const GRID_MIN: f64 = -12.0;
pub const GRID_MAX: f64 = 12.0;
pub const GRID_COUNT: usize = 2048;

/// Margin around the cat-state peaks.
pub const CAT_MARGIN: f64 = 9.0;

pub fn default_line() -> GridSpec {
    GridSpec::line(GRID_MIN, GRID_MAX, GRID_COUNT).expect("static grid")
}

/// Grid covering both peaks of a cat state with [`CAT_MARGIN`] on each side.
pub fn cat_grid(p: &CatStateParams) -> GridSpec {
    let c = p.displaced_peak();
    GridSpec::line(c.min(0.0) - CAT_MARGIN, c.max(0.0) + CAT_MARGIN, GRID_COUNT)
        .expect("finite peak")
}

pub fn bcs_params() -> CatStateParams {
    CatStateParams::new(1.0, 5.0, 0.0)
}

pub fn ucs_params() -> CatStateParams {
    CatStateParams::new(0.97, 10.0, 0.0)
}

pub fn gaussian(sigma2: f64) -> Result<GriddedDensity> {
    states::gaussian_1d(&default_line(), sigma2)
}

/// Unit box filling its whole grid, so every sample equals 1.
pub fn uniform_exact() -> Result<GriddedDensity> {
    states::uniform_density(&GridSpec::line(0.0, 1.0, GRID_COUNT)?, &[(0.0, 1.0)])
}

/// Unit box centred on the default grid.
pub fn uniform_boxed() -> Result<GriddedDensity> {
    states::uniform_density(&default_line(), &[(-0.5, 0.5)])
}

pub fn bcs() -> Result<GriddedDensity> {
    let p = bcs_params();
    states::cat_quadrature_density(&p, &cat_grid(&p))
}

pub fn ucs() -> Result<GriddedDensity> {
    let p = ucs_params();
    states::cat_quadrature_density(&p, &cat_grid(&p))
}

/// 0.6·N(−1.5, 0.8) + 0.4·N(2, 1.2).
pub fn mixture() -> Result<GriddedDensity> {
    let spec = default_line();
    let comp = |x: f64, m: f64, v: f64| {
        (-(x - m).powi(2) / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).sqrt()
    };
    let values = spec
        .axis(0)
        .coords()
        .iter()
        .map(|&x| 0.6 * comp(x, -1.5, 0.8) + 0.4 * comp(x, 2.0, 1.2))
        .collect();
    normalize(&GriddedDensity::from_raw(spec, values)?)
}

pub fn gaussian_packet(sigma2: f64, hbar: f64) -> Result<WaveFunction> {
    states::gaussian_wavefunction(&default_line(), sigma2, hbar)
}

pub fn bcs_wave(hbar: f64) -> Result<WaveFunction> {
    let p = bcs_params();
    states::cat_wavefunction(&p, &cat_grid(&p).scaled(hbar.sqrt())?, hbar)
}

pub fn ucs_wave(hbar: f64) -> Result<WaveFunction> {
    let p = ucs_params();
    states::cat_wavefunction(&p, &cat_grid(&p).scaled(hbar.sqrt())?, hbar)
}

pub fn mixture_wave(hbar: f64) -> Result<WaveFunction> {
    states::real_root(&mixture()?, hbar)
}

/// The full density fixture set, by name.
pub fn density_set() -> Result<Vec<(&'static str, GriddedDensity)>> {
    Ok(vec![
        ("gaussian_0.5", gaussian(0.5)?),
        ("gaussian_1", gaussian(1.0)?),
        ("gaussian_2", gaussian(2.0)?),
        ("uniform", uniform_boxed()?),
        ("bcs", bcs()?),
        ("ucs", ucs()?),
        ("mixture", mixture()?),
    ])
}

/// Wavefunction fixtures at the given ħ.
pub fn wave_set(hbar: f64) -> Result<Vec<(&'static str, WaveFunction)>> {
    Ok(vec![
        ("gaussian_0.5", gaussian_packet(0.5, hbar)?),
        ("gaussian_1", gaussian_packet(1.0, hbar)?),
        ("gaussian_2", gaussian_packet(2.0, hbar)?),
        ("bcs", bcs_wave(hbar)?),
        ("ucs", ucs_wave(hbar)?),
        ("mixture", mixture_wave(hbar)?),
    ])
}
