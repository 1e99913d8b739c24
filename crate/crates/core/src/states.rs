//! Benchmark densities and wavefunctions: Gaussians, uniform boxes and the
//! quadrature statistics of vacuum/coherent-state superpositions
//! |ψ⟩ = 𝒩(|0⟩ + ν|α/ν⟩).

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::grid::{normalize, GridSpec, GriddedDensity, WaveFunction, TAIL_FLOOR};
use crate::{Error, Result};

/// Half-width kept inside the grid around each cat-state component, in
/// quadrature units (six standard deviations of e^{−y²}).
const CAT_HALF_WIDTH: f64 = 6.0 * std::f64::consts::FRAC_1_SQRT_2;

/// Components lighter than this do not need to fit on the grid.
const NEGLIGIBLE_WEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatStateParams {
    pub nu: f64,
    pub alpha: f64,
    pub theta: f64,
}

impl CatStateParams {
    pub fn new(nu: f64, alpha: f64, theta: f64) -> Self {
        CatStateParams { nu, alpha, theta }
    }

    /// Balanced cat state, ν = 1.
    pub fn balanced(alpha: f64) -> Self {
        CatStateParams::new(1.0, alpha, 0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.nu.is_finite() && self.alpha.is_finite() && self.theta.is_finite()) {
            return Err(Error::InvalidParameter(
                "cat-state parameters must be finite".into(),
            ));
        }
        if self.nu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nu {} must be >= 0",
                self.nu
            )));
        }
        Ok(())
    }

    fn is_vacuum(&self) -> bool {
        self.nu == 0.0
    }

    /// 𝒩 = [1 + 2ν e^{−α²/2ν²} + ν²]^{−1/2}.
    pub fn normalization(&self) -> f64 {
        if self.is_vacuum() {
            return 1.0;
        }
        let overlap = (-self.alpha * self.alpha / (2.0 * self.nu * self.nu)).exp();
        (1.0 + 2.0 * self.nu * overlap + self.nu * self.nu).powf(-0.5)
    }

    /// Centre of the coherent component in the θ quadrature.
    pub fn displaced_peak(&self) -> f64 {
        if self.is_vacuum() {
            0.0
        } else {
            SQRT_2 * self.alpha * self.theta.cos() / self.nu
        }
    }

    /// Smallest interval holding both components with their tails.
    pub fn support(&self) -> (f64, f64) {
        let c = self.displaced_peak();
        let w = CAT_HALF_WIDTH;
        if self.is_vacuum() || self.nu * self.nu < NEGLIGIBLE_WEIGHT {
            (-w, w)
        } else {
            (c.min(0.0) - w, c.max(0.0) + w)
        }
    }

    /// Exponent E with |0⟩ + ν|α/ν⟩ ∝ e^{−y²/2}(1 + ν e^{E}) in the θ quadrature.
    fn exponent(&self, y: f64) -> Complex64 {
        let b = self.alpha / self.nu;
        let phase = Complex64::from_polar(1.0, self.theta);
        -(b * b / 2.0) * (1.0 + phase * phase) + SQRT_2 * b * y * phase
    }

    /// Amplitude e^{−y²/2}(1 + ν e^{E}) without prefactors. The second term
    /// is evaluated as ν e^{E − y²/2} so it never overflows.
    fn amplitude(&self, y: f64) -> Complex64 {
        let vac = (-0.5 * y * y).exp();
        if self.is_vacuum() {
            return Complex64::new(vac, 0.0);
        }
        vac + self.nu * (self.exponent(y) - 0.5 * y * y).exp()
    }
}

fn check_inside(spec: &GridSpec, axis: usize, lo: f64, hi: f64) -> Result<()> {
    let a = spec.axis(axis);
    let slack = 1e-9 * a.extent();
    if lo < a.min - slack || hi > a.max + slack {
        return Err(Error::SupportExceedsGrid(format!(
            "axis {axis}: need [{lo:.4}, {hi:.4}] inside [{}, {}]",
            a.min, a.max
        )));
    }
    Ok(())
}

fn clamp_tail(v: f64) -> f64 {
    if v < TAIL_FLOOR {
        0.0
    } else {
        v
    }
}

/// Normalized multivariate Gaussian N(mean, cov) sampled on `spec`.
pub fn gaussian_density(
    spec: &GridSpec,
    mean: &[f64],
    cov: &DMatrix<f64>,
) -> Result<GriddedDensity> {
    let dim = spec.dim();
    if mean.len() != dim || cov.nrows() != dim || cov.ncols() != dim {
        return Err(Error::InvalidParameter(
            "mean/covariance dimension mismatch".into(),
        ));
    }
    let chol = cov
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidParameter("covariance is not positive definite".into()))?;
    for i in 0..dim {
        let s = 6.0 * cov[(i, i)].sqrt();
        check_inside(spec, i, mean[i] - s, mean[i] + s)?;
    }
    let prec = chol.inverse();
    let values = (0..spec.len())
        .map(|f| {
            let x = spec.point(f);
            let mut quad = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    quad += (x[i] - mean[i]) * prec[(i, j)] * (x[j] - mean[j]);
                }
            }
            clamp_tail((-0.5 * quad).exp())
        })
        .collect();
    normalize(&GriddedDensity::from_raw(spec.clone(), values)?)
}

/// One-dimensional N(0, σ²).
pub fn gaussian_1d(spec: &GridSpec, sigma2: f64) -> Result<GriddedDensity> {
    gaussian_density(spec, &[0.0], &DMatrix::from_element(1, 1, sigma2))
}

/// Indicator of `bounds` (one interval per axis), normalized.
pub fn uniform_density(spec: &GridSpec, bounds: &[(f64, f64)]) -> Result<GriddedDensity> {
    if bounds.len() != spec.dim() {
        return Err(Error::InvalidParameter("box dimension mismatch".into()));
    }
    for (i, &(lo, hi)) in bounds.iter().enumerate() {
        if !(hi > lo) {
            return Err(Error::EmptyBox);
        }
        check_inside(spec, i, lo, hi)?;
    }
    let tol: Vec<f64> = spec.spacings().iter().map(|h| 1e-9 * h).collect();
    let values: Vec<f64> = (0..spec.len())
        .map(|f| {
            let x = spec.point(f);
            let inside = bounds
                .iter()
                .enumerate()
                .all(|(i, &(lo, hi))| x[i] >= lo - tol[i] && x[i] <= hi + tol[i]);
            if inside {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    if values.iter().all(|&v| v == 0.0) {
        return Err(Error::EmptyBox);
    }
    let raw = GriddedDensity::from_raw(spec.clone(), values)?;
    normalize(&raw).map_err(|_| Error::EmptyBox)
}

/// Quadrature PDF 𝓕(y_θ) = 𝒩²π^{−1/2} e^{−y²}|1 + ν e^{E(y)}|², normalized on the grid.
pub fn cat_quadrature_density(p: &CatStateParams, spec: &GridSpec) -> Result<GriddedDensity> {
    p.validate()?;
    if spec.dim() != 1 {
        return Err(Error::InvalidParameter(
            "cat states are one-dimensional".into(),
        ));
    }
    let (lo, hi) = p.support();
    check_inside(spec, 0, lo, hi)?;
    let n2 = p.normalization().powi(2) / PI.sqrt();
    let values = spec
        .axis(0)
        .coords()
        .iter()
        .map(|&y| clamp_tail(n2 * p.amplitude(y).norm_sqr()))
        .collect();
    normalize(&GriddedDensity::from_raw(spec.clone(), values)?)
}

/// Position-space amplitude ψ(x) = ħ^{−1/4} ψ₁(x/√ħ) of the cat state, with
/// ψ₁(y) = 𝒩π^{−1/4} e^{−y²/2}(1 + ν e^{E(y)}) at θ = 0.
pub fn cat_wavefunction(p: &CatStateParams, spec: &GridSpec, hbar: f64) -> Result<WaveFunction> {
    p.validate()?;
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter(format!("hbar {hbar} must be > 0")));
    }
    if spec.dim() != 1 {
        return Err(Error::InvalidParameter(
            "cat states are one-dimensional".into(),
        ));
    }
    let p0 = CatStateParams { theta: 0.0, ..*p };
    let (lo, hi) = p0.support();
    let s = hbar.sqrt();
    check_inside(spec, 0, lo * s, hi * s)?;
    let pref = p0.normalization() * PI.powf(-0.25) * hbar.powf(-0.25);
    let values = spec
        .axis(0)
        .coords()
        .iter()
        .map(|&x| {
            let z = pref * p0.amplitude(x / s);
            if z.norm_sqr() < TAIL_FLOOR {
                Complex64::new(0.0, 0.0)
            } else {
                z
            }
        })
        .collect();
    WaveFunction::new(spec.clone(), values, hbar)
}

/// Gaussian wavepacket with position variance σ² (|ψ|² = N(0, σ²)).
pub fn gaussian_wavefunction(spec: &GridSpec, sigma2: f64, hbar: f64) -> Result<WaveFunction> {
    let d = gaussian_1d(spec, sigma2)?;
    let values = d
        .values()
        .iter()
        .map(|v| Complex64::new(v.sqrt(), 0.0))
        .collect();
    WaveFunction::new(spec.clone(), values, hbar)
}

/// Real wavefunction √𝓕 of a density.
pub fn real_root(d: &GriddedDensity, hbar: f64) -> Result<WaveFunction> {
    let values = d
        .values()
        .iter()
        .map(|v| Complex64::new(v.sqrt(), 0.0))
        .collect();
    WaveFunction::new(d.spec().clone(), values, hbar)
}
