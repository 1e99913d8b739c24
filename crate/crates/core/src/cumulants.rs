//! Cumulants κ_n of the information random variable, in bits^n.
//!
//! Two independent routes: finite differences of ln N_{1+kΔ} along an
//! entropy-power ladder, and direct moments of the weighted information
//! samples.

use serde::{Deserialize, Serialize};

use crate::entropy::EntropyPowerCurve;
use crate::grid::GriddedDensity;
use crate::infodist::information_values;
use crate::{Error, Result, LOG2_E};

pub const MAX_ORDER: usize = 8;

/// Orders whose finite-difference amplification 1/Δ^{n−1} exceeds this are flagged.
pub const ILL_CONDITIONED_GAIN: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CumulantSource {
    Gldf,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantVector {
    /// κ_1..κ_m.
    pub values: Vec<f64>,
    /// Ladder step; `None` for the direct route.
    pub delta: Option<f64>,
    pub dim: usize,
    pub source: CumulantSource,
    /// Orders n flagged as ill-conditioned.
    pub ill_conditioned: Vec<usize>,
}

impl CumulantVector {
    /// κ_n, 1-based.
    pub fn kappa(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// κ_n of the unit-covariance Gaussian in D dimensions:
/// (D/2)(log₂e)^n [(n−1)! + δ_{1n} ln 2π].
pub fn gaussian_reference_cumulants(n: usize, dim: usize) -> f64 {
    assert!(n >= 1, "cumulant order starts at 1");
    let delta = if n == 1 {
        (2.0 * std::f64::consts::PI).ln()
    } else {
        0.0
    };
    0.5 * dim as f64 * LOG2_E.powi(n as i32) * (factorial(n - 1) + delta)
}

/// Cumulants from central moments μ_0..μ_m (μ_1 = 0), by
/// κ_n = μ_n − Σ_{k=2}^{n−2} C(n−1, k−1) κ_k μ_{n−k}; κ₁ is the mean.
fn cumulants_from_central(mean: f64, mu: &[f64]) -> Vec<f64> {
    let m = mu.len() - 1;
    let mut kappa = vec![0.0; m + 1];
    for n in 2..=m {
        let mut k_n = mu[n];
        for k in 2..n - 1 {
            k_n -= binomial(n - 1, k - 1) * kappa[k] * mu[n - k];
        }
        kappa[n] = k_n;
    }
    kappa[1] = mean;
    kappa[1..].to_vec()
}

/// κ_1..κ_m from exact weighted sums over the information samples.
pub fn cumulants_direct(d: &GriddedDensity, m: usize) -> Result<CumulantVector> {
    check_order(m)?;
    let s = information_values(d);
    let mu = s.central_moments(m);
    Ok(CumulantVector {
        values: cumulants_from_central(s.mean(), &mu),
        delta: None,
        dim: d.dim(),
        source: CumulantSource::Direct,
        ill_conditioned: Vec::new(),
    })
}

/// Grünwald–Letnikov extraction:
/// κ_n = (nD/2) β^n Δ^{1−n} Σ_k (−1)^k C(n−1,k) ln N_{1+kΔ} + (D/2) β^n [(n−1)! + δ_{1n} ln 2π].
pub fn cumulants_from_powers(curve: &EntropyPowerCurve, m: usize) -> Result<CumulantVector> {
    check_order(m)?;
    if curve.len() < m {
        return Err(Error::InsufficientLadder {
            have: curve.len(),
            need: m,
        });
    }
    let delta = curve.delta;
    if !(delta > 0.0 && delta <= 0.05) {
        return Err(Error::InvalidParameter(format!(
            "ladder step {delta} not in (0, 0.05]"
        )));
    }
    for (i, &(k, n)) in curve.powers.iter().enumerate() {
        if k != i || !(n > 0.0) {
            return Err(Error::InvalidParameter(
                "ladder must hold positive powers for k = 0, 1, ...".into(),
            ));
        }
    }
    let ln_n: Vec<f64> = curve.values().iter().map(|n| n.ln()).collect();
    let dim = curve.dim as f64;
    let mut values = Vec::with_capacity(m);
    let mut ill_conditioned = Vec::new();
    for n in 1..=m {
        let diff: f64 = (0..n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(n - 1, k) * ln_n[k]
            })
            .sum();
        let gain = delta.powi(1 - n as i32);
        if gain > ILL_CONDITIONED_GAIN {
            ill_conditioned.push(n);
        }
        let kappa = 0.5 * n as f64 * dim * LOG2_E.powi(n as i32) * gain * diff
            + gaussian_reference_cumulants(n, curve.dim);
        values.push(kappa);
    }
    Ok(CumulantVector {
        values,
        delta: Some(delta),
        dim: curve.dim,
        source: CumulantSource::Gldf,
        ill_conditioned,
    })
}

fn check_order(m: usize) -> Result<()> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "cumulant count {m} not in 1..={MAX_ORDER}"
        )));
    }
    Ok(())
}
