//! The information random variable i(𝒙) = log₂ 1/𝓕(𝒙): weighted samples,
//! CDF, histogram estimate of its density g, varentropy and the moment
//! identity ∫𝓕^p = E[2^{(1−p) i}].

use serde::{Deserialize, Serialize};

use crate::entropy::log_integral_power;
use crate::estimation::{CheckTolerances, InequalityReport};
use crate::grid::GriddedDensity;
use crate::{Error, Result};

/// Information values (bits) of the grid points with 𝓕 > 0 and their
/// quadrature masses.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoSamples {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl InfoSamples {
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// E[i^k] for k = 0..=order, normalized by the total weight.
    pub fn raw_moments(&self, order: usize) -> Vec<f64> {
        let total = self.total_weight();
        let mut m = vec![0.0; order + 1];
        for (&y, &w) in self.values.iter().zip(&self.weights) {
            let mut p = w;
            for slot in m.iter_mut() {
                *slot += p;
                p *= y;
            }
        }
        m.iter().map(|v| v / total).collect()
    }

    /// E[(i − E i)^k] for k = 0..=order.
    pub fn central_moments(&self, order: usize) -> Vec<f64> {
        let total = self.total_weight();
        let mean = self.mean();
        let mut m = vec![0.0; order + 1];
        for (&y, &w) in self.values.iter().zip(&self.weights) {
            let mut p = w;
            for slot in m.iter_mut() {
                *slot += p;
                p *= y - mean;
            }
        }
        m.iter().map(|v| v / total).collect()
    }

    pub fn mean(&self) -> f64 {
        let total = self.total_weight();
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(y, w)| y * w)
            .sum::<f64>()
            / total
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn information_values(d: &GriddedDensity) -> InfoSamples {
    let w = d.spec().trapezoid_weights();
    let (values, weights) = d
        .values()
        .iter()
        .zip(&w)
        .filter(|(f, _)| **f > 0.0)
        .map(|(f, w)| (-f.log2(), w * f))
        .unzip();
    InfoSamples { values, weights }
}

/// ℘(y): total mass of points whose information value is ≤ y.
pub fn info_cdf(d: &GriddedDensity, y: f64) -> f64 {
    let s = information_values(d);
    s.values
        .iter()
        .zip(&s.weights)
        .filter(|(v, _)| **v <= y)
        .map(|(_, w)| w)
        .sum()
}

/// E[i²] − (E i)², in bits².
pub fn varentropy(d: &GriddedDensity) -> f64 {
    information_values(d).central_moments(2)[2]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoKind {
    Histogram,
    Series,
}

/// A binned information density: equal-width bins with their masses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoDistribution {
    pub kind: InfoKind,
    pub support: (f64, f64),
    /// (centre, mass) per bin.
    pub bins: Vec<(f64, f64)>,
    pub total_mass: f64,
}

impl InfoDistribution {
    pub fn from_masses(kind: InfoKind, lo: f64, hi: f64, masses: Vec<f64>) -> Self {
        let width = (hi - lo) / masses.len() as f64;
        let total_mass = masses.iter().sum();
        let bins = masses
            .into_iter()
            .enumerate()
            .map(|(i, m)| (lo + (i as f64 + 0.5) * width, m))
            .collect();
        InfoDistribution {
            kind,
            support: (lo, hi),
            bins,
            total_mass,
        }
    }

    pub fn width(&self) -> f64 {
        (self.support.1 - self.support.0) / self.bins.len() as f64
    }

    pub fn centers(&self) -> Vec<f64> {
        self.bins.iter().map(|b| b.0).collect()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.bins.iter().map(|b| b.1).collect()
    }

    /// Bin-averaged density, mass / width.
    pub fn densities(&self) -> Vec<f64> {
        let w = self.width();
        self.bins.iter().map(|b| b.1 / w).collect()
    }

    /// ∫|g₁ − g₂| for distributions on identical bins.
    pub fn l1_to(&self, other: &InfoDistribution) -> Result<f64> {
        let same = self.bins.len() == other.bins.len()
            && (self.support.0 - other.support.0).abs() <= 1e-12 * self.width()
            && (self.support.1 - other.support.1).abs() <= 1e-12 * self.width();
        if !same {
            return Err(Error::InvalidParameter(
                "histograms have different bins".into(),
            ));
        }
        Ok(self
            .bins
            .iter()
            .zip(&other.bins)
            .map(|(a, b)| (a.1 - b.1).abs())
            .sum())
    }

    /// Index of the heaviest bin.
    pub fn peak_bin(&self) -> usize {
        let mut best = 0;
        for (i, b) in self.bins.iter().enumerate() {
            if b.1 > self.bins[best].1 {
                best = i;
            }
        }
        best
    }
}

/// Histogram of the information values over their own range.
pub fn info_pdf_histogram(d: &GriddedDensity, n_bins: usize) -> Result<InfoDistribution> {
    info_pdf_histogram_opts(d, n_bins, false)
}

/// As [`info_pdf_histogram`]; with `allow_pointmass` a degenerate support
/// yields a single-bin point mass instead of an error.
pub fn info_pdf_histogram_opts(
    d: &GriddedDensity,
    n_bins: usize,
    allow_pointmass: bool,
) -> Result<InfoDistribution> {
    let s = information_values(d);
    if s.values.is_empty() {
        return Err(Error::AllZeroDensity);
    }
    let (lo, hi) = (s.min(), s.max());
    if hi - lo < 1e-12 {
        if allow_pointmass {
            let half = 0.5e-12;
            return Ok(InfoDistribution::from_masses(
                InfoKind::Histogram,
                lo - half,
                lo + half,
                vec![s.total_weight()],
            ));
        }
        return Err(Error::DegenerateSupport);
    }
    info_pdf_histogram_range(d, n_bins, lo, hi)
}

/// Histogram on [lo, hi] with `n_bins` equal bins.
///
/// Each point's mass is spread uniformly between the midpoints of its
/// information value and those of its positive neighbours along every axis,
/// which approximates the continuous distribution of i far better than
/// dropping each point into a single bin.
pub fn info_pdf_histogram_range(
    d: &GriddedDensity,
    n_bins: usize,
    lo: f64,
    hi: f64,
) -> Result<InfoDistribution> {
    if n_bins < 16 {
        return Err(Error::InvalidParameter(format!(
            "need at least 16 bins, got {n_bins}"
        )));
    }
    if !(hi - lo >= 1e-12) {
        return Err(Error::DegenerateSupport);
    }
    let spec = d.spec();
    let f = d.values();
    let w = spec.trapezoid_weights();
    let shape = spec.shape();
    let strides = spec.strides();
    let width = (hi - lo) / n_bins as f64;
    let info: Vec<f64> = f
        .iter()
        .map(|v| if *v > 0.0 { -v.log2() } else { f64::NAN })
        .collect();
    let mut masses = vec![0.0; n_bins];
    let bin_of = |y: f64| (((y - lo) / width).floor().max(0.0) as usize).min(n_bins - 1);

    for i in 0..f.len() {
        if !(f[i] > 0.0) {
            continue;
        }
        let mass = w[i] * f[i];
        let y = info[i];
        let (mut a, mut b) = (y, y);
        for axis in 0..shape.len() {
            let idx = (i / strides[axis]) % shape[axis];
            let mut visit = |j: usize| {
                if f[j] > 0.0 {
                    let mid = 0.5 * (y + info[j]);
                    a = a.min(mid);
                    b = b.max(mid);
                }
            };
            if idx > 0 {
                visit(i - strides[axis]);
            }
            if idx + 1 < shape[axis] {
                visit(i + strides[axis]);
            }
        }
        let (a, b) = (a.max(lo), b.min(hi));
        if b - a <= 1e-9 * width {
            if y >= lo - 1e-9 * width && y <= hi + 1e-9 * width {
                masses[bin_of(y)] += mass;
            }
            continue;
        }
        let density = mass / (b - a);
        for (k, slot) in masses
            .iter_mut()
            .enumerate()
            .take(bin_of(b) + 1)
            .skip(bin_of(a))
        {
            let left = lo + k as f64 * width;
            let overlap = b.min(left + width) - a.max(left);
            if overlap > 0.0 {
                *slot += density * overlap;
            }
        }
    }
    Ok(InfoDistribution::from_masses(
        InfoKind::Histogram,
        lo,
        hi,
        masses,
    ))
}

/// Histograms of two densities on the union of their information ranges,
/// and the L1 distance between them.
pub fn histogram_l1(
    a: &GriddedDensity,
    b: &GriddedDensity,
    n_bins: usize,
) -> Result<(InfoDistribution, InfoDistribution, f64)> {
    let (sa, sb) = (information_values(a), information_values(b));
    let lo = sa.min().min(sb.min());
    let hi = sa.max().max(sb.max());
    let ha = info_pdf_histogram_range(a, n_bins, lo, hi)?;
    let hb = info_pdf_histogram_range(b, n_bins, lo, hi)?;
    let l1 = ha.l1_to(&hb)?;
    Ok((ha, hb, l1))
}

/// ∫𝓕^p against the exact weighted sum Σ w 2^{(1−p) i}.
pub fn moment_identity_check(
    d: &GriddedDensity,
    p: f64,
    tol: CheckTolerances,
) -> Result<InequalityReport> {
    let lhs = log_integral_power(d, p)?.exp();
    let s = information_values(d);
    let rhs: f64 = s
        .values
        .iter()
        .zip(&s.weights)
        .map(|(y, w)| w * ((1.0 - p) * y).exp2())
        .sum();
    Ok(InequalityReport::identity(
        format!("moment_identity(p={p})"),
        lhs,
        rhs,
        tol,
    ))
}
