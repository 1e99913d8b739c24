//! Series reconstruction of the information density g from its cumulants,
//! around a shifted-gamma reference
//! 𝓖(x|a,α,β) = e^{−(x−a)/β}(x−a)^{α−1}/(β^α Γ(α)).
//!
//! Both series have the form g̃ = Σ_j e_j (−1)^j 𝓖^{(j)}. High derivatives
//! of 𝓖 are not integrable at x = a, so g̃ is handled as a distribution
//! through its CDF P̃(x) = P_𝓖(x) + Σ_{j≥1} e_j (−1)^j 𝓖^{(j−1)}(x), and
//! binned values are CDF differences.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::cumulants::{cumulants_from_powers, CumulantVector};
use crate::entropy::{entropy_power_curve, Convention, EntropyPowerCurve};
use crate::grid::GriddedDensity;
use crate::infodist::{info_pdf_histogram, InfoDistribution, InfoKind};
use crate::{Error, Result, LOG2_E};

/// Allowed |κ₁ − γ₁| before a series is refused.
pub const MEAN_MATCH_TOL: f64 = 1e-2;

/// Evaluation window length, in units of β.
pub const WINDOW_SCALES: f64 = 12.0;
pub const WINDOW_CELLS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaReference {
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GammaReference {
    pub fn new(a: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bad gamma reference ({a}, {alpha}, {beta})"
            )));
        }
        Ok(GammaReference { a, alpha, beta })
    }

    /// Information density of N(0, σ²): a = log₂(2πσ²)/2, α = 1/2, β = log₂e.
    pub fn for_variance(sigma2: f64) -> Result<Self> {
        Self::for_variance_dim(sigma2, 1)
    }

    /// D-dimensional version: a = (D/2) log₂(2πσ²), α = D/2.
    pub fn for_variance_dim(sigma2: f64, dim: usize) -> Result<Self> {
        if !(sigma2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "variance {sigma2} must be > 0"
            )));
        }
        let half = 0.5 * dim as f64;
        Self::new(half * (2.0 * PI * sigma2).log2(), half, LOG2_E)
    }

    fn u(&self, x: f64) -> f64 {
        (x - self.a) / self.beta
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= self.a {
            return 0.0;
        }
        let u = self.u(x);
        ((self.alpha - 1.0) * u.ln() - u - ln_gamma(self.alpha)).exp() / self.beta
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.a {
            0.0
        } else {
            gamma_lr(self.alpha, self.u(x))
        }
    }

    /// d^k𝓖/dx^k = k! β^{−k} u^{−k} L_k^{(α−1−k)}(u) 𝓖 with u = (x−a)/β.
    pub fn derivative(&self, k: usize, x: f64) -> f64 {
        if x <= self.a {
            return 0.0;
        }
        if k == 0 {
            return self.pdf(x);
        }
        let u = self.u(x);
        let kf = k as f64;
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        fact * (self.beta * u).powi(-(k as i32))
            * laguerre(k, self.alpha - 1.0 - kf, u)
            * self.pdf(x)
    }

    /// γ₁ = αβ + a, γ_k = Γ(k) α β^k.
    pub fn cumulant(&self, k: usize) -> f64 {
        gamma_cumulants(self, k)
    }
}

pub fn gamma_reference_for(sigma2: f64) -> Result<GammaReference> {
    GammaReference::for_variance(sigma2)
}

pub fn gamma_cumulants(r: &GammaReference, k: usize) -> f64 {
    assert!(k >= 1, "cumulant order starts at 1");
    if k == 1 {
        r.alpha * r.beta + r.a
    } else {
        ln_gamma(k as f64).exp() * r.alpha * r.beta.powi(k as i32)
    }
}

/// Associated Laguerre polynomial L_k^{(δ)}(x) by the three-term recurrence.
pub fn laguerre(k: usize, delta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + delta - x;
    for n in 2..=k {
        let nf = n as f64;
        let next = ((2.0 * nf - 1.0 + delta - x) * cur - (nf - 1.0 + delta) * prev) / nf;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesMethod {
    GramCharlierA,
    Edgeworth,
}

impl std::str::FromStr for SeriesMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gram_charlier_a" | "gca" | "gram-charlier" => Ok(SeriesMethod::GramCharlierA),
            "edgeworth" => Ok(SeriesMethod::Edgeworth),
            other => Err(Error::InvalidParameter(format!(
                "unknown series method {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesReconstruction {
    pub reference: GammaReference,
    pub kappa: CumulantVector,
    pub method: SeriesMethod,
    pub order: usize,
    /// e_j, the weight of (−1)^j 𝓖^{(j)}; e_0 = 1.
    pub coefficients: Vec<f64>,
}

impl SeriesReconstruction {
    /// P̃(x), zero for x ≤ a.
    pub fn cdf(&self, x: f64) -> f64 {
        let r = &self.reference;
        if x <= r.a {
            return 0.0;
        }
        let mut p = r.cdf(x);
        for (j, &e) in self.coefficients.iter().enumerate().skip(1) {
            if e != 0.0 {
                p += e * sign(j) * r.derivative(j - 1, x);
            }
        }
        p
    }

    /// Pointwise g̃(x) for x > a.
    pub fn density(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0.0)
            .map(|(j, e)| e * sign(j) * self.reference.derivative(j, x))
            .sum()
    }

    /// Evaluation window (a, a + 12β).
    pub fn window(&self) -> (f64, f64) {
        let a = self.reference.a;
        (a, a + WINDOW_SCALES * self.reference.beta)
    }

    /// Cell averages of g̃ over `cells` equal cells of the window.
    pub fn evaluate(&self, cells: usize) -> Vec<(f64, f64)> {
        let (lo, hi) = self.window();
        let w = (hi - lo) / cells as f64;
        let edges: Vec<f64> = (0..=cells).map(|i| self.cdf(lo + i as f64 * w)).collect();
        (0..cells)
            .map(|i| (lo + (i as f64 + 0.5) * w, (edges[i + 1] - edges[i]) / w))
            .collect()
    }

    /// ∫ g̃ over the evaluation window.
    pub fn window_mass(&self) -> f64 {
        let (lo, hi) = self.window();
        self.cdf(hi) - self.cdf(lo)
    }

    /// Masses of g̃ on the bins of `truth`.
    pub fn binned_like(&self, truth: &InfoDistribution) -> InfoDistribution {
        let (lo, hi) = truth.support;
        let n = truth.bins.len();
        let w = (hi - lo) / n as f64;
        // the outer bins take the tails, so P̃ is never evaluated at the truth minimum
        let mut edges: Vec<f64> = (0..=n).map(|i| self.cdf(lo + i as f64 * w)).collect();
        edges[0] = 0.0;
        edges[n] = 1.0;
        let masses = edges.windows(2).map(|e| e[1] - e[0]).collect();
        InfoDistribution::from_masses(InfoKind::Series, lo, hi, masses)
    }
}

fn sign(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_mean(kappa: &CumulantVector, r: &GammaReference) -> Result<()> {
    let gap = (kappa.kappa(1) - r.cumulant(1)).abs();
    if gap > MEAN_MATCH_TOL {
        return Err(Error::ReferenceMismatch(gap));
    }
    Ok(())
}

/// a_k = (κ_k − γ_k)/k! for k = 0..=max (zero where κ_k is unavailable or k < 2).
fn scaled_differences(kappa: &CumulantVector, r: &GammaReference, max: usize) -> Vec<f64> {
    (0..=max)
        .map(|k| {
            if k < 2 || k > kappa.len() {
                0.0
            } else {
                let fact: f64 = (1..=k).map(|i| i as f64).product();
                (kappa.kappa(k) - r.cumulant(k)) / fact
            }
        })
        .collect()
}

fn poly_mul(p: &[f64], q: &[f64], max_deg: usize) -> Vec<f64> {
    let mut out = vec![0.0; (p.len() + q.len() - 1).min(max_deg + 1)];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            if i + j <= max_deg {
                out[i + j] += a * b;
            }
        }
    }
    out
}

/// g̃ = exp[Σ_k (κ_k−γ_k)(−1)^k/k! d^k/dx^k] 𝓖, expanded up to derivative order `order`.
pub fn gram_charlier_a(
    kappa: &CumulantVector,
    r: &GammaReference,
    order: usize,
) -> Result<SeriesReconstruction> {
    check_mean(kappa, r)?;
    if order < 2 || order > kappa.len() {
        return Err(Error::InvalidParameter(format!(
            "order {order} must lie in 2..={}",
            kappa.len()
        )));
    }
    let a = scaled_differences(kappa, r, order);
    // e = exp(A) as a power series: j e_j = Σ_k k a_k e_{j−k}.
    let mut e = vec![0.0; order + 1];
    e[0] = 1.0;
    for j in 1..=order {
        e[j] = (1..=j).map(|k| k as f64 * a[k] * e[j - k]).sum::<f64>() / j as f64;
    }
    Ok(SeriesReconstruction {
        reference: *r,
        kappa: kappa.clone(),
        method: SeriesMethod::GramCharlierA,
        order,
        coefficients: e,
    })
}

/// Edgeworth ordering: with λ = n^{−1/2}, the k-th correction carries
/// λ^{k−2}. The exponential of the k ≥ 3 terms is kept to λ^{order_n_half},
/// the variance correction enters as the factor 1 + a₂t², and λ = 1 at the end.
pub fn edgeworth(
    kappa: &CumulantVector,
    r: &GammaReference,
    order_n_half: usize,
) -> Result<SeriesReconstruction> {
    check_mean(kappa, r)?;
    if order_n_half > 3 {
        return Err(Error::InvalidParameter(format!(
            "Edgeworth order {order_n_half} > 3"
        )));
    }
    let top = order_n_half + 2;
    let a = scaled_differences(kappa, r, top);
    let max_deg = 3 * order_n_half + 2;

    // b[s] = coefficient polynomial (in t) of λ^s in B = Σ_{k≥3} a_k λ^{k−2} t^k.
    let mut b = vec![vec![0.0; max_deg + 1]; order_n_half + 1];
    for k in 3..=top {
        b[k - 2][k] = a[k];
    }
    // exp(B) truncated at λ^{order_n_half}: Σ_s B^s/s!.
    let mut total = vec![vec![0.0; max_deg + 1]; order_n_half + 1];
    total[0][0] = 1.0;
    let mut power = total.clone();
    for s in 1..=order_n_half {
        let mut next = vec![vec![0.0; max_deg + 1]; order_n_half + 1];
        for (i, pi) in power.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if i + j <= order_n_half {
                    let prod = poly_mul(pi, bj, max_deg);
                    for (d, v) in prod.into_iter().enumerate() {
                        next[i + j][d] += v;
                    }
                }
            }
        }
        power = next;
        let fact: f64 = (1..=s).map(|i| i as f64).product();
        for (tl, pl) in total.iter_mut().zip(&power) {
            for (t, p) in tl.iter_mut().zip(pl) {
                *t += p / fact;
            }
        }
    }
    let mut flat = vec![0.0; max_deg + 1];
    for level in &total {
        for (f, v) in flat.iter_mut().zip(level) {
            *f += v;
        }
    }
    let mut variance = vec![0.0; 3];
    variance[0] = 1.0;
    variance[2] = a[2];
    let coefficients = poly_mul(&variance, &flat, max_deg + 2);
    Ok(SeriesReconstruction {
        reference: *r,
        kappa: kappa.clone(),
        method: SeriesMethod::Edgeworth,
        order: order_n_half,
        coefficients,
    })
}

/// Everything produced by one information scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub curve: EntropyPowerCurve,
    pub series: SeriesReconstruction,
    /// Ground-truth histogram of the information values.
    pub truth: InfoDistribution,
    /// Series masses on the truth bins.
    pub series_binned: InfoDistribution,
    /// Bare reference masses on the truth bins.
    pub reference_binned: InfoDistribution,
    pub l1: f64,
    pub l1_reference_only: f64,
}

pub const SCAN_BINS: usize = 256;

/// Entropy-power ladder → GLDF cumulants → reference with σ² = N₁ → series,
/// compared with the histogram of the information values.
pub fn scan(d: &GriddedDensity, delta: f64, m: usize, method: SeriesMethod) -> Result<ScanResult> {
    scan_with_bins(d, delta, m, method, SCAN_BINS)
}

pub fn scan_with_bins(
    d: &GriddedDensity,
    delta: f64,
    m: usize,
    method: SeriesMethod,
    bins: usize,
) -> Result<ScanResult> {
    let curve = entropy_power_curve(d, delta, m, Convention::NatsExp)?;
    let kappa = cumulants_from_powers(&curve, m)?;
    let reference = GammaReference::for_variance_dim(curve.powers[0].1, d.dim())?;
    let series = match method {
        SeriesMethod::GramCharlierA => gram_charlier_a(&kappa, &reference, m)?,
        SeriesMethod::Edgeworth => edgeworth(&kappa, &reference, m.saturating_sub(2).min(3))?,
    };
    let truth = info_pdf_histogram(d, bins)?;
    let series_binned = series.binned_like(&truth);
    let bare = SeriesReconstruction {
        coefficients: vec![1.0],
        ..series.clone()
    };
    let reference_binned = bare.binned_like(&truth);
    let l1 = series_binned.l1_to(&truth)?;
    let l1_reference_only = reference_binned.l1_to(&truth)?;
    Ok(ScanResult {
        curve,
        series,
        truth,
        series_binned,
        reference_binned,
        l1,
        l1_reference_only,
    })
}
