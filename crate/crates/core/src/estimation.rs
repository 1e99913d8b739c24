//! Escort distributions, order-q score vectors and Fisher matrices, and
//! numerical checks of the entropy/Fisher inequalities.

use std::f64::consts::{E, PI};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{log_integral_power, renyi_entropy, renyi_entropy_power, Base, Convention};
use crate::grid::{
    convolve_densities, convolve_noise, fourier_conjugate, gradient, normalize, GriddedDensity,
    NoiseShape, VectorField, WaveFunction, TAIL_FLOOR,
};
use crate::{Error, Result};

/// ρ_q = 𝓕^q / ∫𝓕^q.
pub fn escort(d: &GriddedDensity, q: f64) -> Result<GriddedDensity> {
    log_integral_power(d, q)?;
    if q == 1.0 {
        return Ok(d.clone());
    }
    let fmax = d.max_value();
    let values = d
        .values()
        .iter()
        .map(|&v| if v > 0.0 { (v / fmax).powf(q) } else { 0.0 })
        .collect();
    normalize(&GriddedDensity::from_raw(d.spec().clone(), values)?)
}

/// 𝑽_q = q ∇𝓕/𝓕, set to zero where 𝓕 < 10⁻³⁰⁰ max 𝓕.
pub fn score_vector(d: &GriddedDensity, q: f64) -> Result<VectorField> {
    let grad = gradient(d)?;
    let floor = TAIL_FLOOR * d.max_value();
    let components = grad
        .components
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(d.values())
                .map(|(g, &f)| {
                    if f < floor || f == 0.0 {
                        0.0
                    } else {
                        q * g / f
                    }
                })
                .collect()
        })
        .collect();
    Ok(VectorField {
        spec: d.spec().clone(),
        components,
    })
}

/// 𝕁_q, the covariance of 𝑽_q under the escort ρ_q.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherMatrix {
    pub order: f64,
    pub entries: DMatrix<f64>,
    pub trace: f64,
}

impl FisherMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn det(&self) -> f64 {
        self.entries.determinant()
    }

    /// det(𝕁_q)^{1/D}.
    pub fn det_root(&self) -> f64 {
        self.det().max(0.0).powf(1.0 / self.dim() as f64)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn fisher_matrix(d: &GriddedDensity, q: f64) -> Result<FisherMatrix> {
    let rho = escort(d, q)?;
    let v = score_vector(d, q)?;
    let dim = d.dim();
    let w: Vec<f64> = d
        .spec()
        .trapezoid_weights()
        .iter()
        .zip(rho.values())
        .map(|(w, r)| w * r)
        .collect();
    let mean: Vec<f64> = (0..dim)
        .map(|i| v.components[i].iter().zip(&w).map(|(x, w)| x * w).sum())
        .collect();
    let mut entries = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let m: f64 = (0..w.len())
                .map(|k| w[k] * v.components[i][k] * v.components[j][k])
                .sum();
            let c = m - mean[i] * mean[j];
            entries[(i, j)] = c;
            entries[(j, i)] = c;
        }
    }
    let trace = entries.trace();
    Ok(FisherMatrix {
        order: q,
        entries,
        trace,
    })
}

/// Tolerances shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckTolerances {
    pub check_tol: f64,
    pub saturation_tol: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        CheckTolerances {
            check_tol: 1e-6,
            saturation_tol: 1e-3,
        }
    }
}

/// Outcome of one check. For inequalities lhs ≥ rhs the slack is
/// lhs/rhs − 1; for identities it is minus the relative deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub slack: f64,
    pub saturated: bool,
}

impl InequalityReport {
    pub fn inequality(name: impl Into<String>, lhs: f64, rhs: f64, tol: CheckTolerances) -> Self {
        Self::with_slack(name, lhs, rhs, lhs / rhs - 1.0, tol)
    }

    pub fn identity(name: impl Into<String>, lhs: f64, rhs: f64, tol: CheckTolerances) -> Self {
        let scale = lhs.abs().max(rhs.abs());
        let slack = if scale < f64::MIN_POSITIVE {
            0.0
        } else {
            -(lhs - rhs).abs() / scale
        };
        Self::with_slack(name, lhs, rhs, slack, tol)
    }

    fn with_slack(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        slack: f64,
        tol: CheckTolerances,
    ) -> Self {
        InequalityReport {
            name: name.into(),
            lhs,
            rhs,
            satisfied: slack >= -tol.check_tol,
            slack,
            saturated: slack.abs() <= tol.saturation_tol,
        }
    }
}

/// Settings for the De Bruijn derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct DeBruijnOptions {
    /// Noise strengths, ascending. `None` picks {h, 2h, 4h} with
    /// h = 10⁻³ σ²(X)/λ_max(Σ).
    pub eps_ladder: Option<Vec<f64>>,
    pub noise: NoiseShape,
    pub tol: CheckTolerances,
}

impl Default for DeBruijnOptions {
    fn default() -> Self {
        DeBruijnOptions {
            eps_ladder: None,
            noise: NoiseShape::Gaussian,
            tol: CheckTolerances {
                check_tol: 1e-3,
                saturation_tol: 1e-3,
            },
        }
    }
}

fn default_ladder(d: &GriddedDensity, sigma: &DMatrix<f64>) -> Vec<f64> {
    let lambda = sigma
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    let h = 1e-3 * d.mean_variance() / lambda.max(f64::MIN_POSITIVE);
    vec![h, 2.0 * h, 4.0 * h]
}

/// d/dε 𝓘_q(X + √ε Z) at ε = 0, by Neville extrapolation of the forward
/// difference quotients to ε → 0.
pub fn entropy_derivative(
    d: &GriddedDensity,
    sigma: &DMatrix<f64>,
    q: f64,
    opts: &DeBruijnOptions,
) -> Result<f64> {
    let ladder = match &opts.eps_ladder {
        Some(l) => l.clone(),
        None => default_ladder(d, sigma),
    };
    if ladder.len() < 2 || ladder.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidParameter(
            "eps ladder needs at least two positive entries".into(),
        ));
    }
    let f0 = renyi_entropy(d, q, Base::Nats)?.value;
    let quotients = ladder
        .par_iter()
        .map(|&eps| {
            let smoothed = convolve_noise(d, sigma, eps, opts.noise)?;
            Ok((renyi_entropy(&smoothed, q, Base::Nats)?.value - f0) / eps)
        })
        .collect::<Result<Vec<f64>>>()?;

    // Neville table evaluated at ε = 0.
    let n = ladder.len();
    let mut table = quotients.clone();
    let mut previous = table[0];
    for level in 1..n {
        previous = table[0];
        for i in 0..n - level {
            let (a, b) = (ladder[i], ladder[i + level]);
            table[i] = (b * table[i] - a * table[i + 1]) / (b - a);
        }
    }
    let estimate = table[0];
    let residual = (estimate - previous).abs();
    let limit = 10.0 * opts.tol.check_tol * estimate.abs().max(f64::MIN_POSITIVE);
    if residual > limit {
        return Err(Error::DerivativeUnstable { residual, limit });
    }
    Ok(estimate)
}

fn is_zero(m: &DMatrix<f64>) -> bool {
    m.iter().all(|&v| v == 0.0)
}

/// Compares d𝓘_q(X + √ε Z)/dε at 0 with (1/2q) Tr(𝕁_q Σ).
pub fn de_bruijn_check(
    d: &GriddedDensity,
    sigma: &DMatrix<f64>,
    q: f64,
    opts: &DeBruijnOptions,
) -> Result<InequalityReport> {
    let name = format!("de_bruijn(q={q})");
    if is_zero(sigma) {
        return Ok(InequalityReport::identity(name, 0.0, 0.0, opts.tol));
    }
    let j = fisher_matrix(d, q)?;
    let rhs = (&j.entries * sigma).trace() / (2.0 * q);
    let lhs = entropy_derivative(d, sigma, q, opts)?;
    Ok(InequalityReport::identity(name, lhs, rhs, opts.tol))
}

/// Matrix form of the De Bruijn check, entry by entry.
#[derive(Debug, Clone, PartialEq)]
pub struct DeBruijnMatrixReport {
    /// ∂𝓘_q/∂Σ_ij from finite differences.
    pub estimated: DMatrix<f64>,
    /// (1/2q)(𝕁_q)_ij.
    pub expected: DMatrix<f64>,
    /// lhs and rhs are Frobenius norms; slack is minus the largest entry
    /// deviation relative to the largest expected entry.
    pub report: InequalityReport,
}

/// Perturbs Σ along e_i e_iᵀ and (e_i+e_j)(e_i+e_j)ᵀ and recovers every
/// entry of ∂𝓘_q/∂Σ by polarization.
pub fn de_bruijn_matrix_check(
    d: &GriddedDensity,
    q: f64,
    opts: &DeBruijnOptions,
) -> Result<DeBruijnMatrixReport> {
    let dim = d.dim();
    let opts = DeBruijnOptions {
        noise: NoiseShape::Gaussian,
        ..opts.clone()
    };
    let direction = |i: usize, j: usize| {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, i)] += 1.0;
        m[(j, j)] += 1.0;
        if i != j {
            m[(i, j)] += 1.0;
            m[(j, i)] += 1.0;
        }
        m
    };
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (i..dim).map(move |j| (i, j)))
        .collect();
    let derivs = pairs
        .par_iter()
        .map(|&(i, j)| {
            let dir = if i == j {
                direction(i, i) * 0.5
            } else {
                direction(i, j)
            };
            entropy_derivative(d, &dir, q, &opts)
        })
        .collect::<Result<Vec<f64>>>()?;
    let lookup =
        |i: usize, j: usize| derivs[pairs.iter().position(|&p| p == (i, j)).expect("pair")];
    let estimated = DMatrix::from_fn(dim, dim, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        if a == b {
            lookup(a, a)
        } else {
            (lookup(a, b) - lookup(a, a) - lookup(b, b)) / 2.0
        }
    });
    let expected = fisher_matrix(d, q)?.entries / (2.0 * q);
    let scale = expected.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let dev = (&estimated - &expected)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let slack = if scale > 0.0 { -dev / scale } else { -dev };
    let report = InequalityReport::with_slack(
        format!("de_bruijn_matrix(q={q})"),
        estimated.norm(),
        expected.norm(),
        slack,
        opts.tol,
    );
    Ok(DeBruijnMatrixReport {
        estimated,
        expected,
        report,
    })
}

fn require_q_ge_1(q: f64) -> Result<()> {
    if q < 1.0 || !q.is_finite() {
        return Err(Error::InvalidParameter(format!("order {q} must be >= 1")));
    }
    Ok(())
}

/// N_q det(𝕁_q)^{1/D} ≥ 1.
pub fn isoperimetric_check(
    d: &GriddedDensity,
    q: f64,
    tol: CheckTolerances,
) -> Result<InequalityReport> {
    require_q_ge_1(q)?;
    let n = renyi_entropy_power(d, q, Convention::NatsExp)?;
    let j = fisher_matrix(d, q)?;
    Ok(InequalityReport::inequality(
        format!("isoperimetric(q={q})"),
        n * j.det_root(),
        1.0,
        tol,
    ))
}

/// (1/D) N_q J_q ≥ 1, implied by the determinant form.
pub fn isoperimetric_trace_check(
    d: &GriddedDensity,
    q: f64,
    tol: CheckTolerances,
) -> Result<InequalityReport> {
    require_q_ge_1(q)?;
    let n = renyi_entropy_power(d, q, Convention::NatsExp)?;
    let j = fisher_matrix(d, q)?;
    let lhs = n * j.trace / d.dim() as f64;
    Ok(InequalityReport::inequality(
        format!("isoperimetric_trace(q={q})"),
        lhs,
        1.0,
        tol,
    ))
}

/// q^{1/(q−1)}, continuous at q = 1.
fn q_root(q: f64) -> f64 {
    if (q - 1.0).abs() < 1e-8 {
        E
    } else {
        q.powf(1.0 / (q - 1.0))
    }
}

/// σ²(X) ≥ D q^{1/(q−1)} / (e J_q).
pub fn cramer_rao_check(
    d: &GriddedDensity,
    q: f64,
    tol: CheckTolerances,
) -> Result<InequalityReport> {
    require_q_ge_1(q)?;
    let j = fisher_matrix(d, q)?;
    let rhs = d.dim() as f64 * q_root(q) / (E * j.trace);
    Ok(InequalityReport::inequality(
        format!("cramer_rao(q={q})"),
        d.mean_variance(),
        rhs,
        tol,
    ))
}

/// Orders (q, p) paired with r and λ in the entropy-power inequality.
pub fn epi_orders(lambda: f64, r: f64) -> (f64, f64) {
    (
        r / ((1.0 - lambda) + lambda * r),
        r / (lambda + (1.0 - lambda) * r),
    )
}

/// N_r(X₁+X₂) ≥ (N_q(X₁)/(1−λ))^{1−λ} (N_p(X₂)/λ)^λ.
pub fn epi_check(
    d1: &GriddedDensity,
    d2: &GriddedDensity,
    lambda: f64,
    r: f64,
    tol: CheckTolerances,
) -> Result<InequalityReport> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda {lambda} not in (0, 1)"
        )));
    }
    if !(r > 1.0) {
        return Err(Error::InvalidParameter(format!("r {r} must be > 1")));
    }
    let (q, p) = epi_orders(lambda, r);
    let sum = convolve_densities(d1, d2)?;
    let lhs = renyi_entropy_power(&sum, r, Convention::NatsExp)?;
    let n1 = renyi_entropy_power(d1, q, Convention::NatsExp)?;
    let n2 = renyi_entropy_power(d2, p, Convention::NatsExp)?;
    let rhs = (n1 / (1.0 - lambda)).powf(1.0 - lambda) * (n2 / lambda).powf(lambda);
    Ok(InequalityReport::inequality(
        format!("epi(lambda={lambda},r={r})"),
        lhs,
        rhs,
        tol,
    ))
}

/// 16π² N_q(𝒴) ≥ det 𝕁_r(𝒳)^{1/D} with 1/r + 1/q = 2, in the unit-frequency
/// variables x/√(2πħ), y/√(2πħ).
pub fn stam_check(w: &WaveFunction, r: f64, tol: CheckTolerances) -> Result<InequalityReport> {
    require_q_ge_1(r)?;
    let q = r / (2.0 * r - 1.0);
    let hbar = w.hbar();
    let scale = 2.0 * PI * hbar;
    let fx = w.density()?;
    let gy = fourier_conjugate(w)?.density()?;
    let n_y = renyi_entropy_power(&gy, q, Convention::NatsExp)? / scale;
    let j_x = scale * fisher_matrix(&fx, r)?.det_root();
    Ok(InequalityReport::inequality(
        format!("stam(r={r})"),
        16.0 * PI * PI * n_y,
        j_x,
        tol,
    ))
}

/// N_{p/2}(|ψ|²) N_{q/2}(|ψ̂|²) ≥ ħ²/4 with 1/p + 1/q = 1.
pub fn repur_check(w: &WaveFunction, p: f64, tol: CheckTolerances) -> Result<InequalityReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p {p} must be > 1")));
    }
    let q = p / (p - 1.0);
    let fx = w.density()?;
    let gy = fourier_conjugate(w)?.density()?;
    let lhs = renyi_entropy_power(&fx, p / 2.0, Convention::NatsExp)?
        * renyi_entropy_power(&gy, q / 2.0, Convention::NatsExp)?;
    let hbar = w.hbar();
    Ok(InequalityReport::inequality(
        format!("repur(p={p})"),
        lhs,
        hbar * hbar / 4.0,
        tol,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    All,
    Debruijn,
    Iso,
    Cr,
    Epi,
    Stam,
    Repur,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "debruijn" => Suite::Debruijn,
            "iso" => Suite::Iso,
            "cr" => Suite::Cr,
            "epi" => Suite::Epi,
            "stam" => Suite::Stam,
            "repur" => Suite::Repur,
            other => return Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
        })
    }
}

/// Orders used by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    /// Order for the De Bruijn, isoperimetric and Cramér–Rao checks.
    pub q: f64,
    pub stam_r: f64,
    pub epi_r: f64,
    pub epi_lambda: f64,
    pub repur_p: f64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            q: 1.0,
            stam_r: 1.0,
            epi_r: 2.0,
            epi_lambda: 0.5,
            repur_p: 2.0,
        }
    }
}

/// Runs the selected checks. The EPI check pairs the density with an
/// independent copy of itself; Stam and REPUR need a wavefunction and are
/// skipped without one. Reports come back in a fixed order.
pub fn run_suite(
    d: &GriddedDensity,
    w: Option<&WaveFunction>,
    suite: Suite,
    params: SuiteParams,
    tol: CheckTolerances,
) -> Result<Vec<InequalityReport>> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    type Job<'a> = Box<dyn Fn() -> Result<InequalityReport> + Send + Sync + 'a>;
    let mut jobs: Vec<Job> = Vec::new();
    let q = params.q;
    if want(Suite::Debruijn) {
        jobs.push(Box::new(move || {
            let sigma = DMatrix::identity(d.dim(), d.dim());
            de_bruijn_check(d, &sigma, q, &DeBruijnOptions::default())
        }));
    }
    if want(Suite::Iso) {
        jobs.push(Box::new(move || isoperimetric_check(d, q, tol)));
        jobs.push(Box::new(move || isoperimetric_trace_check(d, q, tol)));
    }
    if want(Suite::Cr) {
        jobs.push(Box::new(move || cramer_rao_check(d, q, tol)));
    }
    if want(Suite::Epi) {
        jobs.push(Box::new(move || {
            epi_check(d, d, params.epi_lambda, params.epi_r, tol)
        }));
    }
    if let Some(w) = w {
        if want(Suite::Stam) {
            jobs.push(Box::new(move || stam_check(w, params.stam_r, tol)));
        }
        if want(Suite::Repur) {
            jobs.push(Box::new(move || repur_check(w, params.repur_p, tol)));
        }
    }
    jobs.par_iter().map(|job| job()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{l1_distance, GridSpec};
    use crate::states::{gaussian_1d, gaussian_density, uniform_density};
    use crate::Axis;

    fn spec() -> GridSpec {
        GridSpec::line(-12.0, 12.0, 2048).unwrap()
    }

    fn gauss(s2: f64) -> GriddedDensity {
        gaussian_1d(&spec(), s2).unwrap()
    }

    #[test]
    fn escort_cases() {
        let g = gauss(1.0);
        assert!(l1_distance(&escort(&g, 1.0).unwrap(), &g).unwrap() < 1e-12);
        for q in [0.5, 2.0, 3.0] {
            assert!(l1_distance(&escort(&g, q).unwrap(), &gauss(1.0 / q)).unwrap() < 1e-6);
        }
        let u = uniform_density(&spec(), &[(-1.0, 1.0)]).unwrap();
        assert!(l1_distance(&escort(&u, 2.5).unwrap(), &u).unwrap() < 1e-12);
        let ab = escort(&escort(&g, 1.5).unwrap(), 2.0).unwrap();
        assert!(l1_distance(&ab, &escort(&g, 3.0).unwrap()).unwrap() < 1e-8);
    }

    #[test]
    fn score_cases() {
        let g = gaussian_1d(&GridSpec::line(-8.0, 8.0, 801).unwrap(), 1.0).unwrap();
        let v1 = score_vector(&g, 1.0).unwrap();
        assert!((v1.components[0][425] + 0.5).abs() < 1e-4);
        let v3 = score_vector(&g, 3.0).unwrap();
        for (a, b) in v1.components[0].iter().zip(&v3.components[0]) {
            assert!((3.0 * a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        let c = &v1.components[0];
        for i in 0..801 {
            assert!((c[i] + c[800 - i]).abs() < 1e-8 * c[i].abs().max(1.0));
        }
    }

    #[test]
    fn fisher_cases() {
        let g = gauss(1.0);
        assert!((fisher_matrix(&g, 1.0).unwrap().trace - 1.0).abs() < 1e-4);
        assert!((fisher_matrix(&g, 2.0).unwrap().trace - 2.0).abs() < 1e-3);
        let j = fisher_matrix(&g, 1.5).unwrap().trace;
        let ja = fisher_matrix(&g.scaled(1.5).unwrap(), 1.5).unwrap().trace;
        assert!((ja * 2.25 / j - 1.0).abs() < 1e-4);
    }

    #[test]
    fn fisher_is_q_squared_times_escort_covariance_of_classical_score() {
        let g = crate::fixtures::mixture().unwrap();
        let q = 1.7;
        let rho = escort(&g, q).unwrap();
        let v = score_vector(&g, 1.0).unwrap();
        let w = g.spec().trapezoid_weights();
        let m1: f64 = (0..w.len())
            .map(|k| w[k] * rho.values()[k] * v.components[0][k])
            .sum();
        let m2: f64 = (0..w.len())
            .map(|k| w[k] * rho.values()[k] * v.components[0][k].powi(2))
            .sum();
        let j = fisher_matrix(&g, q).unwrap().trace;
        assert!((j - q * q * (m2 - m1 * m1)).abs() < 1e-10 * j);
    }

    #[test]
    fn de_bruijn_gaussian() {
        let g = gauss(1.0);
        let one = DMatrix::from_element(1, 1, 1.0);
        for q in [1.0, 2.0] {
            let r = de_bruijn_check(&g, &one, q, &DeBruijnOptions::default()).unwrap();
            assert!(
                (r.lhs - 0.5).abs() < 1e-3 && (r.rhs - 0.5).abs() < 1e-3,
                "{r:?}"
            );
            assert!(r.satisfied);
        }
        let r =
            de_bruijn_check(&g, &DMatrix::zeros(1, 1), 1.0, &DeBruijnOptions::default()).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        assert!(r.satisfied);
    }

    #[test]
    fn de_bruijn_matrix_1d_agrees_with_scalar() {
        let g = gauss(1.0);
        let m = de_bruijn_matrix_check(&g, 1.0, &DeBruijnOptions::default()).unwrap();
        let s = de_bruijn_check(
            &g,
            &DMatrix::from_element(1, 1, 1.0),
            1.0,
            &DeBruijnOptions::default(),
        )
        .unwrap();
        assert!((m.estimated[(0, 0)] - s.lhs).abs() < 1e-9);
        assert!(m.report.satisfied);
    }

    fn gauss_2d(rho: f64) -> GriddedDensity {
        let spec =
            GridSpec::new(vec![Axis::new(-9.0, 9.0, 160), Axis::new(-9.0, 9.0, 160)]).unwrap();
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, rho, rho, 1.0]);
        gaussian_density(&spec, &[0.0, 0.0], &cov).unwrap()
    }

    #[test]
    fn de_bruijn_matrix_2d() {
        let iso = de_bruijn_matrix_check(&gauss_2d(0.0), 1.0, &DeBruijnOptions::default()).unwrap();
        assert!(iso.estimated[(0, 1)].abs() <= 1e-3 * iso.estimated[(0, 0)]);
        assert!(iso.report.satisfied, "{:?}", iso.report);

        let cor = de_bruijn_matrix_check(&gauss_2d(0.5), 1.0, &DeBruijnOptions::default()).unwrap();
        let inv = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0])
            .try_inverse()
            .unwrap()
            / 2.0;
        for (a, b) in cor.estimated.iter().zip(inv.iter()) {
            assert!((a - b).abs() < 1e-3 * 2.0 / 3.0, "{a} vs {b}");
        }
        assert!(cor.report.satisfied, "{:?}", cor.report);
    }

    #[test]
    fn isoperimetric_gaussian() {
        let tol = CheckTolerances::default();
        let g = gauss(1.0);
        let r1 = isoperimetric_check(&g, 1.0, tol).unwrap();
        assert!((r1.lhs - 1.0).abs() < 1e-3 && r1.saturated && r1.satisfied);
        let r2 = isoperimetric_trace_check(&g, 2.0, tol).unwrap();
        assert!((r2.lhs - 2.0).abs() < 1e-3);
        let r2 = isoperimetric_check(&g, 2.0, tol).unwrap();
        assert!(r2.satisfied && !r2.saturated);
        assert!(isoperimetric_check(&g, 0.5, tol).is_err());
    }

    #[test]
    fn cramer_rao_gaussian() {
        let tol = CheckTolerances::default();
        let r = cramer_rao_check(&gauss(1.0), 1.0, tol).unwrap();
        assert!(r.saturated && r.satisfied);
        let r = cramer_rao_check(&gauss(1.0), 2.0, tol).unwrap();
        assert!((r.rhs - 1.0 / E).abs() < 1e-3 && r.satisfied);
    }

    #[test]
    fn epi_gaussian_pair() {
        let tol = CheckTolerances::default();
        let r = epi_check(&gauss(1.0), &gauss(1.0), 0.5, 2.0, tol).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-4 && (r.rhs - 2.0).abs() < 1e-4);
        assert!(r.satisfied && r.saturated);
        let r = epi_check(&gauss(1.0), &gauss(2.0), 0.99, 1.5, tol).unwrap();
        assert!(r.satisfied && !r.saturated);
        let (q, p) = epi_orders(0.5, 2.0);
        assert!((q - 4.0 / 3.0).abs() < 1e-15 && (p - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn repur_gaussian_saturates() {
        let tol = CheckTolerances::default();
        for s2 in [0.5, 1.0, 2.0] {
            let w = crate::fixtures::gaussian_packet(s2, 1.0).unwrap();
            for p in [2.0, 4.0, 4.0 / 3.0] {
                let r = repur_check(&w, p, tol).unwrap();
                assert!(
                    (r.lhs - 0.25).abs() < 1e-3 && r.saturated && r.satisfied,
                    "{r:?}"
                );
            }
        }
    }

    #[test]
    fn stam_gaussian_r1_saturates() {
        let w = crate::fixtures::gaussian_packet(1.0, 1.0).unwrap();
        let r = stam_check(&w, 1.0, CheckTolerances::default()).unwrap();
        assert!(r.saturated && r.satisfied, "{r:?}");
    }

    #[test]
    fn suite_reports_in_order() {
        let g = gauss(1.0);
        let w = crate::fixtures::gaussian_packet(1.0, 1.0).unwrap();
        let reps = run_suite(
            &g,
            Some(&w),
            Suite::All,
            SuiteParams::default(),
            CheckTolerances::default(),
        )
        .unwrap();
        let names: Vec<&str> = reps
            .iter()
            .map(|r| r.name.split('(').next().unwrap())
            .collect();
        assert_eq!(
            names,
            [
                "de_bruijn",
                "isoperimetric",
                "isoperimetric_trace",
                "cramer_rao",
                "epi",
                "stam",
                "repur"
            ]
        );
        assert!(reps.iter().all(|r| r.satisfied));
    }
}
