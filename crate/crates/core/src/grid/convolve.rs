use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftDirection;

use super::fft::{angular_frequency, fft_nd};
use super::{normalize, Axis, GridSpec, GriddedDensity};
use crate::{Error, Result};

/// Shape of the additive noise Z in X + √ε Z. Both shapes have zero mean and
/// covariance Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseShape {
    #[default]
    Gaussian,
    /// Z = L U with U uniform on [−√3, √3]^D and L L^T = Σ.
    SymmetrizedUniform,
}

/// Density of X + √ε Z for Gaussian Z with covariance `sigma`.
pub fn convolve_gaussian(
    d: &GriddedDensity,
    sigma: &DMatrix<f64>,
    eps: f64,
) -> Result<GriddedDensity> {
    convolve_noise(d, sigma, eps, NoiseShape::Gaussian)
}

/// Density of X + √ε Z for noise of the given shape, via zero-padded FFT.
pub fn convolve_noise(
    d: &GriddedDensity,
    sigma: &DMatrix<f64>,
    eps: f64,
    shape: NoiseShape,
) -> Result<GriddedDensity> {
    let dim = d.dim();
    if sigma.nrows() != dim || sigma.ncols() != dim {
        return Err(Error::InvalidParameter(format!(
            "noise covariance is {}x{}, density has dimension {dim}",
            sigma.nrows(),
            sigma.ncols()
        )));
    }
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eps {eps} must be finite and >= 0"
        )));
    }
    let cov = sigma * eps;
    let cov = (&cov + cov.transpose()) * 0.5;
    let eig = cov.clone().symmetric_eigenvalues();
    let lambda_max = eig.iter().cloned().fold(0.0, f64::max);
    let lambda_min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    if lambda_min < -1e-12 * lambda_max.max(f64::MIN_POSITIVE) {
        return Err(Error::InvalidParameter(
            "noise covariance is not positive semi-definite".into(),
        ));
    }
    if lambda_max == 0.0 {
        return Ok(d.clone());
    }
    let width = 6.0 * lambda_max.sqrt();
    let half_extent = d
        .spec()
        .axes()
        .iter()
        .map(|a| 0.5 * a.extent())
        .fold(f64::INFINITY, f64::min);
    if width > half_extent {
        return Err(Error::KernelWiderThanGrid { width, half_extent });
    }

    let factor = match shape {
        NoiseShape::Gaussian => None,
        NoiseShape::SymmetrizedUniform => Some(matrix_sqrt(&cov)),
    };
    let multiplier = |k: &[f64]| -> f64 {
        match &factor {
            None => {
                let mut quad = 0.0;
                for i in 0..dim {
                    for j in 0..dim {
                        quad += k[i] * cov[(i, j)] * k[j];
                    }
                }
                (-0.5 * quad).exp()
            }
            Some(l) => (0..dim)
                .map(|i| {
                    let t: f64 = (0..dim).map(|j| l[(j, i)] * k[j]).sum::<f64>() * 3f64.sqrt();
                    if t.abs() < 1e-8 {
                        1.0 - t * t / 6.0
                    } else {
                        t.sin() / t
                    }
                })
                .product(),
        }
    };

    let spec = d.spec();
    let shape_in = spec.shape();
    let padded: Vec<usize> = shape_in
        .iter()
        .map(|&n| (2 * n).next_power_of_two())
        .collect();
    let mut buf = embed(d.values(), &shape_in, &padded);
    fft_nd(&mut buf, &padded, FftDirection::Forward);

    let total: usize = padded.iter().product();
    let pstrides = super::strides_of(&padded);
    let spacings = spec.spacings();
    let mut k = vec![0.0; dim];
    for (flat, z) in buf.iter_mut().enumerate() {
        for a in 0..dim {
            let idx = (flat / pstrides[a]) % padded[a];
            k[a] = angular_frequency(idx, padded[a], spacings[a]);
        }
        *z *= multiplier(&k) / total as f64;
    }
    fft_nd(&mut buf, &padded, FftDirection::Inverse);

    let values = extract(&buf, &padded, &shape_in)
        .into_iter()
        .map(|v| v.max(0.0))
        .collect();
    normalize(&GriddedDensity::from_raw(spec.clone(), values)?)
}

/// Density of X₁ + X₂ for independent X₁ ~ `d1`, X₂ ~ `d2` sampled with equal
/// spacings. The result lives on the Minkowski-sum grid.
pub fn convolve_densities(d1: &GriddedDensity, d2: &GriddedDensity) -> Result<GriddedDensity> {
    let (s1, s2) = (d1.spec(), d2.spec());
    if s1.dim() != s2.dim() {
        return Err(Error::InvalidParameter(
            "densities have different dimensions".into(),
        ));
    }
    let mut axes = Vec::with_capacity(s1.dim());
    for (a1, a2) in s1.axes().iter().zip(s2.axes()) {
        let (h1, h2) = (a1.spacing(), a2.spacing());
        if (h1 - h2).abs() > 1e-9 * h1.max(h2) {
            return Err(Error::InvalidGrid(format!("spacings differ: {h1} vs {h2}")));
        }
        let count = a1.count + a2.count - 1;
        let min = a1.min + a2.min;
        axes.push(Axis::new(min, min + (count - 1) as f64 * h1, count));
    }
    let out_spec = GridSpec::new(axes)?;
    let out_shape = out_spec.shape();
    let padded: Vec<usize> = out_shape.iter().map(|n| n.next_power_of_two()).collect();

    let weighted: Vec<f64> = s1
        .trapezoid_weights()
        .iter()
        .zip(d1.values())
        .map(|(w, v)| w * v)
        .collect();
    let mut b1 = embed(&weighted, &s1.shape(), &padded);
    let mut b2 = embed(d2.values(), &s2.shape(), &padded);
    fft_nd(&mut b1, &padded, FftDirection::Forward);
    fft_nd(&mut b2, &padded, FftDirection::Forward);
    let total = padded.iter().product::<usize>() as f64;
    for (x, y) in b1.iter_mut().zip(&b2) {
        *x *= y / total;
    }
    fft_nd(&mut b1, &padded, FftDirection::Inverse);
    let values = extract(&b1, &padded, &out_shape)
        .into_iter()
        .map(|v| v.max(0.0))
        .collect();
    normalize(&GriddedDensity::from_raw(out_spec, values)?)
}

/// Any L with L L^T = cov: Cholesky when positive definite, else the
/// symmetric square root.
fn matrix_sqrt(cov: &DMatrix<f64>) -> DMatrix<f64> {
    if let Some(ch) = cov.clone().cholesky() {
        return ch.l();
    }
    let eig = cov.clone().symmetric_eigen();
    let root = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| v.max(0.0).sqrt()));
    &eig.eigenvectors * root * eig.eigenvectors.transpose()
}

fn embed(values: &[f64], shape: &[usize], padded: &[usize]) -> Vec<Complex64> {
    let total: usize = padded.iter().product();
    let mut out = vec![Complex64::new(0.0, 0.0); total];
    let s_in = super::strides_of(shape);
    let s_out = super::strides_of(padded);
    for (flat, &v) in values.iter().enumerate() {
        let mut target = 0;
        for a in 0..shape.len() {
            target += ((flat / s_in[a]) % shape[a]) * s_out[a];
        }
        out[target] = Complex64::new(v, 0.0);
    }
    out
}

fn extract(buf: &[Complex64], padded: &[usize], shape: &[usize]) -> Vec<f64> {
    let total: usize = shape.iter().product();
    let s_in = super::strides_of(shape);
    let s_out = super::strides_of(padded);
    (0..total)
        .map(|flat| {
            let src: usize = (0..shape.len())
                .map(|a| ((flat / s_in[a]) % shape[a]) * s_out[a])
                .sum();
            buf[src].re
        })
        .collect()
}
