//! Uniform rectangular grids and the fields that live on them.
//!
//! Values are stored row-major (last axis fastest). Every integral is the
//! trapezoid rule on the grid.

mod convolve;
mod fft;
mod fourier;

pub use convolve::{convolve_densities, convolve_gaussian, convolve_noise, NoiseShape};
pub use fourier::{fourier_conjugate, inverse_fourier_conjugate};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Values below this are treated as exact zeros by the generators.
pub const TAIL_FLOOR: f64 = 1e-300;

/// Default normalization tolerance of a [`GriddedDensity`].
pub const DEFAULT_NORM_TOL: f64 = 1e-8;

const MIN_COUNT: usize = 8;
const MAX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count }
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.coord(i)).collect()
    }

    pub fn extent(&self) -> f64 {
        self.max - self.min
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i + 1 == self.count {
            0.5 * h
        } else {
            h
        }
    }
}

/// Discretization of a box in ℝ^D, D ≤ 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    axes: Vec<Axis>,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_DIM {
            return Err(Error::InvalidGrid(format!(
                "dimension {} not in 1..={MAX_DIM}",
                axes.len()
            )));
        }
        let mut total: usize = 1;
        for (i, a) in axes.iter().enumerate() {
            if !(a.min.is_finite() && a.max.is_finite()) || a.max <= a.min {
                return Err(Error::InvalidGrid(format!(
                    "axis {i}: need finite max > min, got [{}, {}]",
                    a.min, a.max
                )));
            }
            if a.count < MIN_COUNT {
                return Err(Error::InvalidGrid(format!(
                    "axis {i}: count {} < {MIN_COUNT}",
                    a.count
                )));
            }
            total = total
                .checked_mul(a.count)
                .ok_or_else(|| Error::InvalidGrid("point count overflows usize".into()))?;
        }
        Ok(GridSpec { axes })
    }

    /// One-dimensional grid.
    pub fn line(min: f64, max: f64, count: usize) -> Result<Self> {
        GridSpec::new(vec![Axis::new(min, max, count)])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> &Axis {
        &self.axes[i]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn spacings(&self) -> Vec<f64> {
        self.axes.iter().map(Axis::spacing).collect()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape())
    }

    /// Index along `axis` of the flat point `flat`.
    pub fn index_along(&self, flat: usize, axis: usize) -> usize {
        let stride: usize = self.axes[axis + 1..].iter().map(|a| a.count).product();
        (flat / stride) % self.axes[axis].count
    }

    /// Coordinates of the flat point `flat`.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        (0..self.dim())
            .map(|a| self.axes[a].coord(self.index_along(flat, a)))
            .collect()
    }

    /// Coordinate along `axis` for every flat point.
    pub fn coordinate_field(&self, axis: usize) -> Vec<f64> {
        let coords = self.axes[axis].coords();
        (0..self.len())
            .map(|f| coords[self.index_along(f, axis)])
            .collect()
    }

    /// Trapezoid quadrature weight of every point.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let per_axis: Vec<Vec<f64>> = self
            .axes
            .iter()
            .map(|a| (0..a.count).map(|i| a.trapezoid_weight(i)).collect())
            .collect();
        (0..self.len())
            .map(|f| {
                (0..self.dim())
                    .map(|a| per_axis[a][self.index_along(f, a)])
                    .product()
            })
            .collect()
    }

    /// Same grid with every coordinate multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<GridSpec> {
        if !(factor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor {factor} must be > 0"
            )));
        }
        GridSpec::new(
            self.axes
                .iter()
                .map(|a| Axis::new(a.min * factor, a.max * factor, a.count))
                .collect(),
        )
    }

    /// Same grid shifted by `shift`.
    pub fn translated(&self, shift: &[f64]) -> Result<GridSpec> {
        if shift.len() != self.dim() {
            return Err(Error::InvalidParameter("shift dimension mismatch".into()));
        }
        GridSpec::new(
            self.axes
                .iter()
                .zip(shift)
                .map(|(a, s)| Axis::new(a.min + s, a.max + s, a.count))
                .collect(),
        )
    }
}

pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * shape[a + 1];
    }
    strides
}

/// Trapezoid integral of `values` over `spec`.
pub fn trapezoid(spec: &GridSpec, values: &[f64]) -> f64 {
    spec.trapezoid_weights()
        .iter()
        .zip(values)
        .map(|(w, v)| w * v)
        .sum()
}

/// Nonnegative probability density sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GriddedDensity {
    spec: GridSpec,
    values: Vec<f64>,
    norm_tol: f64,
}

impl GriddedDensity {
    /// Wraps values without checking normalization. Use [`normalize`] or
    /// [`GriddedDensity::new`] to obtain a validated density.
    pub fn from_raw(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for {} grid points",
                values.len(),
                spec.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "density contains non-finite values".into(),
            ));
        }
        Ok(GriddedDensity {
            spec,
            values,
            norm_tol: DEFAULT_NORM_TOL,
        })
    }

    /// Validated density: nonnegative and normalized within the default tolerance.
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        let d = GriddedDensity::from_raw(spec, values)?;
        if d.values.iter().any(|&v| v < 0.0) {
            return Err(Error::AllZeroDensity);
        }
        let mass = d.integrate();
        if (mass - 1.0).abs() > d.norm_tol {
            return Err(Error::NotNormalized(mass));
        }
        Ok(d)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn norm_tol(&self) -> f64 {
        self.norm_tol
    }

    pub fn with_norm_tol(mut self, tol: f64) -> Self {
        self.norm_tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn is_normalized(&self) -> bool {
        (self.integrate() - 1.0).abs() <= self.norm_tol
    }

    /// ∫ 𝓕 d𝒙.
    pub fn integrate(&self) -> f64 {
        trapezoid(&self.spec, &self.values)
    }

    /// ∫ w(𝒙) 𝓕(𝒙) d𝒙.
    pub fn integrate_with<W: Fn(&[f64]) -> f64>(&self, weight: W) -> f64 {
        let w = self.spec.trapezoid_weights();
        (0..self.values.len())
            .filter(|&i| self.values[i] != 0.0)
            .map(|i| w[i] * self.values[i] * weight(&self.spec.point(i)))
            .sum()
    }

    pub fn mean(&self) -> Vec<f64> {
        let w = self.spec.trapezoid_weights();
        (0..self.dim())
            .map(|a| {
                let x = self.spec.coordinate_field(a);
                (0..x.len()).map(|i| w[i] * self.values[i] * x[i]).sum()
            })
            .collect()
    }

    /// Covariance matrix Σ(X).
    pub fn covariance(&self) -> nalgebra::DMatrix<f64> {
        let d = self.dim();
        let w = self.spec.trapezoid_weights();
        let mean = self.mean();
        let centred: Vec<Vec<f64>> = (0..d)
            .map(|a| {
                self.spec
                    .coordinate_field(a)
                    .into_iter()
                    .map(|x| x - mean[a])
                    .collect()
            })
            .collect();
        nalgebra::DMatrix::from_fn(d, d, |i, j| {
            (0..self.values.len())
                .map(|k| w[k] * self.values[k] * centred[i][k] * centred[j][k])
                .sum()
        })
    }

    /// Average variance per component, (1/D) Tr Σ(X).
    pub fn mean_variance(&self) -> f64 {
        self.covariance().trace() / self.dim() as f64
    }

    /// Density of a·X for a > 0 (same sample values, stretched grid).
    pub fn scaled(&self, factor: f64) -> Result<GriddedDensity> {
        let spec = self.spec.scaled(factor)?;
        let jac = factor.powi(self.dim() as i32);
        Ok(GriddedDensity {
            spec,
            values: self.values.iter().map(|v| v / jac).collect(),
            norm_tol: self.norm_tol,
        })
    }

    /// Density of X + shift.
    pub fn translated(&self, shift: &[f64]) -> Result<GriddedDensity> {
        Ok(GriddedDensity {
            spec: self.spec.translated(shift)?,
            values: self.values.clone(),
            norm_tol: self.norm_tol,
        })
    }
}

/// Rescales `d` to unit mass. Values in (−1e-14, 0) are clamped to zero.
pub fn normalize(d: &GriddedDensity) -> Result<GriddedDensity> {
    if d.values.iter().any(|&v| v < -1e-14) {
        return Err(Error::AllZeroDensity);
    }
    let values: Vec<f64> = d.values.iter().map(|&v| v.max(0.0)).collect();
    let mass = trapezoid(&d.spec, &values);
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::AllZeroDensity);
    }
    Ok(GriddedDensity {
        spec: d.spec.clone(),
        values: values.into_iter().map(|v| v / mass).collect(),
        norm_tol: d.norm_tol,
    })
}

/// ∫|𝓕₁ − 𝓕₂| for two densities on the same grid.
pub fn l1_distance(a: &GriddedDensity, b: &GriddedDensity) -> Result<f64> {
    if a.spec != b.spec {
        return Err(Error::InvalidGrid("L1 distance needs a shared grid".into()));
    }
    let diff: Vec<f64> = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .collect();
    Ok(trapezoid(&a.spec, &diff))
}

/// One real array per axis, on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub spec: GridSpec,
    pub components: Vec<Vec<f64>>,
}

impl VectorField {
    pub fn component(&self, axis: usize) -> &[f64] {
        &self.components[axis]
    }

    pub fn scale(mut self, factor: f64) -> Self {
        for c in &mut self.components {
            c.iter_mut().for_each(|v| *v *= factor);
        }
        self
    }
}

/// ∇𝓕 by second-order finite differences.
pub fn gradient(d: &GriddedDensity) -> Result<VectorField> {
    gradient_of(&d.spec, &d.values)
}

/// Central differences in the interior, one-sided second-order stencils at the
/// boundaries.
pub fn gradient_of(spec: &GridSpec, values: &[f64]) -> Result<VectorField> {
    let shape = spec.shape();
    let strides = spec.strides();
    let mut components = Vec::with_capacity(spec.dim());
    for axis in 0..spec.dim() {
        let n = shape[axis];
        if n < 3 {
            return Err(Error::GridTooCoarse {
                axis,
                count: n,
                needed: 3,
            });
        }
        let h = spec.axis(axis).spacing();
        let s = strides[axis];
        let mut out = vec![0.0; values.len()];
        for flat in 0..values.len() {
            let i = (flat / s) % n;
            let v = |k: isize| values[(flat as isize + k * s as isize) as usize];
            out[flat] = if i == 0 {
                (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * v(0) - 4.0 * v(-1) + v(-2)) / (2.0 * h)
            } else {
                (v(1) - v(-1)) / (2.0 * h)
            };
        }
        components.push(out);
    }
    Ok(VectorField {
        spec: spec.clone(),
        components,
    })
}

/// Complex amplitude on a grid, L2-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
    hbar: f64,
}

impl WaveFunction {
    pub fn from_raw(spec: GridSpec, values: Vec<Complex64>, hbar: f64) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "{} amplitudes for {} grid points",
                values.len(),
                spec.len()
            )));
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar {hbar} must be > 0")));
        }
        Ok(WaveFunction { spec, values, hbar })
    }

    /// Normalizing constructor.
    pub fn new(spec: GridSpec, values: Vec<Complex64>, hbar: f64) -> Result<Self> {
        WaveFunction::from_raw(spec, values, hbar)?.normalized()
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Squared L2 norm under trapezoid quadrature.
    pub fn norm_sqr(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|z| z.norm_sqr()).collect();
        trapezoid(&self.spec, &sq)
    }

    pub fn normalized(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if !(n2 > 0.0) || !n2.is_finite() {
            return Err(Error::AllZeroDensity);
        }
        let s = n2.sqrt().recip();
        Ok(WaveFunction {
            values: self.values.into_iter().map(|z| z * s).collect(),
            ..self
        })
    }

    pub(crate) fn check_normalized(&self) -> Result<()> {
        let n2 = self.norm_sqr();
        if (n2 - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized(n2));
        }
        Ok(())
    }

    /// |ψ|² as a normalized density.
    pub fn density(&self) -> Result<GriddedDensity> {
        let raw = GriddedDensity::from_raw(
            self.spec.clone(),
            self.values.iter().map(|z| z.norm_sqr()).collect(),
        )?;
        normalize(&raw)
    }
}
