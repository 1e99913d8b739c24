use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::fft::fft_axis;
use super::{Axis, GridSpec, WaveFunction};
use crate::{Error, Result};

/// ψ_G(y) = (2πħ)^{−D/2} ∫ e^{−i y·x/ħ} ψ(x) dx on the reciprocal grid.
///
/// Axis i of the output has spacing 2πħ/(n_i h_i) and puts y = 0 at index
/// ⌊n_i/2⌋. The sum is a plain Riemann sum, so Parseval holds exactly and
/// [`inverse_fourier_conjugate`] undoes it to rounding.
pub fn fourier_conjugate(w: &WaveFunction) -> Result<WaveFunction> {
    w.check_normalized()?;
    let hbar = w.hbar();
    let spec = w.spec();
    let mut axes = Vec::with_capacity(spec.dim());
    for a in spec.axes() {
        let n = a.count;
        let dy = 2.0 * PI * hbar / (n as f64 * a.spacing());
        let y0 = -((n / 2) as f64) * dy;
        axes.push(Axis::new(y0, y0 + (n - 1) as f64 * dy, n));
    }
    let out_spec = GridSpec::new(axes)?;
    let values = transform(w.values(), spec, &out_spec, hbar, FftDirection::Forward);
    WaveFunction::from_raw(out_spec, values, hbar)
}

/// Inverse of [`fourier_conjugate`], evaluated on `target`. The target must
/// have the same counts and satisfy h_i Δy_i = 2πħ/n_i on every axis.
pub fn inverse_fourier_conjugate(w: &WaveFunction, target: &GridSpec) -> Result<WaveFunction> {
    let spec = w.spec();
    if target.dim() != spec.dim() {
        return Err(Error::InvalidGrid("target dimension differs".into()));
    }
    for (i, (y, x)) in spec.axes().iter().zip(target.axes()).enumerate() {
        let want = 2.0 * PI * w.hbar() / y.count as f64;
        let have = y.spacing() * x.spacing();
        if y.count != x.count || (have - want).abs() > 1e-9 * want {
            return Err(Error::InvalidGrid(format!(
                "axis {i} is not reciprocal to the target grid"
            )));
        }
    }
    let values = transform(w.values(), spec, target, w.hbar(), FftDirection::Inverse);
    WaveFunction::from_raw(target.clone(), values, w.hbar())
}

fn transform(
    values: &[Complex64],
    from: &GridSpec,
    to: &GridSpec,
    hbar: f64,
    direction: FftDirection,
) -> Vec<Complex64> {
    let sign = match direction {
        FftDirection::Forward => -1.0,
        FftDirection::Inverse => 1.0,
    };
    let shape = from.shape();
    let strides = from.strides();
    let mut data = values.to_vec();
    let mut planner = FftPlanner::<f64>::new();
    for axis in 0..from.dim() {
        let n = shape[axis];
        let (src, dst) = (from.axis(axis), to.axis(axis));
        let (u0, du) = (src.min, src.spacing());
        let (v0, dv) = (dst.min, dst.spacing());
        let pre: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, sign * j as f64 * du * v0 / hbar))
            .collect();
        let scale = du / (2.0 * PI * hbar).sqrt();
        let post: Vec<Complex64> = (0..n)
            .map(|m| Complex64::from_polar(scale, sign * u0 * (v0 + m as f64 * dv) / hbar))
            .collect();
        let fft = planner.plan_fft(n, direction);
        fft_axis(&mut data, &shape, strides[axis], n, |line| {
            line.iter_mut().zip(&pre).for_each(|(z, p)| *z *= p);
            fft.process(line);
            line.iter_mut().zip(&post).for_each(|(z, p)| *z *= p);
        });
    }
    data
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(spec: &GridSpec, sigma2: f64, hbar: f64) -> WaveFunction {
        let v = spec
            .axis(0)
            .coords()
            .iter()
            .map(|x| Complex64::new((-x * x / (4.0 * sigma2)).exp(), 0.0))
            .collect();
        WaveFunction::new(spec.clone(), v, hbar).unwrap()
    }

    #[test]
    fn gaussian_conjugate_variance() {
        let spec = GridSpec::line(-12.0, 12.0, 2048).unwrap();
        for &(s2, hbar) in &[(1.0, 1.0), (0.5, 1.0), (2.0, 0.7)] {
            let g = fourier_conjugate(&packet(&spec, s2, hbar)).unwrap();
            assert!((g.norm_sqr() - 1.0).abs() < 1e-8);
            let var = g.density().unwrap().mean_variance();
            assert!((var - hbar * hbar / (4.0 * s2)).abs() < 1e-6, "{var}");
        }
    }

    #[test]
    fn symmetric_real_input_gives_real_symmetric_output() {
        let spec = GridSpec::line(-10.0, 10.0, 1001).unwrap();
        let v = spec
            .axis(0)
            .coords()
            .iter()
            .map(|x| Complex64::new((-x * x).exp() * (1.0 + x * x), 0.0))
            .collect();
        let w = WaveFunction::new(spec, v, 1.0).unwrap();
        let g = fourier_conjugate(&w).unwrap();
        let n = g.values().len();
        let c = n / 2;
        for k in 0..c.min(n - 1 - c) {
            assert!(g.values()[c + k].im.abs() < 1e-10);
            assert!((g.values()[c + k] - g.values()[c - k]).norm() < 1e-10);
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let spec = GridSpec::line(-9.0, 11.0, 512).unwrap();
        let v = spec
            .axis(0)
            .coords()
            .iter()
            .map(|&x| Complex64::new((-(x - 1.0) * (x - 1.0)).exp(), (-(x * x)).exp() * x))
            .collect();
        let w = WaveFunction::new(spec.clone(), v, 1.3).unwrap();
        let back = inverse_fourier_conjugate(&fourier_conjugate(&w).unwrap(), &spec).unwrap();
        for (a, b) in back.values().iter().zip(w.values()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn two_dim_round_trip() {
        let spec = GridSpec::new(vec![Axis::new(-6.0, 6.0, 64), Axis::new(-5.0, 7.0, 32)]).unwrap();
        let v = (0..spec.len())
            .map(|i| {
                let p = spec.point(i);
                Complex64::new((-(p[0] * p[0]) - (p[1] - 1.0).powi(2)).exp(), 0.0)
            })
            .collect();
        let w = WaveFunction::new(spec.clone(), v, 1.0).unwrap();
        let g = fourier_conjugate(&w).unwrap();
        assert!((g.norm_sqr() - 1.0).abs() < 1e-8);
        let back = inverse_fourier_conjugate(&g, &spec).unwrap();
        for (a, b) in back.values().iter().zip(w.values()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_unnormalized() {
        let spec = GridSpec::line(-5.0, 5.0, 64).unwrap();
        let w = WaveFunction::from_raw(spec, vec![Complex64::new(2.0, 0.0); 64], 1.0).unwrap();
        assert!(matches!(
            fourier_conjugate(&w),
            Err(Error::NotNormalized(_))
        ));
    }
}
