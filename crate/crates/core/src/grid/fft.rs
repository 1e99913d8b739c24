use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::strides_of;

/// In-place unnormalized N-d DFT over a row-major array.
pub(crate) fn fft_nd(data: &mut [Complex64], shape: &[usize], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let strides = strides_of(shape);
    for (axis, &n) in shape.iter().enumerate() {
        let fft = planner.plan_fft(n, direction);
        fft_axis(data, shape, strides[axis], n, |line| fft.process(line));
    }
}

/// Applies `f` to every 1D line of the array along the axis with the given
/// stride and length.
pub(crate) fn fft_axis<F: FnMut(&mut [Complex64])>(
    data: &mut [Complex64],
    shape: &[usize],
    stride: usize,
    n: usize,
    mut f: F,
) {
    let total: usize = shape.iter().product();
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let block = stride * n;
    for outer in (0..total).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = data[base + k * stride];
            }
            f(&mut line);
            for (k, v) in line.iter().enumerate() {
                data[base + k * stride] = *v;
            }
        }
    }
}

/// Angular frequency of DFT bin `k` for a length-`n` transform with sample spacing `h`.
pub(crate) fn angular_frequency(k: usize, n: usize, h: f64) -> f64 {
    let signed = if k <= n / 2 {
        k as f64
    } else {
        k as f64 - n as f64
    };
    2.0 * std::f64::consts::PI * signed / (n as f64 * h)
}
