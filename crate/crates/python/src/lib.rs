//! Python bindings for `repscan_core`.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use repscan_core::cumulants::{cumulants_direct, cumulants_from_powers};
use repscan_core::entropy::{
    entropy_power_curve, renyi_entropy, renyi_entropy_power, shannon_entropy, tsallis_entropy,
    Base, Convention,
};
use repscan_core::estimation::{self, CheckTolerances, InequalityReport, Suite, SuiteParams};
use repscan_core::grid::{Axis, GridSpec};
use repscan_core::infodist::{info_pdf_histogram, moment_identity_check};
use repscan_core::io::{self, GridData};
use repscan_core::reconstruct::{self, SeriesMethod};
use repscan_core::states::{self, CatStateParams};
use repscan_core::{fixtures, Error, GriddedDensity, WaveFunction};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(format!("{}: {other}", other.name())),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for repscan_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().py()
}

fn line(grid: Option<(f64, f64, usize)>) -> PyResult<GridSpec> {
    match grid {
        Some((min, max, count)) => GridSpec::new(vec![Axis::new(min, max, count)]).py(),
        None => Ok(fixtures::default_line()),
    }
}

/// A normalized density on a regular grid.
#[pyclass(name = "Density", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDensity {
    inner: GriddedDensity,
}

#[pymethods]
impl PyDensity {
    /// Reads a `.grid.json` file; a wavefunction file yields |ψ|².
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let inner = io::read_grid(path.as_ref()).py()?.density().py()?;
        Ok(PyDensity { inner })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        io::write_grid(path.as_ref(), &GridData::Density(self.inner.clone())).py()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    /// Coordinates of the first axis.
    #[getter]
    fn coords(&self) -> Vec<f64> {
        self.inner.spec().axis(0).coords()
    }

    fn integrate(&self) -> f64 {
        self.inner.integrate()
    }

    #[pyo3(signature = (base = "nats"))]
    fn shannon_entropy(&self, base: &str) -> PyResult<f64> {
        Ok(shannon_entropy(&self.inner, parse::<Base>(base)?).value)
    }

    #[pyo3(signature = (q, base = "nats"))]
    fn renyi_entropy(&self, q: f64, base: &str) -> PyResult<f64> {
        Ok(renyi_entropy(&self.inner, q, parse::<Base>(base)?)
            .py()?
            .value)
    }

    fn tsallis_entropy(&self, q: f64) -> PyResult<f64> {
        Ok(tsallis_entropy(&self.inner, q).py()?.value)
    }

    fn entropy_power(&self, p: f64) -> PyResult<f64> {
        renyi_entropy_power(&self.inner, p, Convention::NatsExp).py()
    }

    /// [(order, N)] for orders 1 + kΔ, k = 0..m−1.
    fn power_curve(&self, delta: f64, m: usize) -> PyResult<Vec<(f64, f64)>> {
        let c = entropy_power_curve(&self.inner, delta, m, Convention::NatsExp).py()?;
        Ok(c.powers.iter().map(|&(k, n)| (c.order(k), n)).collect())
    }

    /// κ_1..κ_m in bits^n; `method` is "gldf" or "direct".
    #[pyo3(signature = (m, method = "direct", delta = 0.01))]
    fn cumulants(&self, m: usize, method: &str, delta: f64) -> PyResult<Vec<f64>> {
        let k = match method {
            "direct" => cumulants_direct(&self.inner, m).py()?,
            "gldf" => {
                let curve = entropy_power_curve(&self.inner, delta, m, Convention::NatsExp).py()?;
                cumulants_from_powers(&curve, m).py()?
            }
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        };
        Ok(k.values)
    }

    /// (bin centres in bits, densities).
    #[pyo3(signature = (bins = 256))]
    fn info_histogram(&self, bins: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let h = info_pdf_histogram(&self.inner, bins).py()?;
        Ok((h.centers(), h.densities()))
    }

    fn moment_check(&self, p: f64) -> PyResult<Report> {
        let tol = CheckTolerances {
            check_tol: 1e-6,
            ..CheckTolerances::default()
        };
        Ok(moment_identity_check(&self.inner, p, tol).py()?.into())
    }

    /// Runs the density checks of a suite: all, debruijn, iso, cr or epi.
    #[pyo3(signature = (suite = "all", q = 1.0))]
    fn verify(&self, suite: &str, q: f64) -> PyResult<Vec<Report>> {
        let params = SuiteParams {
            q,
            ..SuiteParams::default()
        };
        let reports = estimation::run_suite(
            &self.inner,
            None,
            parse::<Suite>(suite)?,
            params,
            CheckTolerances::default(),
        )
        .py()?;
        Ok(reports.into_iter().map(Report::from).collect())
    }

    #[pyo3(signature = (delta = 0.01, m = 5, method = "edgeworth"))]
    fn scan(&self, delta: f64, m: usize, method: &str) -> PyResult<Scan> {
        let s = reconstruct::scan(&self.inner, delta, m, parse::<SeriesMethod>(method)?).py()?;
        let r = s.series.reference;
        Ok(Scan {
            kappa: s.series.kappa.values.clone(),
            reference: (r.a, r.alpha, r.beta),
            l1: s.l1,
            l1_reference_only: s.l1_reference_only,
            centers: s.truth.centers(),
            truth: s.truth.densities(),
            series: s.series_binned.densities(),
        })
    }

    fn __repr__(&self) -> String {
        let a = self.inner.spec().axis(0);
        format!(
            "Density(dim={}, axis0=[{}, {}] x {})",
            self.inner.dim(),
            a.min,
            a.max,
            a.count
        )
    }
}

/// A normalized wavefunction with its ħ.
#[pyclass(name = "WaveFunction", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyWave {
    inner: WaveFunction,
}

#[pymethods]
impl PyWave {
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        match io::read_grid(path.as_ref()).py()? {
            GridData::Wave(inner) => Ok(PyWave { inner }),
            GridData::Density(_) => Err(PyValueError::new_err("file holds a density")),
        }
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.inner.hbar()
    }

    fn density(&self) -> PyResult<PyDensity> {
        Ok(PyDensity {
            inner: self.inner.density().py()?,
        })
    }

    /// Density of the momentum-space wavefunction.
    fn momentum_density(&self) -> PyResult<PyDensity> {
        let g = repscan_core::grid::fourier_conjugate(&self.inner).py()?;
        Ok(PyDensity {
            inner: g.density().py()?,
        })
    }

    #[pyo3(signature = (r = 1.0))]
    fn stam(&self, r: f64) -> PyResult<Report> {
        Ok(
            estimation::stam_check(&self.inner, r, CheckTolerances::default())
                .py()?
                .into(),
        )
    }

    #[pyo3(signature = (p = 2.0))]
    fn repur(&self, p: f64) -> PyResult<Report> {
        Ok(
            estimation::repur_check(&self.inner, p, CheckTolerances::default())
                .py()?
                .into(),
        )
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct Report {
    name: String,
    lhs: f64,
    rhs: f64,
    satisfied: bool,
    slack: f64,
    saturated: bool,
}

impl From<InequalityReport> for Report {
    fn from(r: InequalityReport) -> Self {
        Report {
            name: r.name,
            lhs: r.lhs,
            rhs: r.rhs,
            satisfied: r.satisfied,
            slack: r.slack,
            saturated: r.saturated,
        }
    }
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!(
            "Report({}, lhs={}, rhs={}, satisfied={}, saturated={})",
            self.name, self.lhs, self.rhs, self.satisfied, self.saturated
        )
    }
}

#[pyclass(frozen, get_all)]
pub struct Scan {
    kappa: Vec<f64>,
    /// (a, α, β) of the shifted gamma.
    reference: (f64, f64, f64),
    l1: f64,
    l1_reference_only: f64,
    centers: Vec<f64>,
    truth: Vec<f64>,
    series: Vec<f64>,
}

#[pyfunction]
#[pyo3(signature = (sigma2 = 1.0, grid = None))]
fn gaussian(sigma2: f64, grid: Option<(f64, f64, usize)>) -> PyResult<PyDensity> {
    Ok(PyDensity {
        inner: states::gaussian_1d(&line(grid)?, sigma2).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (lo = -0.5, hi = 0.5, grid = None))]
fn uniform(lo: f64, hi: f64, grid: Option<(f64, f64, usize)>) -> PyResult<PyDensity> {
    Ok(PyDensity {
        inner: states::uniform_density(&line(grid)?, &[(lo, hi)]).py()?,
    })
}

/// Quadrature density of a cat state; the grid defaults to one covering both peaks.
#[pyfunction]
#[pyo3(signature = (nu = 1.0, alpha = 5.0, theta = 0.0, grid = None))]
fn cat(nu: f64, alpha: f64, theta: f64, grid: Option<(f64, f64, usize)>) -> PyResult<PyDensity> {
    let p = CatStateParams::new(nu, alpha, theta);
    let spec = match grid {
        Some(_) => line(grid)?,
        None => fixtures::cat_grid(&p),
    };
    Ok(PyDensity {
        inner: states::cat_quadrature_density(&p, &spec).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (nu = 1.0, alpha = 5.0, hbar = 1.0))]
fn cat_wave(nu: f64, alpha: f64, hbar: f64) -> PyResult<PyWave> {
    let p = CatStateParams::new(nu, alpha, 0.0);
    let spec = fixtures::cat_grid(&p).scaled(hbar.sqrt()).py()?;
    Ok(PyWave {
        inner: states::cat_wavefunction(&p, &spec, hbar).py()?,
    })
}

#[pyfunction]
#[pyo3(signature = (sigma2 = 1.0, hbar = 1.0))]
fn gaussian_wave(sigma2: f64, hbar: f64) -> PyResult<PyWave> {
    Ok(PyWave {
        inner: fixtures::gaussian_packet(sigma2, hbar).py()?,
    })
}

#[pymodule]
fn repscan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDensity>()?;
    m.add_class::<PyWave>()?;
    m.add_class::<Report>()?;
    m.add_class::<Scan>()?;
    m.add_function(wrap_pyfunction!(gaussian, m)?)?;
    m.add_function(wrap_pyfunction!(uniform, m)?)?;
    m.add_function(wrap_pyfunction!(cat, m)?)?;
    m.add_function(wrap_pyfunction!(cat_wave, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_wave, m)?)?;
    Ok(())
}
