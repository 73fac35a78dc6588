//! Python module `ptnc`. Matrices cross the boundary as lists of rows of
//! Python `complex`; any nested sequence of numbers is accepted on input.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ptnc_core::channels::{self, ChannelSpec};
use ptnc_core::experiment::{self, ExperimentConfig, ExperimentId};
use ptnc_core::schmidt::{self, AmplitudeMatrix};
use ptnc_core::validation::{run_validation, ValidationOptions};
use ptnc_core::{beamsplitter, measures, ptqubit, ComplexMatrix, Error, QubitState, TwoModeState};

type Rows = Vec<Vec<Complex64>>;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    ComplexMatrix::new(n, rows.into_iter().flatten().collect()).map_err(py_err)
}

fn to_state(rows: Rows) -> PyResult<TwoModeState> {
    TwoModeState::new(to_matrix(rows)?).map_err(py_err)
}

#[pyclass(name = "PTParams", frozen)]
struct PyPTParams {
    inner: ptqubit::PTParams,
}

#[pymethods]
impl PyPTParams {
    #[new]
    fn new(omega: f64, phi: f64, gamma: f64) -> PyResult<Self> {
        Ok(Self {
            inner: ptqubit::PTParams::new(omega, phi, gamma).map_err(py_err)?,
        })
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.omega_eff
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }

    /// Coupling modulus `J = |1 - Ω e^{iφ}|`.
    #[getter]
    fn j(&self) -> f64 {
        self.inner.j()
    }

    /// "PTS", "PTSB" or "EXCEPTIONAL".
    #[getter]
    fn phase(&self) -> &'static str {
        self.inner.phase().as_str()
    }

    fn eigenvalues(&self) -> (Complex64, Complex64) {
        ptqubit::eigenvalues(&self.inner)
    }

    fn h_eff(&self) -> Rows {
        ptqubit::h_eff(&self.inner).rows()
    }

    fn propagator(&self, t: f64) -> PyResult<Rows> {
        Ok(ptqubit::propagator(&self.inner, t).map_err(py_err)?.rows())
    }

    fn rho_t(&self, t: f64) -> PyResult<Rows> {
        Ok(ptqubit::rho_t(&self.inner, t).map_err(py_err)?.rows())
    }

    fn qubit_state(&self, t: f64) -> PyResult<PyQubitState> {
        Ok(PyQubitState {
            inner: ptqubit::qubit_state_at(&self.inner, t).map_err(py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "PTParams(omega={}, phi={}, gamma={})",
            self.inner.omega_eff, self.inner.phi, self.inner.gamma
        )
    }
}

#[pyclass(name = "QubitState", frozen)]
struct PyQubitState {
    inner: QubitState,
}

#[pymethods]
impl PyQubitState {
    #[new]
    #[pyo3(signature = (p, x = Complex64::new(0.0, 0.0)))]
    fn new(p: f64, x: Complex64) -> PyResult<Self> {
        Ok(Self {
            inner: QubitState::new(p, x).map_err(py_err)?,
        })
    }

    #[getter]
    fn p(&self) -> f64 {
        self.inner.p
    }

    #[getter]
    fn x(&self) -> Complex64 {
        self.inner.x
    }

    fn density(&self) -> Rows {
        self.inner.density().rows()
    }

    fn __repr__(&self) -> String {
        format!("QubitState(p={}, x={})", self.inner.p, self.inner.x)
    }
}

#[pyclass(name = "ChannelSpec", frozen)]
struct PyChannelSpec {
    inner: ChannelSpec,
}

#[pymethods]
impl PyChannelSpec {
    #[staticmethod]
    fn identity() -> Self {
        Self {
            inner: ChannelSpec::Identity,
        }
    }

    #[staticmethod]
    fn rtn(coupling: f64, switching_rate: f64) -> PyResult<Self> {
        Ok(Self {
            inner: ChannelSpec::rtn(coupling, switching_rate).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn phase_damping(eta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: ChannelSpec::phase_damping(eta).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn amplitude_damping(chi: f64) -> PyResult<Self> {
        Ok(Self {
            inner: ChannelSpec::amplitude_damping(chi).map_err(py_err)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind_name()
    }

    /// `None` unless the channel is RTN.
    #[getter]
    fn is_non_markovian(&self) -> Option<bool> {
        self.inner.is_non_markovian()
    }

    /// Λ(t), λ(t) or γ(t) depending on the channel.
    fn parameter_at(&self, t: f64) -> PyResult<f64> {
        self.inner.parameter_at(t).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("ChannelSpec.{}", self.inner)
    }
}

#[pyfunction]
fn bs_output(state: &PyQubitState) -> PyResult<Rows> {
    Ok(beamsplitter::bs_output(&state.inner).map_err(py_err)?.rho().rows())
}

#[pyfunction]
fn mid(rho: Rows) -> PyResult<f64> {
    measures::mid(&to_state(rho)?).map_err(py_err)
}

#[pyfunction]
fn concurrence(rho: Rows) -> PyResult<f64> {
    measures::concurrence(&to_state(rho)?).map_err(py_err)
}

#[pyfunction]
fn negativity(rho: Rows) -> PyResult<f64> {
    measures::negativity(&to_state(rho)?).map_err(py_err)
}

/// `(Q, C, N)`.
#[pyfunction]
fn measure_all(rho: Rows) -> PyResult<(f64, f64, f64)> {
    let m = measures::measure_all(&to_state(rho)?).map_err(py_err)?;
    Ok((m.mid, m.concurrence, m.negativity))
}

#[pyfunction]
fn apply_two_arm(spec_a: &PyChannelSpec, spec_b: &PyChannelSpec, t_a: f64, t_b: f64, rho: Rows) -> PyResult<Rows> {
    let out = channels::apply_two_arm(&spec_a.inner, &spec_b.inner, t_a, t_b, &to_state(rho)?).map_err(py_err)?;
    Ok(out.rho().rows())
}

#[pyfunction]
fn concurrence_analytic(
    state: &PyQubitState,
    spec_a: &PyChannelSpec,
    spec_b: &PyChannelSpec,
    t_a: f64,
    t_b: f64,
) -> PyResult<f64> {
    channels::concurrence_analytic(&state.inner, &spec_a.inner, &spec_b.inner, t_a, t_b).map_err(py_err)
}

#[pyfunction]
fn rtn_kernel(coupling: f64, switching_rate: f64, t: f64) -> PyResult<f64> {
    let spec = ChannelSpec::rtn(coupling, switching_rate).map_err(py_err)?;
    channels::rtn_kernel(&spec, t).map_err(py_err)
}

/// Schmidt coefficients `(σ+, σ-)` of `a|00> + b|01> + c|10> + d|11>`.
#[pyfunction]
fn singular_values(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PyResult<(f64, f64)> {
    Ok(schmidt::singular_values(&AmplitudeMatrix::new(a, b, c, d).map_err(py_err)?))
}

/// `(alpha, left_basis, right_basis)` for a normalized 4-component ket.
#[pyfunction]
fn schmidt_decompose(ket: Vec<Complex64>) -> PyResult<(f64, Rows, Rows)> {
    let m = AmplitudeMatrix::from_ket(&ket).map_err(py_err)?;
    let f = schmidt::schmidt_decompose(&m).map_err(py_err)?;
    let rows = |b: [[Complex64; 2]; 2]| b.iter().map(|v| v.to_vec()).collect();
    Ok((f.alpha, rows(f.left_basis), rows(f.right_basis)))
}

#[pyfunction]
fn pd_bell_diagonal_concurrence(lambda1: f64, lambda2: f64) -> PyResult<f64> {
    schmidt::pd_bell_diagonal_concurrence(lambda1, lambda2).map_err(py_err)
}

#[pyfunction]
fn list_experiments() -> Vec<&'static str> {
    ExperimentId::ALL.iter().map(|id| id.as_str()).collect()
}

/// CSV text of one experiment. Without `config` the built-in defaults are
/// used; with it, the TOML file at that path.
#[pyfunction]
#[pyo3(signature = (experiment, config = None))]
fn run_experiment(experiment: &str, config: Option<std::path::PathBuf>) -> PyResult<String> {
    let id: ExperimentId = experiment.parse().map_err(py_err)?;
    let cfg = match config {
        Some(path) => ExperimentConfig::load(&path).map_err(py_err)?,
        None => ExperimentConfig::builtin(id),
    };
    if cfg.experiment != id {
        return Err(PyValueError::new_err(format!("config describes '{}'", cfg.experiment)));
    }
    experiment::run(&cfg).and_then(|t| t.to_csv_string()).map_err(py_err)
}

/// `(all_passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (seed = None))]
fn validate(seed: Option<u64>) -> (bool, String) {
    let mut opts = ValidationOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    let report = run_validation(&opts);
    (report.all_passed(), report.to_string())
}

#[pymodule]
pub fn ptnc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPTParams>()?;
    m.add_class::<PyQubitState>()?;
    m.add_class::<PyChannelSpec>()?;
    m.add_function(wrap_pyfunction!(bs_output, m)?)?;
    m.add_function(wrap_pyfunction!(mid, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(measure_all, m)?)?;
    m.add_function(wrap_pyfunction!(apply_two_arm, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(rtn_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(singular_values, m)?)?;
    m.add_function(wrap_pyfunction!(schmidt_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(pd_bell_diagonal_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(list_experiments, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
