//! Python module `fconv`: registries, Fock and Gaussian states, devices,
//! circuits and the experiment scans.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use fconv_core::devices::compile_circuit;
use fconv_core::experiments::{self as exp, linear_spaced, log_spaced};
use fconv_core::fock::{self, make_coherent_product, make_fock, make_vacuum};
use fconv_core::{Backend, C64};

create_exception!(fconv, FconvError, PyException);

fn err(e: fconv_core::Error) -> PyErr {
    FconvError::new_err(e.to_string())
}

fn backend(name: &str) -> PyResult<Backend> {
    match name {
        "fock" => Ok(Backend::Fock),
        "gaussian" => Ok(Backend::Gaussian),
        other => Err(PyValueError::new_err(format!(
            "backend must be 'fock' or 'gaussian', not {other:?}"
        ))),
    }
}

#[pyclass(name = "ModeRegistry", frozen, from_py_object)]
#[derive(Clone)]
struct Registry(fconv_core::ModeRegistry);

#[pymethods]
impl Registry {
    /// `modes` is a list of `(label, frequency, cutoff)`.
    #[new]
    fn new(modes: Vec<(String, f64, usize)>) -> PyResult<Self> {
        fconv_core::ModeRegistry::from_triples(modes)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().map(String::from).collect()
    }

    #[getter]
    fn cutoffs(&self) -> Vec<usize> {
        self.0.cutoffs()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let modes: Vec<String> = self
            .0
            .modes()
            .iter()
            .map(|m| format!("({:?}, {}, {})", m.label, m.frequency, m.cutoff))
            .collect();
        format!("ModeRegistry([{}])", modes.join(", "))
    }
}

#[pyclass(name = "Device", frozen, from_py_object)]
#[derive(Clone)]
struct Device(fconv_core::Device);

#[pymethods]
impl Device {
    #[staticmethod]
    #[pyo3(signature = (pump, idler, theta, phi_s = 0.0))]
    fn converter(pump: &str, idler: &str, theta: f64, phi_s: f64) -> Self {
        Self(fconv_core::Device::converter(pump, idler, theta, phi_s))
    }

    #[staticmethod]
    #[pyo3(signature = (signal, idler, squeeze, phi_p = 0.0))]
    fn amplifier(signal: &str, idler: &str, squeeze: f64, phi_p: f64) -> Self {
        Self(fconv_core::Device::amplifier(signal, idler, squeeze, phi_p))
    }

    #[staticmethod]
    #[pyo3(signature = (pump, signal, idler, eta_tau, phase = 0.0))]
    fn trilinear(pump: &str, signal: &str, idler: &str, eta_tau: f64, phase: f64) -> Self {
        Self(fconv_core::Device::trilinear(
            pump, signal, idler, eta_tau, phase,
        ))
    }

    #[staticmethod]
    fn phase_shift(mode: &str, phi: f64) -> Self {
        Self(fconv_core::Device::phase_shift(mode, phi))
    }

    #[staticmethod]
    fn attenuator(mode: &str, transmission: f64) -> Self {
        Self(fconv_core::Device::attenuator(mode, transmission))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    #[getter]
    fn is_gaussian(&self) -> bool {
        self.0.is_gaussian()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "FockState", frozen, from_py_object)]
#[derive(Clone)]
struct FockState(fconv_core::FockState);

impl FockState {
    fn pure(&self) -> PyResult<&fconv_core::PureState> {
        self.0
            .as_pure()
            .ok_or_else(|| PyValueError::new_err("state is mixed"))
    }
}

#[pymethods]
impl FockState {
    #[staticmethod]
    fn vacuum(registry: &Registry) -> Self {
        Self(make_vacuum(&registry.0).into())
    }

    #[staticmethod]
    fn fock(registry: &Registry, occupations: Vec<usize>) -> PyResult<Self> {
        make_fock(&registry.0, &occupations)
            .map(|s| Self(s.into()))
            .map_err(err)
    }

    /// Product of coherent states, one amplitude per mode.
    #[staticmethod]
    fn coherent(registry: &Registry, alphas: Vec<C64>) -> PyResult<Self> {
        make_coherent_product(&registry.0, &alphas)
            .map(|s| Self(s.into()))
            .map_err(err)
    }

    #[getter]
    fn registry(&self) -> Registry {
        Registry(self.0.registry().clone())
    }

    #[getter]
    fn is_pure(&self) -> bool {
        self.0.as_pure().is_some()
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn purity(&self) -> f64 {
        self.0.to_density().purity()
    }

    fn mean_photon(&self, mode: &str) -> PyResult<f64> {
        self.0.mean_photon(mode).map_err(err)
    }

    #[pyo3(signature = (mode, phase = 0.0))]
    fn quadrature_variance(&self, mode: &str, phase: f64) -> PyResult<f64> {
        self.0.quadrature_variance(mode, phase).map_err(err)
    }

    fn amplitude(&self, occupations: Vec<usize>) -> PyResult<C64> {
        self.pure()?.amplitude(&occupations).map_err(err)
    }

    fn amplitudes(&self) -> PyResult<Vec<C64>> {
        Ok(self.pure()?.amplitudes().iter().copied().collect())
    }

    /// Rows of the density matrix.
    fn density_matrix(&self) -> Vec<Vec<C64>> {
        let rho = self.0.to_density();
        rho.matrix()
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    fn apply(&self, device: &Device) -> PyResult<Self> {
        Circuit::build(&self.0.registry().clone(), vec![device.0.clone()])?.run_fock(self)
    }

    fn apply_loss(&self, mode: &str, transmission: f64) -> PyResult<Self> {
        self.0.apply_loss(mode, transmission).map(Self).map_err(err)
    }

    fn partial_trace(&self, keep: Vec<String>) -> PyResult<Self> {
        let keep: Vec<&str> = keep.iter().map(String::as_str).collect();
        self.0
            .partial_trace(&keep)
            .map(|r| Self(r.into()))
            .map_err(err)
    }

    /// `<psi| rho |psi>` against a pure `other`.
    fn fidelity(&self, other: &FockState) -> PyResult<f64> {
        self.0.fidelity_with(other.pure()?).map_err(err)
    }
}

#[pyclass(name = "GaussianState", frozen, from_py_object)]
#[derive(Clone)]
struct GaussianState(fconv_core::GaussianState);

#[pymethods]
impl GaussianState {
    #[staticmethod]
    fn vacuum(registry: &Registry) -> Self {
        Self(fconv_core::GaussianState::vacuum(&registry.0))
    }

    #[staticmethod]
    fn coherent(registry: &Registry, alphas: Vec<C64>) -> PyResult<Self> {
        fconv_core::GaussianState::coherent(&registry.0, &alphas)
            .map(Self)
            .map_err(err)
    }

    /// Quadrature means ordered `x1, p1, x2, p2, ...`.
    #[getter]
    fn means(&self) -> Vec<f64> {
        self.0.means().iter().copied().collect()
    }

    #[getter]
    fn covariance(&self) -> Vec<Vec<f64>> {
        self.0
            .covariance()
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    fn amplitude(&self, mode: &str) -> PyResult<C64> {
        self.0.amplitude(mode).map_err(err)
    }

    fn mean_photon(&self, mode: &str) -> PyResult<f64> {
        self.0.mean_photon(mode).map_err(err)
    }

    #[pyo3(signature = (mode, phase = 0.0))]
    fn quadrature_variance(&self, mode: &str, phase: f64) -> PyResult<f64> {
        self.0.quadrature_variance(mode, phase).map_err(err)
    }

    fn uncertainty_margin(&self) -> f64 {
        self.0.uncertainty_margin()
    }

    fn apply(&self, device: &Device) -> PyResult<Self> {
        fconv_core::gaussian::gaussian_apply(&self.0, &device.0)
            .map(Self)
            .map_err(err)
    }
}

#[pyclass(name = "Circuit", frozen)]
struct Circuit(fconv_core::Circuit);

impl Circuit {
    fn build(
        registry: &fconv_core::ModeRegistry,
        devices: Vec<fconv_core::Device>,
    ) -> PyResult<Self> {
        fconv_core::Circuit::new(registry.clone(), devices)
            .map(Self)
            .map_err(err)
    }
}

#[pymethods]
impl Circuit {
    #[new]
    fn new(registry: &Registry, devices: Vec<Device>) -> PyResult<Self> {
        Self::build(&registry.0, devices.into_iter().map(|d| d.0).collect())
    }

    fn run_fock(&self, state: &FockState) -> PyResult<FockState> {
        let program = compile_circuit(&self.0, Backend::Fock).map_err(err)?;
        let fock = program.as_fock().expect("fock program");
        fock.run(&state.0).map(FockState).map_err(err)
    }

    fn run_gaussian(&self, state: &GaussianState) -> PyResult<GaussianState> {
        let program = compile_circuit(&self.0, Backend::Gaussian).map_err(err)?;
        let gaussian = program.as_gaussian().expect("gaussian program");
        gaussian.run(&state.0).map(GaussianState).map_err(err)
    }
}

#[pyclass(name = "ScanResult", frozen)]
struct ScanResult(fconv_core::ScanResult);

#[pymethods]
impl ScanResult {
    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    #[getter]
    fn abscissa_label(&self) -> &str {
        &self.0.abscissa_label
    }

    #[getter]
    fn columns(&self) -> Vec<String> {
        self.0.column_labels.clone()
    }

    #[getter]
    fn metadata(&self) -> BTreeMap<String, String> {
        self.0.metadata.clone()
    }

    #[getter]
    fn rows(&self) -> Vec<(f64, Vec<f64>)> {
        self.0.rows().to_vec()
    }

    fn abscissae(&self) -> Vec<f64> {
        self.0.abscissae()
    }

    fn column(&self, label: &str) -> PyResult<Vec<f64>> {
        self.0
            .column(label)
            .ok_or_else(|| PyValueError::new_err(format!("no column {label:?}")))
    }

    fn to_csv(&self) -> String {
        self.0.to_csv()
    }

    fn write_csv(&self, path: std::path::PathBuf) -> PyResult<()> {
        fconv_core::scan::write_csv(&self.0, &path).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.rows().len()
    }
}

fn scan(r: fconv_core::Result<fconv_core::ScanResult>) -> PyResult<ScanResult> {
    r.map(ScanResult).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (transmissions = None, theta = None, alpha_pump = C64::new(1.0, 0.0), noise_floor = 0.0, cutoff = None, backend = "fock"))]
fn run_linearity(
    transmissions: Option<Vec<f64>>,
    theta: Option<f64>,
    alpha_pump: C64,
    noise_floor: f64,
    cutoff: Option<usize>,
    backend: &str,
) -> PyResult<ScanResult> {
    let base = exp::LinearityConfig::default();
    let cfg = exp::LinearityConfig {
        transmissions: transmissions.unwrap_or_else(|| log_spaced(1.0, 0.01, 20)),
        theta: theta.unwrap_or(base.theta),
        alpha_pump,
        noise_floor,
        cutoff,
    };
    scan(exp::run_linearity(&cfg, self::backend(backend)?))
}

#[pyfunction]
#[pyo3(signature = (phi_p = None, alpha_pump = C64::new(1.0, 0.0), alpha_ref = C64::new(0.25, 0.0), theta = FRAC_PI_6, phi_s = 0.0, cutoff = None, backend = "fock"))]
fn run_fringe(
    phi_p: Option<Vec<f64>>,
    alpha_pump: C64,
    alpha_ref: C64,
    theta: f64,
    phi_s: f64,
    cutoff: Option<usize>,
    backend: &str,
) -> PyResult<ScanResult> {
    let cfg = exp::FringeConfig {
        phi_p_points: phi_p.unwrap_or_else(|| exp::FringeConfig::default().phi_p_points),
        alpha_pump,
        alpha_ref,
        theta,
        phi_s,
        cutoff,
    };
    scan(exp::run_fringe(&cfg, self::backend(backend)?))
}

#[pyfunction]
#[pyo3(signature = (strengths = None, cutoff = None, backend = "fock"))]
fn run_noise(
    strengths: Option<Vec<f64>>,
    cutoff: Option<usize>,
    backend: &str,
) -> PyResult<ScanResult> {
    let cfg = exp::NoiseConfig {
        strengths: strengths.unwrap_or_else(|| linear_spaced(0.0, FRAC_PI_2, 10)),
        cutoff,
    };
    scan(exp::run_noise_comparison(&cfg, self::backend(backend)?))
}

/// Single-photon pump unless `pump` (a one-mode pure FockState) is given.
#[pyfunction]
#[pyo3(signature = (alpha_s = None, theta = FRAC_PI_2, pump = None, signal_cutoff = None))]
fn run_depletion(
    alpha_s: Option<Vec<f64>>,
    theta: f64,
    pump: Option<FockState>,
    signal_cutoff: Option<usize>,
) -> PyResult<ScanResult> {
    let base = exp::DepletionConfig::single_photon();
    let pump_input = match pump {
        Some(p) => p.pure()?.clone(),
        None => base.pump_input.clone(),
    };
    let cfg = exp::DepletionConfig {
        alpha_s_points: alpha_s.unwrap_or(base.alpha_s_points),
        theta,
        pump_input,
        signal_cutoff,
    };
    scan(exp::run_depletion_convergence(&cfg))
}

/// `channels` lists `(signal_frequency, theta, phi)`; returns the scan,
/// the channel amplitudes and the amplitude left in the pump.
#[pyfunction]
fn run_wdm(
    pump_frequency: f64,
    channels: Vec<(f64, f64, f64)>,
) -> PyResult<(ScanResult, Vec<C64>, C64)> {
    let spec = exp::WdmSpec {
        pump_frequency,
        channels: channels
            .into_iter()
            .map(|(signal_frequency, theta, phi)| exp::WdmChannel {
                signal_frequency,
                theta,
                phi,
            })
            .collect(),
    };
    let r = exp::run_wdm(&spec).map_err(err)?;
    Ok((ScanResult(r.scan), r.amplitudes, r.residual))
}

#[pyfunction]
fn fidelity(a: &FockState, b: &FockState) -> PyResult<f64> {
    fock::fidelity(a.pure()?, b.pure()?).map_err(err)
}

#[pymodule]
fn fconv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FconvError", m.py().get_type::<FconvError>())?;
    m.add_class::<Registry>()?;
    m.add_class::<Device>()?;
    m.add_class::<FockState>()?;
    m.add_class::<GaussianState>()?;
    m.add_class::<Circuit>()?;
    m.add_class::<ScanResult>()?;
    m.add_function(wrap_pyfunction!(run_linearity, m)?)?;
    m.add_function(wrap_pyfunction!(run_fringe, m)?)?;
    m.add_function(wrap_pyfunction!(run_noise, m)?)?;
    m.add_function(wrap_pyfunction!(run_depletion, m)?)?;
    m.add_function(wrap_pyfunction!(run_wdm, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    Ok(())
}
