//! The transformations of three-wave mixing and their backend actions.
//!
//! Conventions, fixed once here and relied on everywhere:
//!
//! * `Converter { theta, phi_s }` has the Heisenberg action
//!   `a_p -> a_p cos(theta) + e^{i phi_s} a_i sin(theta)`,
//!   `a_i -> a_i cos(theta) - e^{-i phi_s} a_p sin(theta)`,
//!   generated by `U = exp(kappa a_p^dag a_i - kappa^* a_p a_i^dag)` with
//!   `kappa = theta e^{i phi_s}`. `theta` stands for `|eta A_s| tau`.
//! * `Amplifier { squeeze, phi_p }` has the Heisenberg action
//!   `a_s -> G a_s + g a_i^dag`, `a_i -> G a_i + g a_s^dag` with
//!   `G = cosh(squeeze)` and `g = -e^{i phi_p} sinh(squeeze)`.
//! * `TrilinearCoupler { eta_tau, phase }` is `exp(-i H tau)` for
//!   `H = i eta a_p a_s^dag a_i^dag - i eta^* a_s a_i a_p^dag` with
//!   `eta tau = eta_tau e^{i phase}`.
//! * `PhaseShift { phi }` maps `a -> e^{i phi} a`.
//!
//! Heisenberg actions are `U^dag a U`, the operator whose expectation in the
//! input state equals the output expectation of `a`.

mod blocked;

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use nalgebra::DMatrix;

pub use blocked::{exp_hermitian, BlockedUnitary, GeneratorTerm};

use crate::error::{Error, Result};
use crate::fock::{FockState, Ladder, ModeRegistry};
use crate::gaussian::GaussianState;
use crate::{Backend, C64};

/// Conserved charges of a basis state, given its local occupations.
type ChargeFn = fn(&[usize]) -> Vec<i64>;

/// Largest two-mode-squeezed-vacuum tail the amplifier accepts at the
/// cutoffs it is built on.
pub const AMPLIFIER_TAIL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Device {
    Converter {
        pump_mode: String,
        idler_mode: String,
        theta: f64,
        phi_s: f64,
    },
    Amplifier {
        signal_mode: String,
        idler_mode: String,
        squeeze: f64,
        phi_p: f64,
    },
    TrilinearCoupler {
        pump_mode: String,
        signal_mode: String,
        idler_mode: String,
        eta_tau: f64,
        phase: f64,
    },
    PhaseShift {
        mode: String,
        phi: f64,
    },
    Attenuator {
        mode: String,
        transmission: f64,
    },
}

/// Linear mode map `a_j -> sum_k A_jk a_k + B_jk a_k^dag` over `modes`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bogoliubov {
    pub modes: Vec<usize>,
    pub a: DMatrix<C64>,
    pub b: DMatrix<C64>,
}

impl Device {
    pub fn converter(pump: &str, idler: &str, theta: f64, phi_s: f64) -> Self {
        Device::Converter {
            pump_mode: pump.into(),
            idler_mode: idler.into(),
            theta,
            phi_s,
        }
    }

    pub fn amplifier(signal: &str, idler: &str, squeeze: f64, phi_p: f64) -> Self {
        Device::Amplifier {
            signal_mode: signal.into(),
            idler_mode: idler.into(),
            squeeze,
            phi_p,
        }
    }

    pub fn trilinear(pump: &str, signal: &str, idler: &str, eta_tau: f64, phase: f64) -> Self {
        Device::TrilinearCoupler {
            pump_mode: pump.into(),
            signal_mode: signal.into(),
            idler_mode: idler.into(),
            eta_tau,
            phase,
        }
    }

    pub fn phase_shift(mode: &str, phi: f64) -> Self {
        Device::PhaseShift {
            mode: mode.into(),
            phi,
        }
    }

    pub fn attenuator(mode: &str, transmission: f64) -> Self {
        Device::Attenuator {
            mode: mode.into(),
            transmission,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Device::Converter { .. } => "converter",
            Device::Amplifier { .. } => "amplifier",
            Device::TrilinearCoupler { .. } => "trilinear coupler",
            Device::PhaseShift { .. } => "phase shift",
            Device::Attenuator { .. } => "attenuator",
        }
    }

    pub fn mode_labels(&self) -> Vec<&str> {
        match self {
            Device::Converter {
                pump_mode,
                idler_mode,
                ..
            } => vec![pump_mode, idler_mode],
            Device::Amplifier {
                signal_mode,
                idler_mode,
                ..
            } => vec![signal_mode, idler_mode],
            Device::TrilinearCoupler {
                pump_mode,
                signal_mode,
                idler_mode,
                ..
            } => vec![pump_mode, signal_mode, idler_mode],
            Device::PhaseShift { mode, .. } | Device::Attenuator { mode, .. } => vec![mode],
        }
    }

    pub fn is_gaussian(&self) -> bool {
        !matches!(self, Device::TrilinearCoupler { .. })
    }

    /// Checks parameters and resolves the device's modes in `registry`.
    pub fn resolve(&self, registry: &ModeRegistry) -> Result<Vec<usize>> {
        let nonneg = |name: &str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidDevice(format!(
                    "{name} must be finite and >= 0, got {v}"
                )))
            }
        };
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidDevice(format!("{name} must be finite")))
            }
        };
        match self {
            Device::Converter { theta, phi_s, .. } => {
                nonneg("theta", *theta)?;
                finite("phi_s", *phi_s)?;
            }
            Device::Amplifier { squeeze, phi_p, .. } => {
                nonneg("squeeze", *squeeze)?;
                finite("phi_p", *phi_p)?;
            }
            Device::TrilinearCoupler { eta_tau, phase, .. } => {
                nonneg("eta_tau", *eta_tau)?;
                finite("phase", *phase)?;
            }
            Device::PhaseShift { phi, .. } => finite("phi", *phi)?,
            Device::Attenuator { transmission, .. } => {
                if !(0.0..=1.0).contains(transmission) {
                    return Err(Error::TransmissionOutOfRange(*transmission));
                }
            }
        }
        let modes = self
            .mode_labels()
            .into_iter()
            .map(|l| registry.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        registry.check_distinct(&modes)?;
        Ok(modes)
    }

    /// Closed-form Heisenberg action for the unitary Gaussian devices.
    pub fn bogoliubov(&self, registry: &ModeRegistry) -> Result<Bogoliubov> {
        let modes = self.resolve(registry)?;
        let z = C64::new(0.0, 0.0);
        let (a, b) = match *self {
            Device::Converter { theta, phi_s, .. } => {
                let (s, c) = theta.sin_cos();
                let a = DMatrix::from_row_slice(
                    2,
                    2,
                    &[
                        C64::new(c, 0.0),
                        C64::from_polar(s, phi_s),
                        -C64::from_polar(s, -phi_s),
                        C64::new(c, 0.0),
                    ],
                );
                (a, DMatrix::zeros(2, 2))
            }
            Device::Amplifier { squeeze, phi_p, .. } => {
                let gain = C64::new(squeeze.cosh(), 0.0);
                let g = -C64::from_polar(squeeze.sinh(), phi_p);
                (
                    DMatrix::from_row_slice(2, 2, &[gain, z, z, gain]),
                    DMatrix::from_row_slice(2, 2, &[z, g, g, z]),
                )
            }
            Device::PhaseShift { phi, .. } => (
                DMatrix::from_element(1, 1, C64::from_polar(1.0, phi)),
                DMatrix::zeros(1, 1),
            ),
            Device::TrilinearCoupler { .. } | Device::Attenuator { .. } => {
                return Err(Error::NonGaussianDevice(self.kind().into()))
            }
        };
        Ok(Bogoliubov { modes, a, b })
    }

    /// Generator terms of `K` with `U = exp(-i K)` in local mode indices,
    /// and the conserved charges that block-diagonalize it.
    fn generator(&self) -> Option<(Vec<GeneratorTerm>, ChargeFn)> {
        use Ladder::{Lower, Raise};
        let i = C64::new(0.0, 1.0);
        match *self {
            Device::Converter { theta, phi_s, .. } => {
                // K = i (kappa a_p^dag a_i - kappa^* a_p a_i^dag)
                let kappa = C64::from_polar(theta, phi_s);
                Some((
                    vec![
                        (i * kappa, vec![Raise(0), Lower(1)]),
                        (-i * kappa.conj(), vec![Lower(0), Raise(1)]),
                    ],
                    |n| vec![(n[0] + n[1]) as i64],
                ))
            }
            Device::Amplifier { squeeze, phi_p, .. } => {
                // K = i (beta a_s^dag a_i^dag - beta^* a_s a_i), beta = -squeeze e^{i phi_p}
                let beta = -C64::from_polar(squeeze, phi_p);
                Some((
                    vec![
                        (i * beta, vec![Raise(0), Raise(1)]),
                        (-i * beta.conj(), vec![Lower(0), Lower(1)]),
                    ],
                    |n| vec![n[0] as i64 - n[1] as i64],
                ))
            }
            Device::TrilinearCoupler { eta_tau, phase, .. } => {
                // K = H tau = i (eta tau) a_s^dag a_i^dag a_p - i (eta tau)^* a_p^dag a_s a_i
                let et = C64::from_polar(eta_tau, phase);
                Some((
                    vec![
                        (i * et, vec![Raise(1), Raise(2), Lower(0)]),
                        (-i * et.conj(), vec![Raise(0), Lower(1), Lower(2)]),
                    ],
                    |n| vec![(n[0] + n[1]) as i64, n[1] as i64 - n[2] as i64],
                ))
            }
            Device::PhaseShift { phi, .. } => Some((
                vec![(C64::new(-phi, 0.0), vec![Raise(0), Lower(0)])],
                |n| vec![n[0] as i64],
            )),
            Device::Attenuator { .. } => None,
        }
    }

    /// Blocked unitary of this device on the Fock spaces of its own modes
    /// (in the order of [`Device::mode_labels`]).
    pub fn blocked_unitary(&self, registry: &ModeRegistry) -> Result<BlockedUnitary> {
        let modes = self.resolve(registry)?;
        if let Device::Amplifier { squeeze, .. } = self {
            check_amplifier_cutoff(registry, &modes, *squeeze)?;
        }
        let (terms, charges) = self
            .generator()
            .ok_or_else(|| Error::InvalidDevice(format!("{} is not unitary", self.kind())))?;
        let local = registry.subset(&modes)?;
        BlockedUnitary::from_generator(local, &terms, charges)
    }

    /// The device's unitary on the whole registry as a dense matrix.
    pub fn dense_unitary(&self, registry: &ModeRegistry) -> Result<DMatrix<C64>> {
        let modes = self.resolve(registry)?;
        self.blocked_unitary(registry)?
            .embed_dense(registry, &modes)
    }
}

/// `tanh^2(squeeze)`: ratio of successive photon-number probabilities in
/// the two-mode squeezed vacuum.
fn tmsv_ratio(squeeze: f64) -> f64 {
    let t = squeeze.tanh();
    t * t
}

/// Probability that two-mode squeezed vacuum has more than `cutoff` photons per mode.
pub fn tmsv_tail(squeeze: f64, cutoff: usize) -> f64 {
    tmsv_ratio(squeeze).powi(cutoff as i32 + 1)
}

/// Smallest per-mode cutoff whose two-mode squeezed vacuum tail is within `tolerance`.
pub fn tmsv_required_cutoff(squeeze: f64, tolerance: f64) -> usize {
    let lambda = tmsv_ratio(squeeze);
    if lambda == 0.0 {
        return 0;
    }
    let mut c = ((tolerance.ln() / lambda.ln()).ceil() as usize).saturating_sub(1);
    while tmsv_tail(squeeze, c) > tolerance {
        c += 1;
    }
    while c > 0 && tmsv_tail(squeeze, c - 1) <= tolerance {
        c -= 1;
    }
    c
}

fn check_amplifier_cutoff(registry: &ModeRegistry, modes: &[usize], squeeze: f64) -> Result<()> {
    for &k in modes {
        let m = &registry.modes()[k];
        if tmsv_tail(squeeze, m.cutoff) > AMPLIFIER_TAIL_TOLERANCE {
            return Err(Error::CutoffTooSmall {
                mode: m.label.clone(),
                cutoff: m.cutoff,
                required: tmsv_required_cutoff(squeeze, AMPLIFIER_TAIL_TOLERANCE),
            });
        }
    }
    Ok(())
}

fn require_kind(device: &Device, kind: &str) -> Result<()> {
    if device.kind() == kind {
        Ok(())
    } else {
        Err(Error::InvalidDevice(format!(
            "expected a {kind}, got a {}",
            device.kind()
        )))
    }
}

/// Dense unitary of a [`Device::Converter`] on the whole registry.
pub fn converter_unitary(registry: &ModeRegistry, device: &Device) -> Result<DMatrix<C64>> {
    require_kind(device, "converter")?;
    device.dense_unitary(registry)
}

/// Dense unitary of a [`Device::Amplifier`] on the whole registry.
pub fn amplifier_unitary(registry: &ModeRegistry, device: &Device) -> Result<DMatrix<C64>> {
    require_kind(device, "amplifier")?;
    device.dense_unitary(registry)
}

/// Dense unitary of a [`Device::TrilinearCoupler`] on the whole registry.
pub fn trilinear_unitary(registry: &ModeRegistry, device: &Device) -> Result<DMatrix<C64>> {
    require_kind(device, "trilinear coupler")?;
    device.dense_unitary(registry)
}

/// The converter a trilinear coupler reduces to when its signal mode holds
/// a strong coherent field of amplitude `alpha_s`: `a_s -> alpha_s` turns
/// the generator into `-(kappa a_p^dag a_i - kappa^* a_p a_i^dag)` with
/// `kappa = eta^* alpha_s tau`.
pub fn linearized_converter(device: &Device, alpha_s: C64) -> Result<Device> {
    match device {
        Device::TrilinearCoupler {
            pump_mode,
            idler_mode,
            eta_tau,
            phase,
            ..
        } => {
            let kappa = -C64::from_polar(*eta_tau, -*phase) * alpha_s;
            Ok(Device::Converter {
                pump_mode: pump_mode.clone(),
                idler_mode: idler_mode.clone(),
                theta: kappa.norm(),
                phi_s: kappa.arg(),
            })
        }
        other => Err(Error::InvalidDevice(format!(
            "expected a trilinear coupler, got a {}",
            other.kind()
        ))),
    }
}

/// Converter angle giving complete pump-to-idler transfer.
pub const UNIT_CONVERSION_THETA: f64 = FRAC_PI_2;

/// An ordered list of devices on a registry.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    registry: ModeRegistry,
    devices: Vec<Device>,
}

impl Circuit {
    pub fn new(registry: ModeRegistry, devices: Vec<Device>) -> Result<Self> {
        for d in &devices {
            d.resolve(&registry)?;
        }
        Ok(Self { registry, devices })
    }

    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    pub fn devices(&self) -> &[Device] {
        &self.devices
    }

    pub fn compile(&self, backend: Backend) -> Result<CompiledCircuit> {
        compile_circuit(self, backend)
    }
}

#[derive(Debug)]
enum FockStep {
    Unitary {
        modes: Vec<usize>,
        op: Arc<BlockedUnitary>,
    },
    Loss {
        mode: String,
        transmission: f64,
    },
}

/// A circuit lowered to Fock-space actions.
#[derive(Debug)]
pub struct FockProgram {
    registry: ModeRegistry,
    steps: Vec<FockStep>,
}

impl FockProgram {
    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    /// Applies every step in order. Pure states stay pure until the first loss.
    pub fn run(&self, state: &FockState) -> Result<FockState> {
        if state.registry() != &self.registry {
            return Err(Error::DimensionMismatch {
                expected: self.registry.dim(),
                actual: state.registry().dim(),
            });
        }
        let mut current = state.clone();
        for step in &self.steps {
            current = match step {
                FockStep::Unitary { modes, op } => match &current {
                    FockState::Pure(s) => FockState::Pure(op.apply_pure(s, modes)?),
                    FockState::Mixed(r) => FockState::Mixed(op.apply_density(r, modes)?),
                },
                FockStep::Loss { mode, transmission } => current.apply_loss(mode, *transmission)?,
            };
        }
        Ok(current)
    }
}

/// A circuit lowered to moment updates on Gaussian states.
#[derive(Debug, Clone)]
pub struct GaussianProgram {
    registry: ModeRegistry,
    devices: Vec<Device>,
}

impl GaussianProgram {
    pub fn run(&self, state: &GaussianState) -> Result<GaussianState> {
        if state.registry().labels().ne(self.registry.labels()) {
            return Err(Error::DimensionMismatch {
                expected: self.registry.len(),
                actual: state.registry().len(),
            });
        }
        self.devices
            .iter()
            .try_fold(state.clone(), |s, d| crate::gaussian::gaussian_apply(&s, d))
    }
}

#[derive(Debug)]
pub enum CompiledCircuit {
    Fock(FockProgram),
    Gaussian(GaussianProgram),
}

/// Lowers `circuit` to the chosen backend. Composition is left to right.
pub fn compile_circuit(circuit: &Circuit, backend: Backend) -> Result<CompiledCircuit> {
    match backend {
        Backend::Fock => {
            let mut steps = Vec::with_capacity(circuit.devices.len());
            for d in &circuit.devices {
                let modes = d.resolve(&circuit.registry)?;
                steps.push(match d {
                    Device::Attenuator { mode, transmission } => FockStep::Loss {
                        mode: mode.clone(),
                        transmission: *transmission,
                    },
                    _ => FockStep::Unitary {
                        modes,
                        op: Arc::new(d.blocked_unitary(&circuit.registry)?),
                    },
                });
            }
            Ok(CompiledCircuit::Fock(FockProgram {
                registry: circuit.registry.clone(),
                steps,
            }))
        }
        Backend::Gaussian => {
            if let Some(d) = circuit.devices.iter().find(|d| !d.is_gaussian()) {
                return Err(Error::NonGaussianDevice(d.kind().into()));
            }
            Ok(CompiledCircuit::Gaussian(GaussianProgram {
                registry: circuit.registry.clone(),
                devices: circuit.devices.clone(),
            }))
        }
    }
}

impl CompiledCircuit {
    pub fn as_fock(&self) -> Option<&FockProgram> {
        match self {
            CompiledCircuit::Fock(p) => Some(p),
            CompiledCircuit::Gaussian(_) => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&GaussianProgram> {
        match self {
            CompiledCircuit::Gaussian(p) => Some(p),
            CompiledCircuit::Fock(_) => None,
        }
    }
}
