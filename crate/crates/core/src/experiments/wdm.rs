//! Single-photon wavelength-division multiplexing.
//!
//! One pump photon passes a cascade of converters, one per signal
//! frequency `omega_sk`, each writing into its own idler channel at
//! `omega_ik = omega_p - omega_sk`. With this crate's converter convention
//! the channel amplitudes are
//! `c_k = -e^{-i phi_k} sin(theta_k) prod_{j<k} cos(theta_j)` and the pump
//! keeps `c_0 = prod_j cos(theta_j)`.

use crate::devices::{compile_circuit, Circuit, Device};
use crate::error::{Error, Result};
use crate::fock::{make_fock, FockState, Mode, ModeRegistry};
use crate::scan::ScanResult;
use crate::{Backend, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WdmChannel {
    pub signal_frequency: f64,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WdmSpec {
    pub pump_frequency: f64,
    pub channels: Vec<WdmChannel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WdmResult {
    pub scan: ScanResult,
    /// `c_k` for channels `1..=K`, in channel order.
    pub amplitudes: Vec<C64>,
    /// Amplitude left in the pump mode.
    pub residual: C64,
    /// Expected total photon number over pump and all idlers.
    pub total_photons: f64,
}

impl WdmSpec {
    pub fn idler_frequencies(&self) -> Vec<f64> {
        self.channels
            .iter()
            .map(|c| self.pump_frequency - c.signal_frequency)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.channels.is_empty() {
            return Err(Error::InvalidScan("WDM needs at least one channel".into()));
        }
        for (k, idler) in self.idler_frequencies().into_iter().enumerate() {
            if idler.is_nan() || idler <= 0.0 {
                return Err(Error::EnergyConservationViolation {
                    channel: k + 1,
                    idler,
                });
            }
        }
        for c in &self.channels {
            if c.theta.is_nan() || c.theta < 0.0 || !c.phi.is_finite() {
                return Err(Error::InvalidScan(
                    "channel angles must be finite, theta >= 0".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn idler_label(k: usize) -> String {
        format!("idler{k}")
    }

    /// Pump plus one single-photon idler mode per channel.
    pub fn registry(&self) -> Result<ModeRegistry> {
        self.validate()?;
        let mut modes = vec![Mode {
            label: "pump".into(),
            frequency: self.pump_frequency,
            cutoff: 1,
        }];
        for (k, f) in self.idler_frequencies().into_iter().enumerate() {
            modes.push(Mode {
                label: Self::idler_label(k + 1),
                frequency: f,
                cutoff: 1,
            });
        }
        ModeRegistry::new(modes)
    }
}

pub fn run_wdm(spec: &WdmSpec) -> Result<WdmResult> {
    let reg = spec.registry()?;
    let devices = spec
        .channels
        .iter()
        .enumerate()
        .map(|(k, c)| Device::converter("pump", &WdmSpec::idler_label(k + 1), c.theta, c.phi))
        .collect();
    let circuit = Circuit::new(reg.clone(), devices)?;
    let program = compile_circuit(&circuit, Backend::Fock)?;
    let mut occupation = vec![0usize; reg.len()];
    occupation[0] = 1;
    let input: FockState = make_fock(&reg, &occupation)?.into();
    let out = program.as_fock().expect("fock program").run(&input)?;
    let psi = out.as_pure().expect("cascade is unitary");

    let residual = psi.amplitude(&occupation)?;
    let mut amplitudes = Vec::with_capacity(spec.channels.len());
    for k in 1..reg.len() {
        let mut occ = vec![0usize; reg.len()];
        occ[k] = 1;
        amplitudes.push(psi.amplitude(&occ)?);
    }
    let total_photons = reg
        .labels()
        .map(|l| out.mean_photon(l))
        .sum::<Result<f64>>()?;

    let channels: Vec<f64> = (1..=spec.channels.len()).map(|k| k as f64).collect();
    let norm: f64 = residual.norm_sqr() + amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>();
    let mut scan = ScanResult::new(
        "wdm",
        "channel",
        &[
            "idler_frequency",
            "probability",
            "amplitude_re",
            "amplitude_im",
        ],
    )
    .with_meta("experiment", "wdm")
    .with_meta("backend", "fock")
    .with_meta("pump_frequency", spec.pump_frequency)
    .with_meta("residual_probability", residual.norm_sqr())
    .with_meta("total_probability", norm)
    .with_meta("total_photons", total_photons);
    for ((x, c), f) in channels
        .iter()
        .zip(&amplitudes)
        .zip(spec.idler_frequencies())
    {
        scan.push_row(*x, vec![f, c.norm_sqr(), c.re, c.im])?;
    }
    Ok(WdmResult {
        scan,
        amplitudes,
        residual,
        total_photons,
    })
}
