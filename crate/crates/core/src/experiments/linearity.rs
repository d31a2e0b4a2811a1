//! Idler output against pump attenuation: pump `|alpha_p>` passes an
//! attenuator of transmission `T`, then a weak converter of angle `theta`.
//! The idler mean photon number is `T |alpha_p|^2 sin^2(theta)` plus a
//! constant detector floor.

use rayon::prelude::*;

use super::{check_monotone, log_spaced};
use crate::devices::{compile_circuit, Circuit, Device};
use crate::error::{Error, Result};
use crate::fock::{coherent_required_cutoff, make_coherent, FockState, ModeRegistry};
use crate::gaussian::GaussianState;
use crate::scan::ScanResult;
use crate::{Backend, C64};

/// Fock truncation target for the pump amplitude; tighter than the
/// constructor's minimum so the scan is accurate well below 1e-9.
const TAIL_TARGET: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearityConfig {
    /// Strictly decreasing, each in (0, 1].
    pub transmissions: Vec<f64>,
    pub theta: f64,
    pub alpha_pump: C64,
    pub noise_floor: f64,
    /// Per-mode Fock cutoff; chosen from `alpha_pump` when `None`.
    pub cutoff: Option<usize>,
}

impl Default for LinearityConfig {
    fn default() -> Self {
        Self {
            transmissions: log_spaced(1.0, 0.01, 20),
            // sin^2(theta) = 1 %
            theta: 0.1f64.asin(),
            alpha_pump: C64::new(1.0, 0.0),
            noise_floor: 0.0,
            cutoff: None,
        }
    }
}

impl LinearityConfig {
    pub fn validate(&self) -> Result<()> {
        check_monotone("transmissions", &self.transmissions)?;
        if self.transmissions.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidScan(
                "transmissions must be strictly decreasing".into(),
            ));
        }
        if self.transmissions.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
            return Err(Error::InvalidScan(
                "transmissions must lie in (0, 1]".into(),
            ));
        }
        if self.noise_floor.is_nan() || self.noise_floor < 0.0 {
            return Err(Error::InvalidScan("noise floor must be >= 0".into()));
        }
        if self.theta.is_nan() || self.theta < 0.0 {
            return Err(Error::InvalidScan("theta must be >= 0".into()));
        }
        Ok(())
    }

    pub fn fock_cutoff(&self) -> usize {
        self.cutoff
            .unwrap_or_else(|| coherent_required_cutoff(self.alpha_pump, TAIL_TARGET).max(1))
    }

    /// Closed-form idler mean photon number at transmission `t`.
    pub fn predicted(&self, t: f64) -> f64 {
        t * self.alpha_pump.norm_sqr() * self.theta.sin().powi(2) + self.noise_floor
    }
}

fn registry(cutoff: usize) -> Result<ModeRegistry> {
    ModeRegistry::from_triples([("pump", 2.0, cutoff), ("idler", 1.0, cutoff)])
}

fn circuit(reg: &ModeRegistry, cfg: &LinearityConfig, t: f64) -> Result<Circuit> {
    Circuit::new(
        reg.clone(),
        vec![
            Device::attenuator("pump", t),
            Device::converter("pump", "idler", cfg.theta, 0.0),
        ],
    )
}

pub fn run_linearity(cfg: &LinearityConfig, backend: Backend) -> Result<ScanResult> {
    cfg.validate()?;
    let cutoff = cfg.fock_cutoff();
    let reg = registry(cutoff)?;
    let values: Vec<f64> = match backend {
        Backend::Fock => {
            let input: FockState = make_coherent(&reg, "pump", cfg.alpha_pump)?.into();
            cfg.transmissions
                .par_iter()
                .map(|&t| {
                    let program = compile_circuit(&circuit(&reg, cfg, t)?, backend)?;
                    let out = program.as_fock().expect("fock program").run(&input)?;
                    out.mean_photon("idler")
                })
                .collect::<Result<_>>()?
        }
        Backend::Gaussian => {
            let input = GaussianState::coherent(&reg, &[cfg.alpha_pump, C64::new(0.0, 0.0)])?;
            cfg.transmissions
                .par_iter()
                .map(|&t| {
                    let program = compile_circuit(&circuit(&reg, cfg, t)?, backend)?;
                    let out = program
                        .as_gaussian()
                        .expect("gaussian program")
                        .run(&input)?;
                    out.mean_photon("idler")
                })
                .collect::<Result<_>>()?
        }
    };
    let mut result = ScanResult::new("linearity", "transmission", &["idler_mean_photons"])
        .with_meta("experiment", "linearity")
        .with_meta("backend", backend.name())
        .with_meta("theta", cfg.theta)
        .with_meta("alpha_pump", format!("{}", cfg.alpha_pump))
        .with_meta("noise_floor", cfg.noise_floor);
    if backend == Backend::Fock {
        result = result.with_meta("cutoff", cutoff);
    }
    for (&t, v) in cfg.transmissions.iter().zip(values) {
        result.push_row(t, vec![v + cfg.noise_floor])?;
    }
    Ok(result)
}
