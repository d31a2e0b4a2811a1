//! Idler noise of the converter against the parametric amplifier at equal
//! coupling strength, both driven by vacuum.

use rayon::prelude::*;

use super::check_monotone;
use crate::devices::{tmsv_required_cutoff, Device};
use crate::error::{Error, Result};
use crate::fock::{make_vacuum, FockState, ModeRegistry};
use crate::gaussian::{gaussian_apply, GaussianState};
use crate::scan::ScanResult;
use crate::Backend;

/// Two-mode squeezed vacuum tail dropped by the amplifier's Fock truncation.
const TAIL_TARGET: f64 = 1e-16;

/// Quadrature phase at which variances are reported.
const QUADRATURE_PHASE: f64 = 0.0;

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseConfig {
    /// Converter angle `theta` and amplifier `squeeze` share each value.
    pub strengths: Vec<f64>,
    /// Fock cutoff of the amplifier modes; from the squeezing tail when `None`.
    pub cutoff: Option<usize>,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            strengths: super::linear_spaced(0.0, std::f64::consts::FRAC_PI_2, 10),
            cutoff: None,
        }
    }
}

fn registry(first: &str, cutoff: usize) -> Result<ModeRegistry> {
    ModeRegistry::from_triples([(first, 2.0, cutoff), ("idler", 1.0, cutoff)])
}

/// `(converter variance, amplifier variance, amplifier idler photons)` at `s`.
fn point(cfg: &NoiseConfig, s: f64, backend: Backend) -> Result<[f64; 3]> {
    let converter = Device::converter("pump", "idler", s, 0.0);
    let amplifier = Device::amplifier("signal", "idler", s, 0.0);
    match backend {
        Backend::Fock => {
            let reg = registry("pump", 1)?;
            let out: FockState = converter
                .blocked_unitary(&reg)?
                .apply_pure(&make_vacuum(&reg), &[0, 1])?
                .into();
            let conv_var = out.quadrature_variance("idler", QUADRATURE_PHASE)?;

            let reg = registry(
                "signal",
                cfg.cutoff
                    .unwrap_or_else(|| tmsv_required_cutoff(s, TAIL_TARGET).max(1)),
            )?;
            let out: FockState = amplifier
                .blocked_unitary(&reg)?
                .apply_pure(&make_vacuum(&reg), &[0, 1])?
                .into();
            Ok([
                conv_var,
                out.quadrature_variance("idler", QUADRATURE_PHASE)?,
                out.mean_photon("idler")?,
            ])
        }
        Backend::Gaussian => {
            let reg = registry("pump", 1)?;
            let out = gaussian_apply(&GaussianState::vacuum(&reg), &converter)?;
            let conv_var = out.quadrature_variance("idler", QUADRATURE_PHASE)?;
            let reg = registry("signal", 1)?;
            let out = gaussian_apply(&GaussianState::vacuum(&reg), &amplifier)?;
            Ok([
                conv_var,
                out.quadrature_variance("idler", QUADRATURE_PHASE)?,
                out.mean_photon("idler")?,
            ])
        }
    }
}

pub fn run_noise_comparison(cfg: &NoiseConfig, backend: Backend) -> Result<ScanResult> {
    check_monotone("strengths", &cfg.strengths)?;
    if cfg.strengths.iter().any(|&s| s < 0.0) {
        return Err(Error::InvalidScan("strengths must be >= 0".into()));
    }
    let values: Vec<[f64; 3]> = cfg
        .strengths
        .par_iter()
        .map(|&s| point(cfg, s, backend))
        .collect::<Result<_>>()?;
    let mut result = ScanResult::new(
        "noise",
        "strength",
        &[
            "converter_variance",
            "amplifier_variance",
            "amplifier_spontaneous_photons",
        ],
    )
    .with_meta("experiment", "noise")
    .with_meta("backend", backend.name())
    .with_meta("quadrature_phase", QUADRATURE_PHASE);
    for (&s, v) in cfg.strengths.iter().zip(values) {
        result.push_row(s, v.to_vec())?;
    }
    Ok(result)
}
