//! Convergence of the full trilinear dynamics to the converter as the
//! injected signal grows.
//!
//! For each signal amplitude `|alpha_s|` the coupling is set to
//! `eta_tau = theta / |alpha_s|`, so the linearized model is always a
//! converter of angle `theta`. The trilinear evolution of
//! `pump ⊗ |alpha_s> ⊗ |0>` is reduced to pump and idler and compared with
//! the converter output by fidelity.

use rayon::prelude::*;

use super::check_monotone;
use crate::devices::{linearized_converter, Device};
use crate::error::{Error, Result};
use crate::fock::{
    coherent_required_cutoff, make_coherent, make_vacuum, partial_trace_pure, Mode, ModeRegistry,
    PureState, COHERENT_TAIL_TOLERANCE,
};
use crate::scan::ScanResult;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct DepletionConfig {
    /// Signal amplitudes, each > 0, strictly monotone.
    pub alpha_s_points: Vec<f64>,
    pub theta: f64,
    /// Single-mode pump state; its mode label and cutoff are kept.
    pub pump_input: PureState,
    /// Signal Fock cutoff; the smallest admissible one when `None`.
    pub signal_cutoff: Option<usize>,
}

impl DepletionConfig {
    /// Single pump photon, `theta = pi/2`, `|alpha_s|` in {2, 3, 4, 5}.
    pub fn single_photon() -> Self {
        let reg = ModeRegistry::from_triples([("pump", 2.0, 1)]).expect("valid registry");
        Self {
            alpha_s_points: vec![2.0, 3.0, 4.0, 5.0],
            theta: std::f64::consts::FRAC_PI_2,
            pump_input: crate::fock::make_fock(&reg, &[1]).expect("valid occupation"),
            signal_cutoff: None,
        }
    }

    /// Smallest signal cutoff keeping the coherent truncation policy for
    /// the largest amplitude, plus room for the photons the pump can add.
    pub fn required_signal_cutoff(&self) -> usize {
        let alpha_max = self
            .alpha_s_points
            .iter()
            .fold(0.0f64, |a, &b| a.max(b.abs()));
        coherent_required_cutoff(C64::new(alpha_max, 0.0), COHERENT_TAIL_TOLERANCE)
            + self.pump_cutoff()
    }

    fn pump_cutoff(&self) -> usize {
        self.pump_input.registry().modes()[0].cutoff
    }
}

fn fidelity_at(cfg: &DepletionConfig, alpha_s: f64, signal_cutoff: usize) -> Result<(f64, f64)> {
    let pump_mode = cfg.pump_input.registry().modes()[0].clone();
    let pump_label = pump_mode.label.clone();
    let idler = Mode {
        label: "idler".into(),
        frequency: pump_mode.frequency / 2.0,
        cutoff: pump_mode.cutoff,
    };
    let signal = Mode {
        label: "signal".into(),
        frequency: pump_mode.frequency - idler.frequency,
        cutoff: signal_cutoff,
    };
    let signal_reg = ModeRegistry::new(vec![signal])?;
    let idler_reg = ModeRegistry::new(vec![idler])?;
    let alpha = C64::new(alpha_s, 0.0);

    let input = cfg
        .pump_input
        .tensor(&make_coherent(&signal_reg, "signal", alpha)?)?
        .tensor(&make_vacuum(&idler_reg))?;
    let coupler = Device::trilinear(&pump_label, "signal", "idler", cfg.theta / alpha_s, 0.0);
    let evolved = coupler
        .blocked_unitary(input.registry())?
        .apply_pure(&input, &[0, 1, 2])?;
    let reduced = partial_trace_pure(&evolved, &[pump_label.as_str(), "idler"])?;

    let converter = linearized_converter(&coupler, alpha)?;
    let linear_input = cfg.pump_input.tensor(&make_vacuum(&idler_reg))?;
    let linear_out = converter
        .blocked_unitary(linear_input.registry())?
        .apply_pure(&linear_input, &[0, 1])?;
    let fidelity = reduced.fidelity_with(&linear_out)?;
    let idler_photons = crate::fock::FockState::Mixed(reduced).mean_photon("idler")?;
    Ok((fidelity, idler_photons))
}

pub fn run_depletion_convergence(cfg: &DepletionConfig) -> Result<ScanResult> {
    check_monotone("alpha_s_points", &cfg.alpha_s_points)?;
    if cfg.alpha_s_points.iter().any(|&a| a.is_nan() || a <= 0.0) {
        return Err(Error::InvalidScan("signal amplitudes must be > 0".into()));
    }
    if cfg.pump_input.registry().len() != 1 {
        return Err(Error::InvalidScan(
            "pump input must be a single-mode state".into(),
        ));
    }
    if cfg.theta.is_nan() || cfg.theta < 0.0 {
        return Err(Error::InvalidScan("theta must be >= 0".into()));
    }
    let signal_cutoff = cfg
        .signal_cutoff
        .unwrap_or_else(|| cfg.required_signal_cutoff());
    let values: Vec<(f64, f64)> = cfg
        .alpha_s_points
        .par_iter()
        .map(|&a| fidelity_at(cfg, a, signal_cutoff))
        .collect::<Result<_>>()?;
    let mut result = ScanResult::new("depletion", "alpha_s", &["fidelity", "idler_mean_photons"])
        .with_meta("experiment", "depletion")
        .with_meta("backend", "fock")
        .with_meta("theta", cfg.theta)
        .with_meta("pump_cutoff", cfg.pump_cutoff())
        .with_meta("signal_cutoff", signal_cutoff);
    for (&a, (f, n)) in cfg.alpha_s_points.iter().zip(values) {
        result.push_row(a, vec![f, n])?;
    }
    Ok(result)
}
