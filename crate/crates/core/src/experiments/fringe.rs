//! Interference of the converted idler with a reference field.
//!
//! Degenerate configuration: the idler and the reference share the
//! frequency `omega_p / 2`. The pump `|alpha_p e^{i phi_p}>` is converted
//! with angle `theta`, and the idler meets the reference `|alpha_ref>` on a
//! 50/50 combiner (a converter at `pi/4`). The recorded output port reads
//! `|a_i + alpha_ref|^2 / 2` with `a_i = -e^{-i phi_s} alpha_p e^{i phi_p} sin(theta)`.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use super::{check_monotone, linear_spaced};
use crate::devices::{compile_circuit, Circuit, CompiledCircuit, Device};
use crate::error::{Error, Result};
use crate::fock::{coherent_required_cutoff, make_coherent_product, FockState, ModeRegistry};
use crate::gaussian::GaussianState;
use crate::scan::ScanResult;
use crate::{Backend, C64};

const TAIL_TARGET: f64 = 1e-14;
const LASER_FREQUENCY: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct FringeConfig {
    pub phi_p_points: Vec<f64>,
    pub alpha_pump: C64,
    pub alpha_ref: C64,
    pub theta: f64,
    pub phi_s: f64,
    /// Per-mode Fock cutoff; chosen from the field amplitudes when `None`.
    pub cutoff: Option<usize>,
}

impl Default for FringeConfig {
    fn default() -> Self {
        Self {
            phi_p_points: linear_spaced(0.0, 4.0 * std::f64::consts::PI, 33),
            alpha_pump: C64::new(1.0, 0.0),
            alpha_ref: C64::new(0.25, 0.0),
            theta: std::f64::consts::FRAC_PI_6,
            phi_s: 0.0,
            cutoff: None,
        }
    }
}

/// `2 |a_i| |alpha_ref| / (|a_i|^2 + |alpha_ref|^2)` with `|a_i| = |alpha_p| sin(theta)`.
pub fn fringe_visibility(alpha_pump: C64, alpha_ref: C64, theta: f64) -> f64 {
    let ai = alpha_pump.norm() * theta.sin().abs();
    let ar = alpha_ref.norm();
    let denom = ai * ai + ar * ar;
    if denom == 0.0 {
        0.0
    } else {
        2.0 * ai * ar / denom
    }
}

impl FringeConfig {
    pub fn fock_cutoff(&self) -> usize {
        // every photon may end up in one mode
        let total = (self.alpha_pump.norm_sqr() + self.alpha_ref.norm_sqr()).sqrt();
        self.cutoff
            .unwrap_or_else(|| coherent_required_cutoff(C64::new(total, 0.0), TAIL_TARGET).max(1))
    }

    /// Closed-form output-port mean photon number at pump phase `phi_p`.
    pub fn predicted(&self, phi_p: f64) -> f64 {
        let ai = -C64::from_polar(1.0, -self.phi_s)
            * self.alpha_pump
            * C64::from_polar(self.theta.sin(), phi_p);
        (ai + self.alpha_ref).norm_sqr() / 2.0
    }
}

/// Pump at `2 omega`, idler and reference both at `omega`.
fn registry(cutoff: usize) -> Result<ModeRegistry> {
    let reg = ModeRegistry::from_triples([
        ("pump", 2.0 * LASER_FREQUENCY, cutoff),
        ("idler", LASER_FREQUENCY, cutoff),
        ("reference", LASER_FREQUENCY, cutoff),
    ])?;
    let (p, i, r) = (
        reg.mode("pump")?.frequency,
        reg.mode("idler")?.frequency,
        reg.mode("reference")?.frequency,
    );
    if i != r || (p - 2.0 * i).abs() > 0.0 {
        return Err(Error::InvalidScan(
            "fringe needs a degenerate configuration".into(),
        ));
    }
    Ok(reg)
}

pub fn run_fringe(cfg: &FringeConfig, backend: Backend) -> Result<ScanResult> {
    check_monotone("phi_p_points", &cfg.phi_p_points)?;
    if cfg.theta.is_nan() || cfg.theta < 0.0 {
        return Err(Error::InvalidScan("theta must be >= 0".into()));
    }
    let cutoff = cfg.fock_cutoff();
    let reg = registry(cutoff)?;
    let circuit = Circuit::new(
        reg.clone(),
        vec![
            Device::converter("pump", "idler", cfg.theta, cfg.phi_s),
            Device::converter("idler", "reference", FRAC_PI_4, 0.0),
        ],
    )?;
    let program = compile_circuit(&circuit, backend)?;
    let zero = C64::new(0.0, 0.0);
    let values: Vec<f64> = cfg
        .phi_p_points
        .par_iter()
        .map(|&phi_p| {
            let pump = cfg.alpha_pump * C64::from_polar(1.0, phi_p);
            let alphas = [pump, zero, cfg.alpha_ref];
            match &program {
                CompiledCircuit::Fock(p) => {
                    let input: FockState = make_coherent_product(&reg, &alphas)?.into();
                    p.run(&input)?.mean_photon("idler")
                }
                CompiledCircuit::Gaussian(p) => p
                    .run(&GaussianState::coherent(&reg, &alphas)?)?
                    .mean_photon("idler"),
            }
        })
        .collect::<Result<_>>()?;

    let mut result = ScanResult::new("fringe", "phi_p", &["output_mean_photons"])
        .with_meta("experiment", "fringe")
        .with_meta("backend", backend.name())
        .with_meta("theta", cfg.theta)
        .with_meta("phi_s", cfg.phi_s)
        .with_meta("alpha_pump", format!("{}", cfg.alpha_pump))
        .with_meta("alpha_ref", format!("{}", cfg.alpha_ref))
        .with_meta(
            "predicted_visibility",
            fringe_visibility(cfg.alpha_pump, cfg.alpha_ref, cfg.theta),
        );
    if backend == Backend::Fock {
        result = result.with_meta("cutoff", cutoff);
    }
    for (&phi, v) in cfg.phi_p_points.iter().zip(values) {
        result.push_row(phi, vec![v])?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::fit_sinusoid;

    #[test]
    fn no_reference_no_fringe() {
        let cfg = FringeConfig {
            alpha_ref: C64::new(0.0, 0.0),
            ..Default::default()
        };
        let r = run_fringe(&cfg, Backend::Gaussian).unwrap();
        let y = r.column("output_mean_photons").unwrap();
        let fit = fit_sinusoid(&r.abscissae(), &y);
        assert!(fit.visibility() < 1e-12);
        assert_eq!(
            fringe_visibility(cfg.alpha_pump, cfg.alpha_ref, cfg.theta),
            0.0
        );
    }

    #[test]
    fn balanced_fringe_has_unit_visibility() {
        let theta = std::f64::consts::FRAC_PI_6;
        let cfg = FringeConfig {
            alpha_pump: C64::new(1.0, 0.0),
            alpha_ref: C64::new(0.5, 0.0),
            theta,
            ..Default::default()
        };
        assert!((fringe_visibility(cfg.alpha_pump, cfg.alpha_ref, theta) - 1.0).abs() < 1e-15);
        let r = run_fringe(&cfg, Backend::Gaussian).unwrap();
        let fit = fit_sinusoid(&r.abscissae(), &r.column("output_mean_photons").unwrap());
        assert!((fit.visibility() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_matches_closed_form() {
        let cfg = FringeConfig {
            phi_s: 0.7,
            ..Default::default()
        };
        let r = run_fringe(&cfg, Backend::Gaussian).unwrap();
        for (phi, v) in r.rows() {
            assert!((v[0] - cfg.predicted(*phi)).abs() < 1e-12);
        }
    }
}
