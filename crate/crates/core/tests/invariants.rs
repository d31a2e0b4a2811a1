//! Structural invariants of states, channels and symplectic maps.
mod common;

use common::*;
use fconv_core::devices::Device;
use fconv_core::fock::{
    apply_loss, make_coherent, make_fock, partial_trace, FockState, ModeRegistry,
};
use fconv_core::gaussian::{gaussian_apply, symplectic_form, symplectic_matrix, GaussianState};
use fconv_core::C64;
use proptest::prelude::*;

fn reg2(cutoff: usize) -> ModeRegistry {
    ModeRegistry::from_triples([("a", 2.0, cutoff), ("b", 1.0, cutoff)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn loss_composes_multiplicatively(t1 in 0.0f64..1.0, t2 in 0.0f64..1.0, seed in 0u64..1000) {
        let reg = reg2(4);
        let rho = random_state(&reg, seed).to_density();
        let twice = apply_loss(&apply_loss(&rho, "a", t1).unwrap(), "a", t2).unwrap();
        let once = apply_loss(&rho, "a", t1 * t2).unwrap();
        prop_assert!(max_abs(&(twice.matrix() - once.matrix())) < 1e-12);
    }

    #[test]
    fn loss_keeps_a_valid_density(t in 0.0f64..1.0, seed in 0u64..1000) {
        let reg = reg2(4);
        let rho = apply_loss(&random_state(&reg, seed).to_density(), "b", t).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        prop_assert!(rho.hermiticity_error() < 1e-12);
        prop_assert!(rho.min_eigenvalue() > -1e-12);
        prop_assert!(rho.purity() <= 1.0 + 1e-12);
    }

    #[test]
    fn loss_scales_photon_number(t in 0.0f64..1.0, seed in 0u64..1000) {
        let reg = reg2(5);
        let psi: FockState = random_state(&reg, seed).into();
        let n0 = psi.mean_photon("a").unwrap();
        let out = psi.apply_loss("a", t).unwrap();
        prop_assert!((out.mean_photon("a").unwrap() - t * n0).abs() < 1e-12);
        prop_assert!((out.mean_photon("b").unwrap() - psi.mean_photon("b").unwrap()).abs() < 1e-12);
    }

    #[test]
    fn coherent_state_has_vacuum_noise(re in -2.0f64..2.0, im in -2.0f64..2.0, phase in -3.2f64..3.2) {
        let reg = ModeRegistry::from_triples([("a", 1.0, 40)]).unwrap();
        let alpha = C64::new(re, im);
        let psi: FockState = make_coherent(&reg, "a", alpha).unwrap().into();
        prop_assert!((psi.quadrature_variance("a", phase).unwrap() - 0.25).abs() < 1e-9);
        prop_assert!((psi.mean_photon("a").unwrap() - alpha.norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn unitaries_preserve_norm(theta in 0.0f64..3.2, phi in -3.2f64..3.2, seed in 0u64..1000) {
        let reg = reg2(4);
        let psi = random_state(&reg, seed);
        let out = Device::converter("a", "b", theta, phi)
            .blocked_unitary(&reg).unwrap()
            .apply_pure(&psi, &[0, 1]).unwrap();
        prop_assert!((out.amplitudes().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symplectic_matrices_preserve_the_form(x in 0.0f64..2.0, phi in -3.2f64..3.2, kind in 0usize..3) {
        let reg = reg2(1);
        let d = match kind {
            0 => Device::converter("a", "b", x, phi),
            1 => Device::amplifier("a", "b", x, phi),
            _ => Device::phase_shift("b", phi),
        };
        let s = symplectic_matrix(&reg, &d).unwrap();
        let omega = symplectic_form(2);
        prop_assert!((&s * &omega * s.transpose() - &omega).amax() < 1e-10 * (1.0 + s.amax().powi(2)));
    }

    #[test]
    fn gaussian_circuits_respect_uncertainty(
        r in 0.0f64..1.0, t in 0.0f64..1.0, theta in 0.0f64..3.2, phi in -3.2f64..3.2,
    ) {
        let reg = reg2(1);
        let mut g = GaussianState::vacuum(&reg);
        for d in [
            Device::amplifier("a", "b", r, phi),
            Device::attenuator("a", t),
            Device::converter("a", "b", theta, -phi),
        ] {
            g = gaussian_apply(&g, &d).unwrap();
        }
        prop_assert!(g.uncertainty_margin() > -1e-10);
    }
}

#[test]
fn partial_trace_of_product_returns_factors() {
    let reg = reg2(3);
    let single = ModeRegistry::from_triples([("a", 2.0, 3)]).unwrap();
    let other = ModeRegistry::from_triples([("b", 1.0, 3)]).unwrap();
    let x = random_state(&single, 1);
    let y = random_state(&other, 2);
    let rho = x.tensor(&y).unwrap().to_density();
    assert_eq!(rho.registry().dim(), reg.dim());
    let ra = partial_trace(&rho, &["a"]).unwrap();
    let rb = partial_trace(&rho, &["b"]).unwrap();
    assert!(max_abs(&(ra.matrix() - x.to_density().matrix())) < 1e-12);
    assert!(max_abs(&(rb.matrix() - y.to_density().matrix())) < 1e-12);
}

#[test]
fn loss_of_single_photon_is_binomial() {
    let reg = ModeRegistry::from_triples([("a", 1.0, 3)]).unwrap();
    let t = 0.3;
    let rho = apply_loss(&make_fock(&reg, &[3]).unwrap().to_density(), "a", t).unwrap();
    for k in 0..=3u32 {
        let binom = [1.0, 3.0, 3.0, 1.0][k as usize];
        let p = binom * t.powi(k as i32) * (1.0 - t).powi(3 - k as i32);
        assert!((rho.matrix()[(k as usize, k as usize)].re - p).abs() < 1e-14);
    }
}
