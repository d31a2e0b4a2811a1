//! Test-only oracles, built independently of the crate's blocked path:
//! ladder operators as Kronecker products of truncated single-mode
//! matrices and unitaries by dense matrix exponentiation.
#![allow(dead_code)]

use fconv_core::fock::{make_coherent_product, ModeRegistry, PureState};
use fconv_core::C64;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Truncated single-mode annihilation operator on `0..=cutoff`.
pub fn lowering(cutoff: usize) -> DMatrix<C64> {
    let d = cutoff + 1;
    let mut a = DMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = c((n as f64).sqrt(), 0.0);
    }
    a
}

/// Annihilation operator of `mode` on the full registry (first mode slowest).
pub fn lowering_on(reg: &ModeRegistry, mode: usize) -> DMatrix<C64> {
    let mut op = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for (k, m) in reg.modes().iter().enumerate() {
        let factor = if k == mode {
            lowering(m.cutoff)
        } else {
            DMatrix::identity(m.cutoff + 1, m.cutoff + 1)
        };
        op = op.kronecker(&factor);
    }
    op
}

pub fn number_on(reg: &ModeRegistry, mode: usize) -> DMatrix<C64> {
    let a = lowering_on(reg, mode);
    a.adjoint() * a
}

/// Dense `exp(x)` of an anti-Hermitian generator.
pub fn dense_exp(x: &DMatrix<C64>) -> DMatrix<C64> {
    x.clone().exp()
}

/// `exp(kappa a_p^dag a_i - kappa^* a_p a_i^dag)`, kappa = theta e^{i phi}.
pub fn dense_converter(
    reg: &ModeRegistry,
    p: usize,
    i: usize,
    theta: f64,
    phi: f64,
) -> DMatrix<C64> {
    let ap = lowering_on(reg, p);
    let ai = lowering_on(reg, i);
    let kappa = C64::from_polar(theta, phi);
    let x = ap.adjoint() * &ai * kappa - &ap * ai.adjoint() * kappa.conj();
    dense_exp(&x)
}

/// `exp(beta a_s^dag a_i^dag - beta^* a_s a_i)`, beta = -r e^{i phi_p}.
pub fn dense_amplifier(reg: &ModeRegistry, s: usize, i: usize, r: f64, phi_p: f64) -> DMatrix<C64> {
    let a_s = lowering_on(reg, s);
    let a_i = lowering_on(reg, i);
    let beta = -C64::from_polar(r, phi_p);
    let x = a_s.adjoint() * a_i.adjoint() * beta - &a_s * &a_i * beta.conj();
    dense_exp(&x)
}

/// `exp(-i H tau)` with `H tau = i et a_p a_s^dag a_i^dag - i et^* a_s a_i a_p^dag`.
pub fn dense_trilinear(reg: &ModeRegistry, eta_tau: f64, phase: f64) -> DMatrix<C64> {
    let ap = lowering_on(reg, 0);
    let a_s = lowering_on(reg, 1);
    let ai = lowering_on(reg, 2);
    let et = C64::from_polar(eta_tau, phase);
    let x = a_s.adjoint() * ai.adjoint() * &ap * et - ap.adjoint() * &a_s * &ai * et.conj();
    dense_exp(&x)
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized random state with Gaussian-distributed amplitudes.
pub fn random_state(reg: &ModeRegistry, seed: u64) -> PureState {
    let mut r = rng(seed);
    let v = DVector::from_fn(reg.dim(), |_, _| {
        c(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)
    });
    let n = v.norm();
    PureState::from_amplitudes(reg, v / c(n, 0.0)).unwrap()
}

pub fn random_alpha(r: &mut ChaCha8Rng, max_norm: f64) -> C64 {
    C64::from_polar(
        max_norm * r.random::<f64>().sqrt(),
        std::f64::consts::TAU * r.random::<f64>(),
    )
}

pub fn coherent(reg: &ModeRegistry, alphas: &[C64]) -> PureState {
    make_coherent_product(reg, alphas).unwrap()
}

/// `<psi| op |psi>`.
pub fn expect(psi: &PureState, op: &DMatrix<C64>) -> C64 {
    psi.amplitudes().dotc(&(op * psi.amplitudes()))
}
