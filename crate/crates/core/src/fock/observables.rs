//! Expectation values of normally ordered ladder monomials.
//!
//! Quadratures follow `X_phi = (a e^{-i phi} + a^dagger e^{i phi}) / 2`, so
//! the vacuum variance is 1/4. Means and covariances are returned in the
//! `(x_1, p_1, ..., x_M, p_M)` ordering shared with the Gaussian backend.

use nalgebra::{DMatrix, DVector};

use super::registry::ModeRegistry;
use super::state::{FockDensityOp, FockState, PureState};
use crate::error::Result;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Lower(usize),
    Raise(usize),
}

/// Applies the operator product `ops[0] ops[1] ... ops[n-1]` (rightmost
/// first) to basis state `index`. `None` when the result vanishes or leaves
/// the truncated space.
pub(crate) fn apply_monomial(
    reg: &ModeRegistry,
    ops: &[Ladder],
    index: usize,
) -> Option<(usize, f64)> {
    let mut idx = index;
    let mut coeff = 1.0;
    for op in ops.iter().rev() {
        match *op {
            Ladder::Lower(k) => {
                let n = reg.occupation(idx, k);
                if n == 0 {
                    return None;
                }
                coeff *= (n as f64).sqrt();
                idx -= reg.strides()[k];
            }
            Ladder::Raise(k) => {
                let n = reg.occupation(idx, k);
                if n == reg.modes()[k].cutoff {
                    return None;
                }
                coeff *= ((n + 1) as f64).sqrt();
                idx += reg.strides()[k];
            }
        }
    }
    Some((idx, coeff))
}

fn expect_pure(state: &PureState, ops: &[Ladder]) -> C64 {
    let a = &state.amplitudes;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..a.len() {
        if a[j].re == 0.0 && a[j].im == 0.0 {
            continue;
        }
        if let Some((i, c)) = apply_monomial(&state.registry, ops, j) {
            acc += a[i].conj() * a[j] * c;
        }
    }
    acc
}

fn expect_density(state: &FockDensityOp, ops: &[Ladder]) -> C64 {
    // tr(A rho) = sum_j <i(j)| rho ... = sum_j c_j rho[j, i(j)]
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..state.dim() {
        if let Some((i, c)) = apply_monomial(&state.registry, ops, j) {
            acc += state.matrix[(j, i)] * c;
        }
    }
    acc
}

impl FockState {
    /// `<ops[0] ... ops[n-1]>`.
    pub fn expect(&self, ops: &[Ladder]) -> C64 {
        match self {
            FockState::Pure(s) => expect_pure(s, ops),
            FockState::Mixed(r) => expect_density(r, ops),
        }
    }

    pub fn mean_photon(&self, mode: &str) -> Result<f64> {
        let k = self.registry().index_of(mode)?;
        Ok(self.expect(&[Ladder::Raise(k), Ladder::Lower(k)]).re)
    }

    pub fn quadrature_variance(&self, mode: &str, phase: f64) -> Result<f64> {
        let k = self.registry().index_of(mode)?;
        let a = self.expect(&[Ladder::Lower(k)]);
        let aa = self.expect(&[Ladder::Lower(k), Ladder::Lower(k)]);
        let n = self.expect(&[Ladder::Raise(k), Ladder::Lower(k)]).re;
        let rot = C64::from_polar(1.0, -phase);
        let mean = (rot * a).re;
        let second = (2.0 * (rot * rot * aa).re + 2.0 * n + 1.0) / 4.0;
        Ok(second - mean * mean)
    }

    /// Quadrature means (length 2M) and symmetrized covariance (2M x 2M).
    pub fn quadrature_moments(&self) -> (DVector<f64>, DMatrix<f64>) {
        let m = self.registry().len();
        let mut alpha = vec![C64::new(0.0, 0.0); m];
        for (k, a) in alpha.iter_mut().enumerate() {
            *a = self.expect(&[Ladder::Lower(k)]);
        }
        let mut means = DVector::zeros(2 * m);
        for k in 0..m {
            means[2 * k] = alpha[k].re;
            means[2 * k + 1] = alpha[k].im;
        }
        let mut cov = DMatrix::zeros(2 * m, 2 * m);
        for k in 0..m {
            for l in k..m {
                // <a_k a_l> and <a_k^dagger a_l>
                let akal = self.expect(&[Ladder::Lower(k), Ladder::Lower(l)]);
                let adkal = self.expect(&[Ladder::Raise(k), Ladder::Lower(l)]);
                // central moments
                let c_aa = akal - alpha[k] * alpha[l];
                let c_ada = adkal - alpha[k].conj() * alpha[l];
                // x = (a + a^dagger)/2, p = (a - a^dagger)/(2i); symmetrized
                // products in terms of c_aa and c_ada (+ delta for k = l)
                let delta = if k == l { 0.5 } else { 0.0 };
                let sym = c_ada.re + delta;
                let xx = 0.5 * (c_aa.re + sym);
                let pp = 0.5 * (-c_aa.re + sym);
                let xp = 0.5 * (c_aa.im + c_ada.im);
                let px = 0.5 * (c_aa.im - c_ada.im);
                cov[(2 * k, 2 * l)] = xx;
                cov[(2 * k + 1, 2 * l + 1)] = pp;
                cov[(2 * k, 2 * l + 1)] = xp;
                cov[(2 * k + 1, 2 * l)] = px;
                cov[(2 * l, 2 * k)] = xx;
                cov[(2 * l + 1, 2 * k + 1)] = pp;
                cov[(2 * l + 1, 2 * k)] = xp;
                cov[(2 * l, 2 * k + 1)] = px;
            }
        }
        (means, cov)
    }
}

pub fn mean_photon(state: &FockState, mode: &str) -> Result<f64> {
    state.mean_photon(mode)
}

pub fn quadrature_variance(state: &FockState, mode: &str, phase: f64) -> Result<f64> {
    state.quadrature_variance(mode, phase)
}
