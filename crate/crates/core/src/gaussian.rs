//! Gaussian states as quadrature means and covariance.
//!
//! Ordering is `(x_1, p_1, ..., x_M, p_M)` with `x = s (a + a^dag)` and
//! `p = -i s (a - a^dag)`, `s = QUADRATURE_SCALE`. With `s = 1/2` vacuum has
//! covariance `I/4` and a coherent state `|alpha>` has means
//! `(Re alpha, Im alpha)`, matching the Fock backend's moments.

use nalgebra::{DMatrix, DVector};

use crate::devices::Device;
use crate::error::{Error, Result};
use crate::fock::ModeRegistry;
use crate::C64;

/// `x = QUADRATURE_SCALE * (a + a^dag)`.
pub const QUADRATURE_SCALE: f64 = 0.5;

/// Vacuum variance of every quadrature, `QUADRATURE_SCALE^2`.
pub const VACUUM_VARIANCE: f64 = QUADRATURE_SCALE * QUADRATURE_SCALE;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    registry: ModeRegistry,
    means: DVector<f64>,
    covariance: DMatrix<f64>,
}

/// The symplectic form `Omega = diag([[0, 1], [-1, 0]], ...)` on `modes` modes.
pub fn symplectic_form(modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

fn rotation_block(z: C64) -> [[f64; 2]; 2] {
    [[z.re, -z.im], [z.im, z.re]]
}

fn conjugation_block(w: C64) -> [[f64; 2]; 2] {
    [[w.re, w.im], [w.im, -w.re]]
}

/// Real symplectic matrix of a unitary Gaussian device on the whole registry.
pub fn symplectic_matrix(registry: &ModeRegistry, device: &Device) -> Result<DMatrix<f64>> {
    let map = device.bogoliubov(registry).map_err(|e| match e {
        Error::NonGaussianDevice(_) if matches!(device, Device::Attenuator { .. }) => {
            Error::InvalidDevice("an attenuator is a channel, not a symplectic map".into())
        }
        other => other,
    })?;
    let m = registry.len();
    let mut s = DMatrix::<f64>::identity(2 * m, 2 * m);
    for &j in &map.modes {
        s[(2 * j, 2 * j)] = 0.0;
        s[(2 * j + 1, 2 * j + 1)] = 0.0;
    }
    for (lj, &j) in map.modes.iter().enumerate() {
        for (lk, &k) in map.modes.iter().enumerate() {
            let r = rotation_block(map.a[(lj, lk)]);
            let c = conjugation_block(map.b[(lj, lk)]);
            for u in 0..2 {
                for v in 0..2 {
                    s[(2 * j + u, 2 * k + v)] = r[u][v] + c[u][v];
                }
            }
        }
    }
    Ok(s)
}

impl GaussianState {
    pub fn vacuum(registry: &ModeRegistry) -> Self {
        let m = registry.len();
        Self {
            registry: registry.clone(),
            means: DVector::zeros(2 * m),
            covariance: DMatrix::identity(2 * m, 2 * m) * VACUUM_VARIANCE,
        }
    }

    /// Product of coherent states, one amplitude per mode.
    pub fn coherent(registry: &ModeRegistry, alphas: &[C64]) -> Result<Self> {
        if alphas.len() != registry.len() {
            return Err(Error::DimensionMismatch {
                expected: registry.len(),
                actual: alphas.len(),
            });
        }
        let mut state = Self::vacuum(registry);
        for (k, a) in alphas.iter().enumerate() {
            state.means[2 * k] = 2.0 * QUADRATURE_SCALE * a.re;
            state.means[2 * k + 1] = 2.0 * QUADRATURE_SCALE * a.im;
        }
        Ok(state)
    }

    pub fn from_moments(
        registry: &ModeRegistry,
        means: DVector<f64>,
        covariance: DMatrix<f64>,
    ) -> Result<Self> {
        let n = 2 * registry.len();
        if means.len() != n || covariance.nrows() != n || covariance.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: means.len(),
            });
        }
        if (&covariance - covariance.transpose()).amax() > 1e-12 {
            return Err(Error::InvalidState("covariance is not symmetric".into()));
        }
        Ok(Self {
            registry: registry.clone(),
            means,
            covariance,
        })
    }

    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    pub fn means(&self) -> &DVector<f64> {
        &self.means
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    /// Complex amplitude `<a>` of `mode`.
    pub fn amplitude(&self, mode: &str) -> Result<C64> {
        let k = self.registry.index_of(mode)?;
        Ok(C64::new(self.means[2 * k], self.means[2 * k + 1]) / (2.0 * QUADRATURE_SCALE))
    }

    /// `<a^dag a>` of `mode`.
    pub fn mean_photon(&self, mode: &str) -> Result<f64> {
        let k = self.registry.index_of(mode)?;
        let norm = 1.0 / (4.0 * VACUUM_VARIANCE);
        let second = self.covariance[(2 * k, 2 * k)]
            + self.covariance[(2 * k + 1, 2 * k + 1)]
            + self.means[2 * k].powi(2)
            + self.means[2 * k + 1].powi(2);
        Ok(norm * second - 0.5)
    }

    /// Variance of `x cos(phase) + p sin(phase)` on `mode`.
    pub fn quadrature_variance(&self, mode: &str, phase: f64) -> Result<f64> {
        let k = self.registry.index_of(mode)?;
        let (s, c) = phase.sin_cos();
        let cov = &self.covariance;
        Ok(c * c * cov[(2 * k, 2 * k)]
            + 2.0 * s * c * cov[(2 * k, 2 * k + 1)]
            + s * s * cov[(2 * k + 1, 2 * k + 1)])
    }

    /// Smallest eigenvalue of `cov + (i/4) Omega`; non-negative for physical states.
    pub fn uncertainty_margin(&self) -> f64 {
        let n = self.covariance.nrows();
        let omega = symplectic_form(n / 2);
        let h = DMatrix::<C64>::from_fn(n, n, |i, j| {
            C64::new(self.covariance[(i, j)], VACUUM_VARIANCE * omega[(i, j)])
        });
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    fn attenuate(&self, mode: usize, transmission: f64) -> Self {
        let mut out = self.clone();
        let root = transmission.sqrt();
        for u in [2 * mode, 2 * mode + 1] {
            out.means[u] *= root;
            out.covariance.row_mut(u).scale_mut(root);
            out.covariance.column_mut(u).scale_mut(root);
            out.covariance[(u, u)] += (1.0 - transmission) * VACUUM_VARIANCE;
        }
        out
    }
}

/// Applies one device. Unitary devices act through their symplectic
/// matrix, the attenuator through the pure-loss map on moments.
pub fn gaussian_apply(state: &GaussianState, device: &Device) -> Result<GaussianState> {
    if !device.is_gaussian() {
        return Err(Error::NonGaussianDevice(device.kind().into()));
    }
    let modes = device.resolve(&state.registry)?;
    if let Device::Attenuator { transmission, .. } = device {
        return Ok(state.attenuate(modes[0], *transmission));
    }
    let s = symplectic_matrix(&state.registry, device)?;
    let covariance = &s * &state.covariance * s.transpose();
    // restore exact symmetry lost to rounding
    let covariance = (&covariance + covariance.transpose()) * 0.5;
    Ok(GaussianState {
        registry: state.registry.clone(),
        means: &s * &state.means,
        covariance,
    })
}

pub fn gaussian_mean_photon(state: &GaussianState, mode: &str) -> Result<f64> {
    state.mean_photon(mode)
}
