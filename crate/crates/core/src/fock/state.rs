use nalgebra::{DMatrix, DVector};

use super::registry::ModeRegistry;
use crate::error::{Error, Result};
use crate::C64;

/// Largest Poisson tail mass a truncated coherent state may drop.
pub const COHERENT_TAIL_TOLERANCE: f64 = 1e-10;

/// Tolerance used when checking that a matrix handed to `apply_unitary` is unitary.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Normalized state vector in the registry's Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    pub(crate) registry: ModeRegistry,
    pub(crate) amplitudes: DVector<C64>,
}

/// Truncated multimode density operator in the registry's Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityOp {
    pub(crate) registry: ModeRegistry,
    pub(crate) matrix: DMatrix<C64>,
}

/// Either representation; channels promote pure states to density operators.
#[derive(Debug, Clone, PartialEq)]
pub enum FockState {
    Pure(PureState),
    Mixed(FockDensityOp),
}

pub fn make_vacuum(registry: &ModeRegistry) -> PureState {
    let mut amplitudes = DVector::zeros(registry.dim());
    amplitudes[0] = C64::new(1.0, 0.0);
    PureState {
        registry: registry.clone(),
        amplitudes,
    }
}

pub fn make_fock(registry: &ModeRegistry, occupations: &[usize]) -> Result<PureState> {
    let index = registry.index_of_occupations(occupations)?;
    let mut amplitudes = DVector::zeros(registry.dim());
    amplitudes[index] = C64::new(1.0, 0.0);
    Ok(PureState {
        registry: registry.clone(),
        amplitudes,
    })
}

fn ln_poisson(mean: f64, n: usize, ln_factorial: f64) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -mean + n as f64 * mean.ln() - ln_factorial
}

/// Poisson mass of photon numbers strictly above `cutoff` for mean `mean`.
pub fn poisson_tail(mean: f64, cutoff: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut ln_fact: f64 = (1..=cutoff).map(|k| (k as f64).ln()).sum();
    let mut tail = 0.0;
    let mut n = cutoff;
    loop {
        n += 1;
        ln_fact += (n as f64).ln();
        let term = ln_poisson(mean, n, ln_fact).exp();
        tail += term;
        if n as f64 > mean && term <= tail * 1e-17 {
            break;
        }
        if n as f64 > mean && term == 0.0 {
            break;
        }
    }
    tail
}

/// Smallest cutoff whose Poisson tail for `|alpha|^2` is within `tolerance`.
pub fn coherent_required_cutoff(alpha: C64, tolerance: f64) -> usize {
    let mean = alpha.norm_sqr();
    if mean == 0.0 {
        return 0;
    }
    let mut c = mean.floor() as usize;
    while poisson_tail(mean, c) > tolerance {
        c += 1;
    }
    while c > 0 && poisson_tail(mean, c - 1) <= tolerance {
        c -= 1;
    }
    c
}

/// Number-basis amplitudes of `|alpha>` on `0..=cutoff`, renormalized.
pub(crate) fn coherent_amplitudes(alpha: C64, cutoff: usize) -> Vec<C64> {
    let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
    let r = alpha.norm();
    if r == 0.0 {
        amps[0] = C64::new(1.0, 0.0);
        return amps;
    }
    let phase = alpha.arg();
    let mut ln_fact = 0.0;
    for (n, a) in amps.iter_mut().enumerate() {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        let ln_mag = -0.5 * r * r + n as f64 * r.ln() - 0.5 * ln_fact;
        *a = C64::from_polar(ln_mag.exp(), n as f64 * phase);
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    amps
}

/// Coherent state `|alpha>` on `mode`, vacuum on every other mode.
///
/// Fails with `CutoffTooSmall` when the dropped Poisson tail exceeds
/// [`COHERENT_TAIL_TOLERANCE`] rather than silently renormalizing.
pub fn make_coherent(registry: &ModeRegistry, mode: &str, alpha: C64) -> Result<PureState> {
    let k = registry.index_of(mode)?;
    let cutoff = registry.modes()[k].cutoff;
    if poisson_tail(alpha.norm_sqr(), cutoff) > COHERENT_TAIL_TOLERANCE {
        return Err(Error::CutoffTooSmall {
            mode: mode.to_string(),
            cutoff,
            required: coherent_required_cutoff(alpha, COHERENT_TAIL_TOLERANCE),
        });
    }
    let stride = registry.strides()[k];
    let mut amplitudes = DVector::zeros(registry.dim());
    for (n, a) in coherent_amplitudes(alpha, cutoff).into_iter().enumerate() {
        amplitudes[n * stride] = a;
    }
    Ok(PureState {
        registry: registry.clone(),
        amplitudes,
    })
}

/// Product of coherent states, one amplitude per mode in registry order.
pub fn make_coherent_product(registry: &ModeRegistry, alphas: &[C64]) -> Result<PureState> {
    if alphas.len() != registry.len() {
        return Err(Error::DimensionMismatch {
            expected: registry.len(),
            actual: alphas.len(),
        });
    }
    let mut state: Option<PureState> = None;
    for (m, &alpha) in registry.modes().iter().zip(alphas) {
        let single = ModeRegistry::new(vec![m.clone()])?;
        let factor = make_coherent(&single, &m.label, alpha)?;
        state = Some(match state {
            None => factor,
            Some(s) => s.tensor(&factor)?,
        });
    }
    Ok(state.expect("registry is never empty"))
}

pub fn to_density(state: &PureState) -> FockDensityOp {
    state.to_density()
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    a.check_same_dim(b.dim())?;
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

fn check_unitary(u: &DMatrix<C64>, dim: usize) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            actual: u.ncols(),
        });
    }
    if u.nrows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: u.nrows(),
        });
    }
    let deviation = (u.adjoint() * u - DMatrix::<C64>::identity(dim, dim))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

impl PureState {
    /// Wraps raw amplitudes; fails unless the vector is normalized within 1e-10.
    pub fn from_amplitudes(registry: &ModeRegistry, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != registry.dim() {
            return Err(Error::DimensionMismatch {
                expected: registry.dim(),
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!(
                "state vector has norm {norm}, expected 1"
            )));
        }
        Ok(Self {
            registry: registry.clone(),
            amplitudes,
        })
    }

    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn amplitude(&self, occupations: &[usize]) -> Result<C64> {
        Ok(self.amplitudes[self.registry.index_of_occupations(occupations)?])
    }

    fn check_same_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: dim,
            });
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        self.check_same_dim(other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn to_density(&self) -> FockDensityOp {
        FockDensityOp {
            registry: self.registry.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    /// `self ⊗ other` on the concatenated registry.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let registry = self.registry.concat(&other.registry)?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(PureState {
            registry,
            amplitudes,
        })
    }

    pub fn apply_unitary(&self, u: &DMatrix<C64>) -> Result<PureState> {
        check_unitary(u, self.dim())?;
        Ok(PureState {
            registry: self.registry.clone(),
            amplitudes: u * &self.amplitudes,
        })
    }
}

impl FockDensityOp {
    /// Wraps a raw matrix; checks shape, Hermiticity (1e-12) and unit trace (1e-10).
    pub fn from_matrix(registry: &ModeRegistry, matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != registry.dim() || matrix.ncols() != registry.dim() {
            return Err(Error::DimensionMismatch {
                expected: registry.dim(),
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        let rho = Self {
            registry: registry.clone(),
            matrix,
        };
        if rho.hermiticity_error() > 1e-12 || (rho.trace() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(
                "density matrix must be Hermitian with unit trace".into(),
            ));
        }
        Ok(rho)
    }

    pub(crate) fn from_parts(registry: ModeRegistry, matrix: DMatrix<C64>) -> Self {
        Self { registry, matrix }
    }

    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest elementwise `|rho - rho^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..=j {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue. O(d^3): meant for tests and debugging.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        h.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// `<psi|rho|psi>`, the fidelity of this state with a pure target.
    pub fn fidelity_with(&self, psi: &PureState) -> Result<f64> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: psi.dim(),
            });
        }
        let v = &self.matrix * &psi.amplitudes;
        Ok(psi.amplitudes.dotc(&v).re.clamp(0.0, 1.0))
    }

    pub fn apply_unitary(&self, u: &DMatrix<C64>) -> Result<FockDensityOp> {
        check_unitary(u, self.dim())?;
        Ok(FockDensityOp {
            registry: self.registry.clone(),
            matrix: u * &self.matrix * u.adjoint(),
        })
    }
}

impl FockState {
    pub fn registry(&self) -> &ModeRegistry {
        match self {
            FockState::Pure(s) => &s.registry,
            FockState::Mixed(r) => &r.registry,
        }
    }

    pub fn to_density(&self) -> FockDensityOp {
        match self {
            FockState::Pure(s) => s.to_density(),
            FockState::Mixed(r) => r.clone(),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            FockState::Pure(s) => s.amplitudes.norm_squared(),
            FockState::Mixed(r) => r.trace(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            FockState::Pure(s) => Some(s),
            FockState::Mixed(_) => None,
        }
    }

    pub fn apply_unitary(&self, u: &DMatrix<C64>) -> Result<FockState> {
        Ok(match self {
            FockState::Pure(s) => FockState::Pure(s.apply_unitary(u)?),
            FockState::Mixed(r) => FockState::Mixed(r.apply_unitary(u)?),
        })
    }

    /// Fidelity with a pure target.
    pub fn fidelity_with(&self, psi: &PureState) -> Result<f64> {
        match self {
            FockState::Pure(s) => fidelity(s, psi),
            FockState::Mixed(r) => r.fidelity_with(psi),
        }
    }
}

impl From<PureState> for FockState {
    fn from(s: PureState) -> Self {
        FockState::Pure(s)
    }
}

impl From<FockDensityOp> for FockState {
    fn from(r: FockDensityOp) -> Self {
        FockState::Mixed(r)
    }
}
