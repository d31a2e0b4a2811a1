use nalgebra::DMatrix;

use super::registry::ModeRegistry;
use super::state::{FockDensityOp, FockState, PureState};
use crate::error::{Error, Result};
use crate::C64;

/// Amplitude `<n-k| K_k |n>` of the pure-loss Kraus operator
/// `K_k = (1-T)^{k/2} T^{n/2} a^k / sqrt(k!)`, i.e.
/// `sqrt(C(n,k)) T^{(n-k)/2} (1-T)^{k/2}`.
fn loss_coefficients(cutoff: usize, transmission: f64) -> DMatrix<f64> {
    let mut ln_fact = vec![0.0f64; cutoff + 1];
    for n in 1..=cutoff {
        ln_fact[n] = ln_fact[n - 1] + (n as f64).ln();
    }
    let mut c = DMatrix::zeros(cutoff + 1, cutoff + 1);
    for n in 0..=cutoff {
        for k in 0..=n {
            let binom = (0.5 * (ln_fact[n] - ln_fact[k] - ln_fact[n - k])).exp();
            c[(n, k)] = binom
                * transmission.powf(0.5 * (n - k) as f64)
                * (1.0 - transmission).powf(0.5 * k as f64);
        }
    }
    c
}

/// Single-mode pure-loss channel with the given energy transmission.
pub fn apply_loss(state: &FockDensityOp, mode: &str, transmission: f64) -> Result<FockDensityOp> {
    if !(0.0..=1.0).contains(&transmission) {
        return Err(Error::TransmissionOutOfRange(transmission));
    }
    let reg = &state.registry;
    let k_mode = reg.index_of(mode)?;
    if transmission == 1.0 {
        return Ok(state.clone());
    }
    let cutoff = reg.modes()[k_mode].cutoff;
    let stride = reg.strides()[k_mode];
    let coef = loss_coefficients(cutoff, transmission);
    let dim = state.dim();
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    // rho'[(m-k),(n-k)] += c(m,k) c(n,k) rho[m,n] on the lossy mode, other
    // occupations untouched
    for j in 0..dim {
        let n = reg.occupation(j, k_mode);
        for i in 0..dim {
            let value = state.matrix[(i, j)];
            if value.re == 0.0 && value.im == 0.0 {
                continue;
            }
            let m = reg.occupation(i, k_mode);
            for k in 0..=m.min(n) {
                let w = coef[(m, k)] * coef[(n, k)];
                out[(i - k * stride, j - k * stride)] += value * w;
            }
        }
    }
    Ok(FockDensityOp {
        registry: reg.clone(),
        matrix: out,
    })
}

impl FockState {
    pub fn apply_loss(&self, mode: &str, transmission: f64) -> Result<FockState> {
        let rho = self.to_density();
        Ok(FockState::Mixed(apply_loss(&rho, mode, transmission)?))
    }

    pub fn partial_trace(&self, keep: &[&str]) -> Result<FockDensityOp> {
        match self {
            FockState::Pure(s) => partial_trace_pure(s, keep),
            FockState::Mixed(r) => partial_trace(r, keep),
        }
    }
}

fn kept_modes(reg: &ModeRegistry, keep: &[&str]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidState(
            "partial trace must keep at least one mode".into(),
        ));
    }
    let mut idx = keep
        .iter()
        .map(|l| reg.index_of(l))
        .collect::<Result<Vec<_>>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// Reduced density operator on `keep`. Kept modes retain their registry order.
pub fn partial_trace(state: &FockDensityOp, keep: &[&str]) -> Result<FockDensityOp> {
    let reg = &state.registry;
    let kept = kept_modes(reg, keep)?;
    let sub = reg.subset(&kept)?;
    let (offsets, bases) = reg.split(&kept);
    let d = offsets.len();
    let mut out = DMatrix::<C64>::zeros(d, d);
    for &b in &bases {
        for (c, &oc) in offsets.iter().enumerate() {
            for (r, &or) in offsets.iter().enumerate() {
                out[(r, c)] += state.matrix[(b + or, b + oc)];
            }
        }
    }
    Ok(FockDensityOp {
        registry: sub,
        matrix: out,
    })
}

/// Reduced density operator of a pure state, `M M^dagger` with `M[kept, traced]`.
pub fn partial_trace_pure(state: &PureState, keep: &[&str]) -> Result<FockDensityOp> {
    let reg = &state.registry;
    let kept = kept_modes(reg, keep)?;
    let sub = reg.subset(&kept)?;
    let (offsets, bases) = reg.split(&kept);
    let m = DMatrix::from_fn(offsets.len(), bases.len(), |r, c| {
        state.amplitudes[bases[c] + offsets[r]]
    });
    Ok(FockDensityOp {
        registry: sub,
        matrix: &m * m.adjoint(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::state::{make_coherent, make_fock, make_vacuum};

    fn reg(c: usize) -> ModeRegistry {
        ModeRegistry::from_triples([("a", 1.0, c)]).unwrap()
    }

    #[test]
    fn unit_transmission_is_identity() {
        let psi = make_coherent(&reg(20), "a", C64::new(1.0, 0.2)).unwrap();
        let rho = psi.to_density();
        assert_eq!(apply_loss(&rho, "a", 1.0).unwrap(), rho);
    }

    #[test]
    fn full_loss_gives_vacuum() {
        let r = reg(20);
        let rho = make_coherent(&r, "a", C64::new(1.5, -0.5))
            .unwrap()
            .to_density();
        let out = apply_loss(&rho, "a", 0.0).unwrap();
        let vac = make_vacuum(&r).to_density();
        let diff = (&out.matrix - &vac.matrix).camax();
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn loss_maps_coherent_to_coherent() {
        let r = reg(30);
        let alpha = C64::new(1.3, 0.8);
        let t = 0.37;
        let out = apply_loss(&make_coherent(&r, "a", alpha).unwrap().to_density(), "a", t).unwrap();
        let target = make_coherent(&r, "a", alpha * t.sqrt()).unwrap();
        let f = out.fidelity_with(&target).unwrap();
        assert!(f >= 1.0 - 1e-9, "{f}");
        assert!((out.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn loss_on_single_photon() {
        let r = ModeRegistry::from_triples([("a", 1.0, 2), ("b", 1.0, 1)]).unwrap();
        let rho = make_fock(&r, &[1, 1]).unwrap().to_density();
        let out = apply_loss(&rho, "a", 0.25).unwrap();
        let i11 = r.index_of_occupations(&[1, 1]).unwrap();
        let i01 = r.index_of_occupations(&[0, 1]).unwrap();
        assert!((out.matrix[(i11, i11)].re - 0.25).abs() < 1e-15);
        assert!((out.matrix[(i01, i01)].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_transmission() {
        let rho = make_vacuum(&reg(2)).to_density();
        assert_eq!(
            apply_loss(&rho, "a", 1.5),
            Err(Error::TransmissionOutOfRange(1.5))
        );
        assert!(matches!(
            apply_loss(&rho, "zz", 0.5),
            Err(Error::UnknownMode(_))
        ));
    }

    #[test]
    fn partial_trace_keep_everything() {
        let r = ModeRegistry::from_triples([("a", 1.0, 2), ("b", 1.0, 3)]).unwrap();
        let psi = make_fock(&r, &[1, 2]).unwrap();
        let rho = psi.to_density();
        assert_eq!(partial_trace(&rho, &["a", "b"]).unwrap(), rho);
        assert_eq!(partial_trace_pure(&psi, &["b", "a"]).unwrap(), rho);
        assert!(matches!(
            partial_trace(&rho, &[]),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(
            partial_trace(&rho, &["c"]),
            Err(Error::UnknownMode(_))
        ));
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = ModeRegistry::from_triples([("a", 1.0, 12)]).unwrap();
        let rb = ModeRegistry::from_triples([("b", 1.0, 6)]).unwrap();
        let pa = make_coherent(&ra, "a", C64::new(0.6, 0.4)).unwrap();
        let pb = make_fock(&rb, &[3]).unwrap();
        let joint = pa.tensor(&pb).unwrap();
        let reduced = partial_trace(&joint.to_density(), &["a"]).unwrap();
        assert!((&reduced.matrix - pa.to_density().matrix).camax() < 1e-12);
        let reduced = partial_trace_pure(&joint, &["b"]).unwrap();
        assert!((&reduced.matrix - pb.to_density().matrix).camax() < 1e-12);
    }
}
