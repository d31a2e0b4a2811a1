//! Scan runners for the frequency-conversion scenarios.
//!
//! Every runner is a pure function of its configuration. Scan points are
//! evaluated in parallel and assembled in input order, so results are
//! reproducible bit for bit.

mod depletion;
mod fringe;
mod linearity;
mod noise;
mod wdm;

pub use depletion::{run_depletion_convergence, DepletionConfig};
pub use fringe::{fringe_visibility, run_fringe, FringeConfig};
pub use linearity::{run_linearity, LinearityConfig};
pub use noise::{run_noise_comparison, NoiseConfig};
pub use wdm::{run_wdm, WdmChannel, WdmResult, WdmSpec};

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// `n` points from `start` to `end` evenly spaced in `ln`.
pub fn log_spaced(start: f64, end: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    let (a, b) = (start.ln(), end.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `n` points from `start` to `end` inclusive.
pub fn linear_spaced(start: f64, end: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![start];
    }
    (0..n)
        .map(|k| start + (end - start) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Least-squares fit of `offset + amplitude cos(x - phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidFit {
    pub offset: f64,
    pub amplitude: f64,
    pub phase: f64,
    /// Largest absolute residual over the fitted points.
    pub max_residual: f64,
}

impl SinusoidFit {
    /// `amplitude / offset`, the fringe visibility of a non-negative signal.
    pub fn visibility(&self) -> f64 {
        if self.offset == 0.0 {
            0.0
        } else {
            self.amplitude / self.offset
        }
    }
}

/// Fits `c0 + c1 cos x + c2 sin x` by solving the 3x3 normal equations.
pub fn fit_sinusoid(xs: &[f64], ys: &[f64]) -> SinusoidFit {
    use nalgebra::{Matrix3, Vector3};
    let mut ata = Matrix3::<f64>::zeros();
    let mut atb = Vector3::<f64>::zeros();
    for (&x, &y) in xs.iter().zip(ys) {
        let row = Vector3::new(1.0, x.cos(), x.sin());
        ata += row * row.transpose();
        atb += row * y;
    }
    let c = ata.lu().solve(&atb).unwrap_or_else(Vector3::zeros);
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - (c[0] + c[1] * x.cos() + c[2] * x.sin())).abs())
        .fold(0.0, f64::max);
    SinusoidFit {
        offset: c[0],
        amplitude: c[1].hypot(c[2]),
        phase: c[2].atan2(c[1]),
        max_residual,
    }
}

fn check_monotone(name: &str, xs: &[f64]) -> crate::Result<()> {
    if xs.is_empty() {
        return Err(crate::Error::InvalidScan(format!("{name} is empty")));
    }
    let dir = xs.windows(2).map(|w| (w[1] - w[0]).signum()).next();
    if xs.iter().any(|x| !x.is_finite())
        || xs
            .windows(2)
            .any(|w| Some((w[1] - w[0]).signum()) != dir || w[1] == w[0])
    {
        return Err(crate::Error::InvalidScan(format!(
            "{name} must be finite and strictly monotone"
        )));
    }
    Ok(())
}
