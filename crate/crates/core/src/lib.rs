//! Simulation of frequency conversion by three-wave mixing.
//!
//! Two interchangeable backends ([`fock`] and [`gaussian`]) run the devices
//! built in [`devices`]: the pump/idler frequency converter, the
//! signal/idler parametric amplifier and the full trilinear coupler. The
//! [`experiments`] module drives scans over those devices and produces
//! [`ScanResult`] tables.

pub mod devices;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod gaussian;
pub mod scan;

pub use devices::{Circuit, Device};
pub use error::{Error, Result};
pub use fock::{FockDensityOp, FockState, ModeRegistry, PureState};
pub use gaussian::GaussianState;
pub use scan::ScanResult;

pub type C64 = num_complex::Complex64;

/// Which backend a circuit or scan runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Fock,
    Gaussian,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Fock => "fock",
            Backend::Gaussian => "gaussian",
        }
    }
}
