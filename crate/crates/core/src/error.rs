use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid mode registry: {0}")]
    InvalidRegistry(String),

    #[error("unknown mode `{0}`")]
    UnknownMode(String),

    #[error("occupation {occupation} of mode `{mode}` exceeds its cutoff {cutoff}")]
    OccupationExceedsCutoff {
        mode: String,
        occupation: usize,
        cutoff: usize,
    },

    #[error("cutoff {cutoff} of mode `{mode}` is too small, at least {required} is needed")]
    CutoffTooSmall {
        mode: String,
        cutoff: usize,
        required: usize,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("transmission {0} is outside [0, 1]")]
    TransmissionOutOfRange(f64),

    #[error("device `{0}` is not Gaussian and cannot run on the Gaussian backend")]
    NonGaussianDevice(String),

    #[error("invalid device: {0}")]
    InvalidDevice(String),

    #[error("derived idler frequency {idler} for channel {channel} is not positive")]
    EnergyConservationViolation { channel: usize, idler: f64 },

    #[error("invalid scan parameters: {0}")]
    InvalidScan(String),

    #[error("I/O error on `{path}`: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
