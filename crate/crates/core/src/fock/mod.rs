//! Exact simulation in a truncated multimode Fock space.
//!
//! States are immutable values; every operation returns a new state.
//! Positivity of density operators is only checked in tests
//! ([`FockDensityOp::min_eigenvalue`]); it is O(d^3).

mod channels;
mod observables;
mod registry;
mod state;

pub use channels::{apply_loss, partial_trace, partial_trace_pure};
pub(crate) use observables::apply_monomial;
pub use observables::{mean_photon, quadrature_variance, Ladder};
pub use registry::{Mode, ModeRegistry};
pub use state::{
    coherent_required_cutoff, fidelity, make_coherent, make_coherent_product, make_fock,
    make_vacuum, poisson_tail, to_density, FockDensityOp, FockState, PureState,
    COHERENT_TAIL_TOLERANCE, UNITARITY_TOLERANCE,
};
