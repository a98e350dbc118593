//! Brute-force state-vector simulation used as ground truth.

mod fd;
mod measure;
mod state;

pub use fd::{central_difference, default_fd_step, fd_derivative, perpendicular_variance};
pub use measure::{
    moments, oracle_ratio, perpendicular_frame, site_corr_yy, xi_oracle, xi_oracle_at,
    CollectiveMoments,
};
pub use state::{
    evolve_general, evolve_ising, prepare_polarized, StateVector, MAX_GENERAL_SPINS, MAX_SPINS,
};
