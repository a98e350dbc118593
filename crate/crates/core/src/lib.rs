//! Spin squeezing in Ising-coupled spin-½ rings.
//!
//! The crate has three layers:
//!
//! - [`analytic`]: closed-form `ξ²(t)` for rings of arbitrary couplings
//!   prepared fully polarized along z, plus uniform, dimerized and
//!   bond-diluted special cases;
//! - [`short_time`]: the initial rate of change of the transverse noise for
//!   any pairwise spin Hamiltonian, and the orientation that maximizes it;
//! - [`oracle`]: an exact 2^N state-vector simulator against which
//!   everything else is tested.
//!
//! ```
//! use spin_squeeze::{analytic::xi_pi4_n2, oracle, CouplingChain};
//! use spin_squeeze::analytic::QuadratureAngle;
//! use std::f64::consts::FRAC_PI_2;
//!
//! let closed = xi_pi4_n2(1.0, FRAC_PI_2);
//! let pair = CouplingChain::new(vec![1.0, 1.0]).unwrap();
//! let exact = oracle::xi_oracle_at(&pair, FRAC_PI_2, QuadratureAngle::PI_4).unwrap();
//! assert!((closed - 0.5).abs() < 1e-12);
//! assert!((exact - 0.5).abs() < 1e-10);
//! ```

pub mod analytic;
pub mod chain;
pub mod ensemble;
mod error;
pub mod figures;
pub mod oracle;
pub mod orientation;
pub mod short_time;
pub mod verify;

pub use chain::{
    make_dimerized, make_uniform, sample_random, Boundary, CouplingChain, DimerSpec,
    RandomChainSpec,
};
pub use error::{Error, Result};
pub use orientation::Orientation;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/short-time.md")]
    mod short_time {}
    #[doc = include_str!("../../../book/src/disorder.md")]
    mod disorder {}
    #[doc = include_str!("../../../book/src/accuracy.md")]
    mod accuracy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
