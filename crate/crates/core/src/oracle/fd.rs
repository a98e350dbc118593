//! Numerical time derivatives of oracle observables at t = 0.

use super::measure::moments;
use super::state::{evolve_general, prepare_polarized};
use crate::error::Result;
use crate::orientation::Orientation;
use crate::short_time::PairCouplingSet;

/// `(ΔJ_⊥)²` at time `t`, with `J_⊥` along the rotated x axis of `o`.
pub fn perpendicular_variance(ps: &PairCouplingSet, o: &Orientation, t: f64) -> Result<f64> {
    let s = evolve_general(&prepare_polarized(ps.n, o)?, ps, t)?;
    Ok(moments(&s).variance_along(&o.perpendicular_axis()))
}

/// Plain central difference `(V(h) − V(−h)) / 2h` of the perpendicular
/// variance; its error is `O(h²)`.
pub fn central_difference(ps: &PairCouplingSet, o: &Orientation, h: f64) -> Result<f64> {
    let v = |t| perpendicular_variance(ps, o, t);
    Ok((v(h)? - v(-h)?) / (2.0 * h))
}

/// Richardson-extrapolated central difference from steps `dt` and `dt/2`.
pub fn fd_derivative(ps: &PairCouplingSet, o: &Orientation, dt: f64) -> Result<f64> {
    let coarse = central_difference(ps, o, dt)?;
    let fine = central_difference(ps, o, 0.5 * dt)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `1e-3 / ‖H‖`, with `‖H‖` bounded by [`PairCouplingSet::norm_bound`].
pub fn default_fd_step(ps: &PairCouplingSet) -> f64 {
    let norm = ps.norm_bound();
    if norm > 0.0 {
        1e-3 / norm
    } else {
        1e-3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::make_uniform;
    use crate::short_time::{aggregate, ising_to_pairset, noise_derivative};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn empty_set_has_zero_derivative() {
        let ps = PairCouplingSet::new(3, vec![]).unwrap();
        assert_eq!(fd_derivative(&ps, &Orientation::new(0.2, 0.4, 0.1), 1e-3).unwrap(), 0.0);
        assert_eq!(default_fd_step(&ps), 1e-3);
    }

    #[test]
    fn uniform_ising_quarter_turn() {
        let ps = ising_to_pairset(&make_uniform(4, 1.0).unwrap());
        let o = Orientation::new(0.0, 0.0, FRAC_PI_4);
        let d = fd_derivative(&ps, &o, default_fd_step(&ps)).unwrap();
        assert!((d + 1.0).abs() < 1e-6, "{d}");
        assert!((noise_derivative(&aggregate(&ps), &o) + 1.0).abs() < 1e-14);
    }
}
