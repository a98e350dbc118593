//! Numerator/denominator bookkeeping for squeezing ratios.
//!
//! Every closed form here has the shape `ξ² = numerator / mean_spin²`, with
//! both parts scaled so they equal 1 at t = 0. `mean_spin` is the mean
//! collective spin divided by its initial length `N/2`. Keeping the two
//! apart is what lets us tell a true pole (mean spin gone, noise not) from a
//! removable 0/0 such as the N = 2 optimum.

/// Below this the mean spin (or the numerator) counts as zero.
pub const ZERO_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub numerator: f64,
    pub mean_spin: f64,
}

impl Ratio {
    pub fn new(numerator: f64, mean_spin: f64) -> Self {
        Self { numerator, mean_spin }
    }

    pub fn raw(&self) -> f64 {
        self.numerator / (self.mean_spin * self.mean_spin)
    }

    pub fn is_singular(&self) -> bool {
        self.mean_spin.abs() < ZERO_FLOOR
    }

    pub fn is_removable(&self) -> bool {
        self.is_singular() && self.numerator.abs() < ZERO_FLOOR
    }

    /// First-order bound on the rounding error of [`raw`](Self::raw) when
    /// both parts carry absolute errors of order machine epsilon:
    /// `64 ε (1/m² + 2|num|/|m|³)`.
    ///
    /// Two independent double-precision evaluations of the same `ξ²` can
    /// only be expected to agree to about this much; it grows without
    /// bound as the mean spin vanishes.
    pub fn rounding_bound(&self) -> f64 {
        let m = self.mean_spin.abs();
        64.0 * f64::EPSILON * (1.0 / (m * m) + 2.0 * self.numerator.abs() / (m * m * m))
    }
}

/// Evaluates `ratio_at` at `t`, mapping poles to `+inf` and replacing a
/// removable 0/0 by its two-sided limit.
///
/// `rate` is the fastest angular frequency in the problem; it sets the
/// step of the limit evaluation. With `rate == 0` nothing evolves and no
/// singularity can occur.
pub fn resolve(ratio_at: impl Fn(f64) -> Ratio, t: f64, rate: f64) -> f64 {
    let r = ratio_at(t);
    if !r.is_singular() {
        return r.raw();
    }
    if !r.is_removable() || rate == 0.0 {
        return f64::INFINITY;
    }
    symmetric_limit(|x| ratio_at(x).raw(), t, 1e-2 / rate)
}

/// Limit of `f` at `t` from symmetric averages `(f(t+h) + f(t-h))/2`,
/// which are even in `h`, extrapolated to `h = 0` through two Richardson
/// levels (error `O(h^6)`).
pub fn symmetric_limit(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    let g = |h: f64| 0.5 * (f(t + h) + f(t - h));
    let (g1, g2, g3) = (g(h), g(h / 2.0), g(h / 4.0));
    let r1 = (4.0 * g2 - g1) / 3.0;
    let r2 = (4.0 * g3 - g2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_bound_grows_near_poles() {
        let tame = Ratio::new(0.5, 0.8).rounding_bound();
        assert!(tame < 1e-13);
        assert!(Ratio::new(0.5, 1e-4).rounding_bound() > 1e-3);
        assert_eq!(Ratio::new(1.0, 0.0).rounding_bound(), f64::INFINITY);
    }

    #[test]
    fn pole_versus_removable() {
        assert_eq!(resolve(|_| Ratio::new(1.0, 0.0), 0.3, 1.0), f64::INFINITY);
        // (1 - sin x) / cos^2 x has limit 1/2 at x = pi/2
        let f = |x: f64| Ratio::new(1.0 - x.sin(), x.cos());
        let v = resolve(f, std::f64::consts::FRAC_PI_2, 1.0);
        assert!((v - 0.5).abs() < 1e-10, "{v}");
    }

    #[test]
    fn regular_points_are_plain_ratios() {
        assert_eq!(resolve(|_| Ratio::new(3.0, 2.0), 1.0, 1.0), 0.75);
        assert_eq!(resolve(|_| Ratio::new(0.0, 0.0), 1.0, 0.0), f64::INFINITY);
    }
}
