//! Squeezing along an arbitrary quadrature `J_θ = cos θ J_x + sin θ J_y`
//! for a state whose mean spin points along z.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::moments::ExpectationSet;
use super::ratio::Ratio;

/// Quadrature angle in radians, folded into `(−π/2, π/2]` since `J_θ` and
/// `J_{θ+π}` have the same variance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QuadratureAngle(f64);

impl QuadratureAngle {
    pub const PI_4: QuadratureAngle = QuadratureAngle(FRAC_PI_4);

    pub fn new(theta: f64) -> Self {
        let r = theta.rem_euclid(PI);
        Self(if r > FRAC_PI_2 { r - PI } else { r })
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn is_pi_4(self) -> bool {
        (self.0 - FRAC_PI_4).abs() < 1e-15
    }
}

impl Default for QuadratureAngle {
    fn default() -> Self {
        Self::PI_4
    }
}

fn variance(es: &ExpectationSet, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    c * c * es.jx2 + s * s * es.jy2 + s * c * es.jxjy_sym
}

/// `ξ²_θ` as a normalized ratio (see [`Ratio`]).
pub fn theta_ratio(es: &ExpectationSet, theta: QuadratureAngle, n: usize) -> Ratio {
    let half = n as f64 / 2.0;
    Ratio::new(n as f64 * variance(es, theta.radians()) / (half * half), es.jz / half)
}

/// `ξ²_θ = N [cos²θ ⟨J_x²⟩ + sin²θ ⟨J_y²⟩ + sinθ cosθ ⟨J_xJ_y + J_yJ_x⟩] / ⟨J_z⟩²`.
///
/// The leading `N` makes this the Wineland ratio `N (ΔJ_θ)² / ⟨J⟩²`; with
/// it, θ = π/4 reproduces the general π/4 closed form exactly. A vanishing
/// `⟨J_z⟩` gives `+inf`.
pub fn xi_theta(es: &ExpectationSet, theta: QuadratureAngle, n: usize) -> f64 {
    let r = theta_ratio(es, theta, n);
    if r.is_singular() {
        f64::INFINITY
    } else {
        r.raw()
    }
}

/// Minimizes `ξ²_θ` over θ in closed form.
///
/// The variance is `(A+B)/2 + (A−B)/2 cos 2θ + C/2 sin 2θ`, whose minimum
/// `(A+B)/2 − sqrt(((A−B)/2)² + (C/2)²)` sits at `2θ* = atan2(C, A−B) + π`.
pub fn xi_theta_optimal(es: &ExpectationSet, n: usize) -> (QuadratureAngle, f64) {
    let (a, b, c) = (es.jx2, es.jy2, es.jxjy_sym);
    let theta = QuadratureAngle::new(0.5 * (c.atan2(a - b) + PI));
    let min_var = 0.5 * (a + b) - (0.25 * (a - b).powi(2) + 0.25 * c * c).sqrt();
    let half = n as f64 / 2.0;
    let r = Ratio::new(n as f64 * min_var / (half * half), es.jz / half);
    let xi2 = if r.is_singular() { f64::INFINITY } else { r.raw() };
    (theta, xi2)
}
