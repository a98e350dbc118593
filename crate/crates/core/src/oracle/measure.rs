//! Collective-spin moments measured by direct operator application.

use num_complex::Complex64;

use super::state::{evolve_ising, prepare_polarized, spin_matrices, StateVector};
use crate::analytic::ratio::{symmetric_limit, Ratio};
use crate::analytic::{ExpectationSet, QuadratureAngle};
use crate::chain::CouplingChain;
use crate::error::Result;
use crate::orientation::{Mat3, Orientation};

/// First moments `⟨J_a⟩` and symmetrized second moments
/// `⟨J_aJ_b + J_bJ_a⟩ / 2`, for `a, b ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveMoments {
    pub first: [f64; 3],
    pub second: Mat3,
}

impl CollectiveMoments {
    /// Variance of `e · J` for a unit vector `e`.
    pub fn variance_along(&self, e: &[f64; 3]) -> f64 {
        let mut second = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                second += e[a] * self.second[a][b] * e[b];
            }
        }
        let mean: f64 = (0..3).map(|a| e[a] * self.first[a]).sum();
        second - mean * mean
    }

    pub fn mean_spin_length(&self) -> f64 {
        self.first.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// The analytic expectation set, read off assuming the mean spin lies
    /// along z.
    pub fn expectation_set(&self, t: f64) -> ExpectationSet {
        ExpectationSet {
            t,
            jz: self.first[2],
            jx2: self.second[0][0],
            jy2: self.second[1][1],
            jxjy_sym: 2.0 * self.second[0][1],
        }
    }
}

/// `j_{a,site}|ψ⟩` accumulated into `out` with weight 1.
fn add_site_action(amps: &[Complex64], a: usize, site: usize, out: &mut [Complex64]) {
    let m = spin_matrices()[a];
    let mask = 1usize << site;
    for (idx, &amp) in amps.iter().enumerate() {
        let bit = idx >> site & 1;
        // column `bit` of the single-site matrix, rows 0 (up) and 1 (down)
        out[idx & !mask] += m[0][bit] * amp;
        out[idx | mask] += m[1][bit] * amp;
    }
}

fn collective_action(s: &StateVector, a: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); s.amplitudes().len()];
    for site in 0..s.n() {
        add_site_action(s.amplitudes(), a, site, &mut out);
    }
    out
}

fn re_inner(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum()
}

pub fn moments(s: &StateVector) -> CollectiveMoments {
    let acted = [0, 1, 2].map(|a| collective_action(s, a));
    let first = [0, 1, 2].map(|a| re_inner(s.amplitudes(), &acted[a]));
    let mut second = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            // Re⟨J_aψ|J_bψ⟩ = ⟨J_aJ_b + J_bJ_a⟩/2 for Hermitian J_a, J_b
            second[a][b] = re_inner(&acted[a], &acted[b]);
            second[b][a] = second[a][b];
        }
    }
    CollectiveMoments { first, second }
}

/// Symmetrized `⟨j_{y,i} j_{y,j}⟩`, sites 1-based.
pub fn site_corr_yy(s: &StateVector, i: usize, j: usize) -> f64 {
    let act = |site: usize| {
        let mut out = vec![Complex64::new(0.0, 0.0); s.amplitudes().len()];
        add_site_action(s.amplitudes(), 1, site - 1, &mut out);
        out
    };
    re_inner(&act(i), &act(j))
}

/// Unit vectors spanning the plane perpendicular to the line of `mean`.
///
/// The frame is the image of `(x̂, ŷ)` under the smallest rotation taking
/// `ẑ` onto `±mean/|mean|`, the sign chosen to keep a non-negative z
/// component. A mean spin along `±ẑ` therefore gives exactly `(x̂, ŷ)`.
pub fn perpendicular_frame(mean: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let len = mean.iter().map(|x| x * x).sum::<f64>().sqrt();
    if len == 0.0 {
        return ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
    }
    let sign = if mean[2] < 0.0 { -1.0 } else { 1.0 };
    let u = mean.map(|x| sign * x / len);
    // Rodrigues form for the rotation about ẑ × u by the angle between them
    let k = 1.0 / (1.0 + u[2]);
    let e1 = [1.0 - k * u[0] * u[0], -k * u[0] * u[1], -u[0]];
    let e2 = [-k * u[0] * u[1], 1.0 - k * u[1] * u[1], -u[1]];
    (e1, e2)
}

/// Squeezing as a normalized [`Ratio`] for `J_θ = cos θ e₁·J + sin θ e₂·J`
/// in the frame of [`perpendicular_frame`].
pub fn oracle_ratio(s: &StateVector, theta: QuadratureAngle) -> Ratio {
    let m = moments(s);
    let (e1, e2) = perpendicular_frame(&m.first);
    let (sn, cs) = theta.radians().sin_cos();
    let e: [f64; 3] = std::array::from_fn(|a| cs * e1[a] + sn * e2[a]);
    let n = s.n() as f64;
    Ratio::new(m.variance_along(&e) / (n / 4.0), m.mean_spin_length() / (n / 2.0))
}

/// `N (ΔJ_θ)² / |⟨J⟩|²`, or `+inf` when the mean spin vanishes.
pub fn xi_oracle(s: &StateVector, theta: QuadratureAngle) -> f64 {
    let r = oracle_ratio(s, theta);
    if r.is_singular() {
        f64::INFINITY
    } else {
        r.raw()
    }
}

/// Oracle squeezing of the all-up state evolved under `chain` for time `t`.
///
/// Where mean spin and variance vanish together the value is the
/// two-sided limit, as for the closed forms.
pub fn xi_oracle_at(chain: &CouplingChain, t: f64, theta: QuadratureAngle) -> Result<f64> {
    let up = prepare_polarized(chain.n(), &Orientation::IDENTITY)?;
    let at = |x: f64| -> Result<Ratio> { Ok(oracle_ratio(&evolve_ising(&up, chain, x)?, theta)) };
    let r = at(t)?;
    if !r.is_singular() {
        return Ok(r.raw());
    }
    let rate = chain.max_abs_coupling();
    if !r.is_removable() || rate == 0.0 {
        return Ok(f64::INFINITY);
    }
    // sizes were checked by the first evaluation
    Ok(symmetric_limit(|x| at(x).map(|r| r.raw()).unwrap_or(f64::NAN), t, 1e-2 / rate))
}
