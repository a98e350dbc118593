//! Closed-form `ξ²_{π/4}` for Ising rings.
//!
//! The general ring formula needs N >= 5; two, three and four spins have
//! their own expressions, and uniform and dimerized rings collapse to
//! N-independent forms. [`xi_pi4`] picks the right one by size.
//!
//! Numerators are assembled from `1 − sin x = (cos(x/2) − sin(x/2))²`
//! rather than the printed `1 − sin x`, so they stay accurate where they
//! vanish together with the mean spin.

use crate::chain::CouplingChain;
use crate::error::{Error, Result};

use super::moments::{one_minus_sin, pair_coupling, HalfAngles};
use super::ratio::{resolve, Ratio, ZERO_FLOOR};

pub(crate) fn general_ratio(chain: &CouplingChain, t: f64) -> Ratio {
    let n = chain.n() as f64;
    let h = HalfAngles::new(chain, t);
    Ratio::new(
        (h.sin_pair_deficit_sum() + h.distance_two_sum()) / n,
        h.cos_cos_sum() / n,
    )
}

pub(crate) fn three_spin_ratio(chain: &CouplingChain, t: f64) -> Ratio {
    let h = HalfAngles::new(chain, t);
    Ratio::new(
        (h.sin_pair_deficit_sum() + h.sin_sin_sum()) / 3.0,
        h.cos_cos_sum() / 3.0,
    )
}

pub(crate) fn four_spin_ratio(chain: &CouplingChain, t: f64) -> Ratio {
    let h = HalfAngles::new(chain, t);
    let ssc: f64 = (1..=4)
        .map(|i| h.sin(i) * h.sin(i + 1) * h.cos(i + 2) * h.cos(i + 3))
        .sum();
    // 8(⟨J_x²⟩ + ⟨J_y²⟩) − 4 Σ sin = 4 Σ (1 − sin) + 4 ssc
    Ratio::new(
        (h.sin_pair_deficit_sum() + ssc) / 4.0,
        h.cos_cos_sum() / 4.0,
    )
}

pub(crate) fn uniform_ratio(chi: f64, t: f64) -> Ratio {
    let (s, c) = (0.5 * chi * t).sin_cos();
    // ¼ sin²(χt) = (cs)²
    Ratio::new(one_minus_sin(chi * t) + (c * s) * (c * s), c * c)
}

pub(crate) fn dimerized_ratio(chi: f64, delta: f64, t: f64) -> Ratio {
    let (so, co) = (0.5 * chi * (1.0 + delta) * t).sin_cos();
    let (se, ce) = (0.5 * chi * (1.0 - delta) * t).sin_cos();
    Ratio::new(one_minus_sin(chi * t) + (co * so) * (ce * se), co * ce)
}

pub(crate) fn two_spin_ratio(chi: f64, t: f64) -> Ratio {
    Ratio::new(one_minus_sin(chi * t), (chi * t).cos())
}

/// General ring, N >= 5:
///
/// `ξ² = [N² + N Σ c_i s_{i+1} s_{i+2} c_{i+3} − N Σ sin((χ_i+χ_{i+1})t/2)] / [Σ c_i c_{i+1}]²`
///
/// with `c_i = cos(χ_i t/2)`, `s_i = sin(χ_i t/2)`.
pub fn xi_pi4_general(chain: &CouplingChain, t: f64) -> Result<f64> {
    if chain.n() < 5 {
        return Err(Error::UnsupportedSize { formula: "general ring xi^2", n: chain.n(), min: 5 });
    }
    Ok(resolve(|x| general_ratio(chain, x), t, chain.max_abs_coupling()))
}

/// Uniform ring of four or more spins:
/// `[1 + ¼ sin²(χt) − sin(χt)] / cos⁴(χt/2)`.
pub fn xi_pi4_uniform(chi: f64, t: f64) -> f64 {
    resolve(|x| uniform_ratio(chi, x), t, chi.abs())
}

/// Two spins coupled by `H = 2χ j_x1 j_x2`:
/// `(1 − sin χt) / cos² χt`, evaluated as `1 / (1 + sin χt)`.
///
/// The optimum `ξ² = 1/2` at `χt = π/2` is a removable 0/0 of the first
/// form; the second has no such point. Poles sit at `sin χt = −1`; for
/// negative sines `1 + sin χt` is formed as `(cos(χt/2) + sin(χt/2))²`,
/// which does not cancel there.
pub fn xi_pi4_n2(chi: f64, t: f64) -> f64 {
    let r = two_spin_ratio(chi, t);
    if r.is_singular() && !r.is_removable() {
        return f64::INFINITY;
    }
    let sin = (chi * t).sin();
    if sin >= 0.0 {
        return 1.0 / (1.0 + sin);
    }
    let (s, c) = (0.5 * chi * t).sin_cos();
    1.0 / ((c + s) * (c + s))
}

/// Three-spin ring.
pub fn xi_pi4_n3(chi: [f64; 3], t: f64) -> f64 {
    let chain = CouplingChain::from_raw(chi.to_vec());
    resolve(|x| three_spin_ratio(&chain, x), t, chain.max_abs_coupling())
}

/// Four-spin ring, via `⟨J_x²⟩ + ⟨J_y²⟩ = 2 + ½ Σ s_i s_{i+1} c_{i+2} c_{i+3}`.
pub fn xi_pi4_n4(chi: [f64; 4], t: f64) -> f64 {
    let chain = CouplingChain::from_raw(chi.to_vec());
    resolve(|x| four_spin_ratio(&chain, x), t, chain.max_abs_coupling())
}

/// Dimerized ring with bonds `χ(1 ± δ)`, for any even N:
/// `[1 + ¼ sin(χ_o t) sin(χ_e t) − sin(χt)] / [cos²(χ_o t/2) cos²(χ_e t/2)]`.
pub fn xi_pi4_dimerized(chi: f64, delta: f64, t: f64) -> f64 {
    let rate = (chi * (1.0 + delta)).abs().max((chi * (1.0 - delta)).abs());
    resolve(|x| dimerized_ratio(chi, delta, x), t, rate)
}

/// `ξ²_{π/4}` for any ring, routed by size:
///
/// | N    | formula |
/// |------|---------|
/// | 2    | [`xi_pi4_n2`] with `χ = (χ_1 + χ_2)/2` |
/// | 3    | [`xi_pi4_n3`] |
/// | 4    | [`xi_pi4_n4`] |
/// | >= 5 | [`xi_pi4_general`] |
///
/// A two-spin ring has both bonds on the same pair, so its Hamiltonian is
/// `(χ_1 + χ_2) j_x1 j_x2`, the two-spin model with the mean coupling.
pub fn xi_pi4(chain: &CouplingChain, t: f64) -> Result<f64> {
    let c = chain.couplings();
    Ok(match chain.n() {
        2 => xi_pi4_n2(pair_coupling(chain), t),
        3 => xi_pi4_n3([c[0], c[1], c[2]], t),
        4 => xi_pi4_n4([c[0], c[1], c[2], c[3]], t),
        _ => xi_pi4_general(chain, t)?,
    })
}

/// Normalized ratio behind [`xi_pi4`], for pole detection on grids.
pub(crate) fn pi4_ratio(chain: &CouplingChain, t: f64) -> Ratio {
    match chain.n() {
        2 => two_spin_ratio(pair_coupling(chain), t),
        3 => three_spin_ratio(chain, t),
        4 => four_spin_ratio(chain, t),
        _ => general_ratio(chain, t),
    }
}

/// True when `ξ²` has a pole (not a removable point) at `ratio`.
pub(crate) fn is_pole(ratio: Ratio) -> bool {
    ratio.mean_spin.abs() < ZERO_FLOOR && ratio.numerator.abs() >= ZERO_FLOOR
}
