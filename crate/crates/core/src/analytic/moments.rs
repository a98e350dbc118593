//! Collective-spin moments of the Ising chain started with every spin up
//! along z.
//!
//! In the Heisenberg picture each spin precesses about x at a rate set by
//! its two neighbours' x components, so only bonds within two sites of a
//! spin enter its correlators. The general expressions below hold once the
//! four bonds around a pair at distance two are all distinct, i.e. N >= 5.
//! [`expectations`] adds the exact few-spin forms for N = 2, 3, 4.

use crate::chain::CouplingChain;
use crate::error::{Error, Result};

/// First and second collective moments at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationSet {
    pub t: f64,
    pub jz: f64,
    pub jx2: f64,
    pub jy2: f64,
    /// `⟨J_x J_y + J_y J_x⟩`
    pub jxjy_sym: f64,
}

impl ExpectationSet {
    /// Moments of the fully polarized initial state.
    pub fn initial(n: usize) -> Self {
        let quarter = n as f64 / 4.0;
        Self { t: 0.0, jz: n as f64 / 2.0, jx2: quarter, jy2: quarter, jxjy_sym: 0.0 }
    }
}

/// Half-angle trig factors of a chain at time `t`, indexed by 1-based bond.
pub(crate) struct HalfAngles<'a> {
    chain: &'a CouplingChain,
    t: f64,
}

impl<'a> HalfAngles<'a> {
    pub(crate) fn new(chain: &'a CouplingChain, t: f64) -> Self {
        Self { chain, t }
    }

    pub(crate) fn cos(&self, i: isize) -> f64 {
        (0.5 * self.chain.bond(i) * self.t).cos()
    }

    pub(crate) fn sin(&self, i: isize) -> f64 {
        (0.5 * self.chain.bond(i) * self.t).sin()
    }

    /// `sin((χ_i + χ_{i+1}) t / 2)`
    pub(crate) fn sin_pair(&self, i: isize) -> f64 {
        (0.5 * (self.chain.bond(i) + self.chain.bond(i + 1)) * self.t).sin()
    }

    fn sum(&self, term: impl Fn(isize) -> f64) -> f64 {
        (1..=self.chain.n() as isize).map(term).sum()
    }

    /// `Σ cos(χ_i t/2) cos(χ_{i+1} t/2)`
    pub(crate) fn cos_cos_sum(&self) -> f64 {
        self.sum(|i| self.cos(i) * self.cos(i + 1))
    }

    /// `Σ cos(χ_i t/2) sin(χ_{i+1} t/2) sin(χ_{i+2} t/2) cos(χ_{i+3} t/2)`
    pub(crate) fn distance_two_sum(&self) -> f64 {
        self.sum(|i| self.cos(i) * self.sin(i + 1) * self.sin(i + 2) * self.cos(i + 3))
    }

    pub(crate) fn sin_pair_sum(&self) -> f64 {
        self.sum(|i| self.sin_pair(i))
    }

    /// `Σ [1 − sin((χ_i+χ_{i+1})t/2)]`, each term kept to full relative
    /// accuracy through [`one_minus_sin`].
    pub(crate) fn sin_pair_deficit_sum(&self) -> f64 {
        self.sum(|i| {
            one_minus_sin(0.5 * (self.chain.bond(i) + self.chain.bond(i + 1)) * self.t)
        })
    }

    /// `Σ sin(χ_i t/2) sin(χ_{i+1} t/2)`, the three-spin correlation sum.
    pub(crate) fn sin_sin_sum(&self) -> f64 {
        self.sum(|i| self.sin(i) * self.sin(i + 1))
    }
}

/// `1 − sin x` as `(cos(x/2) − sin(x/2))²`, which does not cancel
/// near `sin x = 1`.
pub(crate) fn one_minus_sin(x: f64) -> f64 {
    let (s, c) = (0.5 * x).sin_cos();
    (c - s) * (c - s)
}

fn require(chain: &CouplingChain, formula: &'static str, min: usize) -> Result<()> {
    if chain.n() < min {
        Err(Error::UnsupportedSize { formula, n: chain.n(), min })
    } else {
        Ok(())
    }
}

/// Effective coupling of a two-spin ring: both bonds act on the same pair,
/// so `H = (χ_1 + χ_2) j_x1 j_x2 = 2 χ̄ j_x1 j_x2`.
pub(crate) fn pair_coupling(chain: &CouplingChain) -> f64 {
    0.5 * (chain.bond(1) + chain.bond(2))
}

/// `⟨J_z⟩ = ½ Σ cos(χ_i t/2) cos(χ_{i+1} t/2)` for N >= 3, and `cos(χ̄ t)`
/// for a two-spin ring.
pub fn mean_jz(chain: &CouplingChain, t: f64) -> f64 {
    if chain.n() == 2 {
        (pair_coupling(chain) * t).cos()
    } else {
        0.5 * HalfAngles::new(chain, t).cos_cos_sum()
    }
}

/// `⟨j_{y,i} j_{y,i+k}⟩` for 1-based site `i` and offset `0 <= k < N`.
///
/// Only `k = 0` and pairs at distance two survive. The partner at offset
/// `N - 2` sits two sites behind `i`, so it reuses the distance-two form
/// anchored at that site.
pub fn corr_yy(chain: &CouplingChain, i: usize, k: usize, t: f64) -> Result<f64> {
    require(chain, "distance-k correlator", 5)?;
    let n = chain.n();
    if k >= n {
        return Err(Error::InvalidArgument(format!("offset {k} must be below N = {n}")));
    }
    let h = HalfAngles::new(chain, t);
    let i = i as isize;
    let two = |a: isize| 0.25 * h.cos(a - 1) * h.sin(a) * h.sin(a + 1) * h.cos(a + 2);
    Ok(match k {
        0 => 0.25,
        2 => two(i),
        k if k == n - 2 => two(i - 2),
        _ => 0.0,
    })
}

/// `⟨J_y²⟩ = N/4 + ½ Σ cos(χ_{i-1}t/2) sin(χ_i t/2) sin(χ_{i+1}t/2) cos(χ_{i+2}t/2)`,
/// N >= 5. Summed with the shifted indexing `χ_i..χ_{i+3}`; over a full
/// ring the two agree term by term.
pub fn jy_squared(chain: &CouplingChain, t: f64) -> Result<f64> {
    require(chain, "<J_y^2>", 5)?;
    Ok(chain.n() as f64 / 4.0 + 0.5 * HalfAngles::new(chain, t).distance_two_sum())
}

/// `⟨J_x J_y + J_y J_x⟩ = −½ Σ sin((χ_i + χ_{i+1}) t / 2)`.
///
/// Holds for every N >= 2: each term only involves the two bonds touching
/// one spin.
pub fn jxjy_sym(chain: &CouplingChain, t: f64) -> f64 {
    -0.5 * HalfAngles::new(chain, t).sin_pair_sum()
}

/// Exact moments for any chain size.
pub fn expectations(chain: &CouplingChain, t: f64) -> ExpectationSet {
    let n = chain.n();
    let h = HalfAngles::new(chain, t);
    let jy2 = match n {
        2 => 0.5,
        3 => 0.75 + 0.5 * h.sin_sin_sum(),
        4 => {
            let s = (1..=4)
                .map(|i| h.sin(i) * h.sin(i + 1) * h.cos(i + 2) * h.cos(i + 3))
                .sum::<f64>();
            1.0 + 0.5 * s
        }
        _ => n as f64 / 4.0 + 0.5 * h.distance_two_sum(),
    };
    ExpectationSet {
        t,
        jz: mean_jz(chain, t),
        jx2: n as f64 / 4.0,
        jy2,
        jxjy_sym: jxjy_sym(chain, t),
    }
}
