//! Ising coupling chains and their constructors.
//!
//! A chain of `n` spins carries one coupling per bond. Bond `i` (1-based)
//! joins spin `i` to spin `i + 1`, and bond `n` closes the ring back onto
//! spin 1. An open chain is a closed one whose last bond is zero.
//!
//! Storage is 0-based, but [`CouplingChain::bond`] takes the 1-based bond
//! label used throughout the docs and wraps it cyclically, so
//! `bond(i + n) == bond(i)` for every `i`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Closed,
    Open,
}

/// `n` spins with cyclic nearest-neighbour couplings `χ_1..χ_n`
/// (angular frequencies, ħ = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingChain {
    couplings: Vec<f64>,
}

impl CouplingChain {
    /// Builds a chain from explicit bond strengths. Needs at least two
    /// finite couplings.
    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.len() < 2 {
            return Err(Error::InvalidChain(format!(
                "need at least 2 spins, got {}",
                couplings.len()
            )));
        }
        if let Some(bad) = couplings.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidChain(format!("coupling {bad} is not finite")));
        }
        Ok(Self { couplings })
    }

    /// Unchecked constructor for fixed-size closed forms that take raw
    /// couplings.
    pub(crate) fn from_raw(couplings: Vec<f64>) -> Self {
        Self { couplings }
    }

    /// Builds an open chain: the given `n - 1` bonds plus a zero closing bond.
    pub fn open(bonds: &[f64]) -> Result<Self> {
        let mut couplings = bonds.to_vec();
        couplings.push(0.0);
        Self::new(couplings)
    }

    pub fn n(&self) -> usize {
        self.couplings.len()
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn boundary(&self) -> Boundary {
        if self.couplings[self.n() - 1] == 0.0 {
            Boundary::Open
        } else {
            Boundary::Closed
        }
    }

    /// Coupling of 1-based bond `i`, wrapped cyclically. `i` may be zero or
    /// negative, in which case it counts backwards from bond `n`.
    pub fn bond(&self, i: isize) -> f64 {
        let n = self.n() as isize;
        self.couplings[(i - 1).rem_euclid(n) as usize]
    }

    pub fn total_coupling(&self) -> f64 {
        self.couplings.iter().sum()
    }

    pub fn max_abs_coupling(&self) -> f64 {
        self.couplings.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// The same chain with every bond label shifted by `shift`:
    /// bond `i` of the result is bond `i + shift` of `self`.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut couplings = self.couplings.clone();
        couplings.rotate_left(shift % self.n());
        Self { couplings }
    }

    /// Mirror image: spin `i` maps to spin `n + 1 - i`.
    pub fn reflected(&self) -> Self {
        let n = self.n() as isize;
        let couplings = (1..=n).map(|i| self.bond(n - i)).collect();
        Self { couplings }
    }
}

/// Closed chain with every bond equal to `chi`.
pub fn make_uniform(n: usize, chi: f64) -> Result<CouplingChain> {
    CouplingChain::new(vec![chi; n])
}

/// Alternating chain of `N = 2M` spins: odd bonds `χ(1 + δ)`, even bonds
/// `χ(1 − δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimerSpec {
    pub pair_count: usize,
    pub chi: f64,
    pub delta: f64,
}

impl DimerSpec {
    pub fn strong(&self) -> f64 {
        self.chi * (1.0 + self.delta)
    }

    pub fn weak(&self) -> f64 {
        self.chi * (1.0 - self.delta)
    }
}

pub fn make_dimerized(spec: &DimerSpec) -> Result<CouplingChain> {
    if spec.pair_count < 1 {
        return Err(Error::InvalidChain("dimerized chain needs M >= 1".into()));
    }
    let couplings = (1..=2 * spec.pair_count)
        .map(|i| if i % 2 == 1 { spec.strong() } else { spec.weak() })
        .collect();
    CouplingChain::new(couplings)
}

/// Bond-diluted chain: each bond is `chi` with probability `p`, else zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomChainSpec {
    pub n: usize,
    pub chi: f64,
    pub p: f64,
    pub seed: u64,
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Seeded generator for stream `stream` of `seed`.
///
/// Every random quantity in the crate comes from ChaCha8 keyed by
/// `rand_core`'s `seed_from_u64(seed)`, with independent work items
/// (ensemble samples) on distinct ChaCha streams.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform double in `[0, 1)` from the top 53 bits of one 64-bit draw.
pub fn unit_draw(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Fills bonds 1..n in order, one draw per bond: present iff `u < p`.
pub(crate) fn diluted_bonds(n: usize, chi: f64, p: f64, rng: &mut impl RngCore) -> Vec<f64> {
    (0..n)
        .map(|_| if unit_draw(rng) < p { chi } else { 0.0 })
        .collect()
}

pub fn sample_random(spec: &RandomChainSpec) -> Result<CouplingChain> {
    check_probability(spec.p)?;
    let mut rng = rng_for(spec.seed, 0);
    CouplingChain::new(diluted_bonds(spec.n, spec.chi, spec.p, &mut rng))
}
