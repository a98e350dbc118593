//! Bond-diluted rings: each bond carries `χ` with probability `p` and is
//! absent otherwise, independently of every other bond.
//!
//! For a long ring the `π/4` squeezing ratio self-averages, so its
//! disorder mean follows from replacing every trig factor by its bond
//! average ([`trig_means`]) and keeping only products of distinct bonds.
//! [`xi_random_mc`] checks that limit by brute-force sampling.

use rayon::prelude::*;

use crate::analytic::formulas::xi_pi4_general;
use crate::analytic::moments::one_minus_sin;
use crate::analytic::ratio::{resolve, Ratio};
use crate::chain::{check_probability, diluted_bonds, rng_for, CouplingChain};
use crate::error::{Error, Result};

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl EnsembleEstimate {
    /// Mean and standard error of `values`; `None` when empty.
    ///
    /// Deviations are taken from the first value, so a constant sample
    /// reproduces that value exactly with zero error.
    pub fn from_samples(values: &[f64]) -> Option<Self> {
        let first = *values.first()?;
        let n = values.len() as f64;
        let shift = values.iter().map(|v| v - first).sum::<f64>() / n;
        let mean = first + shift;
        let std_error = if values.len() > 1 {
            let ss: f64 = values.iter().map(|v| (v - first - shift).powi(2)).sum();
            (ss / (n - 1.0) / n).sqrt()
        } else {
            0.0
        };
        Some(Self { mean, std_error, samples: values.len() })
    }

    /// `|mean − target|` in units of the standard error (0 when both vanish).
    pub fn z_score(&self, target: f64) -> f64 {
        let gap = (self.mean - target).abs();
        if gap == 0.0 {
            0.0
        } else {
            gap / self.std_error
        }
    }
}

/// Bond averages with `μ = χt/2`:
/// `(E cos(χ_i t/2), E sin(χ_i t/2), E sin((χ_i + χ_{i+1}) t/2))`.
pub fn trig_means(p: f64, mu: f64) -> Result<(f64, f64, f64)> {
    check_probability(p)?;
    let (s, c) = mu.sin_cos();
    Ok((
        p * c + (1.0 - p),
        p * s,
        p * p * (2.0 * mu).sin() + 2.0 * p * (1.0 - p) * s,
    ))
}

pub(crate) fn random_ratio(p: f64, chi: f64, t: f64) -> Ratio {
    let mu = 0.5 * chi * t;
    let (cos_mean, sin_mean, _) = match trig_means(p, mu) {
        Ok(m) => m,
        Err(_) => return Ratio::new(f64::NAN, f64::NAN),
    };
    // 1 − E sin, averaged over the three pair sums 0, μ, 2μ
    let q = 1.0 - p;
    let deficit = q * q + 2.0 * p * q * one_minus_sin(mu) + p * p * one_minus_sin(2.0 * mu);
    let cs = cos_mean * sin_mean;
    Ratio::new(deficit + cs * cs, cos_mean * cos_mean)
}

/// Large-N disorder average of `ξ²_{π/4}`:
///
/// `[1 + c̄² s̄² − sp̄] / c̄⁴` with `c̄ = 1 − p(1 − cos μ)`, `s̄ = p sin μ`,
/// `sp̄ = p² sin 2μ + 2p(1−p) sin μ`.
pub fn xi_random_analytic(p: f64, chi: f64, t: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(resolve(|x| random_ratio(p, chi, x), t, chi.abs()))
}

/// Monte Carlo estimate of the disorder mean of the general ring formula.
///
/// Sample `k` draws its `n` bonds from ChaCha stream `k` of `seed` (one
/// draw per bond, bond order 1..n), so sample 0 is exactly the chain that
/// `sample_random` returns for the same seed, and results do not depend on
/// how samples are scheduled across threads. Each realization contributes
/// its own full ratio.
pub fn xi_random_mc(
    p: f64,
    chi: f64,
    n: usize,
    t: f64,
    samples: usize,
    seed: u64,
) -> Result<EnsembleEstimate> {
    check_probability(p)?;
    if n < 5 {
        return Err(Error::UnsupportedSize { formula: "general ring xi^2", n, min: 5 });
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let values = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed, k);
            let chain = CouplingChain::new(diluted_bonds(n, chi, p, &mut rng))?;
            xi_pi4_general(&chain, t)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(EnsembleEstimate::from_samples(&values).expect("samples >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::formulas::xi_pi4_uniform;
    use crate::chain::{sample_random, unit_draw, RandomChainSpec};
    use std::f64::consts::PI;

    #[test]
    fn deterministic_bond_limits() {
        let mu = 0.7;
        let (c, s, sp) = trig_means(1.0, mu).unwrap();
        assert_eq!((c, s, sp), (mu.cos(), mu.sin(), (2.0 * mu).sin()));
        assert_eq!(trig_means(0.0, mu).unwrap(), (1.0, 0.0, 0.0));
        assert!(trig_means(-0.1, mu).is_err());
    }

    #[test]
    fn bond_averages_match_draws() {
        // Monte Carlo oracle: average the trig factors over 10^6 seeded bonds
        let (p, mu) = (0.5, PI / 3.0);
        let draws = 1_000_000;
        let mut rng = rng_for(99, 0);
        let mut acc = [[0.0f64; 2]; 3];
        let mut prev = if unit_draw(&mut rng) < p { 2.0 * mu } else { 0.0 };
        for _ in 0..draws {
            let x = if unit_draw(&mut rng) < p { 2.0 * mu } else { 0.0 };
            for (slot, v) in [(x / 2.0).cos(), (x / 2.0).sin(), ((prev + x) / 2.0).sin()]
                .into_iter()
                .enumerate()
            {
                acc[slot][0] += v;
                acc[slot][1] += v * v;
            }
            prev = x;
        }
        let exact = trig_means(p, mu).unwrap();
        for (slot, target) in [exact.0, exact.1, exact.2].into_iter().enumerate() {
            let mean = acc[slot][0] / draws as f64;
            let var = acc[slot][1] / draws as f64 - mean * mean;
            // consecutive pair sums overlap, so allow for lag-one correlation
            let se = (3.0 * var / draws as f64).sqrt();
            assert!((mean - target).abs() < 5.0 * se, "slot {slot}: {mean} vs {target}");
        }
    }

    #[test]
    fn full_filling_is_uniform() {
        for k in 0..100 {
            let t = 3.0 * k as f64 / 99.0;
            let a = xi_random_analytic(1.0, 1.0, t).unwrap();
            assert!((a - xi_pi4_uniform(1.0, t)).abs() < 1e-12);
            assert_eq!(xi_random_analytic(0.0, 1.0, t).unwrap(), 1.0);
        }
    }

    #[test]
    fn partial_filling_still_squeezes() {
        for p in [0.25, 0.5, 0.75] {
            let min = (0..301)
                .map(|k| xi_random_analytic(p, 1.0, k as f64 * 0.01).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(min < 1.0);
        }
    }

    #[test]
    fn mc_without_randomness() {
        let est = xi_random_mc(1.0, 1.0, 100, 0.8, 3, 5).unwrap();
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.samples, 3);
        assert!((est.mean - xi_pi4_uniform(1.0, 0.8)).abs() < 1e-12);
        for t in [0.0, 0.5, 2.0] {
            assert_eq!(xi_random_mc(0.0, 1.0, 50, t, 4, 1).unwrap().mean, 1.0);
        }
    }

    #[test]
    fn mc_first_sample_is_sample_random() {
        let chain = sample_random(&RandomChainSpec { n: 40, chi: 1.0, p: 0.5, seed: 11 }).unwrap();
        let one = xi_random_mc(0.5, 1.0, 40, 0.6, 1, 11).unwrap();
        assert_eq!(one.mean, xi_pi4_general(&chain, 0.6).unwrap());
    }

    #[test]
    fn mc_is_reproducible() {
        let a = xi_random_mc(0.5, 1.0, 1000, 0.7, 6, 3).unwrap();
        let b = xi_random_mc(0.5, 1.0, 1000, 0.7, 6, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mc_argument_checks() {
        assert!(matches!(xi_random_mc(0.5, 1.0, 4, 0.1, 2, 0), Err(Error::UnsupportedSize { .. })));
        assert!(matches!(xi_random_mc(1.5, 1.0, 10, 0.1, 2, 0), Err(Error::InvalidProbability(_))));
        assert!(xi_random_mc(0.5, 1.0, 10, 0.1, 0, 0).is_err());
    }
}
