//! Squeezing curves `ξ²(t)` on time grids.
//!
//! Besides evaluating each grid point, sampling looks for poles that fall
//! *between* grid points: a zero of the mean spin inside a cell marks the
//! nearest grid point as `+inf`, so divergences show up in datasets even
//! when no grid point lands on them exactly. Removable zeros (where the
//! noise vanishes together with the mean spin) are left alone.

use std::io::{self, Write};

use crate::chain::CouplingChain;
use crate::ensemble::random_ratio;
use crate::error::{Error, Result};

use super::formulas::{
    dimerized_ratio, is_pole, pi4_ratio, two_spin_ratio, uniform_ratio, xi_pi4, xi_pi4_dimerized,
    xi_pi4_n2, xi_pi4_uniform,
};
use super::moments::expectations;
use super::quadrature::{theta_ratio, QuadratureAngle};
use super::ratio::{resolve, Ratio};

/// A squeezing expression that can be sampled in time.
#[derive(Debug, Clone, PartialEq)]
pub enum SqueezingModel {
    /// Uniform ring with four or more spins.
    Uniform { chi: f64 },
    /// Two spins, `H = 2χ j_x1 j_x2`.
    TwoSpin { chi: f64 },
    /// Dimerized ring, any even size.
    Dimerized { chi: f64, delta: f64 },
    /// Bond-diluted ring in the large-N limit.
    Diluted { chi: f64, p: f64 },
    /// Explicit ring, `θ = π/4`, routed by size.
    Chain(CouplingChain),
    /// Explicit ring along an arbitrary quadrature.
    ChainQuadrature(CouplingChain, QuadratureAngle),
}

impl SqueezingModel {
    pub fn for_chain(chain: CouplingChain, theta: QuadratureAngle) -> Self {
        if theta.is_pi_4() {
            Self::Chain(chain)
        } else {
            Self::ChainQuadrature(chain, theta)
        }
    }

    pub fn theta(&self) -> QuadratureAngle {
        match self {
            Self::ChainQuadrature(_, theta) => *theta,
            _ => QuadratureAngle::PI_4,
        }
    }

    pub fn ratio(&self, t: f64) -> Ratio {
        match self {
            Self::Uniform { chi } => uniform_ratio(*chi, t),
            Self::TwoSpin { chi } => two_spin_ratio(*chi, t),
            Self::Dimerized { chi, delta } => dimerized_ratio(*chi, *delta, t),
            Self::Diluted { chi, p } => random_ratio(*p, *chi, t),
            Self::Chain(chain) => pi4_ratio(chain, t),
            Self::ChainQuadrature(chain, theta) => {
                theta_ratio(&expectations(chain, t), *theta, chain.n())
            }
        }
    }

    /// Fastest angular frequency involved.
    pub fn rate(&self) -> f64 {
        match self {
            Self::Uniform { chi } | Self::TwoSpin { chi } | Self::Diluted { chi, .. } => chi.abs(),
            Self::Dimerized { chi, delta } => {
                (chi * (1.0 + delta)).abs().max((chi * (1.0 - delta)).abs())
            }
            Self::Chain(c) | Self::ChainQuadrature(c, _) => c.max_abs_coupling(),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Self::Uniform { chi } => xi_pi4_uniform(*chi, t),
            Self::TwoSpin { chi } => xi_pi4_n2(*chi, t),
            Self::Dimerized { chi, delta } => xi_pi4_dimerized(*chi, *delta, t),
            // sizes are validated at construction, so dispatch cannot fail
            Self::Chain(chain) => xi_pi4(chain, t).expect("valid chain"),
            _ => resolve(|x| self.ratio(x), t, self.rate()),
        }
    }
}

/// Sampled `(t, ξ²)` pairs; poles are stored as `+inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingCurve {
    pub theta: QuadratureAngle,
    pub points: Vec<(f64, f64)>,
}

impl SqueezingCurve {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Smallest finite `ξ²` and where it occurs.
    pub fn minimum(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .filter(|p| p.1.is_finite())
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Number of grid points with `ξ² < 1`.
    pub fn squeezed_points(&self) -> usize {
        self.values().filter(|&v| v < 1.0).count()
    }

    /// Writes `chi_t,xi2` rows with the time column scaled by `chi`.
    ///
    /// Numbers carry 17 significant digits, so they re-parse to the same
    /// doubles; poles are written as `inf`.
    pub fn write_csv(&self, chi: f64, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "chi_t,xi2")?;
        for &(t, v) in &self.points {
            writeln!(out, "{},{}", format_number(chi * t), format_number(v))?;
        }
        Ok(())
    }

    pub fn to_csv(&self, chi: f64) -> String {
        let mut buf = Vec::new();
        self.write_csv(chi, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }
}

pub fn format_number(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

/// Evenly spaced grid of `points` values from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![start],
        _ => {
            let step = (end - start) / (points - 1) as f64;
            (0..points).map(|k| start + step * k as f64).collect()
        }
    }
}

/// Samples `model` on `times`, which must be strictly increasing.
pub fn sample(model: &SqueezingModel, times: &[f64]) -> Result<SqueezingCurve> {
    if times.windows(2).any(|w| !(w[0] < w[1])) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("time grid must be finite and strictly increasing".into()));
    }
    let mut points: Vec<(f64, f64)> = times.iter().map(|&t| (t, model.value(t))).collect();
    for k in hidden_poles(model, times) {
        points[k].1 = f64::INFINITY;
    }
    Ok(SqueezingCurve { theta: model.theta(), points })
}

/// `ξ²` of `chain` along `theta` over `times`.
pub fn curve(chain: &CouplingChain, times: &[f64], theta: QuadratureAngle) -> Result<SqueezingCurve> {
    sample(&SqueezingModel::for_chain(chain.clone(), theta), times)
}

fn nearest(times: &[f64], k: usize, root: f64) -> usize {
    if root - times[k] <= times[k + 1] - root {
        k
    } else {
        k + 1
    }
}

/// Grid indices nearest to poles that lie strictly between grid points.
fn hidden_poles(model: &SqueezingModel, times: &[f64]) -> Vec<usize> {
    let spin = |t: f64| model.ratio(t).mean_spin;
    let m: Vec<f64> = times.iter().map(|&t| spin(t)).collect();
    let mut flagged = Vec::new();

    // crossings
    for k in 0..times.len().saturating_sub(1) {
        if m[k] * m[k + 1] < 0.0 {
            let root = bisect(spin, times[k], times[k + 1]);
            if is_pole(model.ratio(root)) {
                flagged.push(nearest(times, k, root));
            }
        }
    }
    // touching zeros, which a sign test cannot see
    for k in 1..times.len().saturating_sub(1) {
        let (a, b, c) = (m[k - 1].abs(), m[k].abs(), m[k + 1].abs());
        if b <= a && b <= c && m[k - 1] * m[k + 1] > 0.0 {
            let t_min = golden_min(|t| spin(t).abs(), times[k - 1], times[k + 1]);
            if is_pole(model.ratio(t_min)) {
                let j = if t_min <= times[k] { k - 1 } else { k };
                flagged.push(nearest(times, j, t_min));
            }
        }
    }
    flagged
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) * f_lo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        x1
    } else {
        x2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::make_uniform;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn grid_endpoints() {
        let g = linear_grid(0.0, 3.0, 301);
        assert_eq!(g.len(), 301);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[300], 3.0);
    }

    #[test]
    fn rejects_non_monotone_grid() {
        let c = make_uniform(3, 1.0).unwrap();
        assert!(curve(&c, &[0.0, 0.5, 0.5], QuadratureAngle::PI_4).is_err());
        assert!(curve(&c, &[0.0, f64::NAN], QuadratureAngle::PI_4).is_err());
    }

    #[test]
    fn zero_chain_is_flat() {
        let c = make_uniform(6, 0.0).unwrap();
        let curve = curve(&c, &linear_grid(0.0, 10.0, 50), QuadratureAngle::PI_4).unwrap();
        assert!(curve.values().all(|v| v == 1.0));
    }

    #[test]
    fn two_spin_curve_minimum() {
        let c = make_uniform(2, 1.0).unwrap();
        let times = linear_grid(0.0, PI, 301);
        let curve = curve(&c, &times, QuadratureAngle::PI_4).unwrap();
        let (t, v) = curve.minimum().unwrap();
        assert!((t - FRAC_PI_2).abs() < 1e-12);
        assert!((v - 0.5).abs() < 1e-12);
        // the removable point at π/2 must not be flagged
        assert!(curve.values().all(f64::is_finite));
    }

    #[test]
    fn crossing_pole_is_flagged_between_grid_points() {
        let m = SqueezingModel::Dimerized { chi: 1.0, delta: 1.1 };
        let times = linear_grid(0.0, 3.0, 301);
        let curve = sample(&m, &times).unwrap();
        let poles: Vec<f64> = curve.points.iter().filter(|p| p.1.is_infinite()).map(|p| p.0).collect();
        assert_eq!(poles.len(), 1, "{poles:?}");
        assert!((poles[0] - PI / 2.1).abs() <= 0.005 + 1e-12);
    }

    #[test]
    fn touching_pole_is_flagged() {
        // uniform ring: mean spin ∝ cos²(χt/2) touches zero at χt = π
        let m = SqueezingModel::Uniform { chi: 1.0 };
        let times = linear_grid(3.0, 3.3, 31);
        let curve = sample(&m, &times).unwrap();
        let poles: Vec<f64> = curve.points.iter().filter(|p| p.1.is_infinite()).map(|p| p.0).collect();
        assert_eq!(poles.len(), 1, "{poles:?}");
        assert!((poles[0] - PI).abs() <= 0.005 + 1e-12);
    }

    #[test]
    fn csv_round_trips() {
        let m = SqueezingModel::Dimerized { chi: 1.0, delta: 1.1 };
        let curve = sample(&m, &linear_grid(0.0, 3.0, 301)).unwrap();
        let text = curve.to_csv(1.0);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("chi_t,xi2"));
        for (line, &(t, v)) in lines.zip(&curve.points) {
            let (a, b) = line.split_once(',').unwrap();
            assert_eq!(a.parse::<f64>().unwrap().to_bits(), t.to_bits());
            assert_eq!(b.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert!(text.contains(",inf\n"));
    }

    #[test]
    fn quadrature_curve_uses_moments() {
        let c = make_uniform(6, 1.0).unwrap();
        let times = linear_grid(0.0, 1.0, 11);
        let a = curve(&c, &times, QuadratureAngle::new(0.3)).unwrap();
        let b = curve(&c, &times, QuadratureAngle::PI_4).unwrap();
        assert_eq!(a.points[0].1, 1.0);
        assert!(a.points[5].1 != b.points[5].1);
    }
}
