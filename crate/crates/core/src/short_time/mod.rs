//! Short-time squeezing for arbitrary pairwise spin Hamiltonians
//! `H = Σ_{k≠l} j_kᵀ · m^{kl} · j_l`.
//!
//! Starting from a fully polarized state, the initial rate of change of the
//! noise in a perpendicular component depends on the couplings only through
//! the symmetrized sum `M = sym(Σ m^{kl})`. Rotating the state by `R`
//! transforms `M` to `M̃ = Rᵀ M R`, and
//!
//! ```text
//! d/dt (ΔJ_⊥)² = ½ M̃_yx
//! ```
//!
//! The fastest noise reduction, `−¼ (M_max − M_min)`, is reached with the
//! mean spin along the middle eigenvector of `M` and the measured component
//! halfway between the other two. An `M` proportional to the identity
//! cannot squeeze at all.

mod eigen;

pub use eigen::{symmetric_eigen, symmetric_eigen_jacobi, SymmetricEigen};

use serde::{Deserialize, Serialize};

use crate::chain::CouplingChain;
use crate::error::{Error, Result};
use crate::orientation::{matmul, rotation_matrix, transpose, Mat3, Orientation};

/// One coupling `j_kᵀ · m · j_l`; sites are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub k: usize,
    pub l: usize,
    pub m: Mat3,
}

/// A general pairwise Hamiltonian on `n` spins.
///
/// Serializes as `{"n": 4, "terms": [{"k": 1, "l": 2, "m": [[..], [..], [..]]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCouplingSet {
    pub n: usize,
    pub terms: Vec<PairTerm>,
}

impl PairCouplingSet {
    pub fn new(n: usize, terms: Vec<PairTerm>) -> Result<Self> {
        let set = Self { n, terms };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidPairSet(format!("need at least 2 spins, got {}", self.n)));
        }
        for (idx, term) in self.terms.iter().enumerate() {
            if term.k == term.l {
                return Err(Error::InvalidPairSet(format!("term {idx}: k == l == {}", term.k)));
            }
            if !(1..=self.n).contains(&term.k) || !(1..=self.n).contains(&term.l) {
                return Err(Error::InvalidPairSet(format!(
                    "term {idx}: sites ({}, {}) outside 1..={}",
                    term.k, term.l, self.n
                )));
            }
            if term.m.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPairSet(format!("term {idx}: non-finite matrix entry")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let set: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidPairSet(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Upper bound on the operator norm of `H`: every `j` has norm ½.
    pub fn norm_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.m.iter().flatten().map(|x| x.abs()).sum::<f64>() / 4.0)
            .sum()
    }
}

/// The symmetrized aggregate `M` with its eigen-decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateCoupling {
    pub matrix: Mat3,
    pub eigen: SymmetricEigen,
}

impl AggregateCoupling {
    /// Symmetrizes `m` and decomposes it.
    pub fn from_matrix(m: &Mat3) -> Self {
        let mut matrix = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                matrix[i][j] = 0.5 * (m[i][j] + m[j][i]);
            }
        }
        Self { matrix, eigen: symmetric_eigen(&matrix) }
    }

    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> [f64; 3] {
        self.eigen.values
    }

    /// `Rᵀ M R`.
    pub fn rotated(&self, o: &Orientation) -> Mat3 {
        let r = rotation_matrix(o);
        matmul(&matmul(&transpose(&r), &self.matrix), &r)
    }
}

pub fn aggregate(ps: &PairCouplingSet) -> AggregateCoupling {
    let mut sum = [[0.0; 3]; 3];
    for term in &ps.terms {
        for i in 0..3 {
            for j in 0..3 {
                sum[i][j] += term.m[i][j];
            }
        }
    }
    AggregateCoupling::from_matrix(&sum)
}

/// `d/dt (ΔJ_⊥)²` at t = 0 for the state polarized along `R·ẑ`, with
/// `J_⊥ = (R·x̂)·J` (ħ = 1).
pub fn noise_derivative(ac: &AggregateCoupling, o: &Orientation) -> f64 {
    0.5 * ac.rotated(o)[1][0]
}

/// Orientation with the most negative short-time noise derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalOrientation {
    pub orientation: Orientation,
    pub rate: f64,
    /// Index (into the descending eigenvalues) of the mean-spin axis.
    pub mean_spin_axis: usize,
}

impl OptimalOrientation {
    pub fn squeezes(&self) -> bool {
        self.rate < 0.0
    }
}

/// Tries each eigenvector of `M` as the mean-spin axis, with the measured
/// component at ±45° between the remaining two eigenvectors `a`, `b`; that
/// candidate's best rate is `−¼ |M_a − M_b|`. Candidates are visited middle
/// eigenvector first, so ties resolve to it.
pub fn optimal_orientation(ac: &AggregateCoupling) -> OptimalOrientation {
    let ev = ac.eigenvalues();
    let mut best: Option<(usize, usize, usize, f64)> = None;
    for (axis, a, b) in [(1, 2, 0), (0, 1, 2), (2, 0, 1)] {
        // `0.0 -` keeps a zero gap at +0
        let rate = 0.0 - 0.25 * (ev[a] - ev[b]).abs();
        if best.is_none_or(|(.., r)| rate < r) {
            best = Some((axis, a, b, rate));
        }
    }
    let (axis, a, b, rate) = best.expect("three candidates");

    let e3 = ac.eigen.vector(axis);
    let (va, vb) = (ac.eigen.vector(a), ac.eigen.vector(b));
    let frame = |sign: f64| {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let e1 = [s * (va[0] + sign * vb[0]), s * (va[1] + sign * vb[1]), s * (va[2] + sign * vb[2])];
        let e2 = [
            e3[1] * e1[2] - e3[2] * e1[1],
            e3[2] * e1[0] - e3[0] * e1[2],
            e3[0] * e1[1] - e3[1] * e1[0],
        ];
        Orientation::from_rotation(&[
            [e1[0], e2[0], e3[0]],
            [e1[1], e2[1], e3[1]],
            [e1[2], e2[2], e3[2]],
        ])
    };
    let (plus, minus) = (frame(1.0), frame(-1.0));
    let orientation = if noise_derivative(ac, &plus) <= noise_derivative(ac, &minus) {
        plus
    } else {
        minus
    };
    OptimalOrientation { orientation, rate, mean_spin_axis: axis }
}

/// Writes an Ising ring as pair couplings: bond `i` becomes the two terms
/// `(i, i+1)` and `(i+1, i)`, each with `m_xx = χ_i / 2`.
pub fn ising_to_pairset(chain: &CouplingChain) -> PairCouplingSet {
    let n = chain.n();
    let mut terms = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let j = i % n + 1;
        let mut m = [[0.0; 3]; 3];
        m[0][0] = 0.5 * chain.bond(i as isize);
        terms.push(PairTerm { k: i, l: j, m });
        terms.push(PairTerm { k: j, l: i, m });
    }
    PairCouplingSet { n, terms }
}
