//! Exact 2^N state vectors and their time evolution.
//!
//! Site `i` (1-based) is bit `i − 1` of the amplitude index, and a clear
//! bit means spin up along z.

use num_complex::Complex64;

use crate::chain::CouplingChain;
use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::short_time::PairCouplingSet;

pub const MAX_SPINS: usize = 14;
/// Limit for general (non-Ising) evolution.
pub const MAX_GENERAL_SPINS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Resource { n, max })
    } else if n < 2 {
        Err(Error::InvalidArgument(format!("need at least 2 spins, got {n}")))
    } else {
        Ok(())
    }
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n, MAX_SPINS)?;
        if amps.len() != 1 << n {
            return Err(Error::Dimension { expected: 1 << n, got: amps.len() });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Product state with every spin rotated from up by `o`, i.e. pointing
/// along `R·ẑ`.
pub fn prepare_polarized(n: usize, o: &Orientation) -> Result<StateVector> {
    check_size(n, MAX_SPINS)?;
    // e^{-iα j_z} e^{-iβ j_y} e^{-iγ j_z} |↑⟩
    let global = Complex64::from_polar(1.0, -0.5 * o.gamma);
    let up = global * Complex64::from_polar((0.5 * o.beta).cos(), -0.5 * o.alpha);
    let down = global * Complex64::from_polar((0.5 * o.beta).sin(), 0.5 * o.alpha);
    let amps = (0..1usize << n)
        .map(|idx| {
            (0..n).fold(Complex64::new(1.0, 0.0), |acc, bit| {
                acc * if idx >> bit & 1 == 0 { up } else { down }
            })
        })
        .collect();
    Ok(StateVector { n, amps })
}

/// Hadamard on every qubit: maps the z basis onto the x basis and back.
fn hadamard_all(amps: &mut [Complex64], n: usize) {
    let norm = std::f64::consts::FRAC_1_SQRT_2;
    for bit in 0..n {
        let stride = 1 << bit;
        for base in (0..amps.len()).filter(|i| i & stride == 0) {
            let (a, b) = (amps[base], amps[base | stride]);
            amps[base] = (a + b) * norm;
            amps[base | stride] = (a - b) * norm;
        }
    }
}

fn half_spin(idx: usize, bit: usize) -> f64 {
    if idx >> bit & 1 == 0 {
        0.5
    } else {
        -0.5
    }
}

/// Applies `Π_i exp(−i χ_i t j_{x,i} j_{x,i+1})`.
///
/// The Ising Hamiltonian is diagonal in the product x basis, so the
/// evolution is a Hadamard transform, one phase per basis state, and the
/// inverse transform.
pub fn evolve_ising(s: &StateVector, chain: &CouplingChain, t: f64) -> Result<StateVector> {
    if chain.n() != s.n {
        return Err(Error::Dimension { expected: s.n, got: chain.n() });
    }
    let n = s.n;
    let mut amps = s.amps.clone();
    hadamard_all(&mut amps, n);
    for (idx, a) in amps.iter_mut().enumerate() {
        let energy: f64 = (0..n)
            .map(|i| chain.couplings()[i] * half_spin(idx, i) * half_spin(idx, (i + 1) % n))
            .sum();
        *a *= Complex64::from_polar(1.0, -energy * t);
    }
    hadamard_all(&mut amps, n);
    Ok(StateVector { n, amps })
}

/// Single-site spin operators `j_x, j_y, j_z` as 2×2 matrices, basis (↑, ↓).
pub(crate) fn spin_matrices() -> [[[Complex64; 2]; 2]; 3] {
    let z = Complex64::new(0.0, 0.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let i = |x: f64| Complex64::new(0.0, x);
    [
        [[z, r(0.5)], [r(0.5), z]],
        [[z, i(-0.5)], [i(0.5), z]],
        [[r(0.5), z], [z, r(-0.5)]],
    ]
}

/// Two-site operator on qubits `(lo, hi)` in the local basis
/// `b_lo + 2 b_hi`.
struct PairOperator {
    lo: usize,
    hi: usize,
    matrix: [[Complex64; 4]; 4],
}

fn pair_operators(ps: &PairCouplingSet) -> Vec<PairOperator> {
    let j = spin_matrices();
    let mut ops: Vec<PairOperator> = Vec::new();
    for term in &ps.terms {
        let (k, l) = (term.k - 1, term.l - 1);
        let (lo, hi) = (k.min(l), k.max(l));
        let idx = match ops.iter().position(|op| op.lo == lo && op.hi == hi) {
            Some(idx) => idx,
            None => {
                let zero = Complex64::new(0.0, 0.0);
                ops.push(PairOperator { lo, hi, matrix: [[zero; 4]; 4] });
                ops.len() - 1
            }
        };
        let op = &mut ops[idx];
        for a in 0..3 {
            for b in 0..3 {
                let coeff = term.m[a][b];
                if coeff == 0.0 {
                    continue;
                }
                // j_a acts on site k, j_b on site l
                let (on_lo, on_hi) = if k == lo { (&j[a], &j[b]) } else { (&j[b], &j[a]) };
                for row in 0..4 {
                    for col in 0..4 {
                        op.matrix[row][col] +=
                            on_lo[row & 1][col & 1] * on_hi[row >> 1][col >> 1] * coeff;
                    }
                }
            }
        }
    }
    ops
}

fn apply_hamiltonian(ops: &[PairOperator], input: &[Complex64], out: &mut [Complex64]) {
    out.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
    for op in ops {
        let (ml, mh) = (1usize << op.lo, 1usize << op.hi);
        for base in (0..input.len()).filter(|i| i & (ml | mh) == 0) {
            let idx = [base, base | ml, base | mh, base | ml | mh];
            let v = idx.map(|i| input[i]);
            for (row, &target) in idx.iter().enumerate() {
                out[target] += (0..4).map(|col| op.matrix[row][col] * v[col]).sum::<Complex64>();
            }
        }
    }
}

/// Step size cap for the Taylor propagator, in units of `1 / ‖H‖`.
const STEP_NORM: f64 = 0.5;

/// Taylor order at which `x^{K+1}/(K+1)! · e^x` drops below `tol`.
fn taylor_order(x: f64, tol: f64) -> usize {
    let mut term = x;
    let mut k = 1;
    while term * x / (k + 1) as f64 * x.exp() >= tol && k < 60 {
        term *= x / (k + 1) as f64;
        k += 1;
    }
    k
}

/// `exp(−iHt)|ψ⟩` for `H = Σ_{k≠l} j_kᵀ · m^{kl} · j_l`.
///
/// Uses a truncated Taylor series on sub-steps with `‖H‖ τ <= ½`; the
/// order is picked from the remainder bound `x^{K+1} e^x / (K+1)!` so each
/// step errs by less than 1e-16 in norm.
pub fn evolve_general(s: &StateVector, ps: &PairCouplingSet, t: f64) -> Result<StateVector> {
    if ps.n != s.n {
        return Err(Error::Dimension { expected: s.n, got: ps.n });
    }
    check_size(s.n, MAX_GENERAL_SPINS)?;
    ps.validate()?;
    let ops = pair_operators(ps);
    let norm = ps.norm_bound();
    let mut amps = s.amps.clone();
    if norm == 0.0 || t == 0.0 {
        return Ok(StateVector { n: s.n, amps });
    }
    let steps = (norm * t.abs() / STEP_NORM).ceil().max(1.0) as usize;
    let tau = t / steps as f64;
    let order = taylor_order(norm * tau.abs(), 1e-16);
    let mut term = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut next = term.clone();
    for _ in 0..steps {
        term.copy_from_slice(&amps);
        for k in 1..=order {
            apply_hamiltonian(&ops, &term, &mut next);
            let factor = Complex64::new(0.0, -tau / k as f64);
            for (acc, (t_k, n_k)) in amps.iter_mut().zip(term.iter_mut().zip(&next)) {
                *t_k = n_k * factor;
                *acc += *t_k;
            }
        }
    }
    Ok(StateVector { n: s.n, amps })
}
