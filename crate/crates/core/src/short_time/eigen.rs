//! Eigen-decomposition of real symmetric 3×3 matrices.
//!
//! Eigenvalues come from the trigonometric solution of the characteristic
//! cubic and eigenvectors from cross products of rows of `M − λI`. When two
//! eigenvalues nearly coincide, or the closed form leaves a residual above
//! round-off, cyclic Jacobi rotations take over.

use crate::orientation::Mat3;

/// Eigenvalues sorted descending; `vectors` holds the matching unit
/// eigenvectors as columns.
///
/// Each eigenvector's first non-negligible component is positive. Equal
/// eigenvalues are ordered by ascending lexicographic order of their
/// eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen {
    pub values: [f64; 3],
    pub vectors: Mat3,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> [f64; 3] {
        [self.vectors[0][k], self.vectors[1][k], self.vectors[2][k]]
    }
}

const GAP_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-12;

fn scale_of(m: &Mat3) -> f64 {
    m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs())).max(1.0)
}

pub fn symmetric_eigen(m: &Mat3) -> SymmetricEigen {
    let scale = scale_of(m);
    let pairs = closed_form(m, scale).unwrap_or_else(|| jacobi(m));
    finish(pairs, scale)
}

/// Cyclic Jacobi only; used as a fallback and as an independent check.
pub fn symmetric_eigen_jacobi(m: &Mat3) -> SymmetricEigen {
    finish(jacobi(m), scale_of(m))
}

type Pairs = [(f64, [f64; 3]); 3];

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalized(v: [f64; 3]) -> [f64; 3] {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn closed_form(m: &Mat3, scale: f64) -> Option<Pairs> {
    let off = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return None;
    }
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for x in row.iter_mut() {
            *x /= p;
        }
        row[i] -= q / p;
    }
    let r = (crate::orientation::determinant(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let mid = 3.0 * q - hi - lo;
    if (hi - mid).min(mid - lo) < GAP_TOL * scale {
        return None;
    }

    let v_hi = null_vector(m, hi)?;
    let v_lo = normalized({
        let v = null_vector(m, lo)?;
        let d = dot(&v, &v_hi);
        [v[0] - d * v_hi[0], v[1] - d * v_hi[1], v[2] - d * v_hi[2]]
    });
    let v_mid = normalized(cross(&v_lo, &v_hi));
    let pairs = [(hi, v_hi), (mid, v_mid), (lo, v_lo)];

    let residual = pairs.iter().fold(0.0f64, |acc, (l, v)| {
        (0..3).fold(acc, |acc, i| acc.max((dot(&m[i], v) - l * v[i]).abs()))
    });
    (residual <= RESIDUAL_TOL * scale).then_some(pairs)
}

/// Unit vector spanning the kernel of `m − λI`, assuming it is
/// one-dimensional.
fn null_vector(m: &Mat3, lambda: f64) -> Option<[f64; 3]> {
    let mut rows = *m;
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))?;
    (dot(&best, &best) > 0.0).then(|| normalized(best))
}

fn jacobi(m: &Mat3) -> Pairs {
    let mut a = *m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 0..64 {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        if off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..3 {
                let (akp, akq) = (a[k][p], a[k][q]);
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let (apk, aqk) = (a[p][k], a[q][k]);
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let (vp, vq) = (row[p], row[q]);
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
        }
    }
    let col = |k: usize| [v[0][k], v[1][k], v[2][k]];
    [(a[0][0], col(0)), (a[1][1], col(1)), (a[2][2], col(2))]
}

fn canonical_sign(v: [f64; 3]) -> [f64; 3] {
    let lead = v.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(0.0);
    if lead < 0.0 {
        [-v[0], -v[1], -v[2]]
    } else {
        v
    }
}

fn finish(mut pairs: Pairs, scale: f64) -> SymmetricEigen {
    for pair in pairs.iter_mut() {
        pair.1 = canonical_sign(pair.1);
    }
    let tie = 1e-12 * scale;
    pairs.sort_by(|a, b| {
        if (a.0 - b.0).abs() <= tie {
            a.1.partial_cmp(&b.1).expect("finite eigenvectors")
        } else {
            b.0.total_cmp(&a.0)
        }
    });
    let mut vectors = [[0.0; 3]; 3];
    for (k, (_, v)) in pairs.iter().enumerate() {
        for i in 0..3 {
            vectors[i][k] = v[i];
        }
    }
    SymmetricEigen { values: [pairs[0].0, pairs[1].0, pairs[2].0], vectors }
}
