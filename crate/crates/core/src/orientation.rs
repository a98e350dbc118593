//! Euler-angle orientations.
//!
//! Angles follow the active Z-Y-Z convention: `R = R_z(α) · R_y(β) · R_z(γ)`.
//! A state prepared with orientation `o` has every spin along `R·ẑ`, and its
//! reference perpendicular component is `J_⊥ = (R·x̂)·J`.

use serde::{Deserialize, Serialize};

pub type Mat3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Orientation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Orientation {
    pub const IDENTITY: Orientation = Orientation { alpha: 0.0, beta: 0.0, gamma: 0.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn rotation(&self) -> Mat3 {
        rotation_matrix(self)
    }

    /// Recovers Z-Y-Z angles from a proper rotation matrix. At the gimbal
    /// points (β = 0 or π) all of the z rotation is put into γ.
    pub fn from_rotation(r: &Mat3) -> Self {
        let beta = r[2][2].clamp(-1.0, 1.0).acos();
        let sin_beta = (r[0][2].powi(2) + r[1][2].powi(2)).sqrt();
        if sin_beta > 1e-12 {
            Self {
                alpha: r[1][2].atan2(r[0][2]),
                beta,
                gamma: r[2][1].atan2(-r[2][0]),
            }
        } else if r[2][2] > 0.0 {
            Self { alpha: 0.0, beta: 0.0, gamma: r[1][0].atan2(r[0][0]) }
        } else {
            Self {
                alpha: 0.0,
                beta: std::f64::consts::PI,
                gamma: r[0][1].atan2(-r[0][0]),
            }
        }
    }

    /// Direction of the mean spin, `R·ẑ`.
    pub fn mean_spin_axis(&self) -> [f64; 3] {
        column(&self.rotation(), 2)
    }

    /// Direction of `J_⊥`, `R·x̂`.
    pub fn perpendicular_axis(&self) -> [f64; 3] {
        column(&self.rotation(), 0)
    }
}

pub fn rot_z(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

pub fn rot_y(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub fn rotation_matrix(o: &Orientation) -> Mat3 {
    matmul(&matmul(&rot_z(o.alpha), &rot_y(o.beta)), &rot_z(o.gamma))
}

pub fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn column(a: &Mat3, j: usize) -> [f64; 3] {
    [a[0][j], a[1][j], a[2][j]]
}

pub fn determinant(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}
