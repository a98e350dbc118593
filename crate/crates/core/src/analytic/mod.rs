//! Closed-form squeezing for Ising rings started fully polarized along z.

pub mod curve;
pub mod formulas;
pub mod moments;
pub mod quadrature;
pub mod ratio;

pub use curve::{curve, linear_grid, sample, SqueezingCurve, SqueezingModel};
pub use formulas::{
    xi_pi4, xi_pi4_dimerized, xi_pi4_general, xi_pi4_n2, xi_pi4_n3, xi_pi4_n4, xi_pi4_uniform,
};
pub use moments::{corr_yy, expectations, jxjy_sym, jy_squared, mean_jz, ExpectationSet};
pub use quadrature::{xi_theta, xi_theta_optimal, QuadratureAngle};
