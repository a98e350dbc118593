//! The three families of squeezing curves, sampled on a common grid.
//!
//! Every curve uses `χ = 1` and `χt ∈ [0, 3]` at 301 points; for dimerized
//! and diluted rings `χ` is the base coupling.

use crate::analytic::{linear_grid, sample, SqueezingCurve, SqueezingModel};
use crate::chain::CouplingChain;
use crate::error::{Error, Result};

pub const FIGURE_CHI: f64 = 1.0;
pub const FIGURE_T_MAX: f64 = 3.0;
pub const FIGURE_POINTS: usize = 301;

pub const DIMER_DELTAS: [f64; 5] = [0.0, 0.5, 0.75, 1.0, 1.1];
pub const DILUTION_PS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// One sampled curve and the file stem it is written under.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub name: String,
    pub model: SqueezingModel,
    pub curve: SqueezingCurve,
}

impl FigureCurve {
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    pub fn to_csv(&self) -> String {
        self.curve.to_csv(FIGURE_CHI)
    }
}

pub fn figure_grid() -> Vec<f64> {
    linear_grid(0.0, FIGURE_T_MAX / FIGURE_CHI, FIGURE_POINTS)
}

/// Models of figure `which` (1, 2 or 3) with their file stems:
///
/// | figure | files |
/// |--------|-------|
/// | 1 | `fig1_n2`, `fig1_n3`, `fig1_uniform` |
/// | 2 | `fig2_delta_0`, `fig2_delta_0.5`, `fig2_delta_0.75`, `fig2_delta_1`, `fig2_delta_1.1` |
/// | 3 | `fig3_p_0.25`, `fig3_p_0.5`, `fig3_p_0.75`, `fig3_p_1` |
pub fn figure_models(which: u8) -> Result<Vec<(String, SqueezingModel)>> {
    let chi = FIGURE_CHI;
    Ok(match which {
        1 => vec![
            ("fig1_n2".into(), SqueezingModel::TwoSpin { chi }),
            (
                "fig1_n3".into(),
                SqueezingModel::Chain(CouplingChain::new(vec![chi; 3])?),
            ),
            ("fig1_uniform".into(), SqueezingModel::Uniform { chi }),
        ],
        2 => DIMER_DELTAS
            .iter()
            .map(|&delta| (format!("fig2_delta_{delta}"), SqueezingModel::Dimerized { chi, delta }))
            .collect(),
        3 => DILUTION_PS
            .iter()
            .map(|&p| (format!("fig3_p_{p}"), SqueezingModel::Diluted { chi, p }))
            .collect(),
        _ => return Err(Error::InvalidArgument(format!("no figure {which}; expected 1, 2 or 3"))),
    })
}

pub fn figure(which: u8) -> Result<Vec<FigureCurve>> {
    let grid = figure_grid();
    figure_models(which)?
        .into_iter()
        .map(|(name, model)| {
            let curve = sample(&model, &grid)?;
            Ok(FigureCurve { name, model, curve })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_name(curves: &[FigureCurve], name: &str) -> SqueezingCurve {
        curves.iter().find(|c| c.name == name).unwrap().curve.clone()
    }

    #[test]
    fn file_names() {
        let names: Vec<_> = figure(2).unwrap().iter().map(FigureCurve::file_name).collect();
        assert_eq!(names[0], "fig2_delta_0.csv");
        assert_eq!(names[4], "fig2_delta_1.1.csv");
        assert!(figure(4).is_err());
    }

    #[test]
    fn limits_reproduce_other_figures() {
        let (f1, f2, f3) = (figure(1).unwrap(), figure(2).unwrap(), figure(3).unwrap());
        let uniform = by_name(&f1, "fig1_uniform");
        assert_eq!(by_name(&f2, "fig2_delta_0"), uniform);
        assert_eq!(by_name(&f3, "fig3_p_1"), uniform);
        let pair = by_name(&f1, "fig1_n2");
        let dimer = by_name(&f2, "fig2_delta_1");
        for ((_, a), (_, b)) in pair.points.iter().zip(&dimer.points) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn small_rings_differ_from_uniform() {
        let f1 = figure(1).unwrap();
        let uniform = by_name(&f1, "fig1_uniform");
        for name in ["fig1_n2", "fig1_n3"] {
            assert_ne!(by_name(&f1, name).values().collect::<Vec<_>>(), uniform.values().collect::<Vec<_>>());
        }
    }
}
