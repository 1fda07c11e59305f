//! Size of the residual W = R − e^{−2C−iz}[[0, −2], [½, 0]] and the decay
//! of the jump G − I as n grows.

use num_complex::Complex64;

use super::chain::{g_branch, RhChain};
use super::contour::{ContourConfig, Leg};
use super::mat2::Matrix2;
use super::verify::model_matrix;
use crate::error::{Error, Result};
use crate::szego::SzegoData;

/// Differences below this are treated as zero when forming ratios; they are
/// rounding noise of the chain evaluation, not a trend.
pub const NOISE_FLOOR: f64 = 1e-12;

/// e^{−2C−iz}[[0, −2], [½, 0]].
pub fn model_term(sd: &SzegoData, z: Complex64) -> Matrix2 {
    model_matrix().scale((-2.0 * sd.constant() - Complex64::i() * z).exp())
}

pub fn w_matrix(chain: &RhChain, z: Complex64) -> Result<Matrix2> {
    Ok(chain.r(z)? - model_term(chain.szego(), z))
}

/// W at every point of the band grid |Im z| ≤ r/2.
pub fn band_values(chain: &RhChain) -> Result<Vec<Matrix2>> {
    chain.contour().band_grid().into_iter().map(|z| w_matrix(chain, z)).collect()
}

fn sup_distance(a: &[Matrix2], b: &[Matrix2]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max)
}

/// max ‖G − I‖ over the sampled collar Ω_ε around both legs.
pub fn collar_norm(sd: &SzegoData, n: usize, cc: &ContourConfig) -> Result<f64> {
    let mut best = 0.0f64;
    for leg in [Leg::Upper, Leg::Lower] {
        for t in cc.collar_grid(leg) {
            best = best.max((g_branch(sd, n, t, leg)? - Matrix2::identity()).norm());
        }
    }
    Ok(best)
}

/// max ‖G − I‖ over the sampled legs of Γ♯.
pub fn leg_norm(sd: &SzegoData, n: usize, cc: &ContourConfig) -> Result<f64> {
    let mut best = 0.0f64;
    for leg in [Leg::Upper, Leg::Lower] {
        for t in cc.leg_grid(leg) {
            best = best.max((g_branch(sd, n, t, leg)? - Matrix2::identity()).norm());
        }
    }
    Ok(best)
}

/// d_ε = sup over Ω_ε of ‖e^{−2C−it}[[0, −2], [½, 0]] + ½I‖.
pub fn d_epsilon(sd: &SzegoData, cc: &ContourConfig) -> f64 {
    let half = Matrix2::identity().scale(0.5.into());
    [Leg::Upper, Leg::Lower]
        .iter()
        .flat_map(|&leg| cc.collar_grid(leg))
        .map(|t| (model_term(sd, t) + half).norm())
        .fold(0.0, f64::max)
}

/// K_ε = coth(ε/4), which bounds |cot((τ − z)/2)| when |Im(τ − z)| ≥ ε/2.
pub fn k_epsilon(cc: &ContourConfig) -> f64 {
    1.0 / (cc.epsilon / 4.0).tanh()
}

#[derive(Debug, Clone, Copy)]
pub struct ResidualRow {
    pub n: usize,
    /// ‖W_n − ½I‖ over the band.
    pub literal: f64,
    /// ‖W_n − W_ref‖ over the band.
    pub self_convergence: f64,
    /// ‖G_n − I‖ over Ω_ε.
    pub collar: f64,
    /// self_convergence / collar, with differences under [`NOISE_FLOOR`]
    /// counted as zero.
    pub eta_hat: f64,
}

#[derive(Debug, Clone)]
pub struct ResidualSweep {
    pub n_ref: usize,
    pub rows: Vec<ResidualRow>,
    pub d_epsilon: f64,
    pub k_epsilon: f64,
    /// W_ref at (0.5 + iH) for the growth heights; the +i∞ limit of W if it
    /// exists.
    pub measured_limit: Vec<(f64, Matrix2)>,
}

/// Band residuals for each n in `ns`, measured against n = `n_ref`.
/// `chain_for` builds the chain for a given n.
pub fn residual_sweep<'a, F>(ns: &[usize], n_ref: usize, chain_for: F) -> Result<ResidualSweep>
where
    F: Fn(usize) -> Result<RhChain<'a>>,
{
    let reference = chain_for(n_ref)?;
    let ref_vals = band_values(&reference)?;
    let cc = *reference.contour();
    let sd = reference.szego();
    let half = Matrix2::identity().scale(0.5.into());
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let chain = chain_for(n)?;
        let vals = band_values(&chain)?;
        if vals.iter().any(|m| !m.is_finite()) {
            return Err(Error::SingularMatrix { det: f64::NAN });
        }
        let literal = vals.iter().map(|m| (*m - half).norm()).fold(0.0, f64::max);
        let self_convergence = sup_distance(&vals, &ref_vals);
        let collar = collar_norm(sd, n, &cc)?;
        let eta_hat = if self_convergence < NOISE_FLOOR {
            0.0
        } else {
            self_convergence / collar
        };
        rows.push(ResidualRow {
            n,
            literal,
            self_convergence,
            collar,
            eta_hat,
        });
    }
    let mut measured_limit = Vec::new();
    for h in super::verify::GROWTH_HEIGHTS {
        measured_limit.push((h, w_matrix(&reference, Complex64::new(0.5, h))?));
    }
    Ok(ResidualSweep {
        n_ref,
        rows,
        d_epsilon: d_epsilon(sd, &cc),
        k_epsilon: k_epsilon(&cc),
        measured_limit,
    })
}

#[derive(Debug, Clone)]
pub struct DecayFit {
    /// (n, max ‖G − I‖ on Γ♯)
    pub points: Vec<(usize, f64)>,
    /// Least-squares slope of ln ‖G − I‖ against 2n − 1.
    pub slope: f64,
    pub intercept: f64,
}

pub fn decay_fit(sd: &SzegoData, ns: &[usize], cc: &ContourConfig) -> Result<DecayFit> {
    if ns.len() < 2 {
        return Err(Error::ContourConfig("decay fit needs at least two degrees".into()));
    }
    let mut points = Vec::with_capacity(ns.len());
    for &n in ns {
        if n < 1 {
            return Err(Error::DegreeOutOfRange { n, min: 1, max: usize::MAX });
        }
        points.push((n, leg_norm(sd, n, cc)?));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| 2.0 * n as f64 - 1.0).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    Ok(DecayFit {
        points,
        slope,
        intercept: my - slope * mx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureConfig;
    use crate::trigpoly::OtpSystem;
    use crate::weights::PeriodicWeight;

    #[test]
    fn collar_norm_constant_weight() {
        let q = QuadratureConfig::default();
        let w = PeriodicWeight::parse("const").unwrap();
        let sd = SzegoData::new(&w, &q).unwrap();
        let cc = ContourConfig::new(&w, Some(0.5), Some(0.1), q).unwrap();
        let v = collar_norm(&sd, 5, &cc).unwrap();
        assert!((v - 2.0 * (-3.6f64).exp()).abs() < 1e-12, "{v}");
        assert!((k_epsilon(&cc) - 1.0 / 0.025f64.tanh()).abs() < 1e-12);
        // sup of 2e^{Im t} at the outer edge of the upper collar
        assert!((d_epsilon(&sd, &cc) - 2.0 * 0.6f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn decay_slope_is_minus_r() {
        let q = QuadratureConfig::default();
        for spec in ["const", "cos:0.5", "poisson:0.4"] {
            let w = PeriodicWeight::parse(spec).unwrap();
            let sd = SzegoData::new(&w, &q).unwrap();
            for r in [0.3, 0.5] {
                let cc = ContourConfig::new(&w, Some(r), None, q).unwrap();
                let fit = decay_fit(&sd, &(2..=10).collect::<Vec<_>>(), &cc).unwrap();
                assert!((fit.slope + r).abs() < 1e-9, "{spec} r={r}: {}", fit.slope);
            }
        }
    }

    #[test]
    fn constant_weight_band_residual_is_stationary() {
        let q = QuadratureConfig::default();
        let w = PeriodicWeight::parse("const").unwrap();
        let sys = OtpSystem::build(&w, 8, &q).unwrap();
        let sd = SzegoData::new(&w, &q).unwrap();
        let cc = ContourConfig::for_weight(&w, q);
        let sweep = residual_sweep(&[3, 4, 5], 8, |n| RhChain::new(&sys, &sd, n, &cc)).unwrap();
        for row in &sweep.rows {
            assert!(row.self_convergence < NOISE_FLOOR);
            assert_eq!(row.eta_hat, 0.0);
            assert!(row.literal.is_finite());
        }
    }
}
