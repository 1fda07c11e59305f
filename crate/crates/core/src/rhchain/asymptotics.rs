//! Predicting ϖ_{2n} on the axis from a large-degree R.
//!
//! In A₂⁺, Y = R M V⁻¹ U⁻¹. Replacing R_n by R at a reference degree and
//! keeping the exact n-dependent U and V gives a prediction of Y₁₁ = ϖ_{2n}
//! whose error is governed by ‖R_n − R_ref‖.

use num_complex::Complex64;

use super::chain::{m_branch, u_branch, v_branch, RhChain};
use super::contour::Region;
use crate::cauchy::Side;
use crate::error::Result;
use crate::szego::SzegoData;

/// Default reference degree for the large-n R.
pub const DEFAULT_N_REF: usize = 24;

#[derive(Debug, Clone, Copy)]
pub struct Prediction {
    pub x: f64,
    pub predicted: Complex64,
    pub actual: Complex64,
    pub error: f64,
}

pub fn asymptotic_prediction(
    reference: &RhChain,
    sd: &SzegoData,
    n: usize,
    actual_poly: &crate::trigpoly::TrigPoly,
    x: f64,
) -> Result<Prediction> {
    let z = Complex64::new(x, 0.0);
    let r_hat = reference.r_branch(z, Region::A2Plus)?;
    let v = v_branch(sd, n, z, Region::A2Plus)?;
    let u = u_branch(sd, n, z, Side::Plus)?;
    let y = r_hat * m_branch(sd, Side::Plus) * v.inverse()? * u.inverse()?;
    let predicted = y.at(0, 0);
    let actual = actual_poly.eval(z);
    Ok(Prediction {
        x,
        predicted,
        actual,
        error: (predicted - actual).norm(),
    })
}
