//! The constant k = (1/4π)∮_{Γ♯} R⁻(τ)(G(τ) − I) dτ and the H-function
//! built from the same density.
//!
//! Γ♯ = L_r + L_{−r}^−: L_r runs from 2π + ir to ir and L_{−r}^− from −ir
//! to 2π − ir. R⁻ is the band-side value on both legs. With τ = s ± ih,
//! k = (1/4π)[−∫₀^{2π} R⁻(G − I)(s + ih) ds + ∫₀^{2π} R⁻(G − I)(s − ih) ds].

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::chain::{g_branch, RhChain};
use super::contour::Leg;
use super::mat2::Matrix2;
use crate::cauchy::{CauchyTransform, Side};
use crate::error::{Error, Result};
use crate::quadrature::periodic_trapezoid;

/// Orientation of a leg inside Γ♯: −1 for L_r (right to left), +1 for
/// L_{−r}^− (left to right).
pub fn orientation(leg: Leg) -> f64 {
    match leg {
        Leg::Upper => -1.0,
        Leg::Lower => 1.0,
    }
}

/// R⁻(τ)(G(τ) − I) at τ = s ± i(r + shift). Both factors are continued
/// analytically off the leg when `shift` is nonzero.
pub fn density(chain: &RhChain, leg: Leg, s: f64, shift: f64) -> Result<Matrix2> {
    let h = leg.height(chain.contour().r + shift);
    let t = Complex64::new(s, h);
    let g = g_branch(chain.szego(), chain.n(), t, leg)?;
    Ok(chain.r_band_side(t, leg)? * (g - Matrix2::identity()))
}

#[derive(Debug, Clone, Copy)]
pub struct KValue {
    pub k: Matrix2,
    /// ∫₀^{2π} R⁻(G − I) along each leg in the horizontal parameter.
    pub upper_integral: Matrix2,
    pub lower_integral: Matrix2,
    /// ‖k + ½I‖.
    pub distance_to_minus_half: f64,
    pub error_estimate: f64,
}

fn integrate_leg(chain: &RhChain, leg: Leg, shift: f64) -> Result<(Matrix2, f64)> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let q = periodic_trapezoid(
        |s| match density(chain, leg, s, shift) {
            Ok(m) => m,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Matrix2::zero()
            }
        },
        &chain.contour().quad,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let q = q.require_converged(chain.contour().quad.tol)?;
    Ok((q.value, q.error_estimate))
}

/// k on the contour Γ♯ moved outward by `shift` (0 for Γ♯ itself, ε/2 for
/// Γ♯^ε). The integrand is analytic in between, so the value should not
/// depend on the shift.
pub fn lemma41_k(chain: &RhChain, shift: f64) -> Result<KValue> {
    let (upper, e_up) = integrate_leg(chain, Leg::Upper, shift)?;
    let (lower, e_low) = integrate_leg(chain, Leg::Lower, shift)?;
    let k = (upper.scale((-1.0).into()) + lower).scale((1.0 / (4.0 * PI)).into());
    let half = Matrix2::identity().scale(0.5.into());
    Ok(KValue {
        k,
        upper_integral: upper,
        lower_integral: lower,
        distance_to_minus_half: (k + half).norm(),
        error_estimate: (e_up + e_low) / (4.0 * PI),
    })
}

/// k assembled entry by entry from scalar integrals. G − I is strictly upper
/// triangular on L_r and strictly lower triangular on L_{−r}, so
/// k₁₁ = ∫_low R₁₂ g₂₁, k₁₂ = −∫_up R₁₁ g₁₂, k₂₁ = ∫_low R₂₂ g₂₁ and
/// k₂₂ = −∫_up R₂₁ g₁₂, all over 4π.
pub fn lemma41_k_entrywise(chain: &RhChain, shift: f64) -> Result<Matrix2> {
    let cfg = chain.contour().quad;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let scalar = |leg: Leg, pick: fn(&Matrix2, &Matrix2) -> Complex64| {
        periodic_trapezoid(
            |s| {
                let h = leg.height(chain.contour().r + shift);
                let t = Complex64::new(s, h);
                let both = g_branch(chain.szego(), chain.n(), t, leg)
                    .and_then(|g| chain.r_band_side(t, leg).map(|r| (r, g)));
                match both {
                    Ok((r, g)) => pick(&r, &g),
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            &cfg,
        )
        .value
    };
    let k11 = scalar(Leg::Lower, |r, g| r.at(0, 1) * g.at(1, 0));
    let k12 = -scalar(Leg::Upper, |r, g| r.at(0, 0) * g.at(0, 1));
    let k21 = scalar(Leg::Lower, |r, g| r.at(1, 1) * g.at(1, 0));
    let k22 = -scalar(Leg::Upper, |r, g| r.at(1, 0) * g.at(0, 1));
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(Matrix2::new(k11, k12, k21, k22).scale((1.0 / (4.0 * PI)).into()))
}

struct HLeg {
    height: f64,
    orientation: f64,
    entries: [CauchyTransform; 4],
}

/// H(z) = (1/4πi)∮_{Γ♯} R⁻(τ)(G(τ) − I) cot((τ − z)/2) dτ, evaluated through
/// the periodic Cauchy engine applied to each leg's density.
pub struct HFunction {
    legs: Vec<HLeg>,
}

impl HFunction {
    pub fn new(chain: &RhChain) -> Result<Self> {
        let cfg = chain.contour().quad;
        let mut legs = Vec::with_capacity(2);
        for leg in [Leg::Upper, Leg::Lower] {
            let mut entries = Vec::with_capacity(4);
            for idx in 0..4 {
                let failure: RefCell<Option<Error>> = RefCell::new(None);
                let ct = CauchyTransform::from_density(
                    |s| match density(chain, leg, s, 0.0) {
                        Ok(m) => m.0[idx],
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                            Complex64::new(0.0, 0.0)
                        }
                    },
                    &cfg,
                );
                if let Some(e) = failure.into_inner() {
                    return Err(e);
                }
                entries.push(ct?);
            }
            let entries: [CauchyTransform; 4] = entries
                .try_into()
                .unwrap_or_else(|_| unreachable!("four entries were pushed"));
            legs.push(HLeg {
                height: leg.height(chain.contour().r),
                orientation: orientation(leg),
                entries,
            });
        }
        Ok(Self { legs })
    }

    /// H(z) for z off Γ♯.
    pub fn eval(&self, z: Complex64) -> Result<Matrix2> {
        let mut out = Matrix2::zero();
        for leg in &self.legs {
            let zeta = z - Complex64::new(0.0, leg.height);
            if zeta.im.abs() <= super::contour::ON_CONTOUR_TOL {
                return Err(Error::OnContour { z });
            }
            let mut m = Matrix2::zero();
            for (idx, ct) in leg.entries.iter().enumerate() {
                m.0[idx] = ct.eval(zeta)?;
            }
            out = out + m.scale(leg.orientation.into());
        }
        Ok(out)
    }

    /// Limit at +i∞ (`Side::Plus`) or −i∞; these are k and −k.
    pub fn at_infinity(&self, side: Side) -> Matrix2 {
        let mut out = Matrix2::zero();
        for leg in &self.legs {
            let mut m = Matrix2::zero();
            for (idx, ct) in leg.entries.iter().enumerate() {
                m.0[idx] = ct.at_infinity(side);
            }
            out = out + m.scale(leg.orientation.into());
        }
        out
    }
}
