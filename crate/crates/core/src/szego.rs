//! Szegő-type functions of a periodic weight.
//!
//! Γ is the periodic Cauchy transform of ln w with unit multiplier,
//! C = (1/4π)∫ ln w, D⁺ = e^{Γ−C} above the axis and D⁻ = e^{−Γ−C} below.
//! The extensions 𝔇± continue D± across the axis into the strip through
//! 𝔇⁺ = e^{−2C} w / D⁻ (below) and 𝔇⁻ = e^{−2C} w / D⁺ (above), so that
//! 𝔇⁺𝔇⁻ = e^{−2C} w on the axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cauchy::{CauchyTransform, Side};
use crate::error::{Error, Result};
use crate::quadrature::{periodic_trapezoid, QuadratureConfig};
use crate::weights::PeriodicWeight;

/// (1/4π)∫₀^{2π} ln w.
pub fn szego_constant(w: &PeriodicWeight, cfg: &QuadratureConfig) -> Result<f64> {
    let q = periodic_trapezoid(|x| w.ln_real(x), cfg).require_converged(cfg.tol)?;
    Ok(q.value / (4.0 * PI))
}

#[derive(Debug, Clone)]
pub struct SzegoData {
    weight: PeriodicWeight,
    c: f64,
    gamma: CauchyTransform,
}

impl SzegoData {
    pub fn new(w: &PeriodicWeight, cfg: &QuadratureConfig) -> Result<Self> {
        let c = szego_constant(w, cfg)?;
        let gamma = CauchyTransform::from_density(|x| Complex64::new(w.ln_real(x), 0.0), cfg)?;
        Ok(Self {
            weight: w.clone(),
            c,
            gamma,
        })
    }

    pub fn weight(&self) -> &PeriodicWeight {
        &self.weight
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    pub fn strip_radius(&self) -> f64 {
        self.weight.strip_radius()
    }

    pub fn gamma_transform(&self) -> &CauchyTransform {
        &self.gamma
    }

    pub fn gamma(&self, z: Complex64) -> Result<Complex64> {
        self.gamma.eval(z)
    }

    pub fn d_plus(&self, z: Complex64) -> Result<Complex64> {
        if z.im <= 0.0 {
            return Err(Error::WrongHalfPlane {
                what: "D+",
                requirement: "Im z > 0",
                z,
            });
        }
        Ok(self.d_side(z, Side::Plus))
    }

    pub fn d_minus(&self, z: Complex64) -> Result<Complex64> {
        if z.im >= 0.0 {
            return Err(Error::WrongHalfPlane {
                what: "D-",
                requirement: "Im z < 0",
                z,
            });
        }
        Ok(self.d_side(z, Side::Minus))
    }

    /// D± from its own series, at any z where that series converges
    /// (in particular its boundary value on the axis).
    pub fn d_side(&self, z: Complex64, side: Side) -> Complex64 {
        let g = self.gamma.eval_side(z, side);
        match side {
            Side::Plus => (g - self.c).exp(),
            Side::Minus => (-g - self.c).exp(),
        }
    }

    /// 𝔇⁺ (`Side::Plus`, Im z > −ρ) or 𝔇⁻ (`Side::Minus`, Im z < ρ).
    /// On the axis the extension branch is used.
    pub fn frak_d(&self, side: Side, z: Complex64) -> Result<Complex64> {
        let rho = self.strip_radius();
        match side {
            Side::Plus => {
                if z.im > 0.0 {
                    Ok(self.d_side(z, Side::Plus))
                } else if z.im > -rho {
                    let w = self.weight.eval(z)?;
                    Ok((-2.0 * self.c).exp() * w / self.d_side(z, Side::Minus))
                } else {
                    Err(Error::WrongHalfPlane {
                        what: "extended D+",
                        requirement: "Im z > -rho",
                        z,
                    })
                }
            }
            Side::Minus => {
                if z.im < 0.0 {
                    Ok(self.d_side(z, Side::Minus))
                } else if z.im < rho {
                    let w = self.weight.eval(z)?;
                    Ok((-2.0 * self.c).exp() * w / self.d_side(z, Side::Plus))
                } else {
                    Err(Error::WrongHalfPlane {
                        what: "extended D-",
                        requirement: "Im z < rho",
                        z,
                    })
                }
            }
        }
    }
}
