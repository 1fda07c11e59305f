//! The periodic Cauchy-type operator
//!
//!   C_w[f](z) = (1/4πi) ∫₀^{2π} f(τ) w(τ) cot((τ − z)/2) dτ
//!
//! evaluated through the Fourier coefficients ĝ_k of the density g = f·w:
//!
//!   Im z > 0:  ½ĝ_0 + Σ_{k≥1} ĝ_k e^{ikz}
//!   Im z < 0: −½ĝ_0 − Σ_{k≥1} ĝ_{−k} e^{−ikz}
//!
//! Both series converge up to and somewhat beyond the axis when g is
//! strip-analytic, which is how boundary values are taken.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{fourier_series, periodic_trapezoid, QuadratureConfig, Quadrature};
use crate::trigpoly::TrigPoly;
use crate::weights::PeriodicWeight;

/// Hard cap on the number of retained Fourier modes per half.
pub const TRUNCATION_CAP: usize = 4096;

/// Upper (+) or lower (−) half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn of(z: Complex64) -> Option<Side> {
        if z.im > 0.0 {
            Some(Side::Plus)
        } else if z.im < 0.0 {
            Some(Side::Minus)
        } else {
            None
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyTransform {
    /// ½ĝ_0, ĝ_1, ĝ_2, …
    plus: Vec<Complex64>,
    /// −½ĝ_0, −ĝ_{−1}, −ĝ_{−2}, …
    minus: Vec<Complex64>,
    truncation: usize,
    /// max |ĝ_k| over the discarded modes, relative to max |ĝ_k|
    tail: f64,
    source_tolerance: f64,
    /// largest |coefficient| zeroed by `without_low_modes`
    dropped: f64,
}

impl CauchyTransform {
    /// Transform of the density f·w.
    pub fn build(f: &TrigPoly, w: &PeriodicWeight, cfg: &QuadratureConfig) -> Result<Self> {
        Self::from_density(|x| f.eval_real(x) * w.eval_real(x), cfg)
    }

    /// Transform of an arbitrary periodic density sampled on the axis.
    pub fn from_density<F: Fn(f64) -> Complex64>(g: F, cfg: &QuadratureConfig) -> Result<Self> {
        let spectrum = fourier_series(g, cfg)?;
        let max = spectrum.max_modulus();
        let limit = spectrum.max_index().min(TRUNCATION_CAP);
        let threshold = cfg.tol * max;
        let mut k_trunc = 0;
        for k in 1..=spectrum.max_index() {
            let big = spectrum.coeff(k as i64)?.norm().max(spectrum.coeff(-(k as i64))?.norm());
            if big > threshold {
                k_trunc = k;
            }
        }
        if !spectrum.converged || k_trunc > limit {
            return Err(Error::CauchyTail {
                tail: spectrum.tail,
                cap: limit,
            });
        }
        let mut tail = 0.0f64;
        for k in (k_trunc + 1)..=spectrum.max_index() {
            let big = spectrum.coeff(k as i64)?.norm().max(spectrum.coeff(-(k as i64))?.norm());
            tail = tail.max(big);
        }
        let g0 = spectrum.coeff(0)?;
        let mut plus = vec![g0 * 0.5];
        let mut minus = vec![-g0 * 0.5];
        for k in 1..=k_trunc as i64 {
            plus.push(spectrum.coeff(k)?);
            minus.push(-spectrum.coeff(-k)?);
        }
        Ok(Self {
            plus,
            minus,
            truncation: k_trunc,
            tail: if max == 0.0 { 0.0 } else { tail / max },
            source_tolerance: cfg.tol,
            dropped: 0.0,
        })
    }

    /// Same transform with the modes k < `k_min` of both series removed.
    ///
    /// Used where those modes vanish by orthogonality: evaluating them far
    /// from the axis only multiplies their rounding noise by e^{k|Im z|}-type
    /// factors after the e^{∓inz} normalization. The largest removed
    /// magnitude is kept for reporting.
    pub fn without_low_modes(&self, k_min: usize) -> Self {
        let mut out = self.clone();
        let upto = k_min.min(self.plus.len());
        for k in 0..upto {
            out.dropped = out.dropped.max(out.plus[k].norm()).max(out.minus[k].norm());
            out.plus[k] = Complex64::new(0.0, 0.0);
            out.minus[k] = Complex64::new(0.0, 0.0);
        }
        out
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn source_tolerance(&self) -> f64 {
        self.source_tolerance
    }

    pub fn dropped(&self) -> f64 {
        self.dropped
    }

    pub fn fourier_plus(&self) -> &[Complex64] {
        &self.plus
    }

    pub fn fourier_minus(&self) -> &[Complex64] {
        &self.minus
    }

    /// ĝ_k of the density (zero beyond the truncation).
    pub fn density_coeff(&self, k: i64) -> Complex64 {
        let idx = k.unsigned_abs() as usize;
        if idx >= self.plus.len() {
            Complex64::new(0.0, 0.0)
        } else if k == 0 {
            self.plus[0] * 2.0
        } else if k > 0 {
            self.plus[idx]
        } else {
            -self.minus[idx]
        }
    }

    /// Value off the real axis.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match Side::of(z) {
            Some(side) => Ok(self.eval_side(z, side)),
            None => Err(Error::OnAxis {
                what: "Cauchy transform",
                z,
            }),
        }
    }

    /// The series of one half-plane summed at any z where it converges,
    /// including the real axis (boundary values) and a little beyond.
    pub fn eval_side(&self, z: Complex64, side: Side) -> Complex64 {
        let (coeffs, q) = match side {
            Side::Plus => (&self.plus, (Complex64::i() * z).exp()),
            Side::Minus => (&self.minus, (-Complex64::i() * z).exp()),
        };
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * q + c)
    }

    /// (plus, minus) boundary values at a real point.
    pub fn boundary_values(&self, x: f64) -> (Complex64, Complex64) {
        let z = Complex64::new(x, 0.0);
        (self.eval_side(z, Side::Plus), self.eval_side(z, Side::Minus))
    }

    /// ±½ĝ_0.
    pub fn at_infinity(&self, side: Side) -> Complex64 {
        match side {
            Side::Plus => self.plus[0],
            Side::Minus => self.minus[0],
        }
    }
}

/// Direct quadrature of (1/4πi)∫ g(τ) cot((τ − z)/2) dτ. Only meaningful
/// away from the axis; used as an independent check of the series.
pub fn direct_cauchy<F: Fn(f64) -> Complex64>(
    g: F,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Quadrature<Complex64> {
    let q = periodic_trapezoid(|t| g(t) * cot((Complex64::new(t, 0.0) - z) * 0.5), cfg);
    let scale = 1.0 / (4.0 * std::f64::consts::PI);
    Quadrature {
        value: q.value * Complex64::new(0.0, -scale),
        error_estimate: q.error_estimate * scale,
        nodes: q.nodes,
        converged: q.converged,
    }
}

/// cot w, stable for large |Im w|.
pub fn cot(w: Complex64) -> Complex64 {
    // cot w = i (e^{2iw} + 1)/(e^{2iw} − 1); pick the decaying exponential
    let i = Complex64::i();
    if w.im >= 0.0 {
        let e = (2.0 * i * w).exp();
        -i * (1.0 + e) / (1.0 - e)
    } else {
        let e = (-2.0 * i * w).exp();
        i * (1.0 + e) / (1.0 - e)
    }
}
