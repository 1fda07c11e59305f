//! Strictly positive analytic 2π-periodic weights.
//!
//! The catalog is closed: every family has a strip radius known in closed
//! form, and every contour placed downstream is derived from it.
//!
//! | spec              | w(x)                                   | strip radius ρ        |
//! |-------------------|----------------------------------------|-----------------------|
//! | `const`           | 1                                      | 8 (cap)               |
//! | `cos:<a>`         | 1 + a cos x, \|a\| < 1                 | arccosh(1/\|a\|)      |
//! | `poisson:<p>`     | (1 − p²)/(1 − 2p cos x + p²), 0 < p < 1| ln(1/p)               |
//! | `exptrig:<c1>,..` | exp(Σ c_k cos kx)                      | 8 (cap, entire)       |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{fourier_series, QuadratureConfig};

/// Strip radius reported for weights analytic in the whole plane.
pub const STRIP_CAP: f64 = 8.0;

/// Size of the equispaced grid used for the positivity check. This is a
/// validation heuristic, not a proof of positivity.
pub const POSITIVITY_GRID: usize = 4096;

/// One representative of each family, used by sweeps and tests.
pub const CATALOG: [&str; 4] = ["const", "cos:0.5", "poisson:0.4", "exptrig:0.3,0.1"];

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    Constant,
    CosinePerturbed { a: f64 },
    Poisson { rho: f64 },
    ExpTrig { coeffs: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicWeight {
    kind: WeightKind,
    scale: f64,
    strip_radius: f64,
    spec: String,
}

impl PeriodicWeight {
    pub fn parse(spec: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::WeightParse {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let parse_num = |s: &str| -> Result<f64> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| parse_err(&format!("`{s}` is not a decimal number")))?;
            if !v.is_finite() {
                return Err(parse_err(&format!("`{s}` is not finite")));
            }
            Ok(v)
        };

        let (family, params) = match spec.split_once(':') {
            Some((f, p)) => (f, Some(p)),
            None => (spec, None),
        };

        let kind = match (family, params) {
            ("const", None) => WeightKind::Constant,
            ("cos", Some(p)) => {
                let a = parse_num(p)?;
                if a.abs() >= 1.0 {
                    return Err(Error::PositivityViolation {
                        spec: spec.to_string(),
                        detail: format!("1 + a cos x vanishes or changes sign for |a| = {} >= 1", a.abs()),
                    });
                }
                WeightKind::CosinePerturbed { a }
            }
            ("poisson", Some(p)) => {
                let rho = parse_num(p)?;
                if rho == 0.0 || rho == 1.0 {
                    return Err(Error::DegenerateParameter {
                        spec: spec.to_string(),
                        detail: format!("poisson radius {rho} must lie strictly inside (0, 1)"),
                    });
                }
                if rho > 1.0 {
                    return Err(Error::PositivityViolation {
                        spec: spec.to_string(),
                        detail: format!("1 - rho^2 < 0 for rho = {rho}"),
                    });
                }
                if rho < 0.0 {
                    return Err(parse_err("poisson radius must lie in (0, 1)"));
                }
                WeightKind::Poisson { rho }
            }
            ("exptrig", Some(p)) => {
                let coeffs = p.split(',').map(parse_num).collect::<Result<Vec<_>>>()?;
                if coeffs.is_empty() {
                    return Err(parse_err("exptrig needs at least one coefficient"));
                }
                WeightKind::ExpTrig { coeffs }
            }
            ("const", Some(_)) => return Err(parse_err("`const` takes no parameters")),
            ("cos" | "poisson" | "exptrig", None) => {
                return Err(parse_err("missing `:<params>`"))
            }
            _ => return Err(parse_err("unknown family (expected const, cos, poisson or exptrig)")),
        };

        let strip_radius = match &kind {
            WeightKind::Constant | WeightKind::ExpTrig { .. } => STRIP_CAP,
            WeightKind::CosinePerturbed { a } => {
                if *a == 0.0 {
                    STRIP_CAP
                } else {
                    (1.0 / a.abs()).acosh().min(STRIP_CAP)
                }
            }
            WeightKind::Poisson { rho } => (1.0 / rho).ln().min(STRIP_CAP),
        };

        let w = Self {
            kind,
            scale: 1.0,
            strip_radius,
            spec: spec.to_string(),
        };
        w.check_positivity()?;
        w.check_strip()?;
        Ok(w)
    }

    /// The same weight multiplied by a positive constant. Not reachable
    /// from the weight-spec grammar; used for scaling-covariance checks.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::PositivityViolation {
                spec: self.spec.clone(),
                detail: format!("scale factor {factor} must be positive"),
            });
        }
        let mut w = self.clone();
        w.scale *= factor;
        w.spec = format!("{}*{}", self.spec, factor);
        Ok(w)
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn strip_radius(&self) -> f64 {
        self.strip_radius
    }

    /// Analytic continuation of the weight into `|Im z| < ρ`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.im.abs() >= self.strip_radius {
            return Err(Error::OutsideStrip {
                z,
                strip_radius: self.strip_radius,
            });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Closed-form evaluation without the strip check.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let base = match &self.kind {
            WeightKind::Constant => Complex64::new(1.0, 0.0),
            WeightKind::CosinePerturbed { a } => 1.0 + *a * z.cos(),
            WeightKind::Poisson { rho } => {
                (1.0 - rho * rho) / (1.0 - 2.0 * rho * z.cos() + rho * rho)
            }
            WeightKind::ExpTrig { coeffs } => {
                let exponent: Complex64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| *c * (z * (j as f64 + 1.0)).cos())
                    .sum();
                exponent.exp()
            }
        };
        base * self.scale
    }

    /// Value on the real axis.
    pub fn eval_real(&self, x: f64) -> f64 {
        match &self.kind {
            WeightKind::Constant => self.scale,
            WeightKind::CosinePerturbed { a } => self.scale * (1.0 + a * x.cos()),
            WeightKind::Poisson { rho } => {
                self.scale * (1.0 - rho * rho) / (1.0 - 2.0 * rho * x.cos() + rho * rho)
            }
            WeightKind::ExpTrig { coeffs } => {
                let e: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * ((j as f64 + 1.0) * x).cos())
                    .sum();
                self.scale * e.exp()
            }
        }
    }

    /// ln |w(z)|, finite wherever w is non-vanishing; for the exp-trig
    /// family this avoids overflowing w itself far from the axis.
    pub fn ln_abs_unchecked(&self, z: Complex64) -> f64 {
        match &self.kind {
            WeightKind::ExpTrig { coeffs } => {
                let exponent: Complex64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| *c * (z * (j as f64 + 1.0)).cos())
                    .sum();
                exponent.re + self.scale.ln()
            }
            _ => self.eval_unchecked(z).norm().ln(),
        }
    }

    pub fn ln_real(&self, x: f64) -> f64 {
        self.eval_real(x).ln()
    }

    fn check_positivity(&self) -> Result<()> {
        for j in 0..POSITIVITY_GRID {
            let x = 2.0 * PI * j as f64 / POSITIVITY_GRID as f64;
            let v = self.eval_real(x);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::PositivityViolation {
                    spec: self.spec.clone(),
                    detail: format!("w({x}) = {v}"),
                });
            }
        }
        Ok(())
    }

    fn check_strip(&self) -> Result<()> {
        let rho = self.strip_radius;
        for frac in [0.5, 0.75] {
            for j in 0..256 {
                let x = 2.0 * PI * j as f64 / 256.0;
                for sign in [1.0, -1.0] {
                    let ln_abs = self.ln_abs_unchecked(Complex64::new(x, sign * frac * rho));
                    if !ln_abs.is_finite() {
                        return Err(Error::PositivityViolation {
                            spec: self.spec.clone(),
                            detail: format!("w vanishes or overflows near Im z = {}", sign * frac * rho),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Fourier coefficients ĝ_k = (1/2π)∫ ln w(τ) e^{−ikτ} dτ for k = −K..=K,
    /// returned with index `k + K`.
    pub fn log_fourier(&self, k_max: usize, cfg: &QuadratureConfig) -> Result<Vec<Complex64>> {
        let spectrum = fourier_series(|x| Complex64::new(self.ln_real(x), 0.0), &cfg.resolving(k_max))?;
        let k_max = k_max as i64;
        (-k_max..=k_max).map(|k| spectrum.coeff(k)).collect()
    }

    /// Fourier moments μ_k = ∫ w(τ) e^{−ikτ} dτ for k = 0..=k_max.
    pub fn moments(&self, k_max: usize, cfg: &QuadratureConfig) -> Result<Vec<Complex64>> {
        let spectrum = fourier_series(|x| Complex64::new(self.eval_real(x), 0.0), &cfg.resolving(k_max))?;
        (0..=k_max as i64)
            .map(|k| spectrum.coeff(k).map(|c| c * (2.0 * PI)))
            .collect()
    }
}

impl FromStr for PeriodicWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for PeriodicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_weight() {
        let w = PeriodicWeight::parse("const").unwrap();
        assert_eq!(w.strip_radius(), 8.0);
        assert_eq!(w.eval(c(2.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn cosine_weight_values_and_radius() {
        let w = PeriodicWeight::parse("cos:0.5").unwrap();
        assert!((w.eval_real(0.0) - 1.5).abs() < 1e-15);
        assert!((w.eval_real(PI) - 0.5).abs() < 1e-15);
        assert!((w.strip_radius() - 2f64.acosh()).abs() < 1e-15);
        assert!((w.strip_radius() - 1.3169578969248166).abs() < 1e-12);
        // the nearest complex zero of 1 + cos(z)/2 is at π ± i·arccosh 2
        let zero = w.eval_unchecked(c(PI, 2f64.acosh()));
        assert!(zero.norm() < 1e-14);
        let v = w.eval(c(0.0, 0.5)).unwrap();
        assert!((v - c(1.0 + 0.5 * 0.5f64.cosh(), 0.0)).norm() < 1e-15);
        assert!((v.re - 1.5638).abs() < 1e-4);
    }

    #[test]
    fn poisson_radius() {
        let w = PeriodicWeight::parse("poisson:0.4").unwrap();
        assert!((w.strip_radius() - (2.5f64).ln()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            PeriodicWeight::parse("cos:1.0"),
            Err(Error::PositivityViolation { .. })
        ));
        assert!(matches!(
            PeriodicWeight::parse("cos:-1"),
            Err(Error::PositivityViolation { .. })
        ));
        assert!(matches!(
            PeriodicWeight::parse("poisson:0"),
            Err(Error::DegenerateParameter { .. })
        ));
        assert!(matches!(
            PeriodicWeight::parse("poisson:1"),
            Err(Error::DegenerateParameter { .. })
        ));
        for bad in ["", "Const", "cos", "cos:", "cos:abc", "cos:nan", "exptrig:", "foo:1", "const:1"] {
            assert!(PeriodicWeight::parse(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn outside_strip_is_an_error() {
        let w = PeriodicWeight::parse("cos:0.5").unwrap();
        assert!(matches!(
            w.eval(c(0.0, 1.4)),
            Err(Error::OutsideStrip { .. })
        ));
    }

    #[test]
    fn moments_beyond_starting_nodes() {
        // 64 starting nodes resolve only |k| < 32; the request raises them
        let w = PeriodicWeight::parse("const").unwrap();
        let mu = w.moments(48, &QuadratureConfig::default()).unwrap();
        assert_eq!(mu.len(), 49);
        assert!((mu[0].re - 2.0 * PI).abs() < 1e-13);
        assert!(mu[1..].iter().all(|m| m.norm() < 1e-13));
    }

    #[test]
    fn log_fourier_constant_is_zero() {
        let w = PeriodicWeight::parse("const").unwrap();
        let g = w.log_fourier(5, &QuadratureConfig::default()).unwrap();
        assert!(g.iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn log_fourier_cosine_mean_is_twice_szego_constant() {
        let w = PeriodicWeight::parse("cos:0.5").unwrap();
        let g = w.log_fourier(3, &QuadratureConfig::default()).unwrap();
        // ĝ_0 = (1/2π)∫ ln w = 2C with C = ½ ln((1+√(1−a²))/2)
        let closed = ((1.0 + 0.75f64.sqrt()) / 2.0).ln();
        assert!((g[3].re - closed).abs() < 1e-13);
        assert!(g[3].im.abs() < 1e-15);
    }

    #[test]
    fn log_fourier_poisson_decays_like_rho() {
        // ln w = ln(1 − ρ²) + Σ_{k≥1} (ρ^k/k)(e^{ikx} + e^{−ikx})
        let w = PeriodicWeight::parse("poisson:0.4").unwrap();
        let k_max = 20;
        let g = w.log_fourier(k_max, &QuadratureConfig::default()).unwrap();
        assert!((g[k_max].re - 0.84f64.ln()).abs() < 1e-14);
        for k in 1..=k_max {
            let expect = 0.4f64.powi(k as i32) / k as f64;
            assert!((g[k_max + k] - Complex64::new(expect, 0.0)).norm() < 1e-15);
            assert!((g[k_max - k] - Complex64::new(expect, 0.0)).norm() < 1e-15);
        }
        // least-squares decay ratio of |ĝ_k| over k = 4..=20; the 1/k factor
        // pulls it a little below 0.4
        let pts: Vec<(f64, f64)> = (4..=20)
            .map(|k| (k as f64, g[k + k_max].norm().ln()))
            .collect();
        let n = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
        let (mx, my) = (sx / n, sy / n);
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let ratio = (num / den).exp();
        assert!(ratio > 0.36 && ratio <= 0.4, "ratio {ratio}");
    }

    #[test]
    fn log_fourier_decay_bounded_by_strip() {
        let cfg = QuadratureConfig::default();
        for spec in ["cos:0.5", "poisson:0.4", "cos:0.9"] {
            let w = PeriodicWeight::parse(spec).unwrap();
            let k_max = 12;
            let g = w.log_fourier(k_max, &cfg).unwrap();
            let bound = (-w.strip_radius() / 2.0).exp();
            for k in 3..k_max {
                let r = g[k + 1 + k_max].norm() / g[k + k_max].norm();
                assert!(r <= bound, "{spec}: ratio {r} > {bound} at k = {k}");
            }
        }
    }

    proptest! {
        #[test]
        fn conjugate_symmetry_and_periodicity(
            idx in 0usize..4,
            x in -10.0f64..10.0,
            frac in -0.95f64..0.95,
        ) {
            let w = PeriodicWeight::parse(CATALOG[idx]).unwrap();
            let z = c(x, frac * w.strip_radius().min(2.0));
            let v = w.eval(z).unwrap();
            let vc = w.eval(z.conj()).unwrap();
            prop_assert!((vc - v.conj()).norm() <= 1e-14 * v.norm().max(1.0));
            // relative: the exp-trig weight reaches |w| ~ 30 at |Im z| = 2
            let shifted = w.eval(z + 2.0 * PI).unwrap();
            prop_assert!((shifted - v).norm() <= 4e-14 * v.norm().max(1.0));
        }
    }
}
