//! Contour geometry: the horizontal legs L_{±r}, the collar width ε, the
//! sampling grids, and the strip decompositions used by V and by M/R.
//!
//! Both legs run right to left (2π ± ir → ±ir). Γ♯ traverses L_r as given
//! and L_{−r} reversed (left to right). Every region is a horizontal strip,
//! so classification depends only on Im z (Re z is irrelevant mod 2π).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::weights::PeriodicWeight;

/// Distance from a contour below which a point counts as on it.
pub const ON_CONTOUR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub r: f64,
    pub epsilon: f64,
    /// Points on [0, 2π] for axis jump checks.
    pub axis_points: usize,
    /// Points per leg for contour jump checks and leg norms.
    pub contour_points: usize,
    /// Horizontal × vertical sample counts for band and collar sup-norms.
    pub band_re: usize,
    pub band_im: usize,
    pub quad: QuadratureConfig,
}

impl ContourConfig {
    /// Default placement r = min(ρ/2, 1), ε = r/5.
    pub fn for_weight(w: &PeriodicWeight, quad: QuadratureConfig) -> Self {
        let r = (w.strip_radius() / 2.0).min(1.0);
        Self::with_grids(r, r / 5.0, quad)
    }

    /// Explicit r and ε, validated against the weight's strip radius.
    /// A missing ε defaults to r/5, a missing r to the default placement.
    pub fn new(
        w: &PeriodicWeight,
        r: Option<f64>,
        epsilon: Option<f64>,
        quad: QuadratureConfig,
    ) -> Result<Self> {
        let r = r.unwrap_or_else(|| (w.strip_radius() / 2.0).min(1.0));
        let epsilon = epsilon.unwrap_or(r / 5.0);
        let cc = Self::with_grids(r, epsilon, quad);
        cc.validate(w.strip_radius())?;
        Ok(cc)
    }

    fn with_grids(r: f64, epsilon: f64, quad: QuadratureConfig) -> Self {
        Self {
            r,
            epsilon,
            axis_points: 128,
            contour_points: 128,
            band_re: 64,
            band_im: 8,
            quad,
        }
    }

    pub fn validate(&self, strip_radius: f64) -> Result<()> {
        if !(self.r > 0.0 && self.r < strip_radius) {
            return Err(Error::ContourConfig(format!(
                "r = {} must lie in (0, rho) with rho = {}",
                self.r, strip_radius
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.r / 2.0) {
            return Err(Error::ContourConfig(format!(
                "epsilon = {} must lie in (0, r/2) with r = {}",
                self.epsilon, self.r
            )));
        }
        // the shifted contour at ±(r + ε/2) and the outer collar edge must
        // stay inside the strip
        if self.r + self.epsilon >= strip_radius {
            return Err(Error::ContourConfig(format!(
                "r + epsilon = {} must stay below rho = {}",
                self.r + self.epsilon,
                strip_radius
            )));
        }
        if self.axis_points == 0 || self.contour_points == 0 || self.band_re == 0 || self.band_im == 0 {
            return Err(Error::ContourConfig("grid sizes must be positive".into()));
        }
        self.quad.validate()
    }

    /// Midpoint grid s_j = 2π(j + ½)/m on [0, 2π].
    pub fn midpoints(m: usize) -> Vec<f64> {
        (0..m).map(|j| 2.0 * PI * (j as f64 + 0.5) / m as f64).collect()
    }

    pub fn axis_grid(&self) -> Vec<f64> {
        Self::midpoints(self.axis_points)
    }

    /// Sample points on a leg (at height ±r), ordered by real part.
    pub fn leg_grid(&self, leg: Leg) -> Vec<Complex64> {
        let h = leg.height(self.r);
        Self::midpoints(self.contour_points)
            .into_iter()
            .map(|s| Complex64::new(s, h))
            .collect()
    }

    /// Band grid for the sampled sup-norm over |Im z| ≤ r/2, skipping the
    /// axis: `band_im` levels split evenly between the two halves.
    pub fn band_grid(&self) -> Vec<Complex64> {
        let half = self.band_im.div_ceil(2);
        let mut levels = Vec::with_capacity(2 * half);
        for l in 1..=half {
            let y = self.r / 2.0 * l as f64 / half as f64;
            levels.push(y);
            levels.push(-y);
        }
        let xs = Self::midpoints(self.band_re);
        levels
            .iter()
            .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
            .collect()
    }

    /// Collar samples around a leg: `band_im` levels spanning
    /// [r − ε, r + ε] (mirrored for the lower leg), endpoints included.
    pub fn collar_grid(&self, leg: Leg) -> Vec<Complex64> {
        let m = self.band_im.max(2);
        let xs = Self::midpoints(self.band_re);
        let mut pts = Vec::with_capacity(m * xs.len());
        for l in 0..m {
            let off = -self.epsilon + 2.0 * self.epsilon * l as f64 / (m - 1) as f64;
            let y = leg.height(self.r) + off;
            pts.extend(xs.iter().map(|&x| Complex64::new(x, y)));
        }
        pts
    }
}

/// The two horizontal legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    /// L_r at height +r
    Upper,
    /// L_{−r} at height −r
    Lower,
}

impl Leg {
    pub fn height(self, r: f64) -> f64 {
        match self {
            Leg::Upper => r,
            Leg::Lower => -r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Leg::Upper => "L_r",
            Leg::Lower => "L_-r",
        }
    }

    /// Which leg (if any) a point lies on.
    pub fn locate(t: Complex64, r: f64) -> Result<Leg> {
        if (t.im - r).abs() <= ON_CONTOUR_TOL {
            Ok(Leg::Upper)
        } else if (t.im + r).abs() <= ON_CONTOUR_TOL {
            Ok(Leg::Lower)
        } else {
            Err(Error::OffContour {
                z: t,
                leg: "L_r or L_-r",
            })
        }
    }
}

/// Which strip decomposition to classify against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    /// A_1^± / A_2^±, cut along ℝ and L_{±r}
    V,
    /// B^+ / B_1^- / B_2^-, cut along L_{±r}
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Im z < −r
    A1Plus,
    /// 0 < Im z < r
    A2Plus,
    /// −r < Im z < 0
    A1Minus,
    /// Im z > r
    A2Minus,
    /// |Im z| < r
    BPlus,
    /// Im z < −r
    B1Minus,
    /// Im z > r
    B2Minus,
}

pub fn classify_region(z: Complex64, cc: &ContourConfig, partition: Partition) -> Result<Region> {
    let y = z.im;
    let r = cc.r;
    if (y - r).abs() <= ON_CONTOUR_TOL || (y + r).abs() <= ON_CONTOUR_TOL {
        return Err(Error::OnContour { z });
    }
    match partition {
        Partition::V => {
            if y.abs() <= ON_CONTOUR_TOL {
                Err(Error::OnContour { z })
            } else if y > r {
                Ok(Region::A2Minus)
            } else if y > 0.0 {
                Ok(Region::A2Plus)
            } else if y > -r {
                Ok(Region::A1Minus)
            } else {
                Ok(Region::A1Plus)
            }
        }
        Partition::M => {
            if y > r {
                Ok(Region::B2Minus)
            } else if y > -r {
                Ok(Region::BPlus)
            } else {
                Ok(Region::B1Minus)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc() -> ContourConfig {
        let w = PeriodicWeight::parse("const").unwrap();
        ContourConfig::new(&w, Some(0.5), None, QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn defaults() {
        let w = PeriodicWeight::parse("cos:0.5").unwrap();
        let c = ContourConfig::for_weight(&w, QuadratureConfig::default());
        assert!((c.r - w.strip_radius() / 2.0).abs() < 1e-15);
        assert!((c.epsilon - c.r / 5.0).abs() < 1e-15);
        let one = PeriodicWeight::parse("const").unwrap();
        assert_eq!(ContourConfig::for_weight(&one, QuadratureConfig::default()).r, 1.0);
    }

    #[test]
    fn validation() {
        let w = PeriodicWeight::parse("poisson:0.4").unwrap();
        let q = QuadratureConfig::default();
        assert!(ContourConfig::new(&w, Some(0.95), None, q).is_err());
        assert!(ContourConfig::new(&w, Some(0.5), Some(0.3), q).is_err());
        assert!(ContourConfig::new(&w, Some(0.5), Some(0.0), q).is_err());
        assert!(ContourConfig::new(&w, Some(-0.1), None, q).is_err());
        assert!(ContourConfig::new(&w, Some(0.5), Some(0.1), q).is_ok());
    }

    #[test]
    fn region_examples() {
        let c = cc();
        let r = c.r;
        let z = |y: f64| Complex64::new(PI, y);
        assert_eq!(classify_region(z(r / 2.0), &c, Partition::V).unwrap(), Region::A2Plus);
        assert_eq!(classify_region(z(-2.0 * r), &c, Partition::V).unwrap(), Region::A1Plus);
        assert_eq!(classify_region(z(-r / 2.0), &c, Partition::V).unwrap(), Region::A1Minus);
        assert_eq!(classify_region(z(3.0 * r), &c, Partition::V).unwrap(), Region::A2Minus);
        assert_eq!(classify_region(z(r / 2.0), &c, Partition::M).unwrap(), Region::BPlus);
        assert_eq!(classify_region(z(0.0), &c, Partition::M).unwrap(), Region::BPlus);
        assert_eq!(classify_region(z(2.0 * r), &c, Partition::M).unwrap(), Region::B2Minus);
        assert_eq!(classify_region(z(-2.0 * r), &c, Partition::M).unwrap(), Region::B1Minus);
        assert!(classify_region(z(0.0), &c, Partition::V).is_err());
        assert!(classify_region(z(r), &c, Partition::M).is_err());
        assert!(classify_region(z(-r), &c, Partition::V).is_err());
        // shifting by 2π does not change the tag
        let far = Complex64::new(PI + 20.0 * PI, r / 2.0);
        assert_eq!(classify_region(far, &c, Partition::V).unwrap(), Region::A2Plus);
    }

    #[test]
    fn grids() {
        let c = cc();
        assert_eq!(c.axis_grid().len(), 128);
        let band = c.band_grid();
        assert_eq!(band.len(), 64 * 8);
        assert!(band.iter().all(|z| z.im.abs() <= c.r / 2.0 + 1e-15 && z.im != 0.0));
        let collar = c.collar_grid(Leg::Lower);
        let ys: Vec<f64> = collar.iter().map(|z| z.im).collect();
        let min = ys.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!((min + c.r + c.epsilon).abs() < 1e-15);
        assert!((max + c.r - c.epsilon).abs() < 1e-15);
        assert_eq!(Leg::locate(Complex64::new(1.0, 0.5), 0.5).unwrap(), Leg::Upper);
        assert!(Leg::locate(Complex64::new(1.0, 0.4), 0.5).is_err());
    }
}
