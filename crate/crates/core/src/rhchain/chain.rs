//! The explicit solution Y and the transforms F = YU, S = FV, R = SM⁻¹.
//!
//! Every branch formula is implemented as printed and can be evaluated at
//! any point where its ingredients are analytic, which is how boundary
//! values on the axis and on L_{±r} are obtained: from the adjacent
//! region's formula, never by numeric limits.

use num_complex::Complex64;

use super::contour::{classify_region, ContourConfig, Leg, Partition, Region};
use super::mat2::Matrix2;
use crate::cauchy::{CauchyTransform, Side};
use crate::error::{Error, Result};
use crate::szego::SzegoData;
use crate::trigpoly::{OtpSystem, TrigPoly};

fn i() -> Complex64 {
    Complex64::i()
}

/// Ξ₁ = diag(1/cos nz, e^{iz}) and Ξ₂ = diag(1/cos nz, e^{i(2n−1)z}).
pub fn growth_matrices(n: usize, z: Complex64) -> Result<(Matrix2, Matrix2)> {
    let c = (z * n as f64).cos();
    if c.norm() <= 1e-12 {
        return Err(Error::GrowthSingular { n, z });
    }
    let inv = 1.0 / c;
    let k = 2.0 * n as f64 - 1.0;
    Ok((
        Matrix2::diag(inv, (i() * z).exp()),
        Matrix2::diag(inv, (i() * z * k).exp()),
    ))
}

/// The upper (`Side::Plus`) or lower branch of U at any z where 𝔇± exists.
pub fn u_branch(sd: &SzegoData, n: usize, z: Complex64, side: Side) -> Result<Matrix2> {
    let nf = n as f64;
    let d = sd.frak_d(side, z)?;
    Ok(match side {
        Side::Plus => Matrix2::diag((i() * nf * z).exp() * d * 0.5, (i() * z).exp() / d),
        Side::Minus => Matrix2::diag(
            (-i() * nf * z).exp() * d * 0.5,
            (i() * (2.0 * nf - 1.0) * z).exp() / d,
        ),
    })
}

pub fn matrix_u(sd: &SzegoData, n: usize, z: Complex64) -> Result<Matrix2> {
    let side = Side::of(z).ok_or(Error::OnAxis { what: "U", z })?;
    u_branch(sd, n, z, side)
}

/// p(z) = ½ e^{−i(2n−1)z} 𝔇⁻(z)² / w(z), the lower-triangular entry of V in A₁⁻.
pub fn v_lower_entry(sd: &SzegoData, n: usize, z: Complex64) -> Result<Complex64> {
    let k = 2.0 * n as f64 - 1.0;
    let d = sd.frak_d(Side::Minus, z)?;
    let w = sd.weight().eval(z)?;
    Ok(0.5 * (-i() * k * z).exp() * d * d / w)
}

/// q(z) = ½ e^{i(2n−1)z} 𝔇⁺(z)² / w(z); V in A₂⁺ carries −q.
pub fn v_upper_entry(sd: &SzegoData, n: usize, z: Complex64) -> Result<Complex64> {
    let k = 2.0 * n as f64 - 1.0;
    let d = sd.frak_d(Side::Plus, z)?;
    let w = sd.weight().eval(z)?;
    Ok(0.5 * (i() * k * z).exp() * d * d / w)
}

/// Branch of V belonging to a V-partition region, evaluated at any z.
pub fn v_branch(sd: &SzegoData, n: usize, z: Complex64, region: Region) -> Result<Matrix2> {
    match region {
        Region::A1Plus => Ok(Matrix2::identity()),
        Region::A1Minus => Ok(Matrix2::lower_unit(v_lower_entry(sd, n, z)?)),
        Region::A2Plus => {
            let q = v_upper_entry(sd, n, z)?;
            Ok(Matrix2::lower_unit(-q).scale((-i() * z).exp()))
        }
        Region::A2Minus => Ok(Matrix2::identity().scale((-i() * z).exp())),
        other => Err(Error::ContourConfig(format!("{other:?} is not a V-partition region"))),
    }
}

pub fn matrix_v(sd: &SzegoData, n: usize, z: Complex64, cc: &ContourConfig) -> Result<Matrix2> {
    let region = classify_region(z, cc, Partition::V)?;
    v_branch(sd, n, z, region)
}

/// M = e^{2C}[[0, 2], [−½, 0]] above the axis, I below.
pub fn m_branch(sd: &SzegoData, side: Side) -> Matrix2 {
    match side {
        Side::Plus => Matrix2::real(0.0, 2.0, -0.5, 0.0).scale((2.0 * sd.constant()).exp().into()),
        Side::Minus => Matrix2::identity(),
    }
}

pub fn matrix_m(sd: &SzegoData, z: Complex64) -> Result<Matrix2> {
    let side = Side::of(z).ok_or(Error::OnAxis { what: "M", z })?;
    Ok(m_branch(sd, side))
}

/// Jump matrix of R on a leg, evaluated at any t where 𝔇± exists.
pub fn g_branch(sd: &SzegoData, n: usize, t: Complex64, leg: Leg) -> Result<Matrix2> {
    match leg {
        Leg::Upper => Ok(Matrix2::upper_unit(-4.0 * v_upper_entry(sd, n, t)?)),
        Leg::Lower => Ok(Matrix2::lower_unit(-v_lower_entry(sd, n, t)?)),
    }
}

/// G(t) for t on L_r or L_{−r}.
pub fn jump_g(sd: &SzegoData, n: usize, t: Complex64, cc: &ContourConfig) -> Result<Matrix2> {
    g_branch(sd, n, t, Leg::locate(t, cc.r)?)
}

/// Half-plane whose formulas a V-region uses.
pub fn region_side(region: Region) -> Side {
    match region {
        Region::A2Plus | Region::A2Minus | Region::B2Minus => Side::Plus,
        Region::A1Plus | Region::A1Minus | Region::B1Minus => Side::Minus,
        Region::BPlus => Side::Plus,
    }
}

/// Values of every stage of the chain at one point.
#[derive(Debug, Clone, Copy)]
pub struct ChainValues {
    pub region: Region,
    pub y: Matrix2,
    pub f: Matrix2,
    pub s: Matrix2,
    pub r: Matrix2,
}

/// Everything needed to evaluate Y, F, S, R for one degree n.
#[derive(Debug, Clone)]
pub struct RhChain<'a> {
    sd: &'a SzegoData,
    n: usize,
    cc: ContourConfig,
    first: TrigPoly,
    second: TrigPoly,
    a: Complex64,
    ct_first: CauchyTransform,
    ct_second: CauchyTransform,
}

impl<'a> RhChain<'a> {
    pub fn new(sys: &OtpSystem, sd: &'a SzegoData, n: usize, cc: &ContourConfig) -> Result<Self> {
        if n < 1 || n > sys.n_max() {
            return Err(Error::DegreeOutOfRange {
                n,
                min: 1,
                max: sys.n_max(),
            });
        }
        cc.validate(sd.strip_radius())?;
        let w = sd.weight();
        let first = sys.monic_first(n)?.clone();
        let second = sys.monic_second(n)?.clone();
        let a = sys.a_const(n)?;
        // modes below n (first kind) and below n − 1 (second kind) vanish by
        // orthogonality; keeping their rounding noise would be amplified by
        // e^{∓inz} far from the axis
        let ct_first = CauchyTransform::build(&first, w, &cc.quad)?.without_low_modes(n);
        let ct_second = CauchyTransform::build(&second, w, &cc.quad)?.without_low_modes(n - 1);
        Ok(Self {
            sd,
            n,
            cc: *cc,
            first,
            second,
            a,
            ct_first,
            ct_second,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contour(&self) -> &ContourConfig {
        &self.cc
    }

    pub fn szego(&self) -> &SzegoData {
        self.sd
    }

    pub fn monic_first(&self) -> &TrigPoly {
        &self.first
    }

    pub fn a_const(&self) -> Complex64 {
        self.a
    }

    /// Largest Fourier mode magnitude removed from the Cauchy series of Y
    /// because orthogonality says it is zero.
    pub fn dropped_modes(&self) -> f64 {
        self.ct_first.dropped().max(self.ct_second.dropped())
    }

    pub fn cauchy_first(&self) -> &CauchyTransform {
        &self.ct_first
    }

    pub fn cauchy_second(&self) -> &CauchyTransform {
        &self.ct_second
    }

    /// One half-plane's formula for Y at any z (boundary values on the axis).
    pub fn y_branch(&self, z: Complex64, side: Side) -> Matrix2 {
        let e = (-i() * z * self.n as f64).exp();
        Matrix2::new(
            self.first.eval(z),
            e * self.ct_first.eval_side(z, side),
            self.a * self.second.eval(z),
            self.a * e * self.ct_second.eval_side(z, side),
        )
    }

    pub fn y(&self, z: Complex64) -> Result<Matrix2> {
        let side = Side::of(z).ok_or(Error::OnAxis { what: "Y", z })?;
        Ok(self.y_branch(z, side))
    }

    pub fn f_branch(&self, z: Complex64, side: Side) -> Result<Matrix2> {
        Ok(self.y_branch(z, side) * u_branch(self.sd, self.n, z, side)?)
    }

    pub fn f(&self, z: Complex64) -> Result<Matrix2> {
        let side = Side::of(z).ok_or(Error::OnAxis { what: "F", z })?;
        self.f_branch(z, side)
    }

    /// S from the formulas of a V-region, at any z where they are analytic.
    pub fn s_branch(&self, z: Complex64, region: Region) -> Result<Matrix2> {
        let side = region_side(region);
        Ok(self.f_branch(z, side)? * v_branch(self.sd, self.n, z, region)?)
    }

    /// R from the formulas of the V-region the point is continued from.
    pub fn r_branch(&self, z: Complex64, region: Region) -> Result<Matrix2> {
        let side = region_side(region);
        Ok(self.s_branch(z, region)? * m_branch(self.sd, side).inverse()?)
    }

    pub fn s(&self, z: Complex64) -> Result<Matrix2> {
        let region = classify_region(z, &self.cc, Partition::V)?;
        self.s_branch(z, region)
    }

    /// R off Γ♯ ∪ ℝ. On the axis use [`RhChain::r_on_axis`].
    pub fn r(&self, z: Complex64) -> Result<Matrix2> {
        let region = classify_region(z, &self.cc, Partition::V)?;
        self.r_branch(z, region)
    }

    /// R on the axis from the formulas above (A₂⁺) and below (A₁⁻).
    /// The two agree exactly when R continues analytically across ℝ.
    pub fn r_on_axis(&self, x: f64) -> Result<(Matrix2, Matrix2)> {
        let z = Complex64::new(x, 0.0);
        Ok((self.r_branch(z, Region::A2Plus)?, self.r_branch(z, Region::A1Minus)?))
    }

    pub fn transform_chain(&self, z: Complex64) -> Result<ChainValues> {
        let region = classify_region(z, &self.cc, Partition::V)?;
        let side = region_side(region);
        let y = self.y_branch(z, side);
        let f = y * u_branch(self.sd, self.n, z, side)?;
        let s = f * v_branch(self.sd, self.n, z, region)?;
        let r = s * m_branch(self.sd, side).inverse()?;
        Ok(ChainValues { region, y, f, s, r })
    }

    /// R just off a leg: (value from above, value from below).
    pub fn r_at_leg(&self, t: Complex64, leg: Leg) -> Result<(Matrix2, Matrix2)> {
        match leg {
            Leg::Upper => Ok((self.r_branch(t, Region::A2Minus)?, self.r_branch(t, Region::A2Plus)?)),
            Leg::Lower => Ok((self.r_branch(t, Region::A1Minus)?, self.r_branch(t, Region::A1Plus)?)),
        }
    }

    /// R⁻ on Γ♯: the band-side value on both legs.
    pub fn r_band_side(&self, t: Complex64, leg: Leg) -> Result<Matrix2> {
        match leg {
            Leg::Upper => self.r_branch(t, Region::A2Plus),
            Leg::Lower => self.r_branch(t, Region::A1Minus),
        }
    }
}
