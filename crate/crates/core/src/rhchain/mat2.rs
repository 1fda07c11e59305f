use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::QuadValue;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [Complex64; 4]);

impl Matrix2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self([a, b, c, d])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self([a.into(), b.into(), c.into(), d.into()])
    }

    pub fn identity() -> Self {
        Self([ONE, ZERO, ZERO, ONE])
    }

    pub fn zero() -> Self {
        Self([ZERO; 4])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self([a, ZERO, ZERO, d])
    }

    /// [[1, b], [0, 1]]
    pub fn upper_unit(b: Complex64) -> Self {
        Self([ONE, b, ZERO, ONE])
    }

    /// [[1, 0], [c, 1]]
    pub fn lower_unit(c: Complex64) -> Self {
        Self([ONE, ZERO, c, ONE])
    }

    /// Entry (i, j), zero-based.
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.0[2 * i + j]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= 1e-300 {
            return Err(Error::SingularMatrix { det: det.norm() });
        }
        let [a, b, c, d] = self.0;
        Ok(Self([d / det, -b / det, -c / det, a / det]))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(self.0.map(|v| v * s))
    }

    /// Entrywise max modulus.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Matrix2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

impl Mul<Complex64> for Matrix2 {
    type Output = Matrix2;

    fn mul(self, s: Complex64) -> Matrix2 {
        self.scale(s)
    }
}

impl Mul<f64> for Matrix2 {
    type Output = Matrix2;

    fn mul(self, s: f64) -> Matrix2 {
        Matrix2(self.0.map(|v| v * s))
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        Matrix2(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, rhs: Matrix2) -> Matrix2 {
        Matrix2(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl QuadValue for Matrix2 {
    fn zero() -> Self {
        Matrix2::zero()
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}
