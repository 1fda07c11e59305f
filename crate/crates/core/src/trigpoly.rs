//! Trigonometric polynomials and orthogonal trigonometric polynomials.
//!
//! Polynomials are stored in the exponential basis, p(z) = Σ_{|k|≤m} c_k e^{ikz}.
//! The cosine/sine coefficients are a_0 = c_0, a_k = c_k + c_{−k},
//! b_k = i(c_k − c_{−k}), and conversely c_{±k} = (a_k ∓ i b_k)/2.
//!
//! The ordered basis is b_0 = 1, b_{2k−1} = cos kx, b_{2k} = sin kx.
//! Orthonormalizing it gives Gram–Schmidt outputs GS_0, GS_1, …; in the
//! ω-numbering used here ω_{2n} = GS_{2n−1} (leading α_n cos nx) and
//! ω_{2n+1} = GS_{2n} (leading β_n sin nx) for n ≥ 1, with ω_0 = ω_1 = GS_0.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::weights::PeriodicWeight;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    /// c_{−m}, …, c_m.
    coeffs: Vec<Complex64>,
}

/// The two nested polynomial spaces: T_{2n} (degree ≤ n without sin nx)
/// and T_{2n+1} (degree ≤ n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Even,
    Odd,
}

/// Which of the two spaces a polynomial of its own degree falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    /// top degree carries no sin component: in T_{2m}
    EvenTop,
    /// in T_{2m+1} only
    Full,
    /// the zero polynomial
    None,
}

impl TrigPoly {
    /// From c_{−m}..=c_m; the length must be odd.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(coeffs.len() % 2 == 1, "coefficient vector must have odd length");
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![ZERO] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn cos(k: usize) -> Self {
        let mut p = Self::with_degree(k);
        if k == 0 {
            p.coeffs[0] = Complex64::new(1.0, 0.0);
        } else {
            p.set(k as i64, Complex64::new(0.5, 0.0));
            p.set(-(k as i64), Complex64::new(0.5, 0.0));
        }
        p
    }

    pub fn sin(k: usize) -> Self {
        let mut p = Self::with_degree(k);
        if k > 0 {
            p.set(k as i64, Complex64::new(0.0, -0.5));
            p.set(-(k as i64), Complex64::new(0.0, 0.5));
        }
        p
    }

    /// Element j of the ordered basis 1, cos x, sin x, cos 2x, sin 2x, …
    pub fn basis(j: usize) -> Self {
        if j == 0 {
            Self::cos(0)
        } else if j % 2 == 1 {
            Self::cos(j.div_ceil(2))
        } else {
            Self::sin(j / 2)
        }
    }

    /// Σ a_k cos kx + Σ b_k sin kx with `a = [a_0..a_m]`, `b = [b_0..b_m]`
    /// (b_0 is ignored).
    pub fn from_cos_sin(a: &[Complex64], b: &[Complex64]) -> Self {
        let m = a.len().max(b.len()).saturating_sub(1);
        let mut p = Self::with_degree(m);
        let get = |v: &[Complex64], k: usize| v.get(k).copied().unwrap_or(ZERO);
        p.coeffs[m] = get(a, 0);
        let i = Complex64::i();
        for k in 1..=m {
            let (ak, bk) = (get(a, k), get(b, k));
            p.set(k as i64, (ak - i * bk) * 0.5);
            p.set(-(k as i64), (ak + i * bk) * 0.5);
        }
        p
    }

    fn with_degree(m: usize) -> Self {
        Self {
            coeffs: vec![ZERO; 2 * m + 1],
        }
    }

    /// Storage bound m (coefficients may vanish at the top).
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// Largest |k| with c_k or c_{−k} nonzero; 0 for constants and zero.
    pub fn degree(&self) -> usize {
        let m = self.degree_bound() as i64;
        (1..=m)
            .rev()
            .find(|&k| self.coeff(k) != ZERO || self.coeff(-k) != ZERO)
            .unwrap_or(0) as usize
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let m = self.degree_bound() as i64;
        if k.abs() > m {
            ZERO
        } else {
            self.coeffs[(k + m) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn set(&mut self, k: i64, v: Complex64) {
        let m = self.degree_bound() as i64;
        self.coeffs[(k + m) as usize] = v;
    }

    /// a_k: coefficient of cos kx.
    pub fn cos_coeff(&self, k: usize) -> Complex64 {
        if k == 0 {
            self.coeff(0)
        } else {
            self.coeff(k as i64) + self.coeff(-(k as i64))
        }
    }

    /// b_k: coefficient of sin kx.
    pub fn sin_coeff(&self, k: usize) -> Complex64 {
        if k == 0 {
            ZERO
        } else {
            Complex64::i() * (self.coeff(k as i64) - self.coeff(-(k as i64)))
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let m = self.degree_bound() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * (Complex64::i() * z * (j as i64 - m) as f64).exp())
            .sum()
    }

    /// Value at a real point; summed with unit-modulus phases.
    pub fn eval_real(&self, x: f64) -> Complex64 {
        let m = self.degree_bound() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * Complex64::from_polar(1.0, x * (j as i64 - m) as f64))
            .sum()
    }

    /// True iff c_{−k} = conj(c_k) up to `tol` relative to the largest coefficient.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_modulus().max(f64::MIN_POSITIVE);
        let m = self.degree_bound() as i64;
        (0..=m).all(|k| (self.coeff(-k) - self.coeff(k).conj()).norm() <= tol * scale)
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn parity_class(&self) -> ParityClass {
        let d = self.degree();
        if d == 0 {
            if self.coeff(0) == ZERO {
                ParityClass::None
            } else {
                ParityClass::EvenTop
            }
        } else if self.in_space(Space::Even, d) {
            ParityClass::EvenTop
        } else {
            ParityClass::Full
        }
    }

    /// Membership in T_{2n} (`Space::Even`) or T_{2n+1} (`Space::Odd`).
    /// Coefficients below 64 ulp of the largest one count as zero.
    pub fn in_space(&self, space: Space, n: usize) -> bool {
        let tiny = 64.0 * f64::EPSILON * self.max_modulus();
        let m = self.degree_bound() as i64;
        let n = n as i64;
        for k in (n + 1)..=m {
            if self.coeff(k).norm() > tiny || self.coeff(-k).norm() > tiny {
                return false;
            }
        }
        match space {
            Space::Odd => true,
            Space::Even => n == 0 || (self.coeff(n) - self.coeff(-n)).norm() <= tiny,
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    fn padded(&self, m: usize) -> Vec<Complex64> {
        let own = self.degree_bound();
        let mut v = vec![ZERO; 2 * m + 1];
        v[m - own..m + own + 1].copy_from_slice(&self.coeffs);
        v
    }

    /// Reduce the storage bound to the actual degree.
    pub fn trimmed(&self) -> Self {
        let d = self.degree();
        let m = self.degree_bound();
        Self {
            coeffs: self.coeffs[m - d..m + d + 1].to_vec(),
        }
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let m = self.degree_bound().max(rhs.degree_bound());
        let (a, b) = (self.padded(m), rhs.padded(m));
        TrigPoly {
            coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let m = self.degree_bound().max(rhs.degree_bound());
        let (a, b) = (self.padded(m), rhs.padded(m));
        TrigPoly {
            coeffs: a.iter().zip(&b).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let (ma, mb) = (self.degree_bound() as i64, rhs.degree_bound() as i64);
        let mut out = TrigPoly::with_degree((ma + mb) as usize);
        for j in -ma..=ma {
            for k in -mb..=mb {
                let v = out.coeff(j + k) + self.coeff(j) * rhs.coeff(k);
                out.set(j + k, v);
            }
        }
        out
    }
}

/// Symmetric matrix stored densely, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }
}

/// Gram matrix ⟨b_i, b_j⟩_w of the first 2n+2 basis elements, assembled
/// from the Fourier moments μ_m = ∫ w e^{−imx}.
pub fn gram_matrix(w: &PeriodicWeight, n: usize, cfg: &QuadratureConfig) -> Result<SymMatrix> {
    let dim = 2 * n + 2;
    let top = n + 1;
    let mu = w.moments(2 * top, cfg)?;
    // ∫ w cos(mx) and ∫ w sin(mx) for any integer m
    let cw = |m: i64| mu[m.unsigned_abs() as usize].re;
    let sw = |m: i64| -m.signum() as f64 * mu[m.unsigned_abs() as usize].im;

    // (is_sine, frequency) of basis element j
    let kind = |j: usize| -> (bool, i64) {
        if j == 0 {
            (false, 0)
        } else {
            (j % 2 == 0, j.div_ceil(2) as i64)
        }
    };

    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let (si, ki) = kind(i);
            let (sj, kj) = kind(j);
            let v = match (si, sj) {
                (false, false) => 0.5 * (cw(ki - kj) + cw(ki + kj)),
                (true, true) => 0.5 * (cw(ki - kj) - cw(ki + kj)),
                (false, true) => 0.5 * (sw(kj + ki) + sw(kj - ki)),
                (true, false) => 0.5 * (sw(ki + kj) + sw(ki - kj)),
            };
            data[i * dim + j] = v;
            data[j * dim + i] = v;
        }
    }
    Ok(SymMatrix { dim, data })
}

/// Lower Cholesky factor, row-major. Fails on a non-positive pivot.
pub fn cholesky(a: &SymMatrix) -> Result<Vec<f64>> {
    let d = a.dim;
    let mut l = vec![0.0; d * d];
    for j in 0..d {
        let mut s = a.get(j, j);
        for k in 0..j {
            s -= l[j * d + k] * l[j * d + k];
        }
        if !(s > 0.0) {
            return Err(Error::NotPositiveDefinite { pivot: j, value: s });
        }
        let ljj = s.sqrt();
        l[j * d + j] = ljj;
        for i in (j + 1)..d {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l[i * d + k] * l[j * d + k];
            }
            l[i * d + j] = s / ljj;
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix by forward substitution.
fn invert_lower(l: &[f64], d: usize) -> Vec<f64> {
    let mut inv = vec![0.0; d * d];
    for col in 0..d {
        inv[col * d + col] = 1.0 / l[col * d + col];
        for i in (col + 1)..d {
            let mut s = 0.0;
            for k in col..i {
                s += l[i * d + k] * inv[k * d + col];
            }
            inv[i * d + col] = -s / l[i * d + i];
        }
    }
    inv
}

/// Orthonormal and monic OTPs up to degree n_max.
#[derive(Debug, Clone)]
pub struct OtpSystem {
    weight: PeriodicWeight,
    n_max: usize,
    gram: SymMatrix,
    /// GS_0..GS_{2n_max+1}
    gs: Vec<TrigPoly>,
    /// α_0..α_{n_max}
    alphas: Vec<f64>,
    /// β_0..β_{n_max}, β_0 := α_0
    betas: Vec<f64>,
    /// ϖ_0..ϖ_{2n_max} (index n holds ϖ_{2n})
    monic_first: Vec<TrigPoly>,
    /// index n holds ϖ_{2n−1} for n = 1..=n_max+1 (index 0 unused)
    monic_second: Vec<TrigPoly>,
    /// index n holds a_n for n = 1..=n_max+1 (index 0 unused)
    a_consts: Vec<Complex64>,
    min_pivot: f64,
    max_pivot: f64,
}

impl OtpSystem {
    pub fn build(w: &PeriodicWeight, n_max: usize, cfg: &QuadratureConfig) -> Result<Self> {
        let gram = gram_matrix(w, n_max, cfg)?;
        let d = gram.dim;
        let l = cholesky(&gram)?;
        let linv = invert_lower(&l, d);

        let gs: Vec<TrigPoly> = (0..d)
            .map(|i| {
                (0..=i).fold(TrigPoly::with_degree(n_max + 1), |acc, j| {
                    let term = TrigPoly::basis(j).scale(linv[i * d + j].into());
                    &acc + &term
                })
            })
            .collect();

        let diag = |i: usize| linv[i * d + i];
        let mut alphas = vec![diag(0)];
        let mut betas = vec![diag(0)];
        for n in 1..=n_max {
            alphas.push(diag(2 * n - 1));
            betas.push(diag(2 * n));
        }

        let mut monic_first = vec![TrigPoly::constant(Complex64::new(1.0, 0.0))];
        for n in 1..=n_max {
            let mut p = gs[2 * n - 1].scale((1.0 / alphas[n]).into());
            // leading cos nx coefficient exactly 1, no sin nx
            p.set(n as i64, Complex64::new(0.5, 0.0));
            p.set(-(n as i64), Complex64::new(0.5, 0.0));
            monic_first.push(p.trimmed());
        }

        let mut monic_second = vec![TrigPoly::zero(), TrigPoly::constant(Complex64::new(1.0, 0.0))];
        for n in 2..=n_max + 1 {
            let m = n - 1;
            let mut p = gs[2 * m].scale((1.0 / betas[m]).into());
            // leading sin mx coefficient exactly 1, cos mx kept
            let a = p.cos_coeff(m);
            p.set(m as i64, (a - Complex64::i()) * 0.5);
            p.set(-(m as i64), (a + Complex64::i()) * 0.5);
            monic_second.push(p.trimmed());
        }

        // a_n = 2πi / ⟨ϖ_{2n−1}, b_{2n−2}⟩_w, the inner product taken
        // through the Gram matrix: Σ_j coeff_j G[j][2n−2]
        let mut a_consts = vec![ZERO];
        for n in 1..=n_max + 1 {
            let row = 2 * n - 2;
            let beta = if n == 1 { diag(0) } else { betas[n - 1] };
            let ip: f64 = (0..=row)
                .map(|j| linv[row * d + j] / beta * gram.get(j, row))
                .sum();
            a_consts.push(Complex64::new(0.0, 2.0 * PI / ip));
        }

        let pivots: Vec<f64> = (0..d).map(|i| l[i * d + i] * l[i * d + i]).collect();
        let min_pivot = pivots.iter().copied().fold(f64::INFINITY, f64::min);
        let max_pivot = pivots.iter().copied().fold(0.0, f64::max);

        Ok(Self {
            weight: w.clone(),
            n_max,
            gram,
            gs,
            alphas,
            betas,
            monic_first,
            monic_second,
            a_consts,
            min_pivot,
            max_pivot,
        })
    }

    pub fn weight(&self) -> &PeriodicWeight {
        &self.weight
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn gram(&self) -> &SymMatrix {
        &self.gram
    }

    /// Gram–Schmidt output j (j = 0..=2n_max+1).
    pub fn gs(&self, j: usize) -> &TrigPoly {
        &self.gs[j]
    }

    /// ω_j in the first/second-kind numbering (j = 0..=2n_max+1).
    pub fn omega(&self, j: usize) -> &TrigPoly {
        // ω_{2n} = GS_{2n−1} and ω_{2n+1} = GS_{2n} are both GS_{j−1}
        &self.gs[j.max(1) - 1]
    }

    pub fn alpha(&self, n: usize) -> f64 {
        self.alphas[n]
    }

    pub fn beta(&self, n: usize) -> f64 {
        self.betas[n]
    }

    /// ϖ_{2n}, n = 0..=n_max.
    pub fn monic_first(&self, n: usize) -> Result<&TrigPoly> {
        self.check_degree(n, 0, self.n_max)?;
        Ok(&self.monic_first[n])
    }

    /// ϖ_{2n−1}, n = 1..=n_max+1. ϖ_1 is the constant 1.
    pub fn monic_second(&self, n: usize) -> Result<&TrigPoly> {
        self.check_degree(n, 1, self.n_max + 1)?;
        Ok(&self.monic_second[n])
    }

    /// a_n, n = 1..=n_max+1.
    pub fn a_const(&self, n: usize) -> Result<Complex64> {
        self.check_degree(n, 1, self.n_max + 1)?;
        Ok(self.a_consts[n])
    }

    /// Smallest and largest squared Cholesky pivot; their ratio bounds the
    /// conditioning of the orthogonalization.
    pub fn pivot_range(&self) -> (f64, f64) {
        (self.min_pivot, self.max_pivot)
    }

    fn check_degree(&self, n: usize, min: usize, max: usize) -> Result<()> {
        if n < min || n > max {
            Err(Error::DegreeOutOfRange { n, min, max })
        } else {
            Ok(())
        }
    }
}
