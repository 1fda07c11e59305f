//! Equispaced trapezoid quadrature for analytic 2π-periodic integrands.
//!
//! For a periodic integrand analytic in a strip the rectangle sum on N
//! equispaced nodes converges geometrically, so convergence is declared by
//! agreement of successive doublings rather than by an a-priori bound.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::trigpoly::TrigPoly;
use crate::weights::PeriodicWeight;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Starting node count (power of two, at least 8).
    pub nodes: usize,
    /// Relative tolerance for successive-doubling agreement.
    pub tol: f64,
    /// Node cap (power of two).
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes: 64,
            tol: 1e-12,
            max_nodes: 1 << 16,
        }
    }
}

impl QuadratureConfig {
    pub fn new(nodes: usize, tol: f64, max_nodes: usize) -> Result<Self> {
        let cfg = Self {
            nodes,
            tol,
            max_nodes,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(64, tol, 1 << 16)
    }

    /// Same tolerance with at least enough starting nodes to resolve Fourier
    /// index `k_max` without aliasing (N ≥ 4(k_max + 1)).
    pub fn resolving(&self, k_max: usize) -> Self {
        let nodes = self.nodes.max((4 * (k_max + 1)).next_power_of_two());
        Self {
            nodes,
            tol: self.tol,
            max_nodes: self.max_nodes.max(nodes),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.nodes.is_power_of_two() || self.nodes < 8 {
            return Err(Error::QuadratureConfig(format!(
                "node count {} must be a power of two >= 8",
                self.nodes
            )));
        }
        if !self.max_nodes.is_power_of_two() || self.max_nodes < self.nodes {
            return Err(Error::QuadratureConfig(format!(
                "node cap {} must be a power of two >= {}",
                self.max_nodes, self.nodes
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::QuadratureConfig(format!(
                "tolerance {} must be positive",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Values that can be integrated: complex scalars and small matrices.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    /// |T_{2N} − T_N| at the last doubling.
    pub error_estimate: f64,
    /// Node count of the returned value.
    pub nodes: usize,
    pub converged: bool,
}

impl<T> Quadrature<T> {
    /// Turns a non-converged result into an error.
    pub fn require_converged(self, tol: f64) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::QuadratureNonConvergence {
                nodes: self.nodes,
                estimate: self.error_estimate,
                tol,
            })
        }
    }
}

/// Rectangle sum (2π/N) Σ f(2πj/N) on a fixed number of nodes.
pub fn trapezoid_sum<T: QuadValue, F: Fn(f64) -> T>(f: F, nodes: usize) -> T {
    let h = 2.0 * PI / nodes as f64;
    let mut acc = T::zero();
    for j in 0..nodes {
        acc = acc + f(h * j as f64);
    }
    acc * h
}

/// ∫₀^{2π} f, doubling the node count until successive sums agree.
///
/// Agreement is measured relative to max(|T|, (2π/N)Σ|f|) so integrals that
/// vanish by cancellation still terminate. Non-convergence at the cap is
/// reported through `converged = false`, not as an error.
pub fn periodic_trapezoid<T: QuadValue, F: Fn(f64) -> T>(f: F, cfg: &QuadratureConfig) -> Quadrature<T> {
    let mut n = cfg.nodes;
    let mut h = 2.0 * PI / n as f64;
    let mut sum = T::zero();
    let mut abs_sum = 0.0;
    for j in 0..n {
        let v = f(h * j as f64);
        abs_sum += v.magnitude();
        sum = sum + v;
    }
    let mut prev = sum * h;
    loop {
        if n * 2 > cfg.max_nodes {
            return Quadrature {
                value: prev,
                error_estimate: f64::INFINITY,
                nodes: n,
                converged: false,
            };
        }
        // the new nodes sit halfway between the old ones
        let mut odd = T::zero();
        for j in 0..n {
            let v = f(h * (j as f64 + 0.5));
            abs_sum += v.magnitude();
            odd = odd + v;
        }
        sum = sum + odd;
        n *= 2;
        h = 2.0 * PI / n as f64;
        let next = sum * h;
        let est = (next - prev).magnitude();
        let scale = next.magnitude().max(abs_sum * h);
        if est <= cfg.tol * scale || scale == 0.0 {
            return Quadrature {
                value: next,
                error_estimate: est,
                nodes: n,
                converged: true,
            };
        }
        if n * 2 > cfg.max_nodes {
            return Quadrature {
                value: next,
                error_estimate: est,
                nodes: n,
                converged: false,
            };
        }
        prev = next;
    }
}

/// (1/2π)∫₀^{2π} f(τ) e^{−ikτ} dτ.
pub fn fourier_coefficient<F: Fn(f64) -> Complex64>(
    f: F,
    k: i64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature<Complex64>> {
    let q = periodic_trapezoid(
        |t| f(t) * Complex64::from_polar(1.0, -(k as f64) * t),
        cfg,
    );
    if k.unsigned_abs() as usize >= q.nodes / 2 {
        return Err(Error::Aliasing { k, nodes: q.nodes });
    }
    Ok(Quadrature {
        value: q.value / (2.0 * PI),
        error_estimate: q.error_estimate / (2.0 * PI),
        nodes: q.nodes,
        converged: q.converged,
    })
}

/// All Fourier coefficients of a periodic function from one sample set.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// FFT order: index j holds k = j for j < N/2 and k = j − N otherwise.
    coeffs: Vec<Complex64>,
    /// max |ĝ_k| over N/4 ≤ |k| < N/2, relative to max |ĝ_k|.
    pub tail: f64,
    pub converged: bool,
}

impl Spectrum {
    pub fn nodes(&self) -> usize {
        self.coeffs.len()
    }

    /// ĝ_k, rejecting |k| ≥ N/2.
    pub fn coeff(&self, k: i64) -> Result<Complex64> {
        let n = self.coeffs.len();
        if k.unsigned_abs() as usize >= n / 2 {
            return Err(Error::Aliasing { k, nodes: n });
        }
        let idx = if k >= 0 { k as usize } else { (n as i64 + k) as usize };
        Ok(self.coeffs[idx])
    }

    /// Largest usable index, N/2 − 1.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() / 2 - 1
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Fourier coefficients (1/2π)∫ f e^{−ikτ} of a periodic function by FFT,
/// doubling N until the upper half of the spectrum falls below tol relative
/// to its largest coefficient.
pub fn fourier_series<F: Fn(f64) -> Complex64>(f: F, cfg: &QuadratureConfig) -> Result<Spectrum> {
    cfg.validate()?;
    let mut planner = FftPlanner::<f64>::new();
    let mut n = cfg.nodes;
    loop {
        let h = 2.0 * PI / n as f64;
        let mut buf: Vec<Complex64> = (0..n).map(|j| f(h * j as f64)).collect();
        planner.plan_fft_forward(n).process(&mut buf);
        let inv = 1.0 / n as f64;
        for c in buf.iter_mut() {
            *c *= inv;
        }
        let max = buf.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tail_abs = buf[n / 4..=3 * n / 4]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let tail = if max == 0.0 { 0.0 } else { tail_abs / max };
        let converged = tail <= cfg.tol;
        if converged || n * 2 > cfg.max_nodes {
            return Ok(Spectrum {
                coeffs: buf,
                tail,
                converged,
            });
        }
        n *= 2;
    }
}

/// ⟨f, g⟩_w = ∫₀^{2π} f g w for real-valued trigonometric polynomials.
pub fn inner_product(
    f: &TrigPoly,
    g: &TrigPoly,
    w: &PeriodicWeight,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let q = periodic_trapezoid(
        |x| f.eval_real(x) * g.eval_real(x) * w.eval_real(x),
        cfg,
    )
    .require_converged(cfg.tol)?;
    let scale = q.value.norm().max(1.0);
    if q.value.im.abs() > cfg.tol * scale {
        return Err(Error::NonRealInnerProduct {
            residue: q.value.im.abs(),
        });
    }
    Ok(q.value.re)
}
