//! Orthogonal trigonometric polynomials for analytic periodic weights and
//! the periodic Riemann–Hilbert problem they solve.
//!
//! The crate builds the orthonormal and monic OTP families from the Gram
//! matrix of a weight, assembles the explicit 2×2 solution Y of the
//! periodic Riemann–Hilbert problem, carries it through the steepest
//! descent transforms Y → F → S → R, and measures every jump, growth and
//! decay statement along the way.
//!
//! ```
//! use otp_rh::{OtpSystem, PeriodicWeight, QuadratureConfig};
//!
//! let w: PeriodicWeight = "cos:0.5".parse().unwrap();
//! let sys = OtpSystem::build(&w, 4, &QuadratureConfig::default()).unwrap();
//! let p = sys.monic_first(2).unwrap();
//! assert_eq!(p.cos_coeff(2).re, 1.0);
//! ```

pub mod cauchy;
pub mod error;
pub mod quadrature;
pub mod report;
pub mod rhchain;
pub mod szego;
pub mod trigpoly;
pub mod weights;

pub use cauchy::{CauchyTransform, Side};
pub use error::{Error, Result};
pub use quadrature::QuadratureConfig;
pub use report::ResidualReport;
pub use rhchain::{ContourConfig, Matrix2, RhChain};
pub use szego::SzegoData;
pub use trigpoly::{OtpSystem, TrigPoly};
pub use weights::PeriodicWeight;
