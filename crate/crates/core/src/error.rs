use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse weight spec `{spec}`: {reason}")]
    WeightParse { spec: String, reason: String },

    #[error("weight `{spec}` is not strictly positive: {detail}")]
    PositivityViolation { spec: String, detail: String },

    #[error("degenerate weight parameter in `{spec}`: {detail}")]
    DegenerateParameter { spec: String, detail: String },

    #[error("argument {z} lies outside the analyticity strip |Im z| < {strip_radius}")]
    OutsideStrip { z: Complex64, strip_radius: f64 },

    #[error("invalid quadrature configuration: {0}")]
    QuadratureConfig(String),

    #[error("quadrature did not converge at N = {nodes}: error estimate {estimate:e} > tol {tol:e}")]
    QuadratureNonConvergence { nodes: usize, estimate: f64, tol: f64 },

    #[error("Fourier index {k} aliases on {nodes} nodes (need |k| < N/2)")]
    Aliasing { k: i64, nodes: usize },

    #[error("inner product has imaginary residue {residue:e}; inputs are not real-valued")]
    NonRealInnerProduct { residue: f64 },

    #[error("Gram matrix is not positive definite at pivot {pivot} (pivot value {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("Cauchy series tail {tail:e} exceeds tolerance at truncation cap {cap}")]
    CauchyTail { tail: f64, cap: usize },

    #[error("{what} is undefined on the real axis (z = {z})")]
    OnAxis { what: &'static str, z: Complex64 },

    #[error("{what} requires {requirement}, got z = {z}")]
    WrongHalfPlane {
        what: &'static str,
        requirement: &'static str,
        z: Complex64,
    },

    #[error("singular matrix (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("cos(n z) vanishes at z = {z} for n = {n}")]
    GrowthSingular { n: usize, z: Complex64 },

    #[error("point {z} lies on a contour")]
    OnContour { z: Complex64 },

    #[error("point {z} is not on the contour leg {leg}")]
    OffContour { z: Complex64, leg: &'static str },

    #[error("degree {n} outside the supported range {min}..={max}")]
    DegreeOutOfRange { n: usize, min: usize, max: usize },

    #[error("invalid contour configuration: {0}")]
    ContourConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
