//! The Riemann–Hilbert chain and its verification.

pub mod asymptotics;
mod chain;
mod contour;
pub mod lemma;
mod mat2;
pub mod theorem;
pub mod verify;

pub use chain::{
    g_branch, growth_matrices, jump_g, m_branch, matrix_m, matrix_u, matrix_v, region_side,
    u_branch, v_branch, v_lower_entry, v_upper_entry, ChainValues, RhChain,
};
pub use contour::{classify_region, ContourConfig, Leg, Partition, Region, ON_CONTOUR_TOL};
pub use mat2::Matrix2;
