//! Exact linear algebra over ℚ: rationals, dense matrices and subspaces.
//!
//! Everything here is deterministic: elimination always pivots on the
//! leftmost nonzero entry, rows top-down, and coset representatives are picked
//! in basis order.

mod mat;
mod rat;
mod subspace;

pub use mat::Mat;
pub use rat::{binomial, ParseRatError, Rat};
pub use subspace::{quotient_basis, subspace_eq, Coordinates, Echelon, Subspace};

/// Rank of a matrix.
pub fn rank(m: &Mat) -> usize {
    m.rank()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}
