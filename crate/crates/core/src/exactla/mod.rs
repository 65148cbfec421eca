//! Exact linear algebra over prime fields.
//!
//! Every rank, kernel and solve in the engine goes through [`Mat`]. Pivoting is
//! purely positional (first nonzero entry in column order), so all outputs are
//! deterministic functions of the input.

mod field;
mod mat;
mod sparse;
mod subquotient;

pub use field::PrimeField;
pub use mat::Mat;
pub use sparse::{KronProduct, SparseMat, SPARSE_THRESHOLD};
pub use subquotient::Subquotient;

/// Reduced row echelon form, pivot columns and rank.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>, usize) {
    let (r, pivots) = m.rref();
    let rank = pivots.len();
    (r, pivots, rank)
}

pub fn kernel_basis(m: &Mat) -> Mat {
    m.kernel_basis()
}

pub fn solve(m: &Mat, b: &[u32]) -> crate::Result<Option<Vec<u32>>> {
    m.solve(b)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kron(b)
}
