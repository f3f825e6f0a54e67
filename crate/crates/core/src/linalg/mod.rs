//! Exact dense linear algebra over ℤ and ℚ.

mod jordan;
mod lattice;
mod matrix;
mod poly;

pub use jordan::{
    char_poly, is_finite_order, is_unipotent, jordan_chevalley, jordan_chevalley_batch, min_poly, nilpotent_exp,
    nilpotent_log, JordanPair, Order,
};
pub use lattice::{
    hnf, kernel_lattice, lattice_basis, lattice_coordinates, snf, sublattice_invariants, SmithDecomposition,
};
pub use matrix::{int_vec, rational, IntegerMatrix, Matrix, RationalMatrix, Scalar};
pub use poly::{cyclotomic, euler_phi, strip_cyclotomic_factors, Poly};
