//! Lie algebras over ℚ given by structure constants, their Koszul
//! (Chevalley–Eilenberg) complexes, and automorphism actions on cohomology.

mod action;
mod algebra;
mod koszul;

pub use action::{
    action_on_cohomology, cochain_action, h1_annihilator_check, invariant_subcomplex, semisimple_rigidity_check,
    wedge_power, H1Check, InvariantCohomology, LieAutomorphism, Rigidity,
};
pub use algebra::{LieAlgebra, LowerCentralSeries};
pub use koszul::{
    betti, binomial, build_koszul, euler_characteristic, wedge_basis, GradedCohomology, KoszulComplex,
    DEFAULT_MAX_DIM,
};
