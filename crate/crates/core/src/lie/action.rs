use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::{row_basis, LieAlgebra};
use super::koszul::{betti_from_ranks, GradedCohomology, KoszulComplex};
use crate::linalg::{min_poly, RationalMatrix};
use crate::{Error, Exec, Result};

/// A bracket-preserving `Φ ∈ GL(𝔤)`; column `j` is `Φ(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAutomorphism {
    matrix: RationalMatrix,
}

impl LieAutomorphism {
    pub fn new(algebra: &LieAlgebra, matrix: RationalMatrix) -> Result<Self> {
        let n = algebra.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "automorphism is {}x{}, algebra has dimension {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !algebra.is_automorphism(&matrix) {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(LieAutomorphism { matrix })
    }

    pub fn identity(algebra: &LieAlgebra) -> Self {
        LieAutomorphism { matrix: RationalMatrix::identity(algebra.dim()) }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &LieAutomorphism) -> LieAutomorphism {
        LieAutomorphism { matrix: &self.matrix * &other.matrix }
    }

    /// Squarefree minimal polynomial.
    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(min_poly(&self.matrix)?.is_squarefree())
    }

    /// The induced map `Φ^{−T}` on `𝔤*`, so that `Φ ↦ Φ^{−T}` is a homomorphism.
    pub fn dual(&self) -> Result<RationalMatrix> {
        Ok(self.matrix.inverse()?.transpose())
    }
}

/// `Λ^p M` on the lexicographic wedge basis: entry `(I, J)` is the minor
/// `det M[I, J]`.
pub fn wedge_power(m: &RationalMatrix, basis: &[Vec<usize>], exec: Exec) -> RationalMatrix {
    let cols = exec.map(basis.to_vec(), |j: Vec<usize>| {
        basis.iter().map(|i| m.submatrix(i, &j).det().expect("square minor")).collect::<Vec<_>>()
    });
    RationalMatrix::from_columns(basis.len(), &cols)
}

/// The map induced by `Φ` on `Λ^p 𝔤*`, checked to commute with `d`.
pub fn cochain_action(complex: &KoszulComplex, phi: &LieAutomorphism, p: usize, exec: Exec) -> Result<RationalMatrix> {
    let dual = phi.dual()?;
    let here = wedge_power(&dual, complex.basis(p)?, exec);
    let d = complex.differential(p)?;
    let next = wedge_power(&dual, complex.basis(p + 1).unwrap_or(&[]), exec);
    if &next * d != d * &here {
        return Err(Error::Internal(format!("induced map does not commute with d^{p}")));
    }
    Ok(here)
}

/// Matrix of `Φ` on `H^p` in the representative basis; column `j` holds the
/// coordinates of the image of the `j`-th representative.
pub fn action_on_cohomology(
    complex: &KoszulComplex,
    cohomology: &GradedCohomology,
    phi: &LieAutomorphism,
    p: usize,
    exec: Exec,
) -> Result<RationalMatrix> {
    let m = cochain_action(complex, phi, p, exec)?;
    let images: Vec<_> = cohomology.representatives[p].iter().map(|r| m.mul_vec(r)).collect();
    cohomology.project(p, &images)
}

/// Outcome of testing "semisimple and trivial on `H¹` implies identity".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rigidity {
    /// `Φ` acts nontrivially on `H¹`.
    Vacuous,
    /// `Φ` acts trivially on `H¹` and is the identity.
    Confirmed,
    /// `Φ` acts trivially on `H¹` but is not the identity.
    Refuted,
}

pub fn semisimple_rigidity_check(
    complex: &KoszulComplex,
    cohomology: &GradedCohomology,
    phi: &LieAutomorphism,
) -> Result<Rigidity> {
    if !complex.algebra().is_nilpotent() {
        return Err(Error::NotNilpotentAlgebra);
    }
    if !phi.is_semisimple()? {
        return Err(Error::NotSemisimple);
    }
    if complex.top_degree() == 0 {
        return Ok(Rigidity::Confirmed);
    }
    let h1 = action_on_cohomology(complex, cohomology, phi, 1, Exec::Sequential)?;
    Ok(if !h1.is_identity() {
        Rigidity::Vacuous
    } else if phi.matrix().is_identity() {
        Rigidity::Confirmed
    } else {
        Rigidity::Refuted
    })
}

/// `dim H¹ = n − dim [𝔤, 𝔤]`, and every 1-cocycle vanishes on `[𝔤, 𝔤]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Check {
    pub h1_dim: usize,
    pub derived_dim: usize,
    pub annihilates: bool,
}

impl H1Check {
    pub fn ok(&self, dim: usize) -> bool {
        self.annihilates && self.h1_dim + self.derived_dim == dim
    }
}

pub fn h1_annihilator_check(complex: &KoszulComplex) -> Result<H1Check> {
    let algebra = complex.algebra();
    let derived = algebra.derived_algebra();
    if algebra.dim() == 0 {
        return Ok(H1Check { h1_dim: 0, derived_dim: 0, annihilates: true });
    }
    // d^0 = 0, so H¹ = Z¹
    let cocycles = complex.differential(1)?.nullspace();
    let annihilates = cocycles.iter().all(|z| {
        derived.iter().all(|v| z.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b).is_zero())
    });
    Ok(H1Check { h1_dim: cocycles.len(), derived_dim: derived.len(), annihilates })
}

/// Joint fixed subcomplex of a commuting family of semisimple automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCohomology {
    /// `dim (Λ^p 𝔤*)^S`.
    pub fixed_dims: Vec<usize>,
    /// Betti numbers of the fixed subcomplex.
    pub subcomplex_betti: Vec<usize>,
    /// `dim H^p(𝔤)^S` from the induced action on cohomology.
    pub invariant_betti: Vec<usize>,
    /// Bases of the fixed spaces, as columns in the wedge basis.
    pub fixed_bases: Vec<RationalMatrix>,
    /// Differential restricted to the fixed spaces.
    pub restricted: Vec<RationalMatrix>,
}

pub fn invariant_subcomplex(
    complex: &KoszulComplex,
    cohomology: &GradedCohomology,
    family: &[LieAutomorphism],
    exec: Exec,
) -> Result<InvariantCohomology> {
    for (i, a) in family.iter().enumerate() {
        if !a.is_semisimple()? {
            return Err(Error::NotSemisimple);
        }
        if family[i + 1..].iter().any(|b| !a.matrix().commutes_with(b.matrix())) {
            return Err(Error::NotCommuting);
        }
    }
    let top = complex.top_degree();
    let mut fixed_bases = Vec::with_capacity(top + 1);
    let mut invariant_betti = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let dim = complex.dim(p);
        let mut cochain_blocks = Vec::new();
        let mut coh_blocks = Vec::new();
        let b = cohomology.representatives[p].len();
        for phi in family {
            let m = cochain_action(complex, phi, p, exec)?;
            cochain_blocks.push(&m - &RationalMatrix::identity(dim));
            let reps: Vec<_> = cohomology.representatives[p].iter().map(|r| m.mul_vec(r)).collect();
            coh_blocks.push(&cohomology.project(p, &reps)? - &RationalMatrix::identity(b));
        }
        fixed_bases.push(RationalMatrix::from_columns(dim, &joint_kernel(cochain_blocks, dim)));
        invariant_betti.push(joint_kernel(coh_blocks, b).len());
    }
    let mut restricted = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let image = complex.differential(p)? * &fixed_bases[p];
        let target = fixed_bases.get(p + 1).cloned().unwrap_or_else(|| RationalMatrix::zeros(0, 0));
        let x = if image.rows() == 0 {
            RationalMatrix::zeros(target.cols(), image.cols())
        } else {
            target
                .solve(&image)?
                .ok_or_else(|| Error::Internal(format!("d^{p} leaves the invariant subcomplex")))?
        };
        restricted.push(x);
    }
    let fixed_dims: Vec<usize> = fixed_bases.iter().map(RationalMatrix::cols).collect();
    let ranks = exec.map(restricted.iter().collect(), |m: &RationalMatrix| m.rank());
    let subcomplex_betti = betti_from_ranks(&fixed_dims, &ranks);
    if subcomplex_betti != invariant_betti {
        return Err(Error::Internal(format!(
            "cohomology of invariants {subcomplex_betti:?} differs from invariants of cohomology {invariant_betti:?}"
        )));
    }
    Ok(InvariantCohomology { fixed_dims, subcomplex_betti, invariant_betti, fixed_bases, restricted })
}

/// Basis of `∩ ker Mᵢ` for square blocks of size `dim`; all of `ℚ^dim` if
/// there are no blocks.
fn joint_kernel(blocks: Vec<RationalMatrix>, dim: usize) -> Vec<Vec<BigRational>> {
    if dim == 0 {
        return Vec::new();
    }
    if blocks.is_empty() {
        return row_basis(&RationalMatrix::identity(dim).to_rows());
    }
    RationalMatrix::vstack(&blocks).expect("equal widths").nullspace()
}
