//! Necessary condition for `Γ(A) = ℤⁿ ⋊ ⟨A⟩` to be arithmetic, and the
//! end-to-end computation for the groups `Γ(ε)`.
//!
//! If `Γ(A)` is arithmetic then `A` has finite order, or some power of `A`
//! is unipotent, or `A` is semisimple. [`check_gamma_a`] reads this off the
//! Jordan decomposition `A = S·U`. A [`Classification::Semisimple`] verdict
//! does not mean the group is arithmetic; only
//! [`Classification::FailsNecessaryCondition`] is conclusive.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{conjugate_derivation, conjugation_action, derivation_space, DerivationLattice, RewritingTable};
use crate::linalg::{
    char_poly, is_finite_order, is_unipotent, jordan_chevalley, lattice_coordinates, min_poly, snf,
    strip_cyclotomic_factors, IntegerMatrix, JordanPair, Order, Poly,
};
use crate::presentation::{DihedralElement, NormalFormEngine, Word};
use crate::semidirect::{build_gamma_epsilon, AutomorphismAtom, AutomorphismSpec, GammaEpsilon, SemidirectElement};
use crate::{Error, Exec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    FiniteOrder(u64),
    /// `A^k` is unipotent for the recorded `k`.
    VirtuallyUnipotent(u64),
    Semisimple,
    FailsNecessaryCondition,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::FiniteOrder(_) => "FiniteOrder",
            Classification::VirtuallyUnipotent(_) => "VirtuallyUnipotent",
            Classification::Semisimple => "Semisimple",
            Classification::FailsNecessaryCondition => "FailsNecessaryCondition",
        }
    }

    /// Same variant, ignoring the recorded order or power.
    pub fn same_kind(&self, other: &Classification) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithVerdict {
    pub classification: Classification,
    pub witness: JordanPair,
    pub semisimple_order: Order,
}

pub const VERDICT_NOTE: &str = "Only the necessary condition is tested: Semisimple, FiniteOrder and \
VirtuallyUnipotent do not prove arithmeticity; FailsNecessaryCondition proves Gamma(A) is not arithmetic.";

/// Classifies `A ∈ GL(n, ℤ)`. Finite order takes precedence over the other
/// two admissible cases.
pub fn check_gamma_a(a: &IntegerMatrix) -> Result<ArithVerdict> {
    a.require_square()?;
    let det = a.det()?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    let witness = jordan_chevalley(&a.to_rational())?;
    let semisimple_order = is_finite_order(&witness.semisimple)?;
    let trivial_u = witness.unipotent.is_identity();
    let classification = match (semisimple_order, trivial_u) {
        (Order::Finite(k), true) => Classification::FiniteOrder(k),
        (Order::Finite(k), false) => Classification::VirtuallyUnipotent(k),
        (Order::Infinite, true) => Classification::Semisimple,
        (Order::Infinite, false) => Classification::FailsNecessaryCondition,
    };
    if let Classification::VirtuallyUnipotent(k) = classification {
        if !is_unipotent(&a.to_rational().pow(k)) {
            return Err(Error::Internal(format!("A^{k} is not unipotent")));
        }
    }
    Ok(ArithVerdict { classification, witness, semisimple_order })
}

/// How the computed `Inn_A` block compares with the stated matrix
/// `[[−1, −2(a+1)/l], [g, 2a+1]]`, whose `g` is not pinned down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockComparison {
    /// Computed lower-right 2×2 block, rows as images.
    pub computed: IntegerMatrix,
    /// The three stated entries at (1,1), (1,2), (2,2) of the block.
    pub stated: [BigInt; 3],
    pub matches_rows_as_images: bool,
    pub matches_columns_as_images: bool,
    /// `g` read off the orientation that matches; `None` if neither does.
    pub resolved_entry: Option<BigInt>,
    /// `g` forced by `det = 1` with the three stated entries.
    pub entry_from_determinant: Option<BigInt>,
}

/// Everything computed for one `Γ(ε)`.
#[derive(Debug, Clone)]
pub struct TeobReport {
    pub gamma: GammaEpsilon,
    pub l: BigInt,
    pub lattice: DerivationLattice,
    /// Invariant factors of the table-to-saturated-basis change of basis.
    pub table_index_factors: Vec<BigInt>,
    /// `Inn_A` on `Der(D_∞, F)` in the basis `d₁..d₄`, rows as images.
    pub action_matrix: IntegerMatrix,
    pub top_rows_match: bool,
    pub block: BlockComparison,
    pub char_poly: Poly,
    pub semisimple_min_poly: Poly,
    /// Minimal polynomial of `S` with cyclotomic factors removed.
    pub infinite_order_factor: Poly,
    pub verdict: ArithVerdict,
}

/// Builds `Γ(ε)`, its derivation lattice in the table basis, the `Inn_A`
/// matrix and its verdict.
pub fn theorem_teob_report(d: impl Into<BigInt>) -> Result<TeobReport> {
    let gamma = build_gamma_epsilon(d)?;
    let group = &gamma.group;
    let saturated = derivation_space(group.presentation(), group.action())?;
    if saturated.rank() != 4 {
        return Err(Error::Internal(format!("Der(D_inf, F) has rank {} instead of 4", saturated.rank())));
    }
    let table = gamma.derivation_table();
    let flat_basis: Vec<_> = saturated.basis().iter().map(|d| d.to_flat()).collect();
    let coords = table
        .iter()
        .map(|d| lattice_coordinates(&flat_basis, &d.to_flat()).ok_or(Error::NotInLattice))
        .collect::<Result<Vec<_>>>()?;
    let table_index_factors = snf(&IntegerMatrix::from_rows(coords)?).invariant_factors();
    let lattice = saturated.with_basis(table)?;

    let rewriting = RewritingTable::from_engine(group.engine(), &Word::power(0, 1));
    let action_matrix = conjugation_action(group.action(), &rewriting, &lattice)?;

    let top = IntegerMatrix::from_i64(&[&[1, -2, 0, 0], &[0, 1, 0, 0]]);
    let top_rows_match = action_matrix.submatrix(&[0, 1], &[0, 1, 2, 3]) == top;
    let l = gamma.l();
    let block = compare_block(&action_matrix.submatrix(&[2, 3], &[2, 3]), gamma.a(), &l);

    let verdict = check_gamma_a(&action_matrix)?;
    let char_poly = char_poly(&action_matrix.to_rational())?;
    let semisimple_min_poly = min_poly(&verdict.witness.semisimple)?;
    let (_, infinite_order_factor) = strip_cyclotomic_factors(&semisimple_min_poly, 32);
    Ok(TeobReport {
        gamma,
        l,
        lattice,
        table_index_factors,
        action_matrix,
        top_rows_match,
        block,
        char_poly,
        semisimple_min_poly,
        infinite_order_factor,
        verdict,
    })
}

fn compare_block(computed: &IntegerMatrix, a: &BigInt, l: &BigInt) -> BlockComparison {
    let two_a1 = BigInt::from(2) * a + BigInt::one();
    let stated = [BigInt::from(-1), -(BigInt::from(2) * (a + BigInt::one())) / l, two_a1.clone()];
    let fits = |m: &IntegerMatrix| m[(0, 0)] == stated[0] && m[(0, 1)] == stated[1] && m[(1, 1)] == stated[2];
    let transposed = computed.transpose();
    let matches_rows_as_images = fits(computed);
    let matches_columns_as_images = fits(&transposed);
    let resolved_entry = if matches_rows_as_images {
        Some(computed[(1, 0)].clone())
    } else if matches_columns_as_images {
        Some(transposed[(1, 0)].clone())
    } else {
        None
    };
    // det [[s0, s1], [g, s2]] = s0·s2 − s1·g = 1
    let num: BigInt = &stated[0] * &stated[2] - BigInt::one();
    let entry_from_determinant =
        (!stated[1].is_zero() && (&num % &stated[1]).is_zero()).then(|| num / &stated[1]);
    BlockComparison {
        computed: computed.clone(),
        stated,
        matches_rows_as_images,
        matches_columns_as_images,
        resolved_entry,
        entry_from_determinant,
    }
}

/// Reports for several `d`, computed with the given strategy.
pub fn teob_batch(ds: &[u64], exec: Exec) -> Vec<Result<TeobReport>> {
    exec.map(ds.to_vec(), theorem_teob_report)
}

/// Checks `Inn_γ ∘ φ_d ∘ Inn_γ⁻¹ = φ_{g∗d}` with `γ = (0, g)` on the given
/// elements, for every basis derivation. Returns the number of failures.
pub fn action_compatibility_failures(
    gamma: &GammaEpsilon,
    lattice: &DerivationLattice,
    g: DihedralElement,
    elements: &[SemidirectElement<DihedralElement>],
) -> Result<usize> {
    let group = &gamma.group;
    let engine = group.engine();
    let table = RewritingTable::from_engine(engine, &engine.to_word(&g));
    let gamma_elt = group.group_element(g);
    let mut failures = 0;
    for d in lattice.basis() {
        let conj = conjugate_derivation(group.action(), &table, d)?;
        let lhs = AutomorphismSpec::single(AutomorphismAtom::Inner(group.invert(&gamma_elt)?))
            .then(AutomorphismAtom::FromDerivation(d.clone()))
            .then(AutomorphismAtom::Inner(gamma_elt.clone()));
        let rhs = AutomorphismSpec::single(AutomorphismAtom::FromDerivation(conj));
        for x in elements {
            if group.apply(&lhs, x)? != group.apply(&rhs, x)? {
                failures += 1;
            }
        }
    }
    Ok(failures)
}
