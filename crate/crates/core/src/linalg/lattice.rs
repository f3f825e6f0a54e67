//! Hermite and Smith normal forms over ℤ and saturated kernel lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix};
use crate::{Error, Result};

/// `U·M·V = D` with `D` diagonal and `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d₁, d₂, …` (length `min(rows, cols)`).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U·M = H`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, zero rows are at the bottom.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below the pivot row
            let best = (pr..rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pr, best);
            u.swap_rows(pr, best);
            let mut done = true;
            for i in pr + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pr, col)]);
                h.add_row_multiple(i, pr, &-&q);
                u.add_row_multiple(i, pr, &-&q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let q = h[(i, col)].div_floor(&h[(pr, col)]);
            if !q.is_zero() {
                h.add_row_multiple(i, pr, &-&q);
                u.add_row_multiple(i, pr, &-&q);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Smith normal form with transforms.
pub fn snf(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = &d[(i, j)];
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(d, u, v)
}

fn finish_snf(mut d: IntegerMatrix, mut u: IntegerMatrix, v: IntegerMatrix) -> SmithDecomposition {
    for i in 0..d.rows().min(d.cols()) {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    SmithDecomposition { d, u, v }
}

/// ℤ-basis of `{x ∈ ℤ^cols : M·x = 0}`, returned in row Hermite normal form.
/// Because the basis comes from rows of a unimodular transform the lattice
/// is saturated.
pub fn kernel_lattice(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf(&m.transpose());
    let basis: Vec<Vec<BigInt>> =
        (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).map(|i| u.row(i).to_vec()).collect();
    lattice_basis(&basis, m.cols())
}

/// Canonical (row HNF) basis of the lattice spanned by `generators` in ℤ^dim.
pub fn lattice_basis(generators: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let g = IntegerMatrix::from_rows(generators.to_vec()).expect("uniform generator lengths");
    debug_assert_eq!(g.cols(), dim);
    let (h, _) = hnf(&g);
    (0..h.rows()).map(|i| h.row(i).to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Integer coordinates of `v` in the given lattice basis (rows assumed
/// linearly independent), or `None` if `v` is not in the lattice.
pub fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let b = IntegerMatrix::from_rows(basis.to_vec()).ok()?.to_rational().transpose();
    let rhs = RationalMatrix::from_columns(v.len(), &[v.iter().cloned().map(BigRational::from_integer).collect()]);
    let x = b.solve(&rhs).ok()??;
    let coords: Vec<BigRational> = x.column(0);
    if coords.iter().all(BigRational::is_integer) {
        Some(coords.iter().map(BigRational::to_integer).collect())
    } else {
        None
    }
}

/// Index of the sublattice spanned by `sub` inside the full-rank lattice
/// spanned by `basis`: the invariant factors of the coordinate matrix.
pub fn sublattice_invariants(basis: &[Vec<BigInt>], sub: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
    let rows = sub
        .iter()
        .map(|v| lattice_coordinates(basis, v).ok_or(Error::NotInLattice))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let c = IntegerMatrix::from_rows(rows)?;
    Ok(snf(&c).invariant_factors())
}
