use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use crate::linalg::RationalMatrix;
use crate::{Error, Exec, Result};

/// Largest algebra dimension accepted by default.
pub const DEFAULT_MAX_DIM: usize = 14;

/// Increasing index tuples of length `p` from `0..n`, in lexicographic order.
pub fn wedge_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `idx` in place and returns the sign of the sorting permutation,
/// or `None` if an index repeats.
fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] != w[1]).then_some(sign)
}

/// The cochain complex `Λ^• 𝔤*` with the differential dual to the bracket,
/// `(dξ^k)(eᵢ ∧ eⱼ) = −c_{ij}^k`, extended as an antiderivation.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    algebra: LieAlgebra,
    bases: Vec<Vec<Vec<usize>>>,
    /// `differentials[p]` maps `Λ^p` to `Λ^{p+1}`, for `p = 0..=n`.
    differentials: Vec<RationalMatrix>,
}

pub fn build_koszul(algebra: &LieAlgebra) -> Result<KoszulComplex> {
    KoszulComplex::with_cap(algebra, DEFAULT_MAX_DIM)
}

impl KoszulComplex {
    pub fn with_cap(algebra: &LieAlgebra, cap: usize) -> Result<Self> {
        let n = algebra.dim();
        if n > cap {
            return Err(Error::DimensionCap { dim: n, cap });
        }
        let bases: Vec<_> = (0..=n).map(|p| wedge_basis(n, p)).collect();
        // dξ^k as a list of (a, b, coefficient) with a < b
        let d1: Vec<Vec<(usize, usize, BigRational)>> = (0..n)
            .map(|k| {
                let mut terms = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        let c = algebra.constant(a, b, k);
                        if !c.is_zero() {
                            terms.push((a, b, -c.clone()));
                        }
                    }
                }
                terms
            })
            .collect();
        let differentials = (0..=n)
            .map(|p| {
                let target = bases.get(p + 1).map(Vec::as_slice).unwrap_or(&[]);
                let index: HashMap<&[usize], usize> =
                    target.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
                let mut m = RationalMatrix::zeros(target.len(), bases[p].len());
                for (col, mono) in bases[p].iter().enumerate() {
                    for (r, &k) in mono.iter().enumerate() {
                        let outer = if r % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                        for (a, b, c) in &d1[k] {
                            let mut idx: Vec<usize> =
                                mono[..r].iter().copied().chain([*a, *b]).chain(mono[r + 1..].iter().copied()).collect();
                            if let Some(sign) = sort_sign(&mut idx) {
                                let row = index[idx.as_slice()];
                                let v = if sign == 1 { &outer * c } else { -(&outer * c) };
                                m[(row, col)] += v;
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let complex = KoszulComplex { algebra: algebra.clone(), bases, differentials };
        complex.check_d_squared()?;
        Ok(complex)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn top_degree(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self, p: usize) -> Result<&[Vec<usize>]> {
        self.bases.get(p).map(Vec::as_slice).ok_or(Error::Degree { degree: p, dim: self.top_degree() })
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p).map_or(0, Vec::len)
    }

    /// `d^p : Λ^p → Λ^{p+1}` on the wedge bases.
    pub fn differential(&self, p: usize) -> Result<&RationalMatrix> {
        self.differentials.get(p).ok_or(Error::Degree { degree: p, dim: self.top_degree() })
    }

    /// `d^{p+1} · d^p = 0` for every `p`.
    pub fn check_d_squared(&self) -> Result<()> {
        for p in 0..self.differentials.len().saturating_sub(1) {
            if !(&self.differentials[p + 1] * &self.differentials[p]).is_zero() {
                return Err(Error::Internal(format!("d^{} d^{} != 0", p + 1, p)));
            }
        }
        Ok(())
    }

    /// `rank d^p` for `p = 0..=n`.
    pub fn ranks(&self, exec: Exec) -> Vec<usize> {
        exec.map(self.differentials.iter().collect(), |d: &RationalMatrix| d.rank())
    }

    /// `b_p = dim Λ^p − rank d^p − rank d^{p−1}`.
    pub fn betti(&self, exec: Exec) -> Vec<usize> {
        betti_from_ranks(&(0..=self.top_degree()).map(|p| self.dim(p)).collect::<Vec<_>>(), &self.ranks(exec))
    }

    /// Betti numbers together with cocycle representatives of each `H^p`.
    pub fn cohomology(&self, exec: Exec) -> GradedCohomology {
        let degrees: Vec<usize> = (0..=self.top_degree()).collect();
        let parts = exec.map(degrees, |p| self.degree_cohomology(p));
        let (coboundaries, representatives) = parts.into_iter().unzip();
        GradedCohomology { coboundaries, representatives }
    }

    fn degree_cohomology(&self, p: usize) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
        let dim = self.dim(p);
        let mut echelon = Echelon::new(dim);
        let mut image = Vec::new();
        if p > 0 {
            let prev = &self.differentials[p - 1];
            for j in 0..prev.cols() {
                let col = prev.column(j);
                if echelon.insert(&col) {
                    image.push(col);
                }
            }
        }
        let reps = self.differentials[p].nullspace().into_iter().filter(|z| echelon.insert(z)).collect();
        (image, reps)
    }
}

pub(crate) fn betti_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len()).map(|p| dims[p] - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }).collect()
}

/// `Σ (−1)^p b_p`.
pub fn euler_characteristic(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

/// Betti numbers of `𝔤` with the default cap.
pub fn betti(algebra: &LieAlgebra) -> Result<Vec<usize>> {
    Ok(build_koszul(algebra)?.betti(Exec::default()))
}

/// Incrementally maintained row-reduced basis, used to extend a spanning
/// set greedily.
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
    dim: usize,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon { rows: Vec::new(), dim }
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            if !w[*pivot].is_zero() {
                let f = w[*pivot].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        let Some(pivot) = (0..self.dim).find(|&i| !w[i].is_zero()) else {
            return false;
        };
        let inv = w[pivot].recip();
        for x in &mut w {
            *x *= &inv;
        }
        for (_, row) in &mut self.rows {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((pivot, w));
        true
    }
}

/// Per degree: a basis of `B^p = im d^{p−1}` (a subset of the columns of
/// `d^{p−1}`) and cocycles completing it to a basis of `Z^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCohomology {
    pub coboundaries: Vec<Vec<Vec<BigRational>>>,
    pub representatives: Vec<Vec<Vec<BigRational>>>,
}

impl GradedCohomology {
    pub fn betti(&self) -> Vec<usize> {
        self.representatives.iter().map(Vec::len).collect()
    }

    /// Coordinates of cocycles in the representative basis of `H^p`,
    /// one column per cocycle. Fails if some input is not a cocycle.
    pub fn project(&self, p: usize, cocycles: &[Vec<BigRational>]) -> Result<RationalMatrix> {
        let reps = self.representatives.get(p).ok_or(Error::Degree { degree: p, dim: self.representatives.len() })?;
        let b = &self.coboundaries[p];
        let Some(dim) = b.first().or(reps.first()).map(Vec::len) else {
            return Ok(RationalMatrix::zeros(0, cocycles.len()));
        };
        let cols: Vec<_> = b.iter().chain(reps).cloned().collect();
        let q = RationalMatrix::from_columns(dim, &cols);
        let rhs = RationalMatrix::from_columns(dim, cocycles);
        let x = q.solve(&rhs)?.ok_or_else(|| Error::Internal(format!("not a cocycle in degree {p}")))?;
        let rows: Vec<usize> = (b.len()..cols.len()).collect();
        let all: Vec<usize> = (0..cocycles.len()).collect();
        Ok(x.submatrix(&rows, &all))
    }
}
