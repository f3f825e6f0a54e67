use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{nilpotent_exp, RationalMatrix};
use crate::{Error, Result};

/// A finite-dimensional Lie algebra over ℚ on the basis `e₀, …, e_{n−1}`,
/// given by structure constants `[eᵢ, eⱼ] = Σ_k c_{ij}^k e_k`.
///
/// Indices are 0-based here; the JSON format uses 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// Dense antisymmetric table, `c[(i·n + j)·n + k]`.
    c: Vec<BigRational>,
}

impl LieAlgebra {
    /// Builds the algebra from entries `(i, j, k, c)` with `i < j`; unlisted
    /// constants are zero. Rejects repeated `(i, j, k)` and checks Jacobi.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, BigRational)>) -> Result<Self> {
        let mut c = vec![BigRational::zero(); dim * dim * dim];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, k, v) in entries {
            if i >= j || j >= dim || k >= dim || !seen.insert((i, j, k)) {
                return Err(Error::BadStructureConstant { i, j, k });
            }
            c[(j * dim + i) * dim + k] = -v.clone();
            c[(i * dim + j) * dim + k] = v;
        }
        let algebra = LieAlgebra { dim, c };
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![BigRational::zero(); dim * dim * dim] }
    }

    /// `𝔥_{2m+1}`: `[e_i, e_{m+i}] = e_{2m+1}` (1-based).
    pub fn heisenberg(m: usize) -> Self {
        let n = 2 * m + 1;
        Self::new(n, (0..m).map(|i| (i, m + i, n - 1, BigRational::one()))).expect("Heisenberg algebra")
    }

    /// Standard filiform `𝔫_n`: `[e₁, e_i] = e_{i+1}` for `2 ≤ i < n` (1-based).
    pub fn filiform(n: usize) -> Self {
        Self::new(n, (1..n.saturating_sub(1)).map(|i| (0, i, i + 1, BigRational::one()))).expect("filiform algebra")
    }

    /// Direct sum with an abelian algebra of dimension `k`.
    pub fn extend_abelian(&self, k: usize) -> Self {
        Self::new(self.dim + k, self.structure_constants()).expect("direct sum")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = self.constant(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim;
        let mut out = vec![BigRational::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| j != i && !y[j].is_zero()) {
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        v[i] = BigRational::one();
        v
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vec<BigRational> {
        (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&self.bracket_basis(i, j), &ek);
                    let b = self.bracket(&self.bracket_basis(j, k), &ei);
                    let c = self.bracket(&self.bracket(&ek, &ei), &ej);
                    if (0..n).any(|t| !(&a[t] + &b[t] + &c[t]).is_zero()) {
                        return Err(Error::Jacobi { triple: (i, j, k) });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ad x`, with column `j` equal to `[x, e_j]`.
    pub fn ad(&self, x: &[BigRational]) -> RationalMatrix {
        let cols: Vec<_> = (0..self.dim).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        RationalMatrix::from_columns(self.dim, &cols)
    }

    /// `exp(ad x)`; requires `ad x` nilpotent.
    pub fn inner_automorphism(&self, x: &[BigRational]) -> Result<RationalMatrix> {
        nilpotent_exp(&self.ad(x))
    }

    /// Whether `Φ` (columns are images of basis vectors) is invertible and
    /// satisfies `Φ[eᵢ, eⱼ] = [Φeᵢ, Φeⱼ]`.
    pub fn is_automorphism(&self, phi: &RationalMatrix) -> bool {
        let n = self.dim;
        if phi.rows() != n || phi.cols() != n || phi.rank() != n {
            return false;
        }
        let images: Vec<_> = (0..n).map(|j| phi.column(j)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| phi.mul_vec(&self.bracket_basis(i, j)) == self.bracket(&images[i], &images[j]))
        })
    }

    /// `𝔤⁰ = 𝔤, 𝔤^{i+1} = [𝔤, 𝔤ⁱ]`, each term as a row-reduced basis.
    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let n = self.dim;
        let mut terms = vec![(0..n).map(|i| self.basis_vector(i)).collect::<Vec<_>>()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_empty() {
                return LowerCentralSeries { class: Some(terms.len() - 1), terms };
            }
            let brackets: Vec<Vec<BigRational>> =
                (0..n).flat_map(|i| last.iter().map(move |v| self.bracket(&self.basis_vector(i), v))).collect();
            let next = row_basis(&brackets);
            if next.len() == last.len() {
                return LowerCentralSeries { class: None, terms };
            }
            terms.push(next);
        }
    }

    pub fn derived_algebra(&self) -> Vec<Vec<BigRational>> {
        let series = self.lower_central_series();
        series.terms.get(1).cloned().unwrap_or_default()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().class.is_some()
    }
}

/// Nonzero rows of the reduced row echelon form of the given vectors.
pub(crate) fn row_basis(vectors: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec()).expect("rows of equal length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerCentralSeries {
    /// Bases of `𝔤⁰, 𝔤¹, …`, ending with `{0}` or with the first repeated term.
    pub terms: Vec<Vec<Vec<BigRational>>>,
    /// Least `k` with `𝔤^k = 0`; `None` if the series stabilizes above zero.
    pub class: Option<usize>,
}

impl LowerCentralSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }
}
