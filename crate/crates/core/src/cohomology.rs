//! Derivations `D → F` (1-cocycles), principal derivations, `H¹(D, F)` and
//! the conjugation action `(g∗d)(h) = g·d(g⁻¹hg)` on derivations.
//!
//! A derivation is stored by its values on the generators of `D`. The
//! extension to arbitrary words follows the left-module rule
//! `d(h₁h₂) = d(h₁) + h₁·d(h₂)`, so for `w = x₁⋯x_m`
//!
//! ```text
//! d(w) = Σᵢ (x₁⋯x_{i−1})·δ(xᵢ),   δ(g) = d(g),   δ(g⁻¹) = −g⁻¹·d(g).
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exec::Exec;
use crate::linalg::{kernel_lattice, lattice_basis, lattice_coordinates, snf, IntegerMatrix};
use crate::presentation::{validate_action, ActionCheck, ModuleAction, NormalFormEngine, Presentation, Word};
use crate::{Error, Result};

/// A 1-cocycle given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    values: Vec<Vec<BigInt>>,
}

impl Derivation {
    pub fn new(values: Vec<Vec<BigInt>>) -> Self {
        Derivation { values }
    }

    pub fn zero(generators: usize, rank: usize) -> Self {
        Derivation { values: vec![vec![BigInt::zero(); rank]; generators] }
    }

    pub fn from_flat(flat: &[BigInt], rank: usize) -> Self {
        let values = if rank == 0 { Vec::new() } else { flat.chunks(rank).map(<[BigInt]>::to_vec).collect() };
        Derivation { values }
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &[BigInt] {
        &self.values[generator]
    }

    pub fn to_flat(&self) -> Vec<BigInt> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            values: self.values.iter().zip(&other.values).map(|(a, b)| add_vec(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Derivation {
        Derivation { values: self.values.iter().map(|v| v.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn neg(&self) -> Derivation {
        self.scale(&-BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    /// Value on an arbitrary word by Fox expansion.
    pub fn evaluate(&self, action: &ModuleAction, w: &Word) -> Vec<BigInt> {
        let n = action.rank();
        let mut acc = vec![BigInt::zero(); n];
        let mut prefix = IntegerMatrix::identity(n);
        for &l in w.letters() {
            let base = &self.values[l.generator];
            let delta = if l.inverse {
                action.letter_matrix(l).mul_vec(base).into_iter().map(|x| -x).collect()
            } else {
                base.clone()
            };
            acc = add_vec(&acc, &prefix.mul_vec(&delta));
            prefix = &prefix * action.letter_matrix(l);
        }
        acc
    }

    /// Verifies the cocycle condition on every relator.
    pub fn check(&self, presentation: &Presentation, action: &ModuleAction) -> Result<()> {
        if self.values.len() != presentation.generator_count()
            || self.values.iter().any(|v| v.len() != action.rank())
        {
            return Err(Error::Dimension("derivation shape does not match the group".into()));
        }
        for (index, r) in presentation.relators().iter().enumerate() {
            if self.evaluate(action, r).iter().any(|x| !x.is_zero()) {
                return Err(Error::NotADerivation { index, relator: presentation.word_string(r) });
            }
        }
        Ok(())
    }
}

pub(crate) fn add_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A ℤ-basis of a lattice of derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationLattice {
    module_rank: usize,
    generators: usize,
    basis: Vec<Derivation>,
}

impl DerivationLattice {
    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    fn flat_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(Derivation::to_flat).collect()
    }

    /// Integer coordinates of `d`, or `None` if `d` is outside the lattice.
    pub fn coordinates(&self, d: &Derivation) -> Option<Vec<BigInt>> {
        lattice_coordinates(&self.flat_basis(), &d.to_flat())
    }

    pub fn contains(&self, d: &Derivation) -> bool {
        self.coordinates(d).is_some()
    }

    /// Replaces the basis by another ℤ-basis of the same lattice. Fails if
    /// the new vectors are not in the lattice or span a proper sublattice.
    pub fn with_basis(&self, basis: Vec<Derivation>) -> Result<DerivationLattice> {
        if basis.len() != self.basis.len() {
            return Err(Error::Dimension(format!("{} vectors for a rank {} lattice", basis.len(), self.rank())));
        }
        let rows = basis.iter().map(|d| self.coordinates(d).ok_or(Error::NotInLattice)).collect::<Result<Vec<_>>>()?;
        if !rows.is_empty() && !IntegerMatrix::from_rows(rows)?.is_unimodular() {
            return Err(Error::NotInLattice);
        }
        Ok(DerivationLattice { module_rank: self.module_rank, generators: self.generators, basis })
    }

    /// Matrix whose rows are the coordinates of `vectors` in this basis.
    pub fn coordinate_matrix(&self, vectors: &[Derivation]) -> Result<IntegerMatrix> {
        let rows = vectors.iter().map(|d| self.coordinates(d).ok_or(Error::NotInLattice)).collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(IntegerMatrix::zeros(0, self.rank()));
        }
        IntegerMatrix::from_rows(rows)
    }
}

/// The stacked Fox-derivative system: one `n`-row block per relator, one
/// `n`-column block per generator. Its integer kernel is `Der(D, F)`.
pub fn fox_matrix(presentation: &Presentation, action: &ModuleAction) -> IntegerMatrix {
    let n = action.rank();
    let gens = presentation.generator_count();
    let relators = presentation.relators();
    let mut out = IntegerMatrix::zeros(relators.len() * n, gens * n);
    for (r, w) in relators.iter().enumerate() {
        let mut prefix = IntegerMatrix::identity(n);
        for &l in w.letters() {
            let block = if l.inverse { -&(&prefix * action.letter_matrix(l)) } else { prefix.clone() };
            for i in 0..n {
                for j in 0..n {
                    let e = &mut out[(r * n + i, l.generator * n + j)];
                    *e = e.clone() + &block[(i, j)];
                }
            }
            prefix = &prefix * action.letter_matrix(l);
        }
    }
    out
}

fn require_valid(presentation: &Presentation, action: &ModuleAction) -> Result<()> {
    match validate_action(presentation, action)? {
        ActionCheck::Ok => Ok(()),
        ActionCheck::ViolatedRelator { index, relator } => {
            Err(Error::ViolatedRelator { index, relator: presentation.word_string(&relator) })
        }
    }
}

/// Saturated ℤ-basis of `Der(D, F)`.
pub fn derivation_space(presentation: &Presentation, action: &ModuleAction) -> Result<DerivationLattice> {
    require_valid(presentation, action)?;
    let n = action.rank();
    let gens = presentation.generator_count();
    let basis: Vec<Derivation> = if presentation.relators().is_empty() {
        // free group: every assignment extends
        (0..gens * n)
            .map(|k| {
                let mut flat = vec![BigInt::zero(); gens * n];
                flat[k] = BigInt::one();
                Derivation::from_flat(&flat, n)
            })
            .collect()
    } else {
        kernel_lattice(&fox_matrix(presentation, action)).iter().map(|v| Derivation::from_flat(v, n)).collect()
    };
    for d in &basis {
        d.check(presentation, action).map_err(|e| Error::Internal(format!("kernel vector is not a cocycle: {e}")))?;
    }
    Ok(DerivationLattice { module_rank: n, generators: gens, basis })
}

/// The principal derivation `d_f(g) = g·f − f`.
pub fn principal_derivation(action: &ModuleAction, f: &[BigInt]) -> Derivation {
    Derivation::new(
        action.matrices().iter().map(|m| m.mul_vec(f).iter().zip(f).map(|(a, b)| a - b).collect()).collect(),
    )
}

/// ℤ-basis (row HNF) of the lattice of principal derivations, spanned by
/// `d_f` for `f` running over the standard basis of `ℤⁿ`.
pub fn principal_derivations(action: &ModuleAction) -> Vec<Derivation> {
    let n = action.rank();
    let gens: Vec<Vec<BigInt>> = (0..n)
        .map(|k| {
            let mut f = vec![BigInt::zero(); n];
            f[k] = BigInt::one();
            principal_derivation(action, &f).to_flat()
        })
        .collect();
    let dim = action.matrices().len() * n;
    lattice_basis(&gens, dim).iter().map(|v| Derivation::from_flat(v, n)).collect()
}

/// `H¹ ≅ ℤ^free_rank ⊕ ⨁ ℤ/tᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// Full `H¹` computation: `Z¹` basis, `B¹` generators expressed in it, and
/// the Smith form of that coordinate matrix.
#[derive(Debug, Clone)]
pub struct H1Computation {
    pub cocycles: DerivationLattice,
    pub coboundaries: Vec<Derivation>,
    pub group: CohomologyGroup,
}

pub fn h1_full(presentation: &Presentation, action: &ModuleAction) -> Result<H1Computation> {
    let cocycles = derivation_space(presentation, action)?;
    let coboundaries = principal_derivations(action);
    let c = cocycles
        .coordinate_matrix(&coboundaries)
        .map_err(|_| Error::Internal("principal derivation outside the derivation lattice".into()))?;
    let factors = if c.rows() == 0 { Vec::new() } else { snf(&c).invariant_factors() };
    let nonzero: Vec<BigInt> = factors.into_iter().filter(|x| !x.is_zero()).collect();
    let group = CohomologyGroup {
        free_rank: cocycles.rank() - nonzero.len(),
        torsion: nonzero.into_iter().filter(|x| !x.is_one()).collect(),
    };
    Ok(H1Computation { cocycles, coboundaries, group })
}

pub fn h1(presentation: &Presentation, action: &ModuleAction) -> Result<CohomologyGroup> {
    Ok(h1_full(presentation, action)?.group)
}

/// For a fixed `g ∈ D`, words for `g⁻¹·gᵢ·g` for every generator `gᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingTable {
    pub element: Word,
    pub conjugates: Vec<Word>,
}

impl RewritingTable {
    pub fn from_engine<E: NormalFormEngine>(engine: &E, g: &Word) -> Self {
        let ge = engine.normal_form(g);
        let conjugates =
            (0..engine.generator_count()).map(|i| engine.to_word(&engine.conjugate(&engine.generator(i), &ge))).collect();
        RewritingTable { element: g.clone(), conjugates }
    }

    /// Table that uses the literal word `g⁻¹·gᵢ·g`; valid for any group.
    pub fn literal(g: &Word, generators: usize) -> Self {
        let conjugates = (0..generators)
            .map(|i| g.inverse().concat(&Word(vec![crate::presentation::Letter::new(i)])).concat(g))
            .collect();
        RewritingTable { element: g.clone(), conjugates }
    }

    /// Checks each entry against the engine.
    pub fn validate<E: NormalFormEngine>(&self, engine: &E) -> bool {
        let ge = engine.normal_form(&self.element);
        self.conjugates.len() == engine.generator_count()
            && self
                .conjugates
                .iter()
                .enumerate()
                .all(|(i, w)| engine.normal_form(w) == engine.conjugate(&engine.generator(i), &ge))
    }
}

/// `g∗d` with `(g∗d)(gᵢ) = g·d(g⁻¹gᵢg)`.
pub fn conjugate_derivation(action: &ModuleAction, table: &RewritingTable, d: &Derivation) -> Result<Derivation> {
    let mg = crate::presentation::evaluate_word(action, &table.element)?;
    Ok(Derivation::new(table.conjugates.iter().map(|w| mg.mul_vec(&d.evaluate(action, w))).collect()))
}

/// Matrix of `d ↦ g∗d` on the lattice basis; row `i` holds the coordinates
/// of `g∗dᵢ`. With rows as images, `M(g₁g₂) = M(g₂)·M(g₁)`.
pub fn conjugation_action(
    action: &ModuleAction,
    table: &RewritingTable,
    lattice: &DerivationLattice,
) -> Result<IntegerMatrix> {
    if table.conjugates.len() != action.matrices().len() {
        return Err(Error::Dimension("rewriting table does not match the generators".into()));
    }
    let images =
        lattice.basis().iter().map(|d| conjugate_derivation(action, table, d)).collect::<Result<Vec<_>>>()?;
    let m = lattice
        .coordinate_matrix(&images)
        .map_err(|_| Error::Internal("conjugated derivation left the lattice".into()))?;
    if m.rows() > 0 && !m.is_unimodular() {
        return Err(Error::Internal("conjugation action is not unimodular".into()));
    }
    Ok(m)
}

/// ℤ-basis of the integral commutant `{X ∈ M_n(ℤ) : X·Mᵍ = Mᵍ·X ∀g}` in row
/// HNF on the row-major entries of `X`.
pub fn commutant_lattice(action: &ModuleAction) -> Vec<Vec<BigInt>> {
    let n = action.rank();
    let mut rows = Vec::new();
    for m in action.matrices() {
        for i in 0..n {
            for j in 0..n {
                // (X M − M X)_{ij}
                let mut row = vec![BigInt::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += &m[(k, j)];
                    row[k * n + j] -= &m[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return lattice_basis(
            &(0..n * n)
                .map(|k| {
                    let mut v = vec![BigInt::zero(); n * n];
                    v[k] = BigInt::one();
                    v
                })
                .collect::<Vec<_>>(),
            n * n,
        );
    }
    kernel_lattice(&IntegerMatrix::from_rows(rows).expect("uniform rows"))
}

/// All `X ∈ GL(n, ℤ)` commuting with every generator matrix and with all
/// entries bounded by `bound` in absolute value, sorted lexicographically.
///
/// The commutant basis is in echelon form, so the pivot entry of `X` pins
/// the range of each coefficient given the earlier ones; entries left of
/// the next pivot are final and pruned immediately.
pub fn equivariant_units(action: &ModuleAction, bound: u64, exec: Exec) -> Vec<IntegerMatrix> {
    let n = action.rank();
    let basis = commutant_lattice(action);
    let bound = BigInt::from(bound);
    if basis.is_empty() {
        return Vec::new();
    }
    let pivots: Vec<usize> =
        basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero basis row")).collect();
    let search = Search { basis: &basis, pivots: &pivots, bound: &bound, n };
    let start = vec![BigInt::zero(); n * n];
    let firsts = search.range(0, &start);
    let mut found: Vec<IntegerMatrix> = exec.flat_map(firsts, |c| {
        let mut out = Vec::new();
        let s = search.extend(0, &start, &c);
        if let Some(s) = s {
            search.descend(1, s, &mut out);
        }
        out
    });
    found.sort_by(|a, b| a.entries().cmp(b.entries()));
    found
}

struct Search<'a> {
    basis: &'a [Vec<BigInt>],
    pivots: &'a [usize],
    bound: &'a BigInt,
    n: usize,
}

impl Search<'_> {
    /// Admissible coefficients at `level` given partial sum `s`.
    fn range(&self, level: usize, s: &[BigInt]) -> Vec<BigInt> {
        let p = self.pivots[level];
        let h = &self.basis[level][p];
        let lo = (-self.bound - &s[p]).div_ceil(h);
        let hi = (self.bound - &s[p]).div_floor(h);
        let mut out = Vec::new();
        let mut c = lo;
        while c <= hi {
            out.push(c.clone());
            c += 1;
        }
        out
    }

    /// Adds `c·basis[level]` and checks entries that are now final.
    fn extend(&self, level: usize, s: &[BigInt], c: &BigInt) -> Option<Vec<BigInt>> {
        let next: Vec<BigInt> = s.iter().zip(&self.basis[level]).map(|(a, b)| a + c * b).collect();
        let end = self.pivots.get(level + 1).copied().unwrap_or(next.len());
        (self.pivots[level]..end).all(|j| next[j].abs() <= *self.bound).then_some(next)
    }

    fn descend(&self, level: usize, s: Vec<BigInt>, out: &mut Vec<IntegerMatrix>) {
        if level == self.basis.len() {
            if s.iter().all(|x| x.abs() <= *self.bound) {
                let x = IntegerMatrix::new(self.n, self.n, s).expect("n*n entries");
                if x.is_unimodular() {
                    out.push(x);
                }
            }
            return;
        }
        for c in self.range(level, &s) {
            if let Some(next) = self.extend(level, &s, &c) {
                self.descend(level + 1, next, out);
            }
        }
    }
}
