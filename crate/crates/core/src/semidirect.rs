//! Arithmetic in `Γ = F ⋊ D` and the automorphisms built from derivations,
//! equivariant module automorphisms and inner automorphisms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cohomology::{add_vec, Derivation};
use crate::linalg::IntegerMatrix;
use crate::presentation::{
    evaluate_word, validate_action, ActionCheck, DihedralEngine, ModuleAction, NormalFormEngine, Presentation,
};
use crate::quadratic::{fundamental_pell, QuadElem};
use crate::{Error, Result};

/// `(f, g)` with `f ∈ ℤⁿ` and `g` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElement<G> {
    pub f: Vec<BigInt>,
    pub g: G,
}

/// `F ⋊ D` with `(f₁, g₁)(f₂, g₂) = (f₁ + g₁·f₂, g₁g₂)`.
#[derive(Debug, Clone)]
pub struct SemidirectGroup<E: NormalFormEngine> {
    presentation: Presentation,
    action: ModuleAction,
    engine: E,
}

pub enum AutomorphismAtom<G> {
    /// `φ_d(m, g) = (m + d(g), g)`
    FromDerivation(Derivation),
    /// `φ_ρ(m, g) = (ρ(m), g)`
    FromEquivariant(IntegerMatrix),
    /// `x ↦ γ·x·γ⁻¹`
    Inner(SemidirectElement<G>),
}

impl<G: Clone> Clone for AutomorphismAtom<G> {
    fn clone(&self) -> Self {
        match self {
            AutomorphismAtom::FromDerivation(d) => AutomorphismAtom::FromDerivation(d.clone()),
            AutomorphismAtom::FromEquivariant(m) => AutomorphismAtom::FromEquivariant(m.clone()),
            AutomorphismAtom::Inner(x) => AutomorphismAtom::Inner(x.clone()),
        }
    }
}

impl<G: std::fmt::Debug> std::fmt::Debug for AutomorphismAtom<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AutomorphismAtom::FromDerivation(d) => write!(f, "FromDerivation({:?})", d.values()),
            AutomorphismAtom::FromEquivariant(m) => write!(f, "FromEquivariant({m})"),
            AutomorphismAtom::Inner(x) => write!(f, "Inner({x:?})"),
        }
    }
}

/// Composite of atoms; the first atom is applied first.
#[derive(Debug, Clone)]
pub struct AutomorphismSpec<G> {
    pub atoms: Vec<AutomorphismAtom<G>>,
}

impl<G> AutomorphismSpec<G> {
    pub fn identity() -> Self {
        AutomorphismSpec { atoms: Vec::new() }
    }

    pub fn single(atom: AutomorphismAtom<G>) -> Self {
        AutomorphismSpec { atoms: vec![atom] }
    }

    pub fn then(mut self, atom: AutomorphismAtom<G>) -> Self {
        self.atoms.push(atom);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutomorphismCheck {
    Ok,
    Counterexample(String),
}

impl<E: NormalFormEngine> SemidirectGroup<E> {
    pub fn new(presentation: Presentation, action: ModuleAction, engine: E) -> Result<Self> {
        if engine.generator_count() != presentation.generator_count() {
            return Err(Error::Dimension("engine and presentation disagree on the generator count".into()));
        }
        if let ActionCheck::ViolatedRelator { index, relator } = validate_action(&presentation, &action)? {
            return Err(Error::ViolatedRelator { index, relator: presentation.word_string(&relator) });
        }
        for (i, r) in presentation.relators().iter().enumerate() {
            if engine.normal_form(r) != engine.identity() {
                return Err(Error::Internal(format!("normal-form engine does not kill relator #{i}")));
            }
        }
        Ok(SemidirectGroup { presentation, action, engine })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn action(&self) -> &ModuleAction {
        &self.action
    }

    pub fn engine(&self) -> &E {
        &self.engine
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    pub fn identity(&self) -> SemidirectElement<E::Element> {
        SemidirectElement { f: vec![BigInt::zero(); self.rank()], g: self.engine.identity() }
    }

    pub fn module_element(&self, f: Vec<BigInt>) -> SemidirectElement<E::Element> {
        SemidirectElement { f, g: self.engine.identity() }
    }

    pub fn group_element(&self, g: E::Element) -> SemidirectElement<E::Element> {
        SemidirectElement { f: vec![BigInt::zero(); self.rank()], g }
    }

    /// Module basis vectors followed by the generators of `D`.
    pub fn generators(&self) -> Vec<SemidirectElement<E::Element>> {
        let n = self.rank();
        let mut out: Vec<_> = (0..n)
            .map(|i| {
                let mut f = vec![BigInt::zero(); n];
                f[i] = 1.into();
                self.module_element(f)
            })
            .collect();
        out.extend((0..self.engine.generator_count()).map(|j| self.group_element(self.engine.generator(j))));
        out
    }

    pub fn action_matrix(&self, g: &E::Element) -> IntegerMatrix {
        evaluate_word(&self.action, &self.engine.to_word(g)).expect("engine words use valid generators")
    }

    pub fn act(&self, g: &E::Element, f: &[BigInt]) -> Vec<BigInt> {
        self.action_matrix(g).mul_vec(f)
    }

    fn check_parent(&self, x: &SemidirectElement<E::Element>) -> Result<()> {
        if x.f.len() == self.rank() { Ok(()) } else { Err(Error::ParentMismatch) }
    }

    pub fn multiply(
        &self,
        a: &SemidirectElement<E::Element>,
        b: &SemidirectElement<E::Element>,
    ) -> Result<SemidirectElement<E::Element>> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        Ok(SemidirectElement { f: add_vec(&a.f, &self.act(&a.g, &b.f)), g: self.engine.multiply(&a.g, &b.g) })
    }

    pub fn invert(&self, a: &SemidirectElement<E::Element>) -> Result<SemidirectElement<E::Element>> {
        self.check_parent(a)?;
        let gi = self.engine.inverse(&a.g);
        let f = self.act(&gi, &a.f).into_iter().map(|x| -x).collect();
        Ok(SemidirectElement { f, g: gi })
    }

    /// `d(g)` for `g ∈ D`.
    pub fn derivation_value(&self, d: &Derivation, g: &E::Element) -> Vec<BigInt> {
        d.evaluate(&self.action, &self.engine.to_word(g))
    }

    fn is_equivariant(&self, rho: &IntegerMatrix) -> bool {
        rho.rows() == self.rank()
            && rho.is_square()
            && rho.is_unimodular()
            && self.action.matrices().iter().all(|m| rho.commutes_with(m))
    }

    fn check_atom(&self, atom: &AutomorphismAtom<E::Element>) -> Result<()> {
        match atom {
            AutomorphismAtom::FromDerivation(d) => d.check(&self.presentation, &self.action),
            AutomorphismAtom::FromEquivariant(rho) => {
                if self.is_equivariant(rho) { Ok(()) } else { Err(Error::NotEquivariant) }
            }
            AutomorphismAtom::Inner(x) => self.check_parent(x),
        }
    }

    fn apply_atom(
        &self,
        atom: &AutomorphismAtom<E::Element>,
        x: &SemidirectElement<E::Element>,
    ) -> Result<SemidirectElement<E::Element>> {
        Ok(match atom {
            AutomorphismAtom::FromDerivation(d) => {
                SemidirectElement { f: add_vec(&x.f, &self.derivation_value(d, &x.g)), g: x.g.clone() }
            }
            AutomorphismAtom::FromEquivariant(rho) => SemidirectElement { f: rho.mul_vec(&x.f), g: x.g.clone() },
            AutomorphismAtom::Inner(gamma) => {
                let left = self.multiply(gamma, x)?;
                self.multiply(&left, &self.invert(gamma)?)?
            }
        })
    }

    /// Applies the atoms in order.
    pub fn apply(
        &self,
        spec: &AutomorphismSpec<E::Element>,
        x: &SemidirectElement<E::Element>,
    ) -> Result<SemidirectElement<E::Element>> {
        self.check_parent(x)?;
        for atom in &spec.atoms {
            self.check_atom(atom)?;
        }
        spec.atoms.iter().try_fold(x.clone(), |acc, atom| self.apply_atom(atom, &acc))
    }

    /// Spec of the inverse map: atoms reversed, each inverted.
    pub fn inverse_spec(&self, spec: &AutomorphismSpec<E::Element>) -> Result<AutomorphismSpec<E::Element>> {
        let atoms = spec
            .atoms
            .iter()
            .rev()
            .map(|atom| {
                Ok(match atom {
                    AutomorphismAtom::FromDerivation(d) => AutomorphismAtom::FromDerivation(d.neg()),
                    AutomorphismAtom::FromEquivariant(rho) => {
                        AutomorphismAtom::FromEquivariant(rho.inverse_unimodular()?)
                    }
                    AutomorphismAtom::Inner(g) => AutomorphismAtom::Inner(self.invert(g)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AutomorphismSpec { atoms })
    }

    /// Checks atom validity, the homomorphism property on all pairs from the
    /// generators of `Γ` and their inverses, and that the inverse spec undoes
    /// the map on those elements.
    pub fn verify_automorphism(&self, spec: &AutomorphismSpec<E::Element>) -> AutomorphismCheck {
        for (i, atom) in spec.atoms.iter().enumerate() {
            if let Err(e) = self.check_atom(atom) {
                return AutomorphismCheck::Counterexample(format!("atom #{i} is invalid: {e}"));
            }
        }
        let result = (|| -> Result<AutomorphismCheck> {
            let mut elems = self.generators();
            let invs = elems.iter().map(|x| self.invert(x)).collect::<Result<Vec<_>>>()?;
            elems.extend(invs);
            let images = elems.iter().map(|x| self.apply(spec, x)).collect::<Result<Vec<_>>>()?;
            for (i, x) in elems.iter().enumerate() {
                for (j, y) in elems.iter().enumerate() {
                    let lhs = self.apply(spec, &self.multiply(x, y)?)?;
                    let rhs = self.multiply(&images[i], &images[j])?;
                    if lhs != rhs {
                        return Ok(AutomorphismCheck::Counterexample(format!(
                            "phi(x*y) != phi(x)*phi(y) for x = {x:?}, y = {y:?}"
                        )));
                    }
                }
            }
            let inv = self.inverse_spec(spec)?;
            for (x, img) in elems.iter().zip(&images) {
                if &self.apply(&inv, img)? != x || &self.apply(spec, &self.apply(&inv, x)?)? != x {
                    return Ok(AutomorphismCheck::Counterexample(format!("inverse spec fails on {x:?}")));
                }
            }
            Ok(AutomorphismCheck::Ok)
        })();
        result.unwrap_or_else(|e| AutomorphismCheck::Counterexample(e.to_string()))
    }
}

/// `Γ(ε) = (𝒪 × ℤ) ⋊ D_∞` with its unit and the derivation table.
#[derive(Debug, Clone)]
pub struct GammaEpsilon {
    pub group: SemidirectGroup<DihedralEngine>,
    pub epsilon: QuadElem,
}

/// Builds `Γ(ε)` for the fundamental Pell unit `ε = a + b√d`.
///
/// `F = 𝒪 × ℤ` has the basis `(1, ω, e)`; `A` acts by multiplication with
/// `ε` on `𝒪` and trivially on `ℤ`, `τ` by Galois conjugation on `𝒪` and
/// by `−1` on `ℤ`.
pub fn build_gamma_epsilon(d: impl Into<BigInt>) -> Result<GammaEpsilon> {
    let epsilon = fundamental_pell(d)?;
    let one = IntegerMatrix::identity(1);
    let a = IntegerMatrix::block_diag(&[&epsilon.mult_matrix(), &one]);
    let tau = IntegerMatrix::block_diag(&[&epsilon.order().conjugation_matrix(), &-&one]);
    let presentation = Presentation::infinite_dihedral();
    let action = ModuleAction::new(&presentation, 3, vec![a, tau])?;
    let group = SemidirectGroup::new(presentation, action, DihedralEngine)?;
    Ok(GammaEpsilon { group, epsilon })
}

impl GammaEpsilon {
    pub fn a(&self) -> &BigInt {
        &self.epsilon.x
    }

    pub fn b(&self) -> &BigInt {
        &self.epsilon.y
    }

    pub fn d(&self) -> &BigInt {
        self.epsilon.order().d()
    }

    /// `l = gcd(a + 1, b·d)`
    pub fn l(&self) -> BigInt {
        (self.a() + BigInt::one()).gcd(&(self.b() * self.d()))
    }

    /// The derivations `d₁, …, d₄` by their values on `(A, τ)`:
    ///
    /// | | `A` | `τ` |
    /// |---|---|---|
    /// | `d₁` | `(0, 1)` | `0` |
    /// | `d₂` | `0` | `(0, 1)` |
    /// | `d₃` | `(ω, 0)` | `(ω, 0)` |
    /// | `d₄` | `((ε+1)ω/l, 0)` | `0` |
    ///
    /// with `(ε+1)ω = b·d + (a+1)ω`.
    pub fn derivation_table(&self) -> Vec<Derivation> {
        let z = || BigInt::zero();
        let v = |x: BigInt, y: BigInt, e: BigInt| vec![x, y, e];
        let l = self.l();
        vec![
            Derivation::new(vec![v(z(), z(), 1.into()), v(z(), z(), z())]),
            Derivation::new(vec![v(z(), z(), z()), v(z(), z(), 1.into())]),
            Derivation::new(vec![v(z(), 1.into(), z()), v(z(), 1.into(), z())]),
            Derivation::new(vec![v(self.b() * self.d() / &l, (self.a() + 1) / &l, z()), v(z(), z(), z())]),
        ]
    }
}
