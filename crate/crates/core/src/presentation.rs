//! Finitely presented groups, words, integral module actions and
//! normal-form engines.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::linalg::IntegerMatrix;
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn sign(self) -> i32 {
        if self.inverse { -1 } else { 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `g^e` as a word of `|e|` letters.
    pub fn power(generator: usize, exponent: i64) -> Self {
        let letter = if exponent < 0 { Letter::inv(generator) } else { Letter::new(generator) };
        Word(vec![letter; exponent.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Cancels adjacent `x x⁻¹` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(l.generator) {
                Some(n) => write!(f, "{n}")?,
                None => write!(f, "g{}", l.generator)?,
            }
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(l) = w.0.iter().find(|l| l.generator >= generators.len()) {
                return Err(Error::UnknownGenerator { index: l.generator, count: generators.len() });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// `⟨A, τ | τ², (Aτ)²⟩` with `A` = generator 0, `τ` = generator 1.
    pub fn infinite_dihedral() -> Self {
        let (a, t) = (Letter::new(0), Letter::new(1));
        Presentation {
            generators: vec!["A".into(), "t".into()],
            relators: vec![Word(vec![t, t]), Word(vec![a, t, a, t])],
        }
    }

    /// `⟨g | gᵐ⟩`
    pub fn cyclic(m: usize) -> Self {
        Presentation { generators: vec!["g".into()], relators: vec![Word::power(0, m as i64)] }
    }

    /// Free abelian group on `k` generators with commutator relators.
    pub fn free_abelian(k: usize) -> Self {
        let generators = (0..k).map(|i| format!("x{}", i + 1)).collect();
        let mut relators = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                relators.push(Word(vec![Letter::new(i), Letter::new(j), Letter::inv(i), Letter::inv(j)]));
            }
        }
        Presentation { generators, relators }
    }

    pub fn trivial() -> Self {
        Presentation { generators: Vec::new(), relators: Vec::new() }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|l| l.generator >= self.generators.len()) {
            Some(l) => Err(Error::UnknownGenerator { index: l.generator, count: self.generators.len() }),
            None => Ok(()),
        }
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.display_with(&self.generators).to_string()
    }

    /// Parses whitespace-separated tokens `name` or `name^k` (`k` a nonzero
    /// integer); `1` or the empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((name, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("exponent in {token:?}")))?;
                    (name, e)
                }
                None => (token, 1),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| Error::Parse(format!("word {text:?}: unknown generator {name:?}")))?;
            letters.extend(Word::power(g, exp).0);
        }
        Ok(Word(letters))
    }
}

/// A `D`-module structure on `ℤⁿ`: one matrix in `GL(n, ℤ)` per generator,
/// acting on column vectors, satisfying every relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    rank: usize,
    matrices: Vec<IntegerMatrix>,
    inverses: Vec<IntegerMatrix>,
}

/// Outcome of checking an action against the relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionCheck {
    Ok,
    ViolatedRelator { index: usize, relator: Word },
}

impl ModuleAction {
    /// Builds and validates an action; fails on the first violated relator.
    pub fn new(presentation: &Presentation, rank: usize, matrices: Vec<IntegerMatrix>) -> Result<Self> {
        let action = Self::unchecked(presentation, rank, matrices)?;
        match validate_action(presentation, &action)? {
            ActionCheck::Ok => Ok(action),
            ActionCheck::ViolatedRelator { index, relator } => {
                Err(Error::ViolatedRelator { index, relator: presentation.word_string(&relator) })
            }
        }
    }

    /// Checks shapes and unimodularity only.
    pub fn unchecked(presentation: &Presentation, rank: usize, matrices: Vec<IntegerMatrix>) -> Result<Self> {
        if matrices.len() != presentation.generator_count() {
            return Err(Error::Dimension(format!(
                "{} matrices for {} generators",
                matrices.len(),
                presentation.generator_count()
            )));
        }
        let mut inverses = Vec::with_capacity(matrices.len());
        for m in &matrices {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Dimension(format!("expected {rank}x{rank}, got {}x{}", m.rows(), m.cols())));
            }
            inverses.push(m.inverse_unimodular()?);
        }
        Ok(ModuleAction { rank, matrices, inverses })
    }

    /// The action in which every generator acts as the identity.
    pub fn trivial(presentation: &Presentation, rank: usize) -> Self {
        let id = IntegerMatrix::identity(rank);
        ModuleAction {
            rank,
            matrices: vec![id.clone(); presentation.generator_count()],
            inverses: vec![id; presentation.generator_count()],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrices(&self) -> &[IntegerMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, generator: usize) -> &IntegerMatrix {
        &self.matrices[generator]
    }

    pub fn letter_matrix(&self, l: Letter) -> &IntegerMatrix {
        if l.inverse { &self.inverses[l.generator] } else { &self.matrices[l.generator] }
    }

    /// Applies the action of a single letter to a vector.
    pub fn act_letter(&self, l: Letter, v: &[BigInt]) -> Vec<BigInt> {
        self.letter_matrix(l).mul_vec(v)
    }
}

/// Checks the relators of `presentation` against the action matrices.
pub fn validate_action(presentation: &Presentation, action: &ModuleAction) -> Result<ActionCheck> {
    if action.matrices.len() != presentation.generator_count() {
        return Err(Error::Dimension(format!(
            "{} matrices for {} generators",
            action.matrices.len(),
            presentation.generator_count()
        )));
    }
    for (index, w) in presentation.relators().iter().enumerate() {
        if !evaluate_word(action, w)?.is_identity() {
            return Ok(ActionCheck::ViolatedRelator { index, relator: w.clone() });
        }
    }
    Ok(ActionCheck::Ok)
}

/// Ordered product of the generator matrices (and inverses) along `w`.
/// Runs of a repeated letter are evaluated by repeated squaring.
pub fn evaluate_word(action: &ModuleAction, w: &Word) -> Result<IntegerMatrix> {
    let mut acc = IntegerMatrix::identity(action.rank);
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        if l.generator >= action.matrices.len() {
            return Err(Error::UnknownGenerator { index: l.generator, count: action.matrices.len() });
        }
        let run = letters[i..].iter().take_while(|&&x| x == l).count();
        acc = &acc * &action.letter_matrix(l).pow(run as u64);
        i += run;
    }
    Ok(acc)
}

/// Canonical forms and multiplication in a concrete group `D` given by a
/// presentation. Implement this to use a group without a built-in engine.
pub trait NormalFormEngine: Send + Sync {
    type Element: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn generator_count(&self) -> usize;
    fn identity(&self) -> Self::Element;
    fn generator(&self, index: usize) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    /// A word over the generators representing `a`.
    fn to_word(&self, a: &Self::Element) -> Word;

    fn normal_form(&self, w: &Word) -> Self::Element {
        w.letters().iter().fold(self.identity(), |acc, l| {
            let g = self.generator(l.generator);
            let g = if l.inverse { self.inverse(&g) } else { g };
            self.multiply(&acc, &g)
        })
    }

    /// `g⁻¹ · x · g`
    fn conjugate(&self, x: &Self::Element, g: &Self::Element) -> Self::Element {
        self.multiply(&self.multiply(&self.inverse(g), x), g)
    }
}

/// `A^k τ^t` in the infinite dihedral group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub k: i64,
    pub t: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { k: 0, t: false };
    pub const A: DihedralElement = DihedralElement { k: 1, t: false };
    pub const TAU: DihedralElement = DihedralElement { k: 0, t: true };

    /// `(k₁,t₁)·(k₂,t₂) = (k₁ + (−1)^{t₁} k₂, t₁ ⊕ t₂)`
    pub fn mul(self, other: DihedralElement) -> DihedralElement {
        let k2 = if self.t { -other.k } else { other.k };
        DihedralElement { k: self.k + k2, t: self.t ^ other.t }
    }

    pub fn inv(self) -> DihedralElement {
        if self.t { self } else { DihedralElement { k: -self.k, t: false } }
    }
}

/// Engine for `D_∞ = ⟨A, τ | τ², (Aτ)²⟩`, rewriting with `τA = A⁻¹τ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DihedralEngine;

impl NormalFormEngine for DihedralEngine {
    type Element = DihedralElement;

    fn generator_count(&self) -> usize {
        2
    }

    fn identity(&self) -> DihedralElement {
        DihedralElement::IDENTITY
    }

    fn generator(&self, index: usize) -> DihedralElement {
        match index {
            0 => DihedralElement::A,
            1 => DihedralElement::TAU,
            _ => panic!("D_inf has two generators, got index {index}"),
        }
    }

    fn multiply(&self, a: &DihedralElement, b: &DihedralElement) -> DihedralElement {
        a.mul(*b)
    }

    fn inverse(&self, a: &DihedralElement) -> DihedralElement {
        a.inv()
    }

    fn to_word(&self, a: &DihedralElement) -> Word {
        let mut w = Word::power(0, a.k);
        if a.t {
            w.0.push(Letter::new(1));
        }
        w
    }
}

/// Normal form of a word over `{A, τ}` in `D_∞`.
pub fn dinf_normal_form(w: &Word) -> DihedralElement {
    DihedralEngine.normal_form(w)
}

/// Engine for `ℤᵏ` with the standard generators.
#[derive(Debug, Clone, Copy)]
pub struct FreeAbelianEngine {
    pub rank: usize,
}

impl NormalFormEngine for FreeAbelianEngine {
    type Element = Vec<i64>;

    fn generator_count(&self) -> usize {
        self.rank
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn generator(&self, index: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        v[index] = 1;
        v
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inverse(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn to_word(&self, a: &Vec<i64>) -> Word {
        Word(a.iter().enumerate().flat_map(|(i, &e)| Word::power(i, e).0).collect())
    }
}
