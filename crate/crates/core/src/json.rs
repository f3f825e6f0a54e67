//! JSON wire formats. Rationals and large integers travel as strings
//! (`"-3/7"`, `"12"`); plain JSON integers are accepted on input. Generator
//! names index action matrices; Lie algebra indices are 1-based.
//!
//! Deserialization only checks the shape of the document. The `to_*`
//! conversions check everything else and report violations as
//! [`Error::Schema`] with a JSON pointer into the document.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::Derivation;
use crate::lie::LieAlgebra;
use crate::linalg::{IntegerMatrix, RationalMatrix};
use crate::presentation::{ModuleAction, Presentation, Word};
use crate::semidirect::GammaEpsilon;
use crate::{Error, Result};

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), message: message.into() }
}

/// Escapes a key for use as a JSON pointer segment.
fn segment(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn number_text<'de, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<String, D::Error> {
    match serde_json::Value::deserialize(deserializer)? {
        serde_json::Value::String(s) => Ok(s),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(D::Error::custom(format!("expected a number or numeric string, found {other}"))),
    }
}

/// An exact rational, serialized as `"p/q"` or `"p"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = number_text(deserializer)?;
        let invalid = || D::Error::custom(format!("invalid rational {text:?}"));
        let (num, den) = match text.trim().split_once('/') {
            Some((n, d)) => (BigInt::from_str(n.trim()).map_err(|_| invalid())?, BigInt::from_str(d.trim()).map_err(|_| invalid())?),
            None => (BigInt::from_str(text.trim()).map_err(|_| invalid())?, BigInt::from(1)),
        };
        if den.is_zero() {
            return Err(D::Error::custom(format!("zero denominator in {text:?}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

/// An arbitrary-size integer, serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = number_text(deserializer)?;
        BigInt::from_str(text.trim()).map(Integer).map_err(|_| D::Error::custom(format!("invalid integer {text:?}")))
    }
}

pub fn integers(v: &[BigInt]) -> Vec<Integer> {
    v.iter().cloned().map(Integer).collect()
}

/// `{"rows": n, "cols": m, "entries": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl MatrixJson {
    pub fn from_rational(m: &RationalMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().into_iter().map(|r| r.into_iter().map(Rational).collect()).collect(),
        }
    }

    pub fn from_integer(m: &IntegerMatrix) -> Self {
        Self::from_rational(&m.to_rational())
    }

    /// `pointer` locates this object inside the enclosing document.
    pub fn to_rational(&self, pointer: &str) -> Result<RationalMatrix> {
        if self.entries.len() != self.rows {
            return Err(schema(format!("{pointer}/entries"), format!("expected {} rows, found {}", self.rows, self.entries.len())));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(schema(
                    format!("{pointer}/entries/{i}"),
                    format!("expected {} entries, found {}", self.cols, row.len()),
                ));
            }
        }
        Ok(RationalMatrix::from_fn(self.rows, self.cols, |i, j| self.entries[i][j].0.clone()))
    }

    pub fn to_integer(&self, pointer: &str) -> Result<IntegerMatrix> {
        let m = self.to_rational(pointer)?;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].is_integer() {
                    return Err(schema(format!("{pointer}/entries/{i}/{j}"), "expected an integer"));
                }
            }
        }
        Ok(m.to_integer().expect("checked integral"))
    }
}

/// `{"generators": [...], "relators": [[["t", 1], ["t", 1]], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(String, i64)>>,
}

impl PresentationJson {
    /// Emits each relator with maximal runs merged into syllables.
    pub fn from_presentation(p: &Presentation) -> Self {
        let relators = p
            .relators()
            .iter()
            .map(|w| {
                let mut syllables: Vec<(usize, i64)> = Vec::new();
                for l in w.letters() {
                    let e = i64::from(l.sign());
                    match syllables.last_mut() {
                        Some((g, k)) if *g == l.generator && k.signum() == e => *k += e,
                        _ => syllables.push((l.generator, e)),
                    }
                }
                syllables.into_iter().map(|(g, k)| (p.generators()[g].clone(), k)).collect()
            })
            .collect();
        PresentationJson { generators: p.generators().to_vec(), relators }
    }

    pub fn to_presentation(&self, pointer: &str) -> Result<Presentation> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') || g == "1" {
                return Err(schema(format!("{pointer}/generators/{i}"), format!("invalid generator name {g:?}")));
            }
            if self.generators[..i].contains(g) {
                return Err(schema(format!("{pointer}/generators/{i}"), format!("duplicate generator {g:?}")));
            }
        }
        let mut relators = Vec::with_capacity(self.relators.len());
        for (r, syllables) in self.relators.iter().enumerate() {
            let mut letters = Vec::new();
            for (s, (name, exp)) in syllables.iter().enumerate() {
                let g = self.generators.iter().position(|x| x == name).ok_or_else(|| {
                    schema(format!("{pointer}/relators/{r}/{s}/0"), format!("unknown generator {name:?}"))
                })?;
                letters.extend(Word::power(g, *exp).0);
            }
            relators.push(Word(letters));
        }
        Presentation::new(self.generators.clone(), relators)
    }
}

/// `{"a": ..., "b": ..., "d": ...}` for `ε = a + b√d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsilonJson {
    pub a: Integer,
    pub b: Integer,
    pub d: Integer,
}

/// A finitely presented group acting on `ℤⁿ`.
///
/// `engine` names a built-in normal-form engine (`"dihedral"` or
/// `"free_abelian"`); without one, conjugation words are taken literally.
/// `derivation_basis` optionally fixes a basis of derivations, each given by
/// its value on every generator in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecJson {
    pub presentation: PresentationJson,
    pub action: BTreeMap<String, MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation_basis: Option<Vec<Vec<Vec<Integer>>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineTag {
    Dihedral,
    FreeAbelian,
}

/// A validated [`GroupSpecJson`].
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub presentation: Presentation,
    pub action: ModuleAction,
    pub engine: Option<EngineTag>,
    pub derivation_basis: Option<Vec<Derivation>>,
}

impl GroupSpecJson {
    pub fn from_gamma_epsilon(g: &GammaEpsilon) -> Self {
        let p = g.group.presentation();
        let action = p
            .generators()
            .iter()
            .zip(g.group.action().matrices())
            .map(|(name, m)| (name.clone(), MatrixJson::from_integer(m)))
            .collect();
        GroupSpecJson {
            presentation: PresentationJson::from_presentation(p),
            action,
            engine: Some("dihedral".into()),
            epsilon: Some(EpsilonJson { a: Integer(g.a().clone()), b: Integer(g.b().clone()), d: Integer(g.d().clone()) }),
            derivation_basis: Some(
                g.derivation_table().iter().map(|d| d.values().iter().map(|v| integers(v)).collect()).collect(),
            ),
        }
    }

    pub fn to_spec(&self) -> Result<GroupSpec> {
        let presentation = self.presentation.to_presentation("/presentation")?;
        for name in self.action.keys() {
            if presentation.generator_index(name).is_none() {
                return Err(schema(format!("/action/{}", segment(name)), "not a generator"));
            }
        }
        let mut matrices = Vec::new();
        let mut rank = None;
        for name in presentation.generators() {
            let pointer = format!("/action/{}", segment(name));
            let m = self.action.get(name).ok_or_else(|| schema("/action", format!("missing matrix for {name:?}")))?;
            let m = m.to_integer(&pointer)?;
            if !m.is_square() || rank.is_some_and(|r| r != m.rows()) {
                return Err(schema(pointer, "matrices must be square of a common size"));
            }
            rank = Some(m.rows());
            matrices.push(m);
        }
        let engine = match self.engine.as_deref() {
            None => None,
            Some("dihedral") => Some(EngineTag::Dihedral),
            Some("free_abelian") => Some(EngineTag::FreeAbelian),
            Some(other) => return Err(schema("/engine", format!("unknown engine {other:?}"))),
        };
        let rank = rank.unwrap_or(0);
        let k = presentation.generator_count();
        let derivation_basis = match &self.derivation_basis {
            None => None,
            Some(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (i, values) in list.iter().enumerate() {
                    if values.len() != k || values.iter().any(|v| v.len() != rank) {
                        return Err(schema(
                            format!("/derivation_basis/{i}"),
                            format!("expected {k} vectors of length {rank}"),
                        ));
                    }
                    out.push(Derivation::new(values.iter().map(|v| v.iter().map(|x| x.0.clone()).collect()).collect()));
                }
                Some(out)
            }
        };
        let action = ModuleAction::new(&presentation, rank, matrices)?;
        Ok(GroupSpec { presentation, action, engine, derivation_basis })
    }
}

/// One structure constant `[e_i, e_j] ∋ c·e_k`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

/// `{"dim": n, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

impl LieAlgebraJson {
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        LieAlgebraJson {
            dim: l.dim(),
            brackets: l
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| BracketJson { i: i + 1, j: j + 1, k: k + 1, c: Rational(c) })
                .collect(),
        }
    }

    /// Validates indices, then builds the algebra (which checks Jacobi).
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let n = self.dim;
        let mut seen = std::collections::BTreeSet::new();
        for (t, b) in self.brackets.iter().enumerate() {
            for (field, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if v == 0 || v > n {
                    return Err(schema(format!("/brackets/{t}/{field}"), format!("index must lie in 1..={n}")));
                }
            }
            if b.i >= b.j {
                return Err(schema(format!("/brackets/{t}/j"), "need i < j"));
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(schema(format!("/brackets/{t}"), "repeated (i, j, k)"));
            }
        }
        LieAlgebra::new(n, self.brackets.iter().map(|b| (b.i - 1, b.j - 1, b.k - 1, b.c.0.clone())))
    }
}
