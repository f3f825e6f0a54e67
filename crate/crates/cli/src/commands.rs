//! One function per subcommand; each returns the `results` object.

use std::str::FromStr;

use num_bigint::BigInt;
use polyarith::arithmeticity::{action_compatibility_failures, check_gamma_a, theorem_teob_report, ArithVerdict, VERDICT_NOTE};
use polyarith::cohomology::{
    conjugation_action, derivation_space, equivariant_units as units, h1_full, Derivation, DerivationLattice,
    RewritingTable,
};
use polyarith::json::{integers, EngineTag, GroupSpec, GroupSpecJson, Integer, LieAlgebraJson, MatrixJson};
use polyarith::lie::{
    action_on_cohomology, euler_characteristic, h1_annihilator_check, invariant_subcomplex, semisimple_rigidity_check,
    KoszulComplex, LieAlgebra, LieAutomorphism, Rigidity,
};
use polyarith::linalg::{jordan_chevalley, min_poly, snf, IntegerMatrix, Order, RationalMatrix};
use polyarith::presentation::{DihedralElement, DihedralEngine, FreeAbelianEngine, NormalFormEngine};
use polyarith::quadratic::fundamental_pell;
use polyarith::semidirect::{build_gamma_epsilon, SemidirectElement};
use polyarith::{Error, ErrorKind, Exec, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// A JSON number with arbitrary precision.
fn number(n: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&n.to_string()).expect("decimal integer"))
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(k) => json!(k),
        Order::Infinite => json!("infinite"),
    }
}

fn derivation_json(d: &Derivation) -> Value {
    json!(d.values().iter().map(|v| integers(v)).collect::<Vec<_>>())
}

pub fn pell(d: BigInt) -> Result<Value> {
    let eps = fundamental_pell(d.clone())?;
    Ok(json!({ "a": number(&eps.x), "b": number(&eps.y), "d": number(&d) }))
}

pub fn gamma_epsilon(d: BigInt) -> Result<Value> {
    let g = build_gamma_epsilon(d)?;
    Ok(serde_json::to_value(GroupSpecJson::from_gamma_epsilon(&g)).expect("serializable"))
}

/// Saturated lattice, re-based on the supplied basis when the spec has one.
fn lattice(spec: &GroupSpec) -> Result<DerivationLattice> {
    let saturated = derivation_space(&spec.presentation, &spec.action)?;
    match &spec.derivation_basis {
        None => Ok(saturated),
        Some(basis) => {
            for (i, d) in basis.iter().enumerate() {
                d.check(&spec.presentation, &spec.action).map_err(|e| Error::Schema {
                    pointer: format!("/derivation_basis/{i}"),
                    message: e.to_string(),
                })?;
            }
            saturated.with_basis(basis.clone())
        }
    }
}

pub fn derivations(spec: &GroupSpec) -> Result<Value> {
    let saturated = derivation_space(&spec.presentation, &spec.action)?;
    let mut out = json!({
        "generators": spec.presentation.generators(),
        "module_rank": saturated.module_rank(),
        "rank": saturated.rank(),
        "basis": saturated.basis().iter().map(derivation_json).collect::<Vec<_>>(),
    });
    if let Some(basis) = &spec.derivation_basis {
        let c = saturated.coordinate_matrix(basis)?;
        let factors = if c.rows() == 0 { Vec::new() } else { snf(&c).invariant_factors() };
        out["supplied_basis"] = json!({
            "coordinates": MatrixJson::from_integer(&c),
            "invariant_factors": integers(&factors),
        });
    }
    Ok(out)
}

pub fn h1(spec: &GroupSpec) -> Result<Value> {
    let full = h1_full(&spec.presentation, &spec.action)?;
    let c = full.cocycles.coordinate_matrix(&full.coboundaries)?;
    let factors = if c.rows() == 0 { Vec::new() } else { snf(&c).invariant_factors() };
    Ok(json!({
        "cocycle_rank": full.cocycles.rank(),
        "coboundary_generators": full.coboundaries.len(),
        "invariant_factors": integers(&factors),
        "free_rank": full.group.free_rank,
        "torsion": integers(&full.group.torsion),
    }))
}

pub fn der_action(spec: &GroupSpec, element: &str) -> Result<Value> {
    let word = spec.presentation.parse_word(element)?;
    let k = spec.presentation.generator_count();
    let (table, rewriting) = match spec.engine {
        Some(EngineTag::Dihedral) => (engine_table(&DihedralEngine, k, &word)?, "dihedral"),
        Some(EngineTag::FreeAbelian) => (engine_table(&FreeAbelianEngine { rank: k }, k, &word)?, "free_abelian"),
        None => (RewritingTable::literal(&word, k), "literal"),
    };
    let lattice = lattice(spec)?;
    let m = conjugation_action(&spec.action, &table, &lattice)?;
    Ok(json!({
        "element": spec.presentation.word_string(&word),
        "rewriting": rewriting,
        "basis": lattice.basis().iter().map(derivation_json).collect::<Vec<_>>(),
        "convention": "row i holds the coordinates of g*d_i",
        "matrix": MatrixJson::from_integer(&m),
        "determinant": number(&m.det()?),
    }))
}

fn engine_table<E: NormalFormEngine>(engine: &E, generators: usize, w: &polyarith::presentation::Word) -> Result<RewritingTable> {
    if engine.generator_count() != generators {
        return Err(Error::Schema {
            pointer: "/engine".into(),
            message: format!("engine has {} generators, presentation has {generators}", engine.generator_count()),
        });
    }
    Ok(RewritingTable::from_engine(engine, w))
}

pub fn equivariant_units(spec: &GroupSpec, bound: u64) -> Result<Value> {
    let found = units(&spec.action, bound, Exec::default());
    Ok(json!({
        "bound": bound,
        "count": found.len(),
        "units": found.iter().map(MatrixJson::from_integer).collect::<Vec<_>>(),
        "note": "bounded enumeration; not a proof that no other units exist",
    }))
}

pub fn jordan(a: &RationalMatrix) -> Result<Value> {
    let jc = jordan_chevalley(a)?;
    Ok(json!({
        "min_poly": min_poly(a)?.to_string(),
        "semisimple_part": MatrixJson::from_rational(&jc.semisimple),
        "unipotent_part": MatrixJson::from_rational(&jc.unipotent),
        "semisimple_min_poly": min_poly(&jc.semisimple)?.to_string(),
        "is_semisimple": jc.unipotent.is_identity(),
        "is_unipotent": jc.semisimple.is_identity(),
    }))
}

fn verdict_json(v: &ArithVerdict) -> Value {
    use polyarith::arithmeticity::Classification as C;
    let power = match v.classification {
        C::FiniteOrder(k) | C::VirtuallyUnipotent(k) => json!(k),
        _ => Value::Null,
    };
    json!({
        "classification": v.classification.name(),
        "power": power,
        "order": order_json(v.semisimple_order),
        "semisimple_part": MatrixJson::from_rational(&v.witness.semisimple),
        "unipotent_part": MatrixJson::from_rational(&v.witness.unipotent),
        "note": VERDICT_NOTE,
    })
}

pub fn arith_check(a: &IntegerMatrix) -> Result<Value> {
    let mut out = verdict_json(&check_gamma_a(a)?);
    // keep the classification last so it closes the report
    let c = out.as_object_mut().expect("object").shift_remove("classification").expect("present");
    out["classification"] = c;
    Ok(out)
}

pub fn teob(d: BigInt, seed: u64, samples: usize) -> Result<Value> {
    let r = theorem_teob_report(d)?;
    let g = &r.gamma;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<SemidirectElement<DihedralElement>> = (0..samples)
        .map(|_| SemidirectElement {
            f: (0..3).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect(),
            g: DihedralElement { k: rng.gen_range(-5..=5), t: rng.gen_bool(0.5) },
        })
        .collect();
    let mut compat = serde_json::Map::new();
    for (name, h) in [("A", DihedralElement::A), ("t", DihedralElement::TAU), ("A t", DihedralElement::A.mul(DihedralElement::TAU))] {
        compat.insert(name.into(), json!(action_compatibility_failures(g, &r.lattice, h, &elements)?));
    }
    let b = &r.block;
    Ok(json!({
        "epsilon": { "a": Integer(g.a().clone()), "b": Integer(g.b().clone()), "d": Integer(g.d().clone()) },
        "l": Integer(r.l.clone()),
        "derivation_rank": r.lattice.rank(),
        "derivation_basis": r.lattice.basis().iter().map(derivation_json).collect::<Vec<_>>(),
        "basis_index_factors": integers(&r.table_index_factors),
        "inn_a_matrix": MatrixJson::from_integer(&r.action_matrix),
        "matrix_convention": "row i holds the coordinates of A*d_i",
        "top_rows_match": r.top_rows_match,
        "bottom_block": {
            "computed": MatrixJson::from_integer(&b.computed),
            "stated_entries": integers(&b.stated),
            "matches_rows_as_images": b.matches_rows_as_images,
            "matches_columns_as_images": b.matches_columns_as_images,
            "resolved_entry": b.resolved_entry.clone().map(Integer),
            "entry_from_determinant": b.entry_from_determinant.clone().map(Integer),
            "trace": Integer(&b.computed[(0, 0)] + &b.computed[(1, 1)]),
            "determinant": Integer(b.computed.det()?),
        },
        "char_poly": r.char_poly.to_string(),
        "semisimple_min_poly": r.semisimple_min_poly.to_string(),
        "infinite_order_factor": r.infinite_order_factor.to_string(),
        "compatibility": { "seed": seed, "samples": samples, "failures": Value::Object(compat) },
        "verdict": verdict_json(&r.verdict),
        "classification": r.verdict.classification.name(),
    }))
}

fn complex(algebra: &LieAlgebra, cap: usize) -> Result<KoszulComplex> {
    let k = KoszulComplex::with_cap(algebra, cap)?;
    k.check_d_squared()?;
    Ok(k)
}

fn automorphisms(algebra: &LieAlgebra, matrices: Vec<RationalMatrix>, pointer: &str) -> Result<Vec<LieAutomorphism>> {
    matrices
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            LieAutomorphism::new(algebra, m).map_err(|e| match e.kind() {
                ErrorKind::Malformed => Error::Schema { pointer: format!("{pointer}/{i}"), message: e.to_string() },
                _ => e,
            })
        })
        .collect()
}

pub fn lie_cohomology(
    algebra: &LieAlgebra,
    cap: usize,
    automorphism: Option<RationalMatrix>,
    family: Option<Vec<RationalMatrix>>,
) -> Result<Value> {
    let k = complex(algebra, cap)?;
    let exec = Exec::default();
    let coh = k.cohomology(exec);
    let betti = coh.betti();
    if betti != k.betti(exec) {
        return Err(Error::Internal("representatives disagree with ranks".into()));
    }
    let series = algebra.lower_central_series();
    let mut out = json!({
        "algebra": LieAlgebraJson::from_algebra(algebra),
        "dim": algebra.dim(),
        "nilpotent": series.class.is_some(),
        "nilpotency_class": series.class,
        "lower_central_series": series.dims(),
        "betti": betti,
        "euler_characteristic": euler_characteristic(&betti),
        "d_squared_zero": true,
    });
    if series.class.is_some() {
        let c = h1_annihilator_check(&k)?;
        out["h1_check"] = json!({ "h1_dim": c.h1_dim, "derived_dim": c.derived_dim, "annihilates": c.annihilates, "ok": c.ok(algebra.dim()) });
    }
    if let Some(m) = automorphism {
        let phi = automorphisms(algebra, vec![m], "")?.remove(0);
        let maps = (0..=k.top_degree())
            .map(|p| action_on_cohomology(&k, &coh, &phi, p, exec).map(|m| MatrixJson::from_rational(&m)))
            .collect::<Result<Vec<_>>>()?;
        let rigidity = match semisimple_rigidity_check(&k, &coh, &phi) {
            Ok(r) => json!(match r {
                Rigidity::Vacuous => "acts nontrivially on H1",
                Rigidity::Confirmed => "trivial on H1 and the identity",
                Rigidity::Refuted => "trivial on H1 but not the identity",
            }),
            Err(e) if e.kind() == ErrorKind::Precondition => json!(format!("not applicable: {e}")),
            Err(e) => return Err(e),
        };
        out["automorphism"] = json!({ "semisimple": phi.is_semisimple()?, "on_cohomology": maps, "rigidity": rigidity });
    }
    if let Some(matrices) = family {
        let family = automorphisms(algebra, matrices, "")?;
        let inv = invariant_subcomplex(&k, &coh, &family, exec)?;
        out["invariants"] = json!({
            "fixed_cochain_dims": inv.fixed_dims,
            "invariant_betti": inv.invariant_betti,
            "subcomplex_betti": inv.subcomplex_betti,
        });
    }
    Ok(out)
}

pub fn koszul_invariants(algebra: &LieAlgebra, cap: usize, family: Vec<RationalMatrix>) -> Result<Value> {
    let k = complex(algebra, cap)?;
    let exec = Exec::default();
    let coh = k.cohomology(exec);
    let family = automorphisms(algebra, family, "")?;
    let inv = invariant_subcomplex(&k, &coh, &family, exec)?;
    let degrees: Vec<Value> = (0..=k.top_degree())
        .map(|p| {
            json!({
                "degree": p,
                "wedge_basis": k.basis(p).map(|b| b.iter().map(|t| t.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>()).unwrap_or_default(),
                "fixed_basis": MatrixJson::from_rational(&inv.fixed_bases[p]),
                "restricted_differential": MatrixJson::from_rational(&inv.restricted[p]),
            })
        })
        .collect();
    Ok(json!({
        "fixed_cochain_dims": inv.fixed_dims,
        "subcomplex_betti": inv.subcomplex_betti,
        "invariant_betti": inv.invariant_betti,
        "degrees": degrees,
    }))
}
