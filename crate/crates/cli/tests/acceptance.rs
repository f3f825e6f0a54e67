//! Acceptance gate: one check per criterion, each printing a PASS/FAIL line.
//! The lines are written straight to stdout so they show up without
//! `--nocapture`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    binomial, finite_group_cases, nilpotent_suite, oracle_h1_torsion_counts, q, random_gl4, random_int_vec,
    random_vector, random_weight, random_word, seeded, torsion_count, torus_for,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use polyarith::arithmeticity::{theorem_teob_report, Classification};
use polyarith::cohomology::{conjugation_action, derivation_space, equivariant_units, h1, Derivation, RewritingTable};
use polyarith::lie::{
    build_koszul, euler_characteristic, invariant_subcomplex, semisimple_rigidity_check, LieAlgebra, LieAutomorphism,
    Rigidity,
};
use polyarith::linalg::{jordan_chevalley, min_poly, rational, snf, IntegerMatrix, Poly, RationalMatrix};
use polyarith::presentation::{dinf_normal_form, DihedralElement, ModuleAction, NormalFormEngine, Presentation};
use polyarith::quadratic::fundamental_pell;
use polyarith::semidirect::{build_gamma_epsilon, AutomorphismAtom, AutomorphismSpec, SemidirectElement};
use polyarith::Exec;
use serde_json::Value;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

const TEOB_DS: [u64; 7] = [2, 3, 5, 6, 7, 8, 10];

fn cli_teob(d: u64) -> std::result::Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_polyarith"))
        .args(["teob", &d.to_string(), "--results-only"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("teob {d} exited with {:?}", out.status.code()))?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn entries(v: &Value) -> Vec<Vec<String>> {
    v["entries"]
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
                .collect()
        })
        .unwrap_or_default()
}

fn criterion_1() -> Check {
    let mut slowest = Duration::ZERO;
    for d in TEOB_DS {
        let a = fundamental_pell(d).map_err(|e| e.to_string())?.x;
        let two_a = i64::try_from(&(BigInt::from(2) * &a)).map_err(|e| e.to_string())?;
        let factor = Poly::from_i64(&[1, -two_a, 1]);

        let start = Instant::now();
        let report = theorem_teob_report(d).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        within(elapsed, Duration::from_secs(1), &format!("teob {d}"))?;
        ensure(report.verdict.classification == Classification::FailsNecessaryCondition, || {
            format!("d = {d}: {:?}", report.verdict.classification)
        })?;
        let u = &report.verdict.witness.unipotent;
        ensure(!u.is_identity(), || format!("d = {d}: U = I"))?;
        let top = RationalMatrix::from_fn(2, 2, |i, j| u[(i, j)].clone());
        ensure(top == IntegerMatrix::from_i64(&[&[1, -2], &[0, 1]]).to_rational(), || format!("d = {d}: U top block {top}"))?;
        ensure(report.infinite_order_factor == factor, || {
            format!("d = {d}: factor {} instead of {factor}", report.infinite_order_factor)
        })?;

        let cli = cli_teob(d)?;
        ensure(cli["classification"] == "FailsNecessaryCondition", || format!("d = {d}: CLI says {}", cli["classification"]))?;
        ensure(cli["infinite_order_factor"] == factor.to_string().as_str(), || format!("d = {d}: CLI factor"))?;
        ensure(cli["verdict"]["order"] == "infinite", || format!("d = {d}: S has finite order"))?;
        let cli_u = entries(&cli["verdict"]["unipotent_part"]);
        ensure(cli_u[0][..2] == ["1", "-2"] && cli_u[1][..2] == ["0", "1"], || format!("d = {d}: CLI U {cli_u:?}"))?;
    }
    Ok(format!("d in {TEOB_DS:?}; slowest {slowest:?}"))
}

fn criterion_2() -> Check {
    let g = build_gamma_epsilon(3).map_err(|e| e.to_string())?;
    let lattice = derivation_space(g.group.presentation(), g.group.action()).map_err(|e| e.to_string())?;
    ensure(lattice.rank() == 4, || format!("rank {}", lattice.rank()))?;
    let table = g.derivation_table();
    for (i, d) in table.iter().enumerate() {
        d.check(g.group.presentation(), g.group.action()).map_err(|e| format!("d{}: {e}", i + 1))?;
    }
    let change = lattice.coordinate_matrix(&table).map_err(|e| format!("table outside lattice: {e}"))?;
    let factors = snf(&change).invariant_factors();
    ensure(factors.len() == 4 && factors.iter().all(One::is_one), || format!("invariant factors {factors:?}"))?;
    Ok("rank 4, invariant factors [1, 1, 1, 1]".into())
}

fn criterion_3() -> Check {
    let mut resolved = Vec::new();
    for d in TEOB_DS {
        let r = theorem_teob_report(d).map_err(|e| e.to_string())?;
        let m = &r.action_matrix;
        let top = IntegerMatrix::from_i64(&[&[1, -2, 0, 0], &[0, 1, 0, 0]]);
        ensure(m.submatrix(&[0, 1], &[0, 1, 2, 3]) == top, || format!("d = {d}: top rows of {m}"))?;
        let block = m.submatrix(&[2, 3], &[2, 3]);
        let det = block.det().map_err(|e| e.to_string())?;
        let trace = &block[(0, 0)] + &block[(1, 1)];
        ensure(det.is_one(), || format!("d = {d}: block det {det}"))?;
        ensure(trace == BigInt::from(2) * r.gamma.a(), || format!("d = {d}: block trace {trace}"))?;
        let entry = r.block.resolved_entry.clone().ok_or_else(|| format!("d = {d}: stated entries match neither orientation"))?;
        resolved.push(format!("d={d}: g={entry}"));
    }
    Ok(resolved.join(", "))
}

fn criterion_4() -> Check {
    let g = build_gamma_epsilon(3).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let units = equivariant_units(g.group.action(), 10, Exec::default());
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5), "equivariant_units")?;
    let mut expected: Vec<IntegerMatrix> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(s, t)| IntegerMatrix::from_i64(&[&[s, 0, 0], &[0, s, 0], &[0, 0, t]]))
        .collect();
    expected.sort_by(|a, b| a.entries().cmp(b.entries()));
    let mut got = units.clone();
    got.sort_by(|a, b| a.entries().cmp(b.entries()));
    ensure(got == expected, || format!("{} units: {got:?}", got.len()))?;
    Ok(format!("4 units in {elapsed:?}"))
}

fn criterion_5() -> Check {
    let mut rng = seeded(0x5eed_0001);
    let mut failures = Vec::new();
    for i in 0..200 {
        let (a, _) = random_gl4(&mut rng);
        let jc = match jordan_chevalley(&a) {
            Ok(jc) => jc,
            Err(e) => {
                failures.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let (s, u) = (&jc.semisimple, &jc.unipotent);
        let squarefree = min_poly(s).map(|p| p.is_squarefree()).unwrap_or(false);
        let nilpotent = (u - &RationalMatrix::identity(4)).pow(4).is_zero();
        if &(s * u) != &a || s * u != u * s || !squarefree || !nilpotent {
            failures.push(format!("#{i}"));
        }
    }
    ensure(failures.is_empty(), || format!("failures: {failures:?}"))?;
    Ok("200 samples, 0 failures".into())
}

fn criterion_6() -> Check {
    let start = Instant::now();
    for n in 0..=8 {
        let k = build_koszul(&LieAlgebra::abelian(n)).map_err(|e| e.to_string())?;
        k.check_d_squared().map_err(|e| e.to_string())?;
        let b = k.betti(Exec::default());
        let expected: Vec<usize> = (0..=n).map(|p| binomial(n, p)).collect();
        ensure(b == expected, || format!("abelian {n}: {b:?}"))?;
    }
    let h3 = build_koszul(&LieAlgebra::heisenberg(1)).map_err(|e| e.to_string())?;
    ensure(h3.betti(Exec::default()) == vec![1, 2, 2, 1], || "h3 Betti".into())?;
    let suite = nilpotent_suite();
    ensure(suite.len() >= 10, || format!("suite has {} algebras", suite.len()))?;
    for entry in &suite {
        let k = build_koszul(&entry.algebra).map_err(|e| e.to_string())?;
        k.check_d_squared().map_err(|e| format!("{}: {e}", entry.name))?;
        let b = k.betti(Exec::default());
        let n = entry.algebra.dim();
        ensure(n <= 7, || format!("{} has dimension {n}", entry.name))?;
        ensure((0..=n).all(|p| b[p] == b[n - p]), || format!("{}: duality fails for {b:?}", entry.name))?;
        ensure(euler_characteristic(&b) == 0, || format!("{}: Euler characteristic of {b:?}", entry.name))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10), "Lie suite")?;
    Ok(format!("{} suite algebras, {elapsed:?}", suite.len()))
}

fn criterion_7() -> Check {
    let families = ["h3", "h5", "n4", "n5", "n6"];
    let suite: Vec<_> = nilpotent_suite().into_iter().filter(|e| families.contains(&e.name)).collect();
    let mut rng = seeded(0x5eed_0007);
    let (mut fixing, mut counterexamples) = (0, Vec::new());
    for trial in 0..100 {
        let entry = &suite[trial % suite.len()];
        let l = &entry.algebra;
        // conjugate U·T·U⁻¹ of a torus element, with weights 1 now and then
        // so that some samples fix H¹
        let w: Vec<BigRational> =
            (0..entry.free_weights).map(|_| if trial % 4 == 0 { q(1) } else { random_weight(&mut rng) }).collect();
        let t = torus_for(entry, &w);
        let u = l.inner_automorphism(&random_vector(&mut rng, l.dim(), 2)).map_err(|e| e.to_string())?;
        let phi = &(&u * &t) * &u.inverse().map_err(|e| e.to_string())?;
        let phi = LieAutomorphism::new(l, phi).map_err(|e| format!("{}: {e}", entry.name))?;
        let k = build_koszul(l).map_err(|e| e.to_string())?;
        let coh = k.cohomology(Exec::default());
        match semisimple_rigidity_check(&k, &coh, &phi).map_err(|e| e.to_string())? {
            Rigidity::Refuted => counterexamples.push(format!("{} trial {trial}", entry.name)),
            Rigidity::Confirmed => fixing += 1,
            Rigidity::Vacuous => {}
        }
    }
    ensure(counterexamples.is_empty(), || format!("counterexamples: {counterexamples:?}"))?;
    ensure(fixing > 0, || "no sample fixed H^1".into())?;
    Ok(format!("100 trials, {fixing} fixed H^1, 0 counterexamples"))
}

fn criterion_8() -> Check {
    let h = LieAlgebra::heisenberg(1);
    let k = build_koszul(&h).map_err(|e| e.to_string())?;
    let coh = k.cohomology(Exec::default());
    let s = LieAutomorphism::new(&h, RationalMatrix::diagonal(&[q(2), rational(1, 2), q(1)])).map_err(|e| e.to_string())?;
    let inv = invariant_subcomplex(&k, &coh, &[s], Exec::default()).map_err(|e| e.to_string())?;
    ensure(inv.subcomplex_betti == vec![1, 0, 0, 1], || format!("h3: {:?}", inv.subcomplex_betti))?;
    let mut rng = seeded(0x5eed_0008);
    let mut families = 0;
    for entry in nilpotent_suite() {
        let k = build_koszul(&entry.algebra).map_err(|e| e.to_string())?;
        let coh = k.cohomology(Exec::default());
        for size in 1..=2 {
            let family = (0..size)
                .map(|_| {
                    let w: Vec<BigRational> = (0..entry.free_weights).map(|_| random_weight(&mut rng)).collect();
                    LieAutomorphism::new(&entry.algebra, torus_for(&entry, &w))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            // an Internal error here means the two dimensions disagree
            let inv = invariant_subcomplex(&k, &coh, &family, Exec::default()).map_err(|e| format!("{}: {e}", entry.name))?;
            ensure(inv.subcomplex_betti == inv.invariant_betti, || format!("{}: mismatch", entry.name))?;
            families += 1;
        }
    }
    Ok(format!("h3 gives [1, 0, 0, 1]; {families} torus families agree"))
}

fn criterion_9() -> Check {
    let c2 = Presentation::cyclic(2);
    let sign = ModuleAction::new(&c2, 1, vec![IntegerMatrix::from_i64(&[&[-1]])]).map_err(|e| e.to_string())?;
    let h = h1(&c2, &sign).map_err(|e| e.to_string())?;
    ensure(h.free_rank == 0 && h.torsion == vec![BigInt::from(2)], || format!("C2 sign: {h:?}"))?;
    let cases = finite_group_cases();
    for case in &cases {
        let rank = case.matrices[0].rows();
        let action = ModuleAction::new(&case.presentation, rank, case.matrices.clone()).map_err(|e| format!("{}: {e}", case.name))?;
        let h = h1(&case.presentation, &action).map_err(|e| format!("{}: {e}", case.name))?;
        ensure(h.free_rank == 0, || format!("{}: free rank {}", case.name, h.free_rank))?;
        for (k, count) in oracle_h1_torsion_counts(case) {
            let got = torsion_count(&h.torsion, k);
            ensure(got == count, || format!("{}: {k}-torsion {got} vs oracle {count}", case.name))?;
        }
    }
    Ok(format!("C2 sign gives Z/2; {} finite actions match the oracle", cases.len()))
}

fn criterion_10() -> Check {
    let g = build_gamma_epsilon(3).map_err(|e| e.to_string())?;
    let grp = &g.group;
    let lattice = derivation_space(grp.presentation(), grp.action())
        .and_then(|l| l.with_basis(g.derivation_table()))
        .map_err(|e| e.to_string())?;
    let mut rng = seeded(0x5eed_0010);
    let elements: Vec<_> = (0..50)
        .map(|_| SemidirectElement { f: random_int_vec(&mut rng, 3, 6), g: dinf_normal_form(&random_word(&mut rng, 2, 10)) })
        .collect();
    let mut checked = 0;
    for h in [DihedralElement::A, DihedralElement::TAU, DihedralElement::A.mul(DihedralElement::TAU)] {
        let table = RewritingTable::from_engine(grp.engine(), &grp.engine().to_word(&h));
        // g∗dᵢ read off row i of the action matrix
        let m = conjugation_action(grp.action(), &table, &lattice).map_err(|e| e.to_string())?;
        let gamma = grp.group_element(h);
        let gamma_inv = grp.invert(&gamma).map_err(|e| e.to_string())?;
        for (i, d) in lattice.basis().iter().enumerate() {
            let image = (0..lattice.rank()).fold(Derivation::zero(2, 3), |acc, j| acc.add(&lattice.basis()[j].scale(&m[(i, j)])));
            let lhs = AutomorphismSpec::single(AutomorphismAtom::Inner(gamma_inv.clone()))
                .then(AutomorphismAtom::FromDerivation(d.clone()))
                .then(AutomorphismAtom::Inner(gamma.clone()));
            let rhs = AutomorphismSpec::single(AutomorphismAtom::FromDerivation(image));
            for x in &elements {
                let (l, r) = (grp.apply(&lhs, x).map_err(|e| e.to_string())?, grp.apply(&rhs, x).map_err(|e| e.to_string())?);
                ensure(l == r, || format!("g = {h:?}, d{}: {l:?} vs {r:?}", i + 1))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} equalities"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 teob verdicts", criterion_1),
        ("2 derivation lattice", criterion_2),
        ("3 Inn_A matrix", criterion_3),
        ("4 equivariant units", criterion_4),
        ("5 Jordan-Chevalley suite", criterion_5),
        ("6 Lie Betti numbers", criterion_6),
        ("7 semisimple rigidity", criterion_7),
        ("8 invariant subcomplex", criterion_8),
        ("9 finite-group H1 oracle", criterion_9),
        ("10 action compatibility", criterion_10),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let line = match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => format!("PASS criterion {name}: {detail}"),
            Ok(Err(why)) => {
                failed.push(name);
                format!("FAIL criterion {name}: {why}")
            }
            Err(_) => {
                failed.push(name);
                format!("FAIL criterion {name}: panicked")
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
