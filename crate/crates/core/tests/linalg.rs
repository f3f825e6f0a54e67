mod common;

use common::{q, seeded};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use polyarith::linalg::{
    char_poly, hnf, is_finite_order, jordan_chevalley, kernel_lattice, lattice_coordinates, min_poly, nilpotent_exp,
    nilpotent_log, snf, IntegerMatrix, Order, RationalMatrix,
};
use proptest::prelude::*;
use rand::Rng;

fn int_matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |v| IntegerMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn shaped_int_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| int_matrix(r, c, 6))
}

fn strictly_upper(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n * n).prop_map(move |v| {
        RationalMatrix::from_fn(n, n, |i, j| {
            if j > i {
                let (a, b) = v[i * n + j];
                BigRational::new(a.into(), b.into())
            } else {
                BigRational::zero()
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_reconstructs_and_is_canonical(m in shaped_int_matrix()) {
        let (h, u) = hnf(&m);
        prop_assert!(u.det().unwrap().abs().is_one());
        prop_assert_eq!(&(&u * &m), &h);
        // echelon shape: pivots strictly move right, positive, reduced above
        let mut last: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..h.rows() {
            match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
                None => seen_zero_row = true,
                Some(p) => {
                    prop_assert!(!seen_zero_row);
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
            }
        }
        prop_assert_eq!(h.rank(), m.rank());
    }

    #[test]
    fn snf_reconstructs(m in shaped_int_matrix()) {
        let s = snf(&m);
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        prop_assert_eq!(&(&(&s.u * &m) * &s.v), &s.d);
        let f = s.invariant_factors();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in f.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn kernel_lattice_is_saturated(m in shaped_int_matrix()) {
        let k = kernel_lattice(&m);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let stacked = IntegerMatrix::from_rows(k.clone()).unwrap();
            prop_assert!(snf(&stacked).invariant_factors().iter().all(One::is_one));
        }
        for (i, v) in k.iter().enumerate() {
            let tripled: Vec<BigInt> = v.iter().map(|x| x * 3).collect();
            let c = lattice_coordinates(&k, &tripled).unwrap();
            let expected: Vec<BigInt> = (0..k.len()).map(|j| BigInt::from(if i == j { 3 } else { 0 })).collect();
            prop_assert_eq!(c, expected);
        }
    }

    #[test]
    fn exp_and_log_are_inverse(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let nil = RationalMatrix::from_fn(n, n, |i, j| {
            if j > i { BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into()) } else { BigRational::zero() }
        });
        let u = nilpotent_exp(&nil).unwrap();
        prop_assert_eq!(&nilpotent_log(&u).unwrap(), &nil);
        prop_assert_eq!(&nilpotent_exp(&nilpotent_log(&u).unwrap()).unwrap(), &u);
    }

    #[test]
    fn exp_log_on_fixed_size(nil in strictly_upper(5)) {
        prop_assert_eq!(nilpotent_log(&nilpotent_exp(&nil).unwrap()).unwrap(), nil);
    }

    #[test]
    fn cayley_hamilton(m in (1usize..=5).prop_flat_map(|n| int_matrix(n, n, 5))) {
        let a = m.to_rational();
        let p = char_poly(&a).unwrap();
        prop_assert_eq!(p.degree(), Some(a.rows()));
        prop_assert!(p.eval_matrix(&a).is_zero());
        let mp = min_poly(&a).unwrap();
        prop_assert!(mp.eval_matrix(&a).is_zero());
        prop_assert!(mp.divides(&p));
    }
}

#[test]
fn jordan_chevalley_on_random_gl4() {
    let mut rng = seeded(0x5eed_0001);
    let mut nontrivial_u = 0;
    for _ in 0..200 {
        let (a, commuting) = common::random_gl4(&mut rng);
        let jc = jordan_chevalley(&a).unwrap();
        let (s, u) = (&jc.semisimple, &jc.unipotent);
        assert_eq!(&(s * u), &a);
        assert_eq!(&(s * u), &(u * s));
        assert!(min_poly(s).unwrap().is_squarefree());
        let n = u - &RationalMatrix::identity(4);
        assert!(n.pow(4).is_zero());
        if !u.is_identity() {
            nontrivial_u += 1;
        }
        // S and U commute with matrices commuting with A
        let poly_in_a = &(&a * &a) + &a.scale(&q(3));
        assert!(s.commutes_with(&poly_in_a) && u.commutes_with(&poly_in_a));
        if let Some(c) = commuting {
            assert!(c.commutes_with(&a));
            assert!(s.commutes_with(&c) && u.commutes_with(&c));
        }
    }
    assert!(nontrivial_u > 20, "sample exercised too few non-semisimple matrices ({nontrivial_u})");
}

/// Order by repeated multiplication, up to a limit.
fn order_by_powering(a: &RationalMatrix, limit: u64) -> Option<u64> {
    let mut p = a.clone();
    for k in 1..=limit {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * a;
    }
    None
}

#[test]
fn finite_order_matches_powering() {
    let mut rng = seeded(7);
    let mut finite = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        // signed permutation times random unimodular conjugation
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let sp = IntegerMatrix::from_fn(n, n, |i, j| if perm[j] == i { BigInt::from(signs[j]) } else { BigInt::zero() });
        let p = common::random_unimodular(&mut rng, n, 6);
        let pinv = p.inverse_unimodular().unwrap();
        let base = if rng.gen_bool(0.7) { sp } else { common::random_unimodular(&mut rng, n, 3) };
        let a = (&(&p * &base) * &pinv).to_rational();
        // element orders in GL(n, Z) for n <= 4 are at most 12
        let expected = order_by_powering(&a, 60);
        let got = is_finite_order(&a).unwrap();
        match expected {
            Some(k) => {
                finite += 1;
                assert_eq!(got, Order::Finite(k), "{a}");
            }
            None => assert_eq!(got, Order::Infinite, "{a}"),
        }
    }
    assert!(finite > 100);
}
