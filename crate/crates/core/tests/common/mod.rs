//! Test data and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use polyarith::lie::LieAlgebra;
use polyarith::linalg::{rational, IntegerMatrix, RationalMatrix};
use polyarith::presentation::{Letter, Presentation, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> BigRational {
    rational(n, 1)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- Lie algebras

fn algebra(dim: usize, brackets: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    LieAlgebra::new(dim, brackets.iter().map(|&(i, j, k, c)| (i - 1, j - 1, k - 1, q(c)))).expect("valid test algebra")
}

/// Strictly upper triangular `m × m` matrices, basis `E_ij` (i < j) in
/// lexicographic order, bracket = matrix commutator.
pub fn strictly_upper(m: usize) -> LieAlgebra {
    let basis: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let pos = |p: (usize, usize)| basis.iter().position(|&b| b == p).expect("basis element");
    let mut entries = Vec::new();
    for (x, &(i, j)) in basis.iter().enumerate() {
        for (y, &(k, l)) in basis.iter().enumerate().skip(x + 1) {
            // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
            if j == k {
                entries.push((x, y, pos((i, l)), q(1)));
            }
            if l == i {
                entries.push((x, y, pos((k, j)), q(-1)));
            }
        }
    }
    LieAlgebra::new(basis.len(), entries).expect("upper triangular algebra")
}

/// A torus element for one of the suite algebras: a diagonal automorphism
/// whose entries are determined by a few free weights.
pub type TorusFn = fn(&[BigRational]) -> Vec<BigRational>;

pub struct SuiteAlgebra {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    pub free_weights: usize,
    pub torus: TorusFn,
}

fn mul(a: &BigRational, b: &BigRational) -> BigRational {
    a * b
}

/// Nilpotent algebras of dimension ≤ 7 with an explicit torus each.
pub fn nilpotent_suite() -> Vec<SuiteAlgebra> {
    vec![
        SuiteAlgebra { name: "abelian3", algebra: LieAlgebra::abelian(3), free_weights: 3, torus: |w| w.to_vec() },
        SuiteAlgebra {
            name: "h3",
            algebra: algebra(3, &[(1, 2, 3, 1)]),
            free_weights: 2,
            torus: |w| vec![w[0].clone(), w[1].clone(), mul(&w[0], &w[1])],
        },
        SuiteAlgebra {
            name: "h5",
            algebra: algebra(5, &[(1, 3, 5, 1), (2, 4, 5, 1)]),
            free_weights: 3,
            torus: |w| {
                let top = mul(&w[0], &w[2]);
                vec![w[0].clone(), w[1].clone(), w[2].clone(), &top / &w[1], top]
            },
        },
        SuiteAlgebra {
            name: "h7",
            algebra: algebra(7, &[(1, 4, 7, 1), (2, 5, 7, 1), (3, 6, 7, 1)]),
            free_weights: 4,
            torus: |w| {
                let top = w[3].clone();
                vec![w[0].clone(), w[1].clone(), w[2].clone(), &top / &w[0], &top / &w[1], &top / &w[2], top]
            },
        },
        SuiteAlgebra { name: "n4", algebra: algebra(4, &[(1, 2, 3, 1), (1, 3, 4, 1)]), free_weights: 2, torus: filiform_torus },
        SuiteAlgebra {
            name: "n5",
            algebra: algebra(5, &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1)]),
            free_weights: 2,
            torus: filiform_torus,
        },
        SuiteAlgebra {
            name: "n6",
            algebra: algebra(6, &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (1, 5, 6, 1)]),
            free_weights: 2,
            torus: filiform_torus,
        },
        SuiteAlgebra {
            name: "n7",
            algebra: algebra(7, &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (1, 5, 6, 1), (1, 6, 7, 1)]),
            free_weights: 2,
            torus: filiform_torus,
        },
        SuiteAlgebra {
            name: "h3+Q",
            algebra: algebra(4, &[(1, 2, 3, 1)]),
            free_weights: 3,
            torus: |w| vec![w[0].clone(), w[1].clone(), mul(&w[0], &w[1]), w[2].clone()],
        },
        SuiteAlgebra {
            name: "n4+Q",
            algebra: algebra(5, &[(1, 2, 3, 1), (1, 3, 4, 1)]),
            free_weights: 3,
            torus: |w| {
                let mut t = filiform_torus(&w[..2]);
                t.truncate(4);
                t.push(w[2].clone());
                t
            },
        },
        SuiteAlgebra {
            name: "free3step2",
            algebra: algebra(5, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1)]),
            free_weights: 2,
            torus: |w| {
                let st = mul(&w[0], &w[1]);
                vec![w[0].clone(), w[1].clone(), st.clone(), mul(&w[0], &st), mul(&w[1], &st)]
            },
        },
        SuiteAlgebra {
            name: "free2step3",
            algebra: algebra(6, &[(1, 2, 4, 1), (1, 3, 5, 1), (2, 3, 6, 1)]),
            free_weights: 3,
            torus: |w| {
                vec![w[0].clone(), w[1].clone(), w[2].clone(), mul(&w[0], &w[1]), mul(&w[0], &w[2]), mul(&w[1], &w[2])]
            },
        },
        SuiteAlgebra {
            name: "upper4",
            algebra: strictly_upper(4),
            free_weights: 4,
            // conjugation by diag(x₁..x₄) scales E_ij by x_i / x_j
            torus: |w| {
                let mut out = Vec::new();
                for i in 0..4 {
                    for j in i + 1..4 {
                        out.push(&w[i] / &w[j]);
                    }
                }
                out
            },
        },
    ]
}

/// Filiform `[e₁, e_i] = e_{i+1}`: weights `s, t, st, s²t, …` up to dimension
/// 7; callers truncate.
fn filiform_torus(w: &[BigRational]) -> Vec<BigRational> {
    let (s, t) = (&w[0], &w[1]);
    let mut out = vec![s.clone(), t.clone()];
    for _ in 2..7 {
        let next = s * out.last().expect("nonempty");
        out.push(next);
    }
    out
}

/// Torus matrix sized to the algebra.
pub fn torus_for(entry: &SuiteAlgebra, w: &[BigRational]) -> RationalMatrix {
    let mut diag = (entry.torus)(w);
    diag.truncate(entry.algebra.dim());
    RationalMatrix::diagonal(&diag)
}

pub fn random_weight(rng: &mut ChaCha8Rng) -> BigRational {
    [q(1), q(-1), q(2), rational(1, 2), q(3), q(-2)].choose(rng).expect("nonempty").clone()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<BigRational> {
    (0..n).map(|_| q(rng.gen_range(-bound..=bound))).collect()
}

/// Independent differential: `(dω)(x₀, …, x_p) = Σ_{a<b} (−1)^{a+b} ω([x_a, x_b], x₀, …, x̂_a, …, x̂_b, …, x_p)`
/// evaluated on basis tuples. Entry `(I, J)` is `(dξ^J)(e_I)`.
pub fn oracle_differential(l: &LieAlgebra, p: usize) -> Vec<Vec<BigRational>> {
    let n = l.dim();
    let src = combinations(n, p);
    let dst = combinations(n, p + 1);
    let mut out = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (r, tuple) in dst.iter().enumerate() {
        for a in 0..tuple.len() {
            for b in a + 1..tuple.len() {
                let sign = if (a + b) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                let rest: Vec<usize> =
                    tuple.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &x)| x).collect();
                for k in 0..n {
                    let c = l.constant(tuple[a], tuple[b], k);
                    if c.is_zero() {
                        continue;
                    }
                    // ξ^J(e_k, rest...) as a determinant of a 0/1 matrix
                    let mut args = vec![k];
                    args.extend(&rest);
                    if let Some((col, s)) = sorted_position(&src, &args) {
                        let v = &sign * c * BigRational::from_integer(BigInt::from(s));
                        out[r][col] += v;
                    }
                }
            }
        }
    }
    out
}

fn sorted_position(basis: &[Vec<usize>], args: &[usize]) -> Option<(usize, i64)> {
    let mut v = args.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    basis.iter().position(|b| *b == v).map(|i| (i, sign))
}

pub fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 0 {
        return vec![vec![]];
    }
    if p > n {
        return vec![];
    }
    let mut out = Vec::new();
    for rest in combinations(n, p - 1) {
        let start = rest.last().map_or(0, |&x| x + 1);
        for i in start..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Rank by plain fraction Gaussian elimination.
pub fn oracle_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let prow = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from the oracle differential.
pub fn oracle_betti(l: &LieAlgebra) -> Vec<usize> {
    let n = l.dim();
    let ranks: Vec<usize> = (0..=n).map(|p| oracle_rank(&oracle_differential(l, p))).collect();
    (0..=n).map(|p| combinations(n, p).len() - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    combinations(n, k).len()
}

// ---------------------------------------------------------------- finite groups

pub struct FiniteGroupCase {
    pub name: String,
    pub presentation: Presentation,
    pub order: i64,
    pub matrices: Vec<IntegerMatrix>,
}

fn word(gens: &[(usize, i64)]) -> Word {
    Word(gens.iter().flat_map(|&(g, e)| Word::power(g, e).0).collect())
}

fn named(names: &[&str], relators: Vec<Word>) -> Presentation {
    Presentation::new(names.iter().map(|s| s.to_string()).collect(), relators).expect("presentation")
}

fn im(rows: &[&[i64]]) -> IntegerMatrix {
    IntegerMatrix::from_i64(rows)
}

fn perm(images: &[usize]) -> IntegerMatrix {
    let n = images.len();
    IntegerMatrix::from_fn(n, n, |i, j| if images[j] == i { BigInt::one() } else { BigInt::zero() })
}

/// `C₂`, `C₃`, `C₂ × C₂`, `S₃` acting on `ℤⁿ` for `n ≤ 4`.
pub fn finite_group_cases() -> Vec<FiniteGroupCase> {
    let c2 = Presentation::cyclic(2);
    let c3 = Presentation::cyclic(3);
    let v4 = named(&["a", "b"], vec![word(&[(0, 2)]), word(&[(1, 2)]), word(&[(0, 1), (1, 1), (0, 1), (1, 1)])]);
    let s3 = named(
        &["s", "t"],
        vec![word(&[(0, 2)]), word(&[(1, 2)]), word(&[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)])],
    );
    let neg = |n: usize| -&IntegerMatrix::identity(n);
    let mut cases = Vec::new();
    let mut add = |name: &str, p: &Presentation, order: i64, matrices: Vec<IntegerMatrix>| {
        cases.push(FiniteGroupCase { name: name.into(), presentation: p.clone(), order, matrices })
    };
    add("C2 sign on Z", &c2, 2, vec![neg(1)]);
    add("C2 trivial on Z", &c2, 2, vec![IntegerMatrix::identity(1)]);
    add("C2 swap on Z^2", &c2, 2, vec![perm(&[1, 0])]);
    add("C2 -1 on Z^2", &c2, 2, vec![neg(2)]);
    add("C2 sign+swap on Z^3", &c2, 2, vec![IntegerMatrix::block_diag(&[&neg(1), &perm(&[1, 0])])]);
    add("C2 -1 on Z^4", &c2, 2, vec![neg(4)]);
    add("C3 rotation on Z^2", &c3, 3, vec![im(&[&[0, -1], &[1, -1]])]);
    add("C3 cycle on Z^3", &c3, 3, vec![perm(&[1, 2, 0])]);
    add("C3 rotation+trivial on Z^3", &c3, 3, vec![IntegerMatrix::block_diag(&[&im(&[&[0, -1], &[1, -1]]), &IntegerMatrix::identity(1)])]);
    add("C3 two rotations on Z^4", &c3, 3, vec![IntegerMatrix::block_diag(&[&im(&[&[0, -1], &[1, -1]]), &im(&[&[0, -1], &[1, -1]])])]);
    add("V4 signs on Z^2", &v4, 4, vec![im(&[&[-1, 0], &[0, 1]]), im(&[&[1, 0], &[0, -1]])]);
    add("V4 both -1 on Z", &v4, 4, vec![neg(1), neg(1)]);
    add("V4 regular on Z^4", &v4, 4, vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]);
    add("V4 swap/sign on Z^3", &v4, 4, vec![IntegerMatrix::block_diag(&[&perm(&[1, 0]), &IntegerMatrix::identity(1)]), IntegerMatrix::block_diag(&[&IntegerMatrix::identity(2), &neg(1)])]);
    add("S3 sign on Z", &s3, 6, vec![neg(1), neg(1)]);
    add("S3 permutation on Z^3", &s3, 6, vec![perm(&[1, 0, 2]), perm(&[0, 2, 1])]);
    add("S3 standard on Z^2", &s3, 6, vec![im(&[&[0, 1], &[1, 0]]), im(&[&[-1, 0], &[-1, 1]])]);
    add("S3 signed permutation on Z^3", &s3, 6, vec![-&perm(&[1, 0, 2]), -&perm(&[0, 2, 1])]);
    add("S3 permutation+sign on Z^4", &s3, 6, vec![IntegerMatrix::block_diag(&[&perm(&[1, 0, 2]), &neg(1)]), IntegerMatrix::block_diag(&[&perm(&[0, 2, 1]), &neg(1)])]);
    cases
}

/// `|{x ∈ H¹ : k·x = 0}|` for every `k` dividing `|G|`, computed from
/// `H¹(G, M) ≅ (M/mM)^G / image(M^G)` with `m = |G|`, by enumeration.
pub fn oracle_h1_torsion_counts(case: &FiniteGroupCase) -> Vec<(i64, usize)> {
    let m = case.order;
    let n = case.matrices[0].rows();
    let to_i64 = |x: &BigInt| -> i64 { x.try_into().expect("small entries") };
    let mats: Vec<Vec<Vec<i64>>> =
        case.matrices.iter().map(|a| (0..n).map(|i| a.row(i).iter().map(to_i64).collect()).collect()).collect();
    let apply = |a: &Vec<Vec<i64>>, v: &[i64]| -> Vec<i64> {
        (0..n).map(|i| (0..n).map(|j| a[i][j] * v[j]).sum::<i64>()).collect()
    };
    let reduce = |v: Vec<i64>| -> Vec<i64> { v.into_iter().map(|x| x.rem_euclid(m)).collect() };
    let cube = |side: std::ops::Range<i64>| -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v| side.clone().map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    };
    let fixed_mod: Vec<Vec<i64>> =
        cube(0..m).into_iter().filter(|v| mats.iter().all(|a| reduce(apply(a, v)) == *v)).collect();
    let mut image: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; n]]);
    let generators: Vec<Vec<i64>> = cube(-m..m + 1)
        .into_iter()
        .filter(|v| mats.iter().all(|a| apply(a, v) == *v))
        .map(reduce)
        .collect();
    loop {
        let mut grown = image.clone();
        for x in &image {
            for g in &generators {
                grown.insert(reduce(x.iter().zip(g).map(|(a, b)| a + b).collect()));
            }
        }
        if grown.len() == image.len() {
            break;
        }
        image = grown;
    }
    (1..=m)
        .filter(|k| m % k == 0)
        .map(|k| {
            let count = fixed_mod.iter().filter(|x| image.contains(&reduce(x.iter().map(|a| a * k).collect()))).count();
            (k, count / image.len())
        })
        .collect()
}

/// `|{x : k·x = 0}|` in `⊕ ℤ/t_i`.
pub fn torsion_count(invariants: &[BigInt], k: i64) -> usize {
    invariants
        .iter()
        .map(|t| {
            let t: i64 = t.abs().try_into().expect("small");
            num_integer::gcd(t, k) as usize
        })
        .product()
}

// ---------------------------------------------------------------- random data

pub fn random_word(rng: &mut ChaCha8Rng, generators: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter { generator: rng.gen_range(0..generators), inverse: rng.gen_bool(0.5) })
            .collect(),
    )
}

pub fn random_int_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

/// A random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            if rng.gen_bool(0.2) {
                let neg = IntegerMatrix::from_fn(n, n, |a, b| {
                    if a != b {
                        BigInt::zero()
                    } else if a == i {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    }
                });
                m = &neg * &m;
            }
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2..=2));
        let e = IntegerMatrix::from_fn(n, n, |a, b| {
            if a == b {
                BigInt::one()
            } else if a == i && b == j {
                c.clone()
            } else {
                BigInt::zero()
            }
        });
        m = &e * &m;
    }
    m
}

/// Random invertible 4×4 rational matrices, half of them conjugates of
/// matrices with nontrivial Jordan blocks.
pub fn random_gl4(rng: &mut ChaCha8Rng) -> (RationalMatrix, Option<RationalMatrix>) {
    let entry = |rng: &mut ChaCha8Rng| BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
    loop {
        if rng.gen_bool(0.5) {
            let a = RationalMatrix::from_fn(4, 4, |_, _| entry(rng));
            if !a.det().unwrap().is_zero() {
                return (a, None);
            }
            continue;
        }
        let p = RationalMatrix::from_fn(4, 4, |_, _| entry(rng));
        let Ok(pinv) = p.inverse() else { continue };
        let lambda = q(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let (c0, c1) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
        if c0 == 0 {
            continue;
        }
        // Jordan block [[λ,1],[0,λ]] ⊕ companion(x² − c1·x − c0)
        let b = RationalMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) | (1, 1) => lambda.clone(),
            (0, 1) => BigRational::one(),
            (2, 3) => q(c0),
            (3, 2) => BigRational::one(),
            (3, 3) => q(c1),
            _ => BigRational::zero(),
        });
        // commutes with b: scalars on each block
        let (s1, s2) = (q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3)));
        let c = RationalMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) | (1, 1) => s1.clone(),
            (2, 2) | (3, 3) => s2.clone(),
            _ => BigRational::zero(),
        });
        let conj = |m: &RationalMatrix| &(&p * m) * &pinv;
        return (conj(&b), Some(conj(&c)));
    }
}
