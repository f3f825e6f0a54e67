//! Characteristic/minimal polynomials, the multiplicative Jordan–Chevalley
//! decomposition, finite-order detection and the nilpotent exp/log pair.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::poly::{strip_cyclotomic_factors, Poly};
use crate::{Error, Exec, Result};

/// Multiplicative Jordan decomposition `A = S·U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: RationalMatrix,
    pub unipotent: RationalMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

/// Characteristic polynomial `det(x·I − A)` (Faddeev–LeVerrier).
pub fn char_poly(a: &RationalMatrix) -> Result<Poly> {
    let n = a.require_square()?;
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let id = RationalMatrix::identity(n);
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
    }
    Ok(Poly::new(coeffs))
}

/// Minimal polynomial via the first linear dependency among `I, A, A², …`.
pub fn min_poly(a: &RationalMatrix) -> Result<Poly> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut powers = vec![RationalMatrix::identity(n).into_entries()];
    let mut current = RationalMatrix::identity(n);
    for k in 1..=n {
        current = &current * a;
        powers.push(current.entries().to_vec());
        let system = RationalMatrix::from_columns(n * n, &powers);
        let null = system.nullspace();
        if let Some(v) = null.first() {
            // first dependency: the kernel is one-dimensional and v[k] = 1
            debug_assert_eq!(null.len(), 1);
            let lead = v[k].clone();
            return Ok(Poly::new(v.iter().map(|c| c / &lead).collect()));
        }
    }
    Err(Error::Internal("no polynomial relation up to degree n (Cayley-Hamilton)".into()))
}

/// Multiplicative Jordan–Chevalley decomposition of an invertible matrix.
///
/// The semisimple part is found by Newton iteration on the squarefree part
/// `p` of the minimal polynomial, `S ← S − p(S)·p'(S)⁻¹`, starting at `A`.
/// Every iterate is a polynomial in `A`, hence so are `S` and `U = S⁻¹A`.
pub fn jordan_chevalley(a: &RationalMatrix) -> Result<JordanPair> {
    a.require_square()?;
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let p = min_poly(a)?.squarefree_part();
    let dp = p.derivative();
    let mut s = a.clone();
    for _ in 0..64 {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let unipotent = &s.inverse()? * a;
            return Ok(JordanPair { semisimple: s, unipotent });
        }
        let step = &ps * &dp.eval_matrix(&s).inverse()?;
        s = &s - &step;
    }
    Err(Error::Internal("Newton iteration for the semisimple part did not converge".into()))
}

/// Decomposes a batch of matrices with the chosen execution strategy.
pub fn jordan_chevalley_batch(matrices: &[RationalMatrix], exec: Exec) -> Vec<Result<JordanPair>> {
    exec.map(matrices.iter().collect(), jordan_chevalley)
}

/// Order of an invertible matrix over ℚ.
///
/// The matrix has finite order iff its minimal polynomial is squarefree and
/// a product of distinct cyclotomic polynomials `Φ_m`; the order is then the
/// lcm of those `m`. Only `m` with `φ(m) ≤ n` can occur.
pub fn is_finite_order(a: &RationalMatrix) -> Result<Order> {
    let n = a.require_square()?;
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let mp = min_poly(a)?;
    if !mp.is_squarefree() || !mp.has_integer_coefficients() {
        return Ok(Order::Infinite);
    }
    // φ(m) ≥ sqrt(m/2), so φ(m) ≤ n forces m ≤ 2n²
    let (removed, rest) = strip_cyclotomic_factors(&mp, (2 * n * n).max(2));
    let order = removed.iter().fold(1u64, |acc, &m| acc.lcm(&(m as u64)));
    if rest.degree() != Some(0) {
        return Ok(Order::Infinite);
    }
    if !a.pow(order).is_identity() {
        return Err(Error::Internal(format!("A^{order} != I despite cyclotomic minimal polynomial")));
    }
    Ok(Order::Finite(order))
}

fn is_nilpotent(n: &RationalMatrix) -> bool {
    n.pow(n.rows() as u64).is_zero()
}

pub fn is_unipotent(u: &RationalMatrix) -> bool {
    u.is_square() && is_nilpotent(&(u - &RationalMatrix::identity(u.rows())))
}

/// `exp(N) = Σ N^k / k!`, a finite sum for nilpotent `N`.
pub fn nilpotent_exp(n: &RationalMatrix) -> Result<RationalMatrix> {
    let dim = n.require_square()?;
    if !is_nilpotent(n) {
        return Err(Error::NotNilpotent);
    }
    let mut acc = RationalMatrix::identity(dim);
    let mut term = RationalMatrix::identity(dim);
    for k in 1..=dim {
        term = (&term * n).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `log(U) = Σ (−1)^{k+1} (U − I)^k / k` for unipotent `U`.
pub fn nilpotent_log(u: &RationalMatrix) -> Result<RationalMatrix> {
    let dim = u.require_square()?;
    let x = u - &RationalMatrix::identity(dim);
    if !is_nilpotent(&x) {
        return Err(Error::NotUnipotent);
    }
    let mut acc = RationalMatrix::zeros(dim, dim);
    let mut power = RationalMatrix::identity(dim);
    for k in 1..=dim {
        power = &power * &x;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k)));
    }
    Ok(acc)
}
