//! The orders `ℤ + ℤ√d` in real quadratic fields and their norm-one units.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntegerMatrix;
use crate::{Error, Result};

/// `ℤ + ℤ√d` for a non-square `d ≥ 2` (not necessarily squarefree).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadOrder {
    d: BigInt,
}

impl QuadOrder {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d < BigInt::from(2) {
            return Err(Error::InvalidOrder(d.to_string()));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(Error::PerfectSquare(d.to_string()));
        }
        Ok(QuadOrder { d })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn elem(&self, x: impl Into<BigInt>, y: impl Into<BigInt>) -> QuadElem {
        QuadElem { x: x.into(), y: y.into(), order: self.clone() }
    }

    pub fn one(&self) -> QuadElem {
        self.elem(1, 0)
    }

    /// The generator `ω = √d`.
    pub fn omega(&self) -> QuadElem {
        self.elem(0, 1)
    }

    /// Matrix of the Galois conjugation on the basis `(1, ω)`.
    pub fn conjugation_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_i64(&[&[1, 0], &[0, -1]])
    }
}

/// `x + y√d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub x: BigInt,
    pub y: BigInt,
    order: QuadOrder,
}

impl QuadElem {
    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { x: self.x.clone(), y: -&self.y, order: self.order.clone() }
    }

    /// `e·ē = x² − d·y²`
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x - self.order.d() * &self.y * &self.y
    }

    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.x
    }

    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem> {
        if self.order != other.order {
            return Err(Error::ParentMismatch);
        }
        let d = self.order.d();
        Ok(QuadElem {
            x: &self.x * &other.x + d * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
            order: self.order.clone(),
        })
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem> {
        if self.order != other.order {
            return Err(Error::ParentMismatch);
        }
        Ok(QuadElem { x: &self.x + &other.x, y: &self.y + &other.y, order: self.order.clone() })
    }

    /// Multiplication by `self` on the basis `(1, ω)`, acting on columns:
    /// `[[x, y·d], [y, x]]`.
    pub fn mult_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(vec![
            vec![self.x.clone(), &self.y * self.order.d()],
            vec![self.y.clone(), self.x.clone()],
        ])
        .expect("2x2")
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}√{}", self.x, sign, self.y.abs(), self.order.d())
    }
}

/// Fundamental solution of `a² − d·b² = 1` with `b ≥ 1` minimal, returned
/// as the unit `ε = a + b√d`.
///
/// Runs the periodic continued-fraction expansion of `√d` and checks each
/// convergent `h/k`; the first with `h² − d·k² = 1` is the fundamental one.
pub fn fundamental_pell(d: impl Into<BigInt>) -> Result<QuadElem> {
    let order = QuadOrder::new(d)?;
    let d = order.d().clone();
    let a0 = d.sqrt();
    let (mut m, mut den, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    // convergents h_{-1}/k_{-1} = 1/0, h_0/k_0 = a0/1
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - &d * &k * &k == BigInt::one() {
            return Ok(order.elem(h, k));
        }
        m = &den * &a - &m;
        den = (&d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}
