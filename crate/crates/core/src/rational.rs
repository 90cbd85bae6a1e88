//! Exact rational arithmetic extended with positive infinity.
//!
//! Every operation is checked: 64-bit overflow surfaces as an error, never as
//! a wrapped value. Infinity absorbs addition and dominates every finite
//! value; `INFINITY <= INFINITY` holds.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Rational> {
        if den == 0 {
            return Err(Error::Precondition("rational with zero denominator".into()));
        }
        let sign = if den < 0 { -1 } else { 1 };
        let num = num.checked_mul(sign).ok_or_else(|| overflow("negate"))?;
        let den = den.checked_mul(sign).ok_or_else(|| overflow("negate"))?;
        let g = gcd(num, den);
        if g == 0 {
            return Ok(Rational { num: 0, den: 1 });
        }
        Ok(Rational { num: num / g, den: den / g })
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn zero() -> Rational {
        Rational::integer(0)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn checked_add(&self, other: &Rational) -> Result<Rational> {
        let a = self.num.checked_mul(other.den).ok_or_else(|| overflow("add"))?;
        let b = other.num.checked_mul(self.den).ok_or_else(|| overflow("add"))?;
        let num = a.checked_add(b).ok_or_else(|| overflow("add"))?;
        let den = self.den.checked_mul(other.den).ok_or_else(|| overflow("add"))?;
        Rational::new(num, den)
    }

    pub fn checked_mul(&self, other: &Rational) -> Result<Rational> {
        // Cross-reduce first so i64 survives longer chains.
        let g1 = gcd(self.num, other.den).max(1);
        let g2 = gcd(other.num, self.den).max(1);
        let num = (self.num / g1).checked_mul(other.num / g2).ok_or_else(|| overflow("mul"))?;
        let den = (self.den / g2).checked_mul(other.den / g1).ok_or_else(|| overflow("mul"))?;
        Rational::new(num, den)
    }
}

fn overflow(op: &str) -> Error {
    Error::Overflow(format!("64-bit rational overflow in {op}"))
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare via i128 so the comparison itself cannot overflow.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A cost: an exact rational or positive infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostValue {
    Finite(Rational),
    Infinity,
}

impl CostValue {
    pub fn zero() -> CostValue {
        CostValue::Finite(Rational::zero())
    }

    pub fn integer(n: i64) -> CostValue {
        CostValue::Finite(Rational::integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CostValue::Finite(_))
    }

    pub fn checked_add(&self, other: &CostValue) -> Result<CostValue> {
        match (self, other) {
            (CostValue::Finite(a), CostValue::Finite(b)) => Ok(CostValue::Finite(a.checked_add(b)?)),
            _ => Ok(CostValue::Infinity),
        }
    }

    /// Weighted contribution w * cost.
    pub fn checked_mul_rational(&self, w: &Rational) -> Result<CostValue> {
        match self {
            CostValue::Finite(a) => Ok(CostValue::Finite(a.checked_mul(w)?)),
            CostValue::Infinity => Ok(CostValue::Infinity),
        }
    }

    /// Total order with `Infinity` as the top element (so inf <= inf).
    pub fn le(&self, other: &CostValue) -> bool {
        match (self, other) {
            (CostValue::Finite(a), CostValue::Finite(b)) => a <= b,
            (CostValue::Finite(_), CostValue::Infinity) => true,
            (CostValue::Infinity, CostValue::Finite(_)) => false,
            (CostValue::Infinity, CostValue::Infinity) => true,
        }
    }

    pub fn lt(&self, other: &CostValue) -> bool {
        self.le(other) && self != other
    }
}

impl fmt::Display for CostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostValue::Finite(r) => write!(f, "{r}"),
            CostValue::Infinity => write!(f, "inf"),
        }
    }
}
