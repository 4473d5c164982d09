//! Exact dyadic rationals `m · 2^e`.
//!
//! Every generating function built from the tree-child Motzkin class has
//! coefficients whose denominators are powers of two, so the hot series loops
//! can run on this type instead of general rationals: products are a single
//! big-integer multiplication and sums only need shifts, never a gcd.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{Coeff, Scalar};

/// Exact value `mantissa · 2^exponent` with an odd mantissa (or zero with
/// exponent 0), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Multiply by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.mantissa.is_zero() {
            return self.clone();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + e }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    fn aligned(&self, exponent: i64) -> BigInt {
        debug_assert!(exponent <= self.exponent || self.mantissa.is_zero());
        if self.mantissa.is_zero() {
            BigInt::zero()
        } else {
            &self.mantissa << (self.exponent - exponent) as usize
        }
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        if other.mantissa.is_zero() {
            return self.clone();
        }
        if self.mantissa.is_zero() {
            return if subtract { Coeff::neg(other) } else { other.clone() };
        }
        let e = self.exponent.min(other.exponent);
        let a = self.aligned(e);
        let b = other.aligned(e);
        Dyadic::new(if subtract { a - b } else { a + b }, e)
    }
}

impl Coeff for Dyadic {
    type Scalar = Dyadic;

    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }
    fn neg(&self) -> Self {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.mantissa.is_zero() || other.mantissa.is_zero() {
            return Scalar::zero();
        }
        // odd · odd is odd: already normalised
        Dyadic { mantissa: &self.mantissa * &other.mantissa, exponent: self.exponent + other.exponent }
    }
    fn scale(&self, s: &Self) -> Self {
        Coeff::mul(self, s)
    }
    fn inverse(&self) -> Option<Self> {
        if self.mantissa.abs().is_one() {
            Some(Dyadic { mantissa: self.mantissa.clone(), exponent: -self.exponent })
        } else {
            None
        }
    }
    fn lift_like(&self, s: Self) -> Self {
        s
    }

    fn sum_of_products<'a, I>(_zero: &Self, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        let terms: Vec<(BigInt, i64)> = pairs
            .filter(|(a, b)| !a.mantissa.is_zero() && !b.mantissa.is_zero())
            .map(|(a, b)| (&a.mantissa * &b.mantissa, a.exponent + b.exponent))
            .collect();
        let Some(min_e) = terms.iter().map(|t| t.1).min() else {
            return Scalar::zero();
        };
        let mut acc = BigInt::zero();
        for (m, e) in terms {
            if e == min_e {
                acc += m;
            } else {
                acc += m << (e - min_e) as usize;
            }
        }
        Dyadic::new(acc, min_e)
    }
}

impl Scalar for Dyadic {
    fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }
    fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: 0 }
    }
    fn from_integer(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let den = q.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if !(den >> tz as usize).is_one() {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
    }
    fn to_rational(&self) -> BigRational {
        match self.exponent.cmp(&0) {
            Ordering::Less => BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize),
            _ => BigRational::from_integer(&self.mantissa << self.exponent as usize),
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Integer value of `q` if it is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else if q.numer().is_multiple_of(q.denom()) {
        Some(q.numer() / q.denom())
    } else {
        None
    }
}
