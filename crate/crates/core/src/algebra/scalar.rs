use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ring element usable as a power-series coefficient.
///
/// Elements carry enough shape information (e.g. the marker count of a
/// multilinear element) to build the matching zero and one, so a series never
/// needs a separate ring descriptor.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Exact field the ring is an algebra over.
    type Scalar: Scalar;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Whether `self` and `other` live in the same ring.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Self::Scalar) -> Self;

    /// Multiplicative inverse, `None` when the element is not a unit.
    fn inverse(&self) -> Option<Self>;

    /// The constant `s` embedded in the ring of `self`.
    fn lift_like(&self, s: Self::Scalar) -> Self;

    fn add_assign(&mut self, other: &Self) {
        *self = Coeff::add(self, other);
    }

    /// `Σ a_i b_i` over the given pairs, starting from `zero`.
    ///
    /// Implementations may override this to defer normalisation until the end
    /// of the sum.
    fn sum_of_products<'a, I>(zero: &Self, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
        Self: 'a,
    {
        let mut acc = zero.clone();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc.add_assign(&a.mul(b));
        }
        acc
    }
}

/// An exact field of characteristic zero (ℚ or a subring closed enough for
/// the computations at hand).
pub trait Scalar: Coeff<Scalar = Self> + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: BigInt) -> Self;
    /// `None` when the rational is not representable in this scalar type.
    fn from_rational(q: &BigRational) -> Option<Self>;
    fn to_rational(&self) -> BigRational;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    /// `num / den`; panics when the value is not representable.
    fn ratio(num: i64, den: i64) -> Self {
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self::from_rational(&q).unwrap_or_else(|| panic!("{num}/{den} not representable"))
    }
}

impl Coeff for BigRational {
    type Scalar = BigRational;

    fn zero_like(&self) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Self) -> Self {
        self * s
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn lift_like(&self, s: Self) -> Self {
        s
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// `true` when `q` is a nonnegative integer.
pub fn is_nonnegative_integer(q: &BigRational) -> bool {
    q.is_integer() && !q.is_negative()
}
