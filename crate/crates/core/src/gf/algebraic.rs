use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::series::TruncSeries;

/// `F(z) = z (a(z²) - b(z²) √(1-2z²)) / (1-2z²)^p` with half-integer `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicGF {
    a_poly: Vec<BigRational>,
    b_poly: Vec<BigRational>,
    twice_p: u32,
}

impl AlgebraicGF {
    /// `twice_p` must be odd (so `p` is a proper half-integer).
    pub fn new(a_poly: Vec<BigRational>, b_poly: Vec<BigRational>, twice_p: u32) -> Result<Self> {
        if twice_p.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("exponent 2p = {twice_p} must be odd")));
        }
        Ok(AlgebraicGF { a_poly, b_poly, twice_p })
    }

    /// Build from `(numerator, denominator)` coefficient pairs, lowest degree first.
    pub fn from_ratios(a: &[(i64, i64)], b: &[(i64, i64)], twice_p: u32) -> Result<Self> {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        Self::new(conv(a), conv(b), twice_p)
    }

    pub fn a_poly(&self) -> &[BigRational] {
        &self.a_poly
    }

    pub fn b_poly(&self) -> &[BigRational] {
        &self.b_poly
    }

    pub fn twice_p(&self) -> u32 {
        self.twice_p
    }

    /// Replace one coefficient (used to check that verification notices edits).
    pub fn with_a_coeff(mut self, degree: usize, value: BigRational) -> Self {
        if self.a_poly.len() <= degree {
            self.a_poly.resize(degree + 1, <BigRational as Zero>::zero());
        }
        self.a_poly[degree] = value;
        self
    }

    pub fn eval_a(&self, w: &BigRational) -> BigRational {
        horner(&self.a_poly, w)
    }

    pub fn eval_b(&self, w: &BigRational) -> BigRational {
        horner(&self.b_poly, w)
    }

    /// Power-series expansion to `z^order`.
    pub fn expand<S: Scalar>(&self, order: usize) -> Result<TruncSeries<S>> {
        let zero = S::zero();
        let lift = |p: &[BigRational]| -> Result<TruncSeries<S>> {
            let mut coeffs = vec![S::zero(); order + 1];
            for (i, c) in p.iter().enumerate() {
                if 2 * i > order {
                    break;
                }
                coeffs[2 * i] = S::from_rational(c).ok_or_else(|| Error::InvalidArgument(format!("coefficient {c} not representable")))?;
            }
            TruncSeries::new(coeffs)
        };
        let u = TruncSeries::from_poly(order, &zero, &[S::one(), S::zero(), S::from_i64(-2)]);
        let root = u.sqrt()?;
        let a = lift(&self.a_poly)?;
        let b = lift(&self.b_poly)?;
        let numer = a.sub(&b.mul(&root)?)?;
        let denom = u.pow((self.twice_p - 1) / 2)?.mul(&root)?;
        numer.mul(&denom.recip()?)?.shift(1)
    }
}

fn horner(p: &[BigRational], w: &BigRational) -> BigRational {
    p.iter().rev().fold(<BigRational as Zero>::zero(), |acc, c| acc * w + c)
}

/// `n! · c` as an integer, if it is one.
pub fn egf_count(c: &BigRational, n: usize) -> Option<BigInt> {
    let scaled = c * BigRational::from_integer(factorial(n));
    crate::algebra::rational_to_integer(&scaled)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}
