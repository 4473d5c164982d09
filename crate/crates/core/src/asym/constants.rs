use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::{catalog, factorial, NetworkClass};

use super::bigfloat::BigFloat;

/// Constants of `count ≈ (√2/e)^n n^{n+2k-1} (A + B/√n)` for odd `n`,
/// stored as rational multiples: `A = a·√2`, `B = b·√π`, `c_k = c·√2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymConstants {
    pub class: NetworkClass,
    pub k: usize,
    pub a_over_sqrt2: BigRational,
    pub b_over_sqrtpi: BigRational,
    pub c_over_sqrt2: BigRational,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The closed-form constants for `k <= 3`.
pub fn stated_constants(class: NetworkClass, k: usize) -> Result<AsymConstants> {
    let (a, c) = match k {
        1 => (q(1, 2), q(1, 4)),
        2 => (q(1, 16), q(1, 32)),
        3 => (q(1, 192), q(1, 384)),
        _ => return Err(Error::UnsupportedK(k)),
    };
    let b = match (class, k) {
        (NetworkClass::Normal, 1) => q(-3, 2),
        (NetworkClass::Normal, 2) => q(-3, 8),
        (NetworkClass::Normal, _) => q(-3, 64),
        (NetworkClass::TreeChild, 1) => q(-1, 2),
        (NetworkClass::TreeChild, 2) => q(-1, 8),
        (NetworkClass::TreeChild, _) => q(-1, 64),
    };
    Ok(AsymConstants { class, k, a_over_sqrt2: a, b_over_sqrtpi: b, c_over_sqrt2: c })
}

fn double_factorial(m: i64) -> BigInt {
    (1..=m).rev().step_by(2).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Constants read off the catalog closed form by singularity analysis at
/// `z = ±1/√2`: `A = √2 ã(1/2) / (4k-3)!!` and
/// `B = -4√π b̃(1/2) / (4^k (2k-2)!)`.
pub fn derived_constants(class: NetworkClass, k: usize) -> Result<AsymConstants> {
    let gf = catalog(class, k)?;
    let half = q(1, 2);
    let a = gf.eval_a(&half) / BigRational::from_integer(double_factorial(4 * k as i64 - 3));
    let den = BigInt::from(4).pow(k as u32) * factorial(2 * k - 2);
    let b = -gf.eval_b(&half) * q(4, 1) / BigRational::from_integer(den);
    let c = &a / q(2, 1);
    Ok(AsymConstants { class, k, a_over_sqrt2: a, b_over_sqrtpi: b, c_over_sqrt2: c })
}

impl AsymConstants {
    pub fn a(&self, prec: u64) -> BigFloat {
        BigFloat::from_rational(&self.a_over_sqrt2, prec).mul(&BigFloat::from_int(2).sqrt(prec), prec)
    }

    pub fn b(&self, prec: u64) -> BigFloat {
        BigFloat::from_rational(&self.b_over_sqrtpi, prec).mul(&BigFloat::pi(prec).sqrt(prec), prec)
    }

    pub fn c(&self, prec: u64) -> BigFloat {
        BigFloat::from_rational(&self.c_over_sqrt2, prec).mul(&BigFloat::from_int(2).sqrt(prec), prec)
    }
}
