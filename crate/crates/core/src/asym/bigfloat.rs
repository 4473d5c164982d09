//! Binary floating point with a big-integer significand.
//!
//! Values are `mant · 2^exp`. Every operation takes the target precision in
//! bits and rounds half-to-even. Elementary functions evaluate their series
//! in fixed point with guard bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u64 = 32;

#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

/// `x / 2^s` rounded half-to-even.
fn shr_round(x: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let q: BigInt = &a >> s;
    let rem = &a - (&q << s);
    let half = BigInt::one() << (s - 1);
    let up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => q.is_odd(),
    };
    let q = if up { q + 1 } else { q };
    if neg {
        -q
    } else {
        q
    }
}

/// Bits needed to make `x` (given as a decimal digit count) come out right.
pub fn bits_for_digits(digits: u32) -> u64 {
    ((digits as f64 + 10.0) * std::f64::consts::LOG2_10).ceil() as u64 + GUARD
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        BigFloat { mant: BigInt::from(v), exp: 0 }.normalized()
    }

    /// Exact when `prec` covers the integer.
    pub fn from_bigint(v: &BigInt, prec: u64) -> Self {
        BigFloat { mant: v.clone(), exp: 0 }.round(prec)
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        BigFloat::from_bigint(q.numer(), prec + GUARD).div(&BigFloat::from_bigint(q.denom(), prec + GUARD), prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u64) -> Self {
        BigFloat::from_int(num).div(&BigFloat::from_int(den), prec)
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    /// Round to at most `prec` significant bits.
    pub fn round(self, prec: u64) -> Self {
        let b = bits(&self.mant);
        if b <= prec {
            return self.normalized();
        }
        let s = b - prec;
        BigFloat { mant: shr_round(&self.mant, s), exp: self.exp + s as i64 }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// `floor(log2 |x|)`, meaningless for zero.
    pub fn ilog2(&self) -> i64 {
        bits(&self.mant) as i64 - 1 + self.exp
    }

    pub fn add(&self, other: &Self, prec: u64) -> Self {
        if self.is_zero() {
            return other.clone().round(prec);
        }
        if other.is_zero() {
            return self.clone().round(prec);
        }
        let (hi, lo) = if self.ilog2() >= other.ilog2() { (self, other) } else { (other, self) };
        // the smaller operand only contributes a sticky bit beyond this gap
        let gap = hi.ilog2() - lo.ilog2();
        if gap > prec as i64 + 2 * GUARD as i64 {
            let bump = BigFloat { mant: lo.mant.signum(), exp: hi.ilog2() - prec as i64 - 2 * GUARD as i64 };
            return hi.add(&bump, prec);
        }
        let e = hi.exp.min(lo.exp);
        let a = &hi.mant << (hi.exp - e) as u64;
        let b = &lo.mant << (lo.exp - e) as u64;
        BigFloat { mant: a + b, exp: e }.round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u64) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u64) -> Self {
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.round(prec)
    }

    pub fn div(&self, other: &Self, prec: u64) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let shift = (prec + GUARD + bits(&other.mant)).saturating_sub(bits(&self.mant));
        let num = &self.mant << shift;
        let (q, r) = num.div_rem(&other.mant);
        // fold the remainder into a sticky bit below the guard bits
        let q = (q << 1u32) + if r.is_zero() { BigInt::zero() } else { q_sign(&self.mant, &other.mant) };
        BigFloat { mant: q, exp: self.exp - other.exp - shift as i64 - 1 }.round(prec)
    }

    pub fn mul_int(&self, v: i64, prec: u64) -> Self {
        self.mul(&BigFloat::from_int(v), prec)
    }

    pub fn sqrt(&self, prec: u64) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let target = 2 * (prec + GUARD);
        let mut shift = target.saturating_sub(bits(&self.mant)) as i64;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let r = (r << 1u32) + if exact { BigInt::zero() } else { BigInt::one() };
        BigFloat { mant: r, exp: (self.exp - shift) / 2 - 1 }.round(prec)
    }

    /// Integer and fixed-point view: `round(x · 2^w)`.
    fn to_fixed(&self, w: u64) -> BigInt {
        let e = self.exp + w as i64;
        if e >= 0 {
            &self.mant << e as u64
        } else {
            shr_round(&self.mant, (-e) as u64)
        }
    }

    fn from_fixed(x: BigInt, w: u64, prec: u64) -> Self {
        BigFloat { mant: x, exp: -(w as i64) }.round(prec)
    }

    pub fn ln2(prec: u64) -> Self {
        let w = prec + GUARD;
        BigFloat::from_fixed(ln2_fixed(w), w, prec)
    }

    pub fn pi(prec: u64) -> Self {
        let w = prec + GUARD;
        BigFloat::from_fixed(pi_fixed(w), w, prec)
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self, prec: u64) -> Self {
        assert!(!self.is_negative() && !self.is_zero(), "logarithm of a non-positive number");
        // x = m · 2^e with m in [1, 2)
        let e = self.ilog2();
        let w = prec + GUARD + 64;
        let m = BigFloat { mant: self.mant.clone(), exp: self.exp - e };
        let mf = m.to_fixed(w);
        let one = BigInt::one() << w;
        let t = ((&mf - &one) << w) / (&mf + &one);
        let lnm = atanh_fixed(&t, w) << 1u32;
        let total = lnm + ln2_fixed(w) * BigInt::from(e);
        BigFloat::from_fixed(total, w, prec)
    }

    pub fn exp(&self, prec: u64) -> Self {
        let mag = self.ilog2().max(0) as u64;
        let w = prec + GUARD + mag + 8;
        let x = self.to_fixed(w);
        let l2 = ln2_fixed(w);
        // x = q ln2 + r with |r| <= ln2 / 2
        let (q, r) = {
            let q = (&x + (&l2 >> 1u32)).div_floor(&l2);
            let r = &x - &q * &l2;
            (q, r)
        };
        // further halve r eight times, then square back
        let halvings = 8u32;
        let r_small = r >> halvings;
        let one = BigInt::one() << w;
        let mut sum = one.clone();
        let mut term = one;
        let mut i = 1u64;
        loop {
            term = ((&term * &r_small) >> w) / BigInt::from(i);
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..halvings {
            sum = (&sum * &sum) >> w;
        }
        let q = q.to_i64().expect("exponent out of range");
        BigFloat { mant: sum, exp: q - w as i64 }.round(prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bits(&self.mant);
        let keep = b.min(60);
        let m = shr_round(&self.mant, b - keep).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + (b - keep) as i64) as i32)
    }

    /// `round(|x| / 10^pos)` with the sign of `x`, computed exactly.
    pub fn scaled_integer(&self, pos: i64) -> BigInt {
        let mut num = self.mant.abs();
        let mut den = BigInt::one();
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let ten = BigInt::from(10);
        if pos >= 0 {
            den *= num_traits::pow(ten, pos as usize);
        } else {
            num *= num_traits::pow(ten, (-pos) as usize);
        }
        let v = round_div(&num, &den);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Scientific rendering with `digits` significant digits.
    pub fn to_scientific(&self, digits: u32) -> Scientific {
        if self.is_zero() {
            return Scientific { negative: false, digits: "0".repeat(digits as usize), exponent: 0 };
        }
        let approx = ((self.ilog2() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let lo = num_traits::pow(BigInt::from(10), digits as usize - 1);
        let hi = &lo * 10;
        let mut e = approx;
        loop {
            let v = self.scaled_integer(e - digits as i64 + 1).abs();
            if v >= hi {
                e += 1;
            } else if v < lo {
                e -= 1;
            } else {
                return Scientific { negative: self.is_negative(), digits: v.to_string(), exponent: e };
            }
        }
    }
}

fn q_sign(a: &BigInt, b: &BigInt) -> BigInt {
    if (a.sign() == Sign::Minus) != (b.sign() == Sign::Minus) {
        BigInt::from(-1)
    } else {
        BigInt::one()
    }
}

/// `num / den` rounded half-to-even, both nonnegative.
pub(crate) fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice: BigInt = &r << 1u32;
    match twice.cmp(den) {
        Ordering::Greater => q + 1,
        Ordering::Less => q,
        Ordering::Equal if q.is_odd() => q + 1,
        Ordering::Equal => q,
    }
}

/// `atanh(t / 2^w) · 2^w` for `|t| < 2^w / 2`.
fn atanh_fixed(t: &BigInt, w: u64) -> BigInt {
    let t2 = (t * t) >> w;
    let mut power = t.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(k);
        power = (&power * &t2) >> w;
        k += 2;
    }
    sum
}

/// `atan(1/q) · 2^w` by the alternating series.
fn atan_inv_fixed(q: u64, w: u64) -> BigInt {
    let q2 = BigInt::from(q * q);
    let mut power = (BigInt::one() << w) / BigInt::from(q);
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    let mut plus = true;
    while !power.is_zero() {
        let term = &power / BigInt::from(k);
        if plus {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &q2;
        k += 2;
        plus = !plus;
    }
    sum
}

fn ln2_fixed(w: u64) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let third = (BigInt::one() << (w + 8)) / BigInt::from(3);
    atanh_fixed(&third, w + 8) >> 7u32
}

fn pi_fixed(w: u64) -> BigInt {
    // Machin: π = 16 atan(1/5) - 4 atan(1/239)
    let w2 = w + 16;
    ((atan_inv_fixed(5, w2) << 4u32) - (atan_inv_fixed(239, w2) << 2u32)) >> 16u32
}

/// Sign, significant digits and decimal exponent of a rendered number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scientific {
    pub negative: bool,
    pub digits: String,
    pub exponent: i64,
}

impl Scientific {
    /// Round an exact integer to `digits` significant digits.
    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        BigFloat { mant: v.clone(), exp: 0 }.to_scientific(digits)
    }

    /// `d.ddd` form of the significand.
    pub fn mantissa(&self) -> String {
        let (head, tail) = self.digits.split_at(1);
        let sign = if self.negative { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}")
        } else {
            format!("{sign}{head}.{tail}")
        }
    }
}

impl fmt::Display for Scientific {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", self.mantissa(), self.exponent)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scientific(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(10).max(1) as u32;
        write!(f, "{}", self.to_scientific(d))
    }
}
