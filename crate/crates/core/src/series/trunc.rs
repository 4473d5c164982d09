use std::fmt;

use crate::algebra::{Coeff, Scalar};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};

/// Below this order the Cauchy product always runs sequentially.
const PAR_MIN_ORDER: usize = 48;

/// Power series in `z` truncated after `z^order`.
///
/// All coefficients live in the same ring (same marker count for multilinear
/// coefficients); binary operations truncate to the smaller order.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidArgument("a series needs at least one coefficient".into()));
        };
        if coeffs.iter().any(|c| !c.compatible(first)) {
            return Err(Error::RingMismatch);
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn zero(order: usize, like: &C) -> Self {
        TruncSeries { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::monomial(order, 0, c)
    }

    pub fn one(order: usize, like: &C) -> Self {
        Self::constant(order, like.one_like())
    }

    /// `c · z^power`, truncated.
    pub fn monomial(order: usize, power: usize, c: C) -> Self {
        let mut s = Self::zero(order, &c);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Series from the polynomial `Σ c_i z^i`, truncated or zero-padded to `order`.
    pub fn from_poly(order: usize, like: &C, poly: &[C]) -> Self {
        let mut s = Self::zero(order, like);
        for (i, c) in poly.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn ring_like(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        TruncSeries { coeffs }
    }

    fn check(&self, other: &Self) -> Result<usize> {
        if !self.ring_like().compatible(other.ring_like()) {
            return Err(Error::RingMismatch);
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        Ok(TruncSeries { coeffs: (0..=n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.check(other)?;
        Ok(TruncSeries { coeffs: (0..=n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect() })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(Coeff::neg).collect() }
    }

    pub fn scale(&self, s: &C::Scalar) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// Multiply every coefficient by the ring element `c`.
    pub fn mul_coeff(&self, c: &C) -> Result<Self> {
        if !self.ring_like().compatible(c) {
            return Err(Error::RingMismatch);
        }
        Ok(TruncSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() })
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Mode::default())
    }

    pub fn mul_with(&self, other: &Self, mode: Mode) -> Result<Self> {
        let n = self.check(other)?;
        let zero = self.ring_like().zero_like();
        let a = &self.coeffs;
        let b = &other.coeffs;
        // leading zeros are common (z-power prefactors); skip them
        let lo_a = a.iter().position(|c| !c.is_zero()).unwrap_or(a.len());
        let lo_b = b.iter().position(|c| !c.is_zero()).unwrap_or(b.len());
        let term = |m: usize| -> C {
            if m < lo_a + lo_b {
                return zero.clone();
            }
            let pairs = (lo_a..=m - lo_b).map(|i| (&a[i], &b[m - i]));
            C::sum_of_products(&zero, pairs)
        };
        let mode = if n < PAR_MIN_ORDER { Mode::Sequential } else { mode };
        Ok(TruncSeries { coeffs: exec::map_range(mode, n + 1, term) })
    }

    /// Multiply by `z^m` (`m ≥ 0`) or divide by `z^{-m}` (`m < 0`, which
    /// requires the low coefficients to vanish). The order is preserved when
    /// multiplying and reduced by `|m|` when dividing.
    pub fn shift(&self, m: isize) -> Result<Self> {
        if m >= 0 {
            let m = m as usize;
            let n = self.order();
            let mut coeffs = vec![self.ring_like().zero_like(); (m).min(n + 1)];
            coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(m)).cloned());
            return Ok(TruncSeries { coeffs });
        }
        let d = m.unsigned_abs();
        if d > self.order() {
            return Err(Error::InvalidArgument(format!("cannot divide an order-{} series by z^{d}", self.order())));
        }
        if let Some(index) = self.coeffs[..d].iter().position(|c| !c.is_zero()) {
            return Err(Error::InexactShift { shift: d, index });
        }
        Ok(TruncSeries { coeffs: self.coeffs[d..].to_vec() })
    }

    /// Multiplicative inverse to the same order, by the triangular recurrence
    /// `r_n = -r_0 Σ_{i=1}^{n} a_i r_{n-i}`.
    pub fn recip(&self) -> Result<Self> {
        let r0 = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        let zero = r0.zero_like();
        let mut r: Vec<C> = Vec::with_capacity(self.coeffs.len());
        r.push(r0.clone());
        for n in 1..=self.order() {
            let s = C::sum_of_products(&zero, (1..=n).map(|i| (&self.coeffs[i], &r[n - i])));
            r.push(r0.mul(&s).neg());
        }
        Ok(TruncSeries { coeffs: r })
    }

    /// Principal square root of a series with constant coefficient exactly 1,
    /// by `r_n = (s_n - Σ_{i=1}^{n-1} r_i r_{n-i}) / 2`.
    pub fn sqrt(&self) -> Result<Self> {
        let one = self.ring_like().one_like();
        if self.coeffs[0] != one {
            return Err(Error::SqrtConstant);
        }
        let half = C::Scalar::ratio(1, 2);
        let zero = one.zero_like();
        let mut r: Vec<C> = Vec::with_capacity(self.coeffs.len());
        r.push(one);
        for n in 1..=self.order() {
            let cross = C::sum_of_products(&zero, (1..n).map(|i| (&r[i], &r[n - i])));
            r.push(self.coeffs[n].sub(&cross).scale(&half));
        }
        Ok(TruncSeries { coeffs: r })
    }

    /// Square root by Newton iteration `r ← (r + s/r) / 2` with precision
    /// doubling. Same contract as [`TruncSeries::sqrt`]; kept as an
    /// independent route for cross-checking.
    pub fn sqrt_newton(&self) -> Result<Self> {
        let one = self.ring_like().one_like();
        if self.coeffs[0] != one {
            return Err(Error::SqrtConstant);
        }
        let half = C::Scalar::ratio(1, 2);
        let target = self.order();
        let mut r = TruncSeries::one(0, &one);
        let mut prec = 0usize;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let r_ext = r.padded(prec);
            let s = self.truncate(prec);
            let q = s.mul(&r_ext.recip()?)?;
            r = r_ext.add(&q)?.scale(&half);
        }
        Ok(r.padded(target))
    }

    fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, self.ring_like().zero_like());
        coeffs.truncate(order + 1);
        TruncSeries { coeffs }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = TruncSeries::one(self.order(), self.ring_like());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})z^{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Dyadic, MultilinearElem};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn qs(order: usize, v: &[(i64, i64)]) -> TruncSeries<Q> {
        let poly: Vec<Q> = v.iter().map(|&(n, d)| q(n, d)).collect();
        TruncSeries::from_poly(order, &q(0, 1), &poly)
    }

    #[test]
    fn product_example() {
        let a = qs(2, &[(1, 1), (1, 1)]);
        let b = qs(2, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), qs(2, &[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn shift_examples() {
        let s = qs(4, &[(0, 1), (0, 1), (1, 1), (1, 1)]);
        assert_eq!(s.shift(-2).unwrap(), qs(2, &[(1, 1), (1, 1)]));
        assert_eq!(qs(3, &[(1, 1), (1, 1)]).shift(-1), Err(Error::InexactShift { shift: 1, index: 0 }));
        assert_eq!(qs(3, &[(1, 1), (2, 1)]).shift(2).unwrap(), qs(3, &[(0, 1), (0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn geometric_series() {
        let r = qs(6, &[(1, 1), (-1, 1)]).recip().unwrap();
        assert!(r.coeffs().iter().all(|c| *c == q(1, 1)));
        assert_eq!(qs(3, &[(0, 1), (1, 1)]).recip(), Err(Error::NotInvertible));
    }

    #[test]
    fn geometric_with_nilpotent_ratio() {
        // 1 - z (1 + y1)
        let one = MultilinearElem::<Q>::one(1).unwrap();
        let ratio = one.add(&MultilinearElem::marker_sum(1, 1).unwrap());
        let s = TruncSeries::from_poly(4, &one, &[one.clone(), ratio.neg()]);
        let r = s.recip().unwrap();
        let expect = MultilinearElem::from_terms(1, [(0, q(1, 1)), (1, q(2, 1))]).unwrap();
        assert_eq!(r.coeff(2), &expect);
    }

    #[test]
    fn sqrt_binomial() {
        let s = qs(8, &[(1, 1), (0, 1), (-2, 1)]).sqrt().unwrap();
        assert_eq!(s, qs(8, &[(1, 1), (0, 1), (-1, 1), (0, 1), (-1, 2), (0, 1), (-1, 2), (0, 1), (-5, 8)]));
        assert_eq!(qs(3, &[(1, 1)]).sqrt().unwrap(), qs(3, &[(1, 1)]));
        assert_eq!(qs(3, &[(4, 1), (1, 1)]).sqrt(), Err(Error::SqrtConstant));
    }

    #[test]
    fn sqrt_newton_agrees() {
        let s = qs(20, &[(1, 1), (3, 2), (-2, 1), (0, 1), (5, 7)]);
        assert_eq!(s.sqrt_newton().unwrap(), s.sqrt().unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let a = TruncSeries::one(3, &MultilinearElem::<Dyadic>::one(1).unwrap());
        let b = TruncSeries::one(3, &MultilinearElem::<Dyadic>::one(2).unwrap());
        assert_eq!(a.mul(&b), Err(Error::RingMismatch));
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn truncates_to_min_order() {
        let a = qs(5, &[(1, 1), (1, 1)]);
        let b = qs(2, &[(1, 1), (1, 1)]);
        assert_eq!(a.mul(&b).unwrap().order(), 2);
        assert_eq!(a.add(&b).unwrap().order(), 2);
    }
}
