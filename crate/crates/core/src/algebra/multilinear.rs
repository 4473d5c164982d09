use std::fmt;

use num_rational::BigRational;

use super::scalar::{Coeff, Scalar};
use super::MAX_MARKERS;
use crate::error::{Error, Result};

/// Element of `F[y_1, …, y_k] / (y_1², …, y_k²)`.
///
/// Coefficients are stored densely, one per subset of markers, indexed by the
/// subset's bitmask (bit `i` ↔ `y_{i+1}`). Products are disjoint-subset
/// convolutions, so no monomial with a repeated generator can ever appear.
#[derive(Clone, PartialEq)]
pub struct MultilinearElem<S> {
    k: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> MultilinearElem<S> {
    pub fn zero(k: usize) -> Result<Self> {
        if k > MAX_MARKERS {
            return Err(Error::TooManyMarkers(k));
        }
        Ok(MultilinearElem { k, coeffs: vec![S::zero(); 1 << k] })
    }

    pub fn constant(k: usize, c: S) -> Result<Self> {
        let mut e = Self::zero(k)?;
        e.coeffs[0] = c;
        Ok(e)
    }

    pub fn one(k: usize) -> Result<Self> {
        Self::constant(k, S::one())
    }

    /// `Σ_{i ∈ mask} y_{i+1}`.
    pub fn marker_sum(k: usize, mask: u32) -> Result<Self> {
        let mut e = Self::zero(k)?;
        if mask >> k != 0 {
            return Err(Error::InvalidArgument(format!("marker mask {mask:#b} uses more than {k} markers")));
        }
        for i in 0..k {
            if mask & (1 << i) != 0 {
                e.coeffs[1 << i] = S::one();
            }
        }
        Ok(e)
    }

    /// Build from explicit `(subset mask, coefficient)` pairs; repeated masks add.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (u32, S)>) -> Result<Self> {
        let mut e = Self::zero(k)?;
        for (mask, c) in terms {
            let idx = mask as usize;
            if idx >= e.coeffs.len() {
                return Err(Error::InvalidArgument(format!("subset {mask:#b} out of range for k = {k}")));
            }
            e.coeffs[idx] = e.coeffs[idx].add(&c);
        }
        Ok(e)
    }

    pub fn markers(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, mask: u32) -> &S {
        &self.coeffs[mask as usize]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn constant_part(&self) -> &S {
        &self.coeffs[0]
    }

    fn full_mask(&self) -> usize {
        (1 << self.k) - 1
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            Err(Error::MarkerMismatch { left: self.k, right: other.k })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        MultilinearElem { k: self.k, coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let zero = S::zero();
        let mut out = Vec::with_capacity(n);
        let mut pairs: Vec<(&S, &S)> = Vec::with_capacity(n);
        for set in 0..n {
            pairs.clear();
            // walk all submasks `a` of `set`, pairing with the complement
            let mut a = set;
            loop {
                let x = &self.coeffs[a];
                let y = &other.coeffs[set ^ a];
                if !x.is_zero() && !y.is_zero() {
                    pairs.push((x, y));
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & set;
            }
            out.push(S::sum_of_products(&zero, pairs.iter().copied()));
        }
        MultilinearElem { k: self.k, coeffs: out }
    }

    /// Inverse via the terminating Neumann series of the nilpotent part.
    pub fn recip(&self) -> Result<Self> {
        let c_inv = self.coeffs[0].inverse().ok_or(Error::NotInvertible)?;
        // self = c (1 + nil), inverse = c⁻¹ Σ_j (-nil)^j
        let mut neg_nil = self.scale(&c_inv.neg());
        neg_nil.coeffs[0] = S::zero();
        let one = Self::one(self.k)?;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.k {
            power = power.mul_unchecked(&neg_nil);
            acc = acc.add_unchecked(&power);
        }
        Ok(acc.scale(&c_inv))
    }

    /// Coefficient of `y_1 ⋯ y_k`: the mixed derivative `∂_{y_1}⋯∂_{y_k}` at `y = 0`.
    pub fn extract_full(&self) -> S {
        self.coeffs[self.full_mask()].clone()
    }

    /// Substitute `y_i := 0` for every marker in `mask`.
    pub fn kill_markers(&self, mask: u32) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(s, c)| if s as u32 & mask != 0 { S::zero() } else { c.clone() }).collect();
        MultilinearElem { k: self.k, coeffs }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultilinearElem<T> {
        MultilinearElem { k: self.k, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_rational(&self) -> MultilinearElem<BigRational> {
        self.map_scalars(|c| c.to_rational())
    }
}

impl<S: Scalar> Coeff for MultilinearElem<S> {
    type Scalar = S;

    fn zero_like(&self) -> Self {
        MultilinearElem { k: self.k, coeffs: vec![S::zero(); self.coeffs.len()] }
    }
    fn one_like(&self) -> Self {
        let mut e = self.zero_like();
        e.coeffs[0] = S::one();
        e
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn compatible(&self, other: &Self) -> bool {
        self.k == other.k
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "marker count mismatch");
        self.add_unchecked(other)
    }
    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "marker count mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        MultilinearElem { k: self.k, coeffs }
    }
    fn neg(&self) -> Self {
        MultilinearElem { k: self.k, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "marker count mismatch");
        self.mul_unchecked(other)
    }
    fn scale(&self, s: &S) -> Self {
        MultilinearElem { k: self.k, coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn lift_like(&self, s: S) -> Self {
        let mut e = self.zero_like();
        e.coeffs[0] = s;
        e
    }
    fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.k, other.k, "marker count mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
    }

    fn sum_of_products<'a, I>(zero: &Self, pairs: I) -> Self
    where
        I: Iterator<Item = (&'a Self, &'a Self)>,
    {
        let pairs: Vec<(&Self, &Self)> = pairs.filter(|(a, b)| !a.is_zero() && !b.is_zero()).collect();
        let n = zero.coeffs.len();
        let szero = S::zero();
        let mut out = Vec::with_capacity(n);
        let mut flat: Vec<(&S, &S)> = Vec::new();
        for set in 0..n {
            flat.clear();
            for (x, y) in &pairs {
                let mut a = set;
                loop {
                    let u = &x.coeffs[a];
                    let v = &y.coeffs[set ^ a];
                    if !u.is_zero() && !v.is_zero() {
                        flat.push((u, v));
                    }
                    if a == 0 {
                        break;
                    }
                    a = (a - 1) & set;
                }
            }
            out.push(S::sum_of_products(&szero, flat.iter().copied()));
        }
        MultilinearElem { k: zero.k, coeffs: out }
    }
}

impl<S: Scalar> fmt::Debug for MultilinearElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for MultilinearElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for i in 0..self.k {
                if mask & (1 << i) != 0 {
                    write!(f, "·y{}", i + 1)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
