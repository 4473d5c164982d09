use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Dyadic, Scalar};
use crate::error::{Error, Result};
use crate::exec::Mode;
use crate::series::{build_m, TruncSeries};

use super::algebraic::{egf_count, factorial};
use super::operators::OperatorContext;
use super::{catalog, NetworkClass};

/// Exponential generating function for `(class, k)`, expanded once and
/// queried for many `n`.
#[derive(Debug, Clone)]
pub struct CountTable {
    class: NetworkClass,
    k: usize,
    series: TruncSeries<Dyadic>,
}

impl CountTable {
    pub fn new(class: NetworkClass, k: usize, max_n: usize) -> Result<Self> {
        let series = match k {
            0 => build_m(max_n, &Dyadic::zero())?,
            1..=3 => catalog(class, k)?.expand(max_n)?,
            _ => return Err(Error::UnsupportedK(k)),
        };
        Ok(CountTable { class, k, series })
    }

    pub fn class(&self) -> NetworkClass {
        self.class
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_n(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &TruncSeries<Dyadic> {
        &self.series
    }

    /// `n! [z^n]` of the series.
    pub fn count(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if n > self.max_n() {
            return Err(Error::InvalidArgument(format!("n = {n} beyond table order {}", self.max_n())));
        }
        let c = self.series.coeff(n).to_rational();
        egf_count(&c, n).ok_or_else(|| Error::Internal(format!("{n}! [z^{n}] is not an integer for {} k={}", self.class, self.k)))
    }
}

/// Number of vertex-labeled networks of `class` with `k` reticulations and
/// `n` vertices. `k = 0` counts binary trees and ignores `class`.
pub fn count(class: NetworkClass, k: usize, n: usize) -> Result<BigInt> {
    CountTable::new(class, k, n.max(1))?.count(n)
}

/// Networks counted by their `l` labeled leaves instead of all vertices.
pub fn leaf_labeled_count(class: NetworkClass, k: usize, l: usize) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::InvalidArgument("need at least one leaf".into()));
    }
    let n = 2 * l + 2 * k - 1;
    let vertex = count(class, k, n)?;
    leaf_from_vertex(&vertex, l, n)
}

/// `l! / n! · vertex`, which must be an exact division.
pub fn leaf_from_vertex(vertex: &BigInt, l: usize, n: usize) -> Result<BigInt> {
    let scaled = vertex * factorial(l);
    let (q, r) = scaled.div_rem(&factorial(n));
    if !r.is_zero() {
        return Err(Error::Internal(format!("leaf count division not exact at n = {n}, l = {l}")));
    }
    Ok(q)
}

/// The one-reticulation series derived directly from `M(z, 0)`.
pub fn unicyclic_gf(class: NetworkClass, order: usize) -> Result<TruncSeries<BigRational>> {
    Ok(unicyclic_in::<Dyadic>(class, order)?.map(|c| c.to_rational()))
}

pub fn unicyclic_in<S: Scalar>(class: NetworkClass, order: usize) -> Result<TruncSeries<S>> {
    let m0 = build_m(order, &S::zero())?;
    let zm = m0.shift(1)?;
    let cube = TruncSeries::one(order, &S::zero()).sub(&zm)?.pow(3)?.recip()?;
    let numer = match class {
        NetworkClass::Normal => m0.pow(3)?.shift(4)?,
        NetworkClass::TreeChild => {
            let two_minus = TruncSeries::constant(order, S::from_i64(2)).sub(&zm)?;
            m0.pow(2)?.mul(&two_minus)?.shift(3)?
        }
    };
    Ok(numer.mul(&cube)?.scale(&S::ratio(1, 2)))
}

/// Generating function of caterpillar paths,
/// `(8z² - 12z⁴ - (8z² - 4z⁴)√(1-2z²)) / (1-2z²)²`.
pub fn caterpillar_path(order: usize) -> Result<TruncSeries<BigRational>> {
    let z = <BigRational as Zero>::zero();
    let q = |n: i64| BigRational::from_integer(n.into());
    let u = TruncSeries::from_poly(order, &z, &[q(1), q(0), q(-2)]);
    let a = TruncSeries::from_poly(order, &z, &[q(0), q(0), q(8), q(0), q(-12)]);
    let b = TruncSeries::from_poly(order, &z, &[q(0), q(0), q(8), q(0), q(-4)]);
    a.sub(&b.mul(&u.sqrt()?)?)?.mul(&u.pow(2)?.recip()?)
}

/// The same series from its definition `∂_y z² M(z,0) / (1 - z M̃(z,y))²` at `y = 0`.
pub fn caterpillar_path_from_trees(order: usize) -> Result<TruncSeries<BigRational>> {
    let c = OperatorContext::<BigRational>::new(1, order, Mode::default())?;
    let wp = c.white_path(1)?;
    c.term(2, &[c.tree(0)?, wp.clone(), wp])
}

/// `L_k = N_1 · P^{k-1}`, a lower bound for the normal networks with `k`
/// reticulations.
pub fn caterpillar_lower_bound(k: usize, order: usize) -> Result<TruncSeries<BigRational>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("caterpillar bound needs k >= 2, got {k}")));
    }
    let n1 = catalog(NetworkClass::Normal, 1)?.expand::<BigRational>(order)?;
    n1.mul(&caterpillar_path(order)?.pow(k as u32 - 1)?)
}

/// `n! [z^n]` of an arbitrary exponential series, if integral.
pub fn egf_coefficient(series: &TruncSeries<BigRational>, n: usize) -> Option<BigInt> {
    egf_count(series.coeff(n), n)
}

/// Whether every `n! [z^n]`, `1 ≤ n ≤ order`, is a nonnegative integer.
pub fn is_integral_egf(series: &TruncSeries<BigRational>) -> bool {
    (1..=series.order()).all(|n| egf_count(series.coeff(n), n).is_some_and(|c| c >= BigInt::zero()))
}

/// Whether all even-power coefficients vanish.
pub fn is_odd_series<C: crate::algebra::Coeff>(series: &TruncSeries<C>) -> bool {
    series.coeffs().iter().step_by(2).all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn nc(class: NetworkClass, k: usize, n: usize) -> BigInt {
        count(class, k, n).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(nc(NetworkClass::Normal, 1, 7), BigInt::from(2520));
        assert_eq!(nc(NetworkClass::TreeChild, 1, 5), BigInt::from(120));
        assert_eq!(nc(NetworkClass::TreeChild, 0, 3), BigInt::from(3));
        assert_eq!(nc(NetworkClass::Normal, 0, 1), BigInt::from(1));
        assert_eq!(nc(NetworkClass::Normal, 2, 6), BigInt::zero());
        assert!(count(NetworkClass::Normal, 4, 9).is_err());
        assert!(count(NetworkClass::Normal, 1, 0).is_err());
    }

    #[test]
    fn leading_digits_n49() {
        let c = nc(NetworkClass::Normal, 1, 49).to_string();
        assert_eq!(c.len(), 71);
        assert!(c.starts_with("1509083862"), "{c}");
    }

    #[test]
    fn leaf_counts() {
        let tc = nc(NetworkClass::TreeChild, 1, 5);
        assert_eq!(leaf_labeled_count(NetworkClass::TreeChild, 1, 2).unwrap(), tc * 2 / 120);
        assert_eq!(leaf_labeled_count(NetworkClass::Normal, 1, 1).unwrap(), BigInt::zero());
        assert_eq!(leaf_labeled_count(NetworkClass::Normal, 0, 1).unwrap(), BigInt::one());
        assert!(leaf_from_vertex(&BigInt::from(7), 1, 3).is_err());
    }

    #[test]
    fn unicyclic_matches_catalog() {
        for class in NetworkClass::ALL {
            let closed = catalog(class, 1).unwrap().expand::<BigRational>(60).unwrap();
            assert_eq!(unicyclic_gf(class, 60).unwrap(), closed, "{class}");
        }
        assert!(unicyclic_gf(NetworkClass::TreeChild, 10).unwrap().coeff(3).is_zero());
    }

    #[test]
    fn caterpillar_routes_agree() {
        let a = caterpillar_path(40).unwrap();
        assert_eq!(a, caterpillar_path_from_trees(40).unwrap());
        assert_eq!(a.valuation(), Some(8));
        assert_eq!(a.coeff(8), &BigRational::from_integer(2.into()));
        assert_eq!(a.coeff(10), &BigRational::from_integer(11.into()));
    }

    #[test]
    fn caterpillar_bound_below_normal() {
        for k in 2..=3 {
            let l = caterpillar_lower_bound(k, 45).unwrap();
            let t = CountTable::new(NetworkClass::Normal, k, 45).unwrap();
            assert!(is_odd_series(&l));
            for n in (1..=45).step_by(2) {
                assert!(egf_coefficient(&l, n).unwrap() <= t.count(n).unwrap(), "k={k} n={n}");
            }
        }
        assert!(caterpillar_lower_bound(1, 10).is_err());
    }
}
