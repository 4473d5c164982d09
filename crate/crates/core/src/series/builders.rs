//! Generating functions of tree-child Motzkin trees and of the marked paths
//! that replace the edges of a sparsened skeleton.
//!
//! Every builder is generic in the coefficient ring: with rational
//! coefficients the marker `y` is a plain number (usually 0), with
//! multilinear coefficients it is a sum of marker generators.

use crate::algebra::{Coeff, Scalar};
use crate::error::{Error, Result};

use super::TruncSeries;

/// `(1 - sqrt(1 - 2z² - 4y z³)) / z` to order `order`, together with
/// `1 / (1 + 2yz)`.
fn shared_parts<C: Coeff>(order: usize, y: &C) -> Result<(TruncSeries<C>, TruncSeries<C>)> {
    let one = y.one_like();
    let s = |n: i64| y.lift_like(C::Scalar::from_i64(n));
    let radicand = TruncSeries::from_poly(order + 1, y, &[one.clone(), y.zero_like(), s(-2), y.scale(&C::Scalar::from_i64(-4))]);
    let root = radicand.sqrt()?;
    let numer = TruncSeries::one(order + 1, y).sub(&root)?;
    let over_z = numer.shift(-1).map_err(|e| Error::Internal(format!("M_b numerator not divisible by z: {e}")))?;
    let denom = TruncSeries::from_poly(order, y, &[one, y.scale(&C::Scalar::from_i64(2))]);
    Ok((over_z, denom.recip()?))
}

/// Trees with binary root: `(1 - √(1-2z²-4yz³)) / (z(1+2yz)) - z`.
pub fn build_mb<C: Coeff>(order: usize, y: &C) -> Result<TruncSeries<C>> {
    let (over_z, inv) = shared_parts(order, y)?;
    let z = TruncSeries::monomial(order, 1, y.one_like());
    over_z.mul(&inv)?.sub(&z)
}

/// Trees with unary (red) root: `y (1 - √(1-2z²-4yz³)) / (1+2yz)`.
pub fn build_mu<C: Coeff>(order: usize, y: &C) -> Result<TruncSeries<C>> {
    let (over_z, inv) = shared_parts(order, y)?;
    over_z.shift(1)?.mul(&inv)?.mul_coeff(y)
}

/// All tree-child Motzkin trees: `M = z + M_u + M_b`.
pub fn build_m<C: Coeff>(order: usize, y: &C) -> Result<TruncSeries<C>> {
    let (over_z, inv) = shared_parts(order, y)?;
    let z = TruncSeries::monomial(order, 1, y.one_like());
    let base = over_z.mul(&inv)?;
    let mb = base.sub(&z)?;
    let mu = base.shift(1)?.mul_coeff(y)?;
    z.add(&mu)?.add(&mb)
}

/// White trees (root not unary): `M̃ = z + M_b`.
pub fn build_mtilde<C: Coeff>(order: usize, y: &C) -> Result<TruncSeries<C>> {
    let (over_z, inv) = shared_parts(order, y)?;
    over_z.mul(&inv)
}

/// Normal-network paths: `P = (1 + zŷ) / (1 - (z + 2z²y) M̃(z, ỹ))`.
pub fn build_p<C: Coeff>(order: usize, y: &C, ytilde: &C, yhat: &C) -> Result<TruncSeries<C>> {
    let mt = build_mtilde(order, ytilde)?;
    build_p_from(order, y, yhat, &mt)
}

pub(crate) fn build_p_from<C: Coeff>(order: usize, y: &C, yhat: &C, mtilde: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    let one = y.one_like();
    let step = TruncSeries::from_poly(order, y, &[y.zero_like(), one.clone(), y.scale(&C::Scalar::from_i64(2))]);
    let denom = TruncSeries::one(order, y).sub(&step.mul(mtilde)?)?;
    let numer = TruncSeries::from_poly(order, y, &[one, yhat.clone()]);
    numer.mul(&denom.recip()?)
}

/// Tree-child paths: `P̂ = (1 + zŷ) / (1 - z M(z, ỹ) - z² y M̃(z, ỹ))`.
pub fn build_phat<C: Coeff>(order: usize, y: &C, ytilde: &C, yhat: &C) -> Result<TruncSeries<C>> {
    let m = build_m(order, ytilde)?;
    let mt = build_mtilde(order, ytilde)?;
    build_phat_from(order, y, yhat, &m, &mt)
}

pub(crate) fn build_phat_from<C: Coeff>(
    order: usize,
    y: &C,
    yhat: &C,
    m: &TruncSeries<C>,
    mtilde: &TruncSeries<C>,
) -> Result<TruncSeries<C>> {
    let one = y.one_like();
    let zm = m.shift(1)?;
    let z2ym = mtilde.shift(2)?.mul_coeff(y)?;
    let denom = TruncSeries::one(order, y).sub(&zm)?.sub(&z2ym)?;
    let numer = TruncSeries::from_poly(order, y, &[one, yhat.clone()]);
    numer.mul(&denom.recip()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultilinearElem;
    use num_rational::BigRational;

    type Q = BigRational;
    type E = MultilinearElem<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn y(k: usize, mask: u32) -> E {
        E::marker_sum(k, mask).unwrap()
    }

    fn yq(k: usize, mask: u32, c: Q) -> E {
        E::from_terms(k, [(mask, c)]).unwrap()
    }

    fn zero_q() -> Q {
        q(0, 1)
    }

    #[test]
    fn mb_coefficients() {
        let mb = build_mb(9, &zero_q()).unwrap();
        assert_eq!(mb.coeff(1), &q(0, 1));
        assert_eq!(mb.coeff(3), &q(1, 2));
        let mb1 = build_mb(9, &y(1, 1)).unwrap();
        // [z⁵] M = y² + 1/2 where the y² part is M_u = zy(z + M_b) with [z⁴] M_b = y;
        // under y² = 0 only the y-free 1/2 remains in M_b
        assert_eq!(mb1.coeff(5).coeff(0), &q(1, 2));
        assert_eq!(mb1.coeff(5).coeff(1), &q(0, 1));
    }

    #[test]
    fn mu_coefficients() {
        assert!(build_mu(8, &zero_q()).unwrap().coeffs().iter().all(|c| c == &q(0, 1)));
        let mu = build_mu(8, &y(1, 1)).unwrap();
        assert_eq!(mu.coeff(2), &yq(1, 1, q(1, 1)));
        assert_eq!(mu.coeff(4), &yq(1, 1, q(1, 2)));
    }

    #[test]
    fn m_first_coefficients() {
        let m = build_m(8, &y(1, 1)).unwrap();
        let expect = [
            E::zero(1).unwrap(),
            E::one(1).unwrap(),
            yq(1, 1, q(1, 1)),
            E::constant(1, q(1, 2)).unwrap(),
            yq(1, 1, q(3, 2)),
            E::constant(1, q(1, 2)).unwrap(),
            yq(1, 1, q(5, 2)),
            E::constant(1, q(5, 8)).unwrap(),
            yq(1, 1, q(35, 8)),
        ];
        assert_eq!(m.coeffs(), &expect);
    }

    #[test]
    fn m_full_bivariate_expansion() {
        // numeric y keeps the y², y³ terms of z + yz² + z³/2 + 3y z⁴/2 + (y² + 1/2)z⁵
        // + 5y z⁶/2 + (4y² + 5/8)z⁷ + (2y³ + 35y/8)z⁸
        let expect = |y: i64| {
            let y = q(y, 1);
            vec![
                q(0, 1),
                q(1, 1),
                y.clone(),
                q(1, 2),
                q(3, 2) * &y,
                &y * &y + q(1, 2),
                q(5, 2) * &y,
                q(4, 1) * &y * &y + q(5, 8),
                q(2, 1) * &y * &y * &y + q(35, 8) * &y,
            ]
        };
        for yv in [1, 2, -3] {
            assert_eq!(build_m(8, &q(yv, 1)).unwrap().coeffs(), expect(yv).as_slice());
        }
    }

    #[test]
    fn m_at_zero_is_binary_trees() {
        // (1 - sqrt(1-2z²)) / z
        let m = build_m(12, &zero_q()).unwrap();
        let root = TruncSeries::from_poly(13, &q(0, 1), &[q(1, 1), q(0, 1), q(-2, 1)]).sqrt().unwrap();
        let direct = TruncSeries::one(13, &q(0, 1)).sub(&root).unwrap().shift(-1).unwrap();
        assert_eq!(m, direct);
    }

    #[test]
    fn mtilde_is_z_plus_mb() {
        let yy = y(2, 0b11);
        let mt = build_mtilde(10, &yy).unwrap();
        let mb = build_mb(10, &yy).unwrap();
        let z = TruncSeries::monomial(10, 1, E::one(2).unwrap());
        assert_eq!(mt, z.add(&mb).unwrap());
    }

    #[test]
    fn p_at_zero_markers() {
        let p = build_p(10, &zero_q(), &zero_q(), &zero_q()).unwrap();
        let mt = build_mtilde(10, &zero_q()).unwrap();
        let direct = TruncSeries::one(10, &zero_q()).sub(&mt.shift(1).unwrap()).unwrap().recip().unwrap();
        assert_eq!(p, direct);
        assert_eq!(p.coeff(0), &q(1, 1));
    }

    #[test]
    fn p_linear_term_is_yhat() {
        let p = build_p(6, &y(3, 0b001), &y(3, 0b010), &y(3, 0b100)).unwrap();
        assert_eq!(p.coeff(0), &E::one(3).unwrap());
        assert_eq!(p.coeff(1), &y(3, 0b100));
    }

    #[test]
    fn phat_without_path_marker() {
        let yt = y(1, 1);
        let ph = build_phat(10, &E::zero(1).unwrap(), &yt, &E::zero(1).unwrap()).unwrap();
        let m = build_m(10, &yt).unwrap();
        let direct = TruncSeries::one(10, &yt).sub(&m.shift(1).unwrap()).unwrap().recip().unwrap();
        assert_eq!(ph, direct);
    }

    #[test]
    fn phat_and_p_diverge_late() {
        let y1 = y(1, 1);
        let zero = E::zero(1).unwrap();
        let p = build_p(12, &y1, &zero, &zero).unwrap();
        let ph = build_phat(12, &y1, &zero, &zero).unwrap();
        let diff = ph.sub(&p).unwrap();
        assert!(diff.coeff(2).is_zero());
        // with ỹ = 0, M = M̃ and the denominators differ by z²yM̃ = yz³ + O(z⁵),
        // so 1/(1-a-2b) - 1/(1-a-b) first differs at z³ by -y
        assert_eq!(diff.valuation(), Some(3));
        assert_eq!(diff.coeff(3), &yq(1, 1, q(-1, 1)));
    }
}
