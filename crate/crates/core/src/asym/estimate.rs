use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::gf::{CountTable, NetworkClass};

use super::bigfloat::{bits_for_digits, BigFloat, Scientific};
use super::constants::stated_constants;

/// Working precision for table rendering.
pub const DEFAULT_DIGITS: u32 = 50;

/// Digits shown in rendered tables.
pub const SHOWN_DIGITS: u32 = 10;

/// An asymptotic estimate; `even_n` marks the zero reported for even `n`.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub value: BigFloat,
    pub even_n: bool,
}

fn check_digits(digits: u32) -> Result<()> {
    if digits < 10 {
        return Err(Error::InvalidArgument(format!("digits = {digits}, at least 10 required")));
    }
    Ok(())
}

/// `(√2/e)^n n^{n+2k-1}`, evaluated through its logarithm.
pub fn scale(n: usize, k: usize, prec: u64) -> BigFloat {
    let nf = BigFloat::from_int(n as i64);
    let half_ln2_minus_1 = BigFloat::ln2(prec).mul(&BigFloat::from_ratio(1, 2, prec), prec).sub(&BigFloat::from_int(1), prec);
    let log = nf.mul(&half_ln2_minus_1, prec).add(&BigFloat::from_int((n + 2 * k - 1) as i64).mul(&nf.ln(prec), prec), prec);
    log.exp(prec)
}

/// `(√2/e)^n n^{n+2k-1} (A + [order = 2] B/√n)` for odd `n`.
pub fn asym_estimate(class: NetworkClass, k: usize, n: usize, order: u8, digits: u32) -> Result<Estimate> {
    check_digits(digits)?;
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidArgument(format!("order = {order}, expected 1 or 2")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let consts = stated_constants(class, k)?;
    if n.is_multiple_of(2) {
        return Ok(Estimate { value: BigFloat::zero(), even_n: true });
    }
    let prec = bits_for_digits(digits);
    let mut factor = consts.a(prec);
    if order == 2 {
        let sqrt_n = BigFloat::from_int(n as i64).sqrt(prec);
        factor = factor.add(&consts.b(prec).div(&sqrt_n, prec), prec);
    }
    let value = scale(n, k, prec).mul(&factor, prec);
    Ok(Estimate { value, even_n: false })
}

/// `2^{3k-1} c_k (2/e)^l l^{l+2k-1}`, first-order estimate of leaf-labeled counts.
pub fn leaf_asym_estimate(class: NetworkClass, k: usize, l: usize, digits: u32) -> Result<BigFloat> {
    check_digits(digits)?;
    if l == 0 {
        return Err(Error::InvalidArgument("l must be at least 1".into()));
    }
    let consts = stated_constants(class, k)?;
    let prec = bits_for_digits(digits);
    let lf = BigFloat::from_int(l as i64);
    let ln2_minus_1 = BigFloat::ln2(prec).sub(&BigFloat::from_int(1), prec);
    let log = lf.mul(&ln2_minus_1, prec).add(&BigFloat::from_int((l + 2 * k - 1) as i64).mul(&lf.ln(prec), prec), prec);
    let lead = consts.c(prec).mul(&BigFloat::from_int(1i64 << (3 * k - 1)), prec);
    Ok(log.exp(prec).mul(&lead, prec))
}

/// `√n (count / ((√2/e)^n n^{n+2k-1}) - A)` for a known exact count.
pub fn probe_from_count(class: NetworkClass, k: usize, n: usize, count: &BigInt, digits: u32) -> Result<BigFloat> {
    let consts = stated_constants(class, k)?;
    let prec = bits_for_digits(digits);
    let exact = BigFloat::from_bigint(count, prec);
    let ratio = exact.div(&scale(n, k, prec), prec).sub(&consts.a(prec), prec);
    Ok(ratio.mul(&BigFloat::from_int(n as i64).sqrt(prec), prec))
}

/// Empirical second-order coefficient at odd `n`.
pub fn second_order_probe(class: NetworkClass, k: usize, n: usize) -> Result<BigFloat> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n = {n} must be odd")));
    }
    let count = CountTable::new(class, k, n)?.count(n)?;
    probe_from_count(class, k, n, &count, DEFAULT_DIGITS)
}

/// The odd squares `7², 9², …, 31²`.
pub fn default_rows() -> Vec<usize> {
    (7..=31).step_by(2).map(|m| m * m).collect()
}

/// One comparison-table row.
#[derive(Debug, Clone)]
pub struct AppendixRow {
    pub n: usize,
    pub exact: BigInt,
    pub first: BigFloat,
    pub second: BigFloat,
}

impl AppendixRow {
    pub fn exact_scientific(&self, digits: u32) -> Scientific {
        Scientific::from_bigint(&self.exact, digits)
    }
}

/// Exact counts and both estimates for each requested `n`.
pub fn appendix_table(class: NetworkClass, k: usize, rows: &[usize], digits: u32, mode: Mode) -> Result<Vec<AppendixRow>> {
    check_digits(digits)?;
    if let Some(&n) = rows.iter().find(|&&n| n == 0) {
        return Err(Error::InvalidArgument(format!("row n = {n} must be positive")));
    }
    let max_n = rows.iter().copied().max().unwrap_or(1);
    let table = CountTable::new(class, k, max_n)?;
    exec::map_slice(mode, rows, |&n| -> Result<AppendixRow> {
        Ok(AppendixRow {
            n,
            exact: table.count(n)?,
            first: asym_estimate(class, k, n, 1, digits)?.value,
            second: asym_estimate(class, k, n, 2, digits)?.value,
        })
    })
    .into_iter()
    .collect()
}

/// Outcome of comparing a value against a printed significand and exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedCheck {
    pub printed: BigInt,
    pub ours: BigInt,
    pub position: i64,
}

impl PrintedCheck {
    /// Agreement up to one unit in the last printed digit.
    pub fn ok(&self) -> bool {
        (&self.printed - &self.ours).abs() <= BigInt::from(1)
    }
}

/// Round `value` to the last digit position of `significand × 10^exponent`
/// (e.g. `"-0.634169808"`, `72`) and compare the scaled integers.
pub fn compare_printed(significand: &str, exponent: i64, value: &BigFloat) -> Result<PrintedCheck> {
    let bad = || Error::InvalidArgument(format!("malformed printed value {significand}"));
    let (int_part, frac) = significand.split_once('.').unwrap_or((significand, ""));
    let digits: String = format!("{int_part}{frac}");
    let printed: BigInt = digits.parse().map_err(|_| bad())?;
    let position = exponent - frac.len() as i64;
    Ok(PrintedCheck { printed, ours: value.scaled_integer(position), position })
}

/// Exact integer variant of [`compare_printed`].
pub fn compare_printed_int(significand: &str, exponent: i64, value: &BigInt) -> Result<PrintedCheck> {
    let exact = BigFloat::from_bigint(value, value.bits() + 2);
    compare_printed(significand, exponent, &exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asym::golden_table;
    use crate::gf::leaf_labeled_count;
    use num_traits::ToPrimitive;

    fn sci(x: &BigFloat) -> String {
        x.to_scientific(10).to_string()
    }

    #[test]
    fn normal_k1_row_49() {
        let first = asym_estimate(NetworkClass::Normal, 1, 49, 1, 10).unwrap();
        let second = asym_estimate(NetworkClass::Normal, 1, 49, 2, 10).unwrap();
        assert_eq!(sci(&first.value), "2.845078699e70");
        assert_eq!(sci(&second.value), "1.316888404e70");
    }

    #[test]
    fn normal_k3_second_order_negative() {
        let e = asym_estimate(NetworkClass::Normal, 3, 49, 2, 10).unwrap();
        assert_eq!(sci(&e.value), "-1.044565239e75");
    }

    #[test]
    fn even_n_flagged() {
        let e = asym_estimate(NetworkClass::TreeChild, 2, 50, 2, 20).unwrap();
        assert!(e.even_n && e.value.is_zero());
    }

    #[test]
    fn rejects_low_precision_and_bad_order() {
        assert!(asym_estimate(NetworkClass::Normal, 1, 49, 1, 9).is_err());
        assert!(asym_estimate(NetworkClass::Normal, 1, 49, 3, 10).is_err());
        assert!(asym_estimate(NetworkClass::Normal, 4, 49, 1, 10).is_err());
    }

    #[test]
    fn precision_self_consistency() {
        for n in [49usize, 225, 961] {
            let a = asym_estimate(NetworkClass::Normal, 2, n, 2, 15).unwrap();
            let b = asym_estimate(NetworkClass::Normal, 2, n, 2, 25).unwrap();
            assert_eq!(a.value.to_scientific(15), b.value.to_scientific(15));
        }
    }

    #[test]
    fn treechild_k1_last_row() {
        let rows = appendix_table(NetworkClass::TreeChild, 1, &[961], DEFAULT_DIGITS, Mode::Parallel).unwrap();
        let r = &rows[0];
        assert_eq!(r.exact_scientific(10).to_string(), "3.155446557e2596");
        assert_eq!(sci(&r.first), "3.290786802e2596");
        assert_eq!(sci(&r.second), "3.157741975e2596");
    }

    #[test]
    fn odd_non_square_and_even_rows() {
        let rows = appendix_table(NetworkClass::TreeChild, 1, &[5, 6], 20, Mode::Sequential).unwrap();
        assert_eq!(rows[0].exact, BigInt::from(120));
        assert_eq!(rows[1].exact, BigInt::from(0));
        assert!(rows[1].first.is_zero());
    }

    #[test]
    fn printed_comparison_rule() {
        let v = BigFloat::from_ratio(17084700685, 1000000000, 200);
        assert!(compare_printed("17.08470069", 0, &v).unwrap().ok());
        assert!(compare_printed("17.08470067", 0, &v).unwrap().ok());
        assert!(!compare_printed("17.08470070", 0, &v).unwrap().ok());
        assert!(compare_printed("-0.634169808", 9, &BigFloat::from_ratio(-6341698085, 10, 200)).unwrap().ok());
        let c = compare_printed_int("1.2", 3, &BigInt::from(1249)).unwrap();
        assert_eq!((c.ours.clone(), c.position), (BigInt::from(12), 2));
    }

    #[test]
    fn normal_k1_golden_rows() {
        let g = golden_table(NetworkClass::Normal, 1).unwrap();
        let ns: Vec<usize> = g.rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, default_rows());
        let rows = appendix_table(NetworkClass::Normal, 1, &ns, DEFAULT_DIGITS, Mode::Parallel).unwrap();
        for (r, p) in rows.iter().zip(g.rows) {
            assert!(compare_printed_int(p.exact.0, p.exact.1, &r.exact).unwrap().ok(), "exact n={}", r.n);
            // printed estimates drift by about 1.7e-10 n relative
            for (p, ours) in [(p.first, &r.first), (p.second, &r.second)] {
                let c = compare_printed(p.0, p.1, ours).unwrap();
                let rel = (c.printed.to_f64().unwrap() / c.ours.to_f64().unwrap() - 1.0).abs();
                assert!(rel < 2e-10 * r.n as f64, "n={} rel={rel}", r.n);
            }
        }
    }

    #[test]
    fn leaf_estimate() {
        let one = leaf_asym_estimate(NetworkClass::Normal, 1, 1, 20).unwrap();
        // √2 · (2/e) · 1
        let expect = 2f64.sqrt() * 2.0 / std::f64::consts::E;
        assert!((one.to_f64() - expect).abs() < 1e-12);
        let l = 400;
        let exact = leaf_labeled_count(NetworkClass::Normal, 1, l).unwrap();
        let est = leaf_asym_estimate(NetworkClass::Normal, 1, l, 30).unwrap();
        let ratio = BigFloat::from_bigint(&exact, 200).div(&est, 200).to_f64();
        assert!((ratio - 1.0).abs() < 0.25, "ratio {ratio}");
    }

    #[test]
    fn probes_k1() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let pn = second_order_probe(NetworkClass::Normal, 1, 961).unwrap().to_f64();
        let pt = second_order_probe(NetworkClass::TreeChild, 1, 961).unwrap().to_f64();
        assert!((pn / (-1.5 * sqrt_pi) - 1.0).abs() < 0.15, "{pn}");
        assert!((pt / (-0.5 * sqrt_pi) - 1.0).abs() < 0.15, "{pt}");
        assert!(((pt - pn) / sqrt_pi - 1.0).abs() < 0.15);
    }
}
