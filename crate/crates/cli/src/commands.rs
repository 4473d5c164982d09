use std::path::Path;

use phylogf::asym::{self, SHOWN_DIGITS};
use phylogf::exec::Mode;
use phylogf::gf::{leaf_labeled_count, CountTable, NetworkClass};
use phylogf::oracle::{enumerate_count_with, OracleClass, OracleConfig};
use serde::Serialize;

use crate::args::{ClassArg, ClassK, Format, NSelect};
use crate::error::CliError;
use crate::output::{emit, sci_float, sci_int};

pub fn series_class(c: ClassArg) -> Result<NetworkClass, CliError> {
    match c {
        ClassArg::Normal => Ok(NetworkClass::Normal),
        ClassArg::Treechild => Ok(NetworkClass::TreeChild),
        ClassArg::All => Err(CliError::Usage("class `all` is only available for `oracle`".into())),
    }
}

fn oracle_class(c: ClassArg) -> OracleClass {
    match c {
        ClassArg::Normal => OracleClass::Normal,
        ClassArg::Treechild => OracleClass::TreeChild,
        ClassArg::All => OracleClass::All,
    }
}

/// Parses `A..B` or `A..=B`, both inclusive.
pub fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range `{s}`, expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn select_n(ns: &NSelect) -> Result<Vec<usize>, CliError> {
    let v = match (&ns.n, &ns.n_range) {
        (Some(n), None) => vec![*n],
        (None, Some(r)) => parse_range(r)?,
        (None, None) => return Err(CliError::Usage("one of -n or --n-range is required".into())),
        (Some(_), Some(_)) => return Err(CliError::Usage("-n and --n-range are exclusive".into())),
    };
    if v.contains(&0) {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    Ok(v)
}

#[derive(Debug, Serialize)]
struct CountRow {
    n: usize,
    count: String,
    scientific: String,
}

pub fn count(ck: &ClassK, ns: &NSelect, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let class = series_class(ck.class)?;
    let ns = select_n(ns)?;
    let table = CountTable::new(class, ck.k, ns.iter().copied().max().unwrap_or(1))?;
    let rows = ns
        .iter()
        .map(|&n| {
            let c = table.count(n)?;
            Ok(CountRow { n, scientific: sci_int(&c, SHOWN_DIGITS), count: c.to_string() })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(&rows, format, out, |r| r.count.clone())
}

#[derive(Debug, Serialize)]
struct LeafRow {
    l: usize,
    count: String,
    scientific: String,
}

pub fn leafcount(ck: &ClassK, l: usize, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let class = series_class(ck.class)?;
    let c = leaf_labeled_count(class, ck.k, l)?;
    let rows = [LeafRow { l, scientific: sci_int(&c, SHOWN_DIGITS), count: c.to_string() }];
    emit(&rows, format, out, |r| r.count.clone())
}

#[derive(Debug, Serialize)]
struct AsymRow {
    n: Option<usize>,
    l: Option<usize>,
    order: u8,
    estimate: String,
    even_n: bool,
}

pub fn asym(
    ck: &ClassK,
    ns: &NSelect,
    l: Option<usize>,
    order: u8,
    digits: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let class = series_class(ck.class)?;
    let rows = if let Some(l) = l {
        let v = asym::leaf_asym_estimate(class, ck.k, l, digits)?;
        vec![AsymRow { n: None, l: Some(l), order: 1, estimate: sci_float(&v, digits), even_n: false }]
    } else {
        select_n(ns)?
            .into_iter()
            .map(|n| {
                let e = asym::asym_estimate(class, ck.k, n, order, digits)?;
                Ok(AsymRow { n: Some(n), l: None, order, estimate: sci_float(&e.value, digits), even_n: e.even_n })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    };
    emit(&rows, format, out, |r| if r.even_n { format!("{} (even n)", r.estimate) } else { r.estimate.clone() })
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: usize,
    exact: String,
    first_order: String,
    second_order: String,
}

pub fn table(ck: &ClassK, rows: &[usize], digits: u32, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let class = series_class(ck.class)?;
    let rows = if rows.is_empty() { asym::default_rows() } else { rows.to_vec() };
    let table = asym::appendix_table(class, ck.k, &rows, digits, Mode::default())?;
    let out_rows: Vec<TableRow> = table
        .iter()
        .map(|r| TableRow {
            n: r.n,
            exact: sci_int(&r.exact, SHOWN_DIGITS),
            first_order: sci_float(&r.first, SHOWN_DIGITS),
            second_order: sci_float(&r.second, SHOWN_DIGITS),
        })
        .collect();
    emit(&out_rows, format, out, |r| format!("{:>5}  {}  {}  {}", r.n, r.exact, r.first_order, r.second_order))
}

#[derive(Debug, Serialize)]
struct OracleRow {
    n: usize,
    k: usize,
    class: String,
    oracle: String,
    series: Option<String>,
    agree: Option<bool>,
    slow: bool,
}

pub fn oracle(class: ClassArg, k: usize, ns: &NSelect, cap: usize, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let ns = select_n(ns)?;
    let oc = oracle_class(class);
    let cfg = OracleConfig { cap, ..OracleConfig::default() };
    let table = match class {
        ClassArg::All => None,
        c => Some(CountTable::new(series_class(c)?, k, ns.iter().copied().max().unwrap_or(1))?),
    };
    let mut rows = Vec::with_capacity(ns.len());
    for &n in &ns {
        let o = enumerate_count_with(n, k, oc, &cfg)?;
        if o.slow {
            eprintln!("warning: n = {n} is above the oracle cap {cap}; this may take a while");
        }
        let series = table.as_ref().map(|t| t.count(n)).transpose()?;
        rows.push(OracleRow {
            n,
            k,
            class: oc.to_string(),
            agree: series.as_ref().map(|s| *s == o.count),
            series: series.map(|s| s.to_string()),
            oracle: o.count.to_string(),
            slow: o.slow,
        });
    }
    emit(&rows, format, out, |r| match (&r.series, r.agree) {
        (Some(s), Some(a)) => format!("n={} oracle={} series={} {}", r.n, r.oracle, s, if a { "agree" } else { "DISAGREE" }),
        _ => format!("n={} oracle={}", r.n, r.oracle),
    })?;
    if let Some(r) = rows.iter().find(|r| r.agree == Some(false)) {
        return Err(CliError::Failed(format!(
            "oracle {} vs series {} at n = {}, k = {}, class {}",
            r.oracle,
            r.series.as_deref().unwrap_or("-"),
            r.n,
            r.k,
            r.class
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..7").unwrap(), vec![3, 4, 5, 6, 7]);
        assert_eq!(parse_range("5..=5").unwrap(), vec![5]);
        assert!(parse_range("7..3").is_err());
        assert!(parse_range("x..3").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn all_rejected_outside_oracle() {
        assert!(matches!(series_class(ClassArg::All), Err(CliError::Usage(_))));
    }
}
