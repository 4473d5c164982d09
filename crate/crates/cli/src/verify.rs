use num_bigint::BigInt;
use num_traits::Zero;
use phylogf::algebra::{Coeff, Dyadic, Scalar};
use phylogf::asym::{self, compare_printed, compare_printed_int, GOLDEN};
use phylogf::exec::Mode;
use phylogf::gf::{
    caterpillar_lower_bound, egf_coefficient, is_odd_series, leaf_from_vertex, operator_in, unicyclic_in, CountTable, NetworkClass,
};
use phylogf::oracle::{enumerate_count, OracleClass};
use phylogf::series::TruncSeries;
use serde::Serialize;

use crate::args::Level;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub level: String,
    pub order: usize,
    pub oracle_max_n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: &str, inputs: String, failure: Option<String>) -> Check {
    Check { name: name.into(), inputs, passed: failure.is_none(), detail: failure.unwrap_or_else(|| "ok".into()) }
}

fn first_difference(a: &TruncSeries<Dyadic>, b: &TruncSeries<Dyadic>) -> Option<String> {
    let n = a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y)?;
    Some(format!("first difference at z^{n}: {} vs {}", a.coeff(n).to_rational(), b.coeff(n).to_rational()))
}

fn pairs() -> impl Iterator<Item = (NetworkClass, usize)> {
    NetworkClass::ALL.into_iter().flat_map(|c| (1..=3).map(move |k| (c, k)))
}

pub fn run(level: Level) -> Report {
    let (order, oracle_max) = match level {
        Level::Fast => (100, 7),
        Level::Full => (961, 9),
    };
    let mut checks = Vec::new();
    let mode = Mode::default();

    let tables: Vec<((NetworkClass, usize), Result<CountTable, phylogf::Error>)> =
        pairs().map(|p| (p, CountTable::new(p.0, p.1, order))).collect();
    let table = |c: NetworkClass, k: usize| tables.iter().find(|(p, _)| *p == (c, k)).and_then(|(_, t)| t.as_ref().ok());

    for ((class, k), t) in &tables {
        let inputs = format!("class={class} k={k} order={order}");
        let failure = match (t, operator_in::<Dyadic>(*class, *k, order, mode)) {
            (Ok(t), Ok(op)) => first_difference(&op, t.series()).map(|d| format!("operator vs closed form: {d}")),
            (Err(e), _) => Some(e.to_string()),
            (_, Err(e)) => Some(e.to_string()),
        };
        checks.push(check("closed_form_vs_operator", inputs, failure));
    }

    for class in NetworkClass::ALL {
        let inputs = format!("class={class} order={order}");
        let failure = match (unicyclic_in::<Dyadic>(class, order), operator_in::<Dyadic>(class, 1, order, mode)) {
            (Ok(u), Ok(op)) => first_difference(&u, &op).map(|d| format!("unicyclic vs operator: {d}")),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        };
        checks.push(check("unicyclic_vs_operator", inputs, failure));
    }

    for (class, k) in pairs() {
        let inputs = format!("class={class} k={k} odd n<={oracle_max}");
        let mut failure = None;
        for n in (1..=oracle_max).step_by(2) {
            let series = table(class, k).map(|t| t.count(n));
            let oracle = enumerate_count(n, k, OracleClass::from(class));
            match (series, oracle) {
                (Some(Ok(s)), Ok(o)) if s == o => {}
                (Some(Ok(s)), Ok(o)) => {
                    failure = Some(format!("n={n}: series {s}, oracle {o}"));
                    break;
                }
                (Some(Err(e)), _) | (_, Err(e)) => {
                    failure = Some(format!("n={n}: {e}"));
                    break;
                }
                (None, _) => {
                    failure = Some("series unavailable".into());
                    break;
                }
            }
        }
        checks.push(check("oracle_vs_series", inputs, failure));
    }

    let mut failure = None;
    for n in (1..=oracle_max).step_by(2) {
        match (enumerate_count(n, 1, OracleClass::All), enumerate_count(n, 1, OracleClass::TreeChild)) {
            (Ok(a), Ok(t)) if a == t => {}
            (Ok(a), Ok(t)) => {
                failure = Some(format!("n={n}: all {a}, treechild {t}"));
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    checks.push(check("oracle_all_equals_treechild_k1", format!("odd n<={oracle_max}"), failure));

    for ((class, k), t) in &tables {
        let inputs = format!("class={class} k={k} order={order}");
        let Ok(t) = t else { continue };
        let parity = (!is_odd_series(t.series())).then(|| {
            let n = t.series().coeffs().iter().step_by(2).position(|c| !c.is_zero()).unwrap_or(0) * 2;
            format!("nonzero coefficient at z^{n}")
        });
        checks.push(check("parity", inputs.clone(), parity));

        let mut failure = None;
        for n in 1..=order {
            match t.count(n) {
                Ok(c) if c < BigInt::zero() => {
                    failure = Some(format!("n={n}: negative count {c}"));
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    failure = Some(format!("n={n}: {e}"));
                    break;
                }
            }
        }
        checks.push(check("integrality_nonnegativity", inputs.clone(), failure));

        let mut failure = None;
        for l in 1.. {
            let n = 2 * l + 2 * k - 1;
            if n > order {
                break;
            }
            let res = t.count(n).and_then(|c| leaf_from_vertex(&c, l, n));
            if let Err(e) = res {
                failure = Some(format!("l={l}: {e}"));
                break;
            }
        }
        checks.push(check("leaf_divisibility", inputs, failure));
    }

    for k in 1..=3 {
        let inputs = format!("k={k} order={order}");
        let failure = match (table(NetworkClass::Normal, k), table(NetworkClass::TreeChild, k)) {
            (Some(nt), Some(tt)) => (1..=order).find_map(|n| match (nt.count(n), tt.count(n)) {
                (Ok(a), Ok(b)) if a <= b => None,
                (Ok(a), Ok(b)) => Some(format!("n={n}: normal {a} > treechild {b}")),
                (Err(e), _) | (_, Err(e)) => Some(format!("n={n}: {e}")),
            }),
            _ => Some("series unavailable".into()),
        };
        checks.push(check("dominance", inputs, failure));
    }

    for k in 2..=3 {
        let inputs = format!("k={k} order={order}");
        let failure = match (caterpillar_lower_bound(k, order), table(NetworkClass::Normal, k)) {
            (Ok(lb), Some(nt)) => (1..=order).find_map(|n| {
                let bound = egf_coefficient(&lb, n);
                match (bound, nt.count(n)) {
                    (Some(b), Ok(c)) if b <= c => None,
                    (Some(b), Ok(c)) => Some(format!("n={n}: bound {b} > count {c}")),
                    (None, _) => Some(format!("n={n}: bound is not an integer")),
                    (_, Err(e)) => Some(format!("n={n}: {e}")),
                }
            }),
            (Err(e), _) => Some(e.to_string()),
            (_, None) => Some("series unavailable".into()),
        };
        checks.push(check("caterpillar_lower_bound", inputs, failure));
    }

    if level == Level::Full {
        for g in GOLDEN.iter() {
            let rows: Vec<usize> = g.rows.iter().map(|r| r.n).collect();
            let computed = asym::appendix_table(g.class, g.k, &rows, asym::DEFAULT_DIGITS, mode);
            let inputs = format!("class={} k={} rows=49..961", g.class, g.k);
            let Ok(computed) = computed else {
                checks.push(check("appendix", inputs, Some("table computation failed".into())));
                continue;
            };
            for column in ["exact", "first_order", "second_order"] {
                let mut bad = Vec::new();
                for (r, p) in computed.iter().zip(g.rows) {
                    let cmp = match column {
                        "exact" => compare_printed_int(p.exact.0, p.exact.1, &r.exact),
                        "first_order" => compare_printed(p.first.0, p.first.1, &r.first),
                        _ => compare_printed(p.second.0, p.second.1, &r.second),
                    };
                    match cmp {
                        Ok(c) if c.ok() => {}
                        Ok(c) => bad.push(format!("n={}: printed {} ours {} (units of 1e{})", r.n, c.printed, c.ours, c.position)),
                        Err(e) => bad.push(e.to_string()),
                    }
                }
                let failure = (!bad.is_empty()).then(|| format!("{}/{} cells off; first: {}", bad.len(), rows.len(), bad[0]));
                checks.push(check(&format!("appendix_{column}"), inputs.clone(), failure));
            }
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    Report {
        level: match level {
            Level::Fast => "fast".into(),
            Level::Full => "full".into(),
        },
        order,
        oracle_max_n: oracle_max,
        passed,
        checks,
    }
}
