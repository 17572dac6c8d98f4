//! Table computation for every family the `table` command knows.

use std::collections::BTreeMap;

use genstirling::eulerian::{
    elliptic_eulerian_table, elliptic_r_whitney_eulerian_table, eulerian_classical_table, q_eulerian_table,
    q_r_whitney_eulerian_table, r_whitney_eulerian_table,
};
use genstirling::special::{
    elliptic_lah_table, elliptic_rook_numbers, elliptic_shifted_stirling, elliptic_stirling2_table, lah_table,
    q_stirling2_table, st_shifted_stirling, stirling2_table, whitney_qr,
};
use genstirling::{Complex64, EllipticParams, ExactScalar, FerrersBoard, ParamSampler, Route, TriangularTable};

use crate::config::{format_complex, Family, ParamArgs, TableArgs};
use crate::document::TableDocument;
use crate::error::{CliError, CliResult};

/// Computes the table described by validated arguments.
pub fn table(args: &TableArgs) -> CliResult<TableDocument> {
    let (n, route) = args.validate()?;
    let family = args.family;
    let mut echo = BTreeMap::new();
    echo.insert("n".to_string(), n.to_string());
    echo.insert("route".to_string(), route.name().to_string());
    let (m, r) = (args.params.m.unwrap_or(1), args.params.r.unwrap_or(0));
    if family.params().contains(&crate::config::Param::M) {
        echo.insert("m".to_string(), m.to_string());
        echo.insert("r".to_string(), r.to_string());
    }

    if family.is_exact() {
        let t = exact_table(family, n, m, r, route)?;
        return Ok(TableDocument::from_exact(family.name(), echo, &t));
    }

    let t = match family {
        Family::StStirling => {
            let mut sampler = ParamSampler::new(args.seed);
            let s = args.params.s.unwrap_or_else(|| sampler.annulus(0.4, 0.9));
            let t = args.params.t.unwrap_or_else(|| sampler.annulus(0.4, 0.9));
            if args.params.s.is_none() || args.params.t.is_none() {
                echo.insert("seed".to_string(), args.seed.to_string());
            }
            echo.insert("s".to_string(), format_complex(s));
            echo.insert("t".to_string(), format_complex(t));
            TriangularTable::build(family.name(), n, |i, k| st_shifted_stirling(i, k, m, r, s, t, route))?
        }
        Family::Erook => {
            let board = args.params.board.clone().unwrap_or_else(|| FerrersBoard::staircase(n));
            echo.insert("board".to_string(), board.to_string());
            let lo = board
                .heights()
                .iter()
                .enumerate()
                .map(|(i, &b)| i as i64 - i64::from(b))
                .min()
                .unwrap_or(0)
                .min(0);
            let params = elliptic_params(&args.params, args.seed, lo, n as i64, &mut echo)?;
            let rows = (0..=n)
                .map(|cols| elliptic_rook_numbers(&FerrersBoard::new(board.heights()[..cols].to_vec()), &params, route))
                .collect::<genstirling::Result<Vec<_>>>()?;
            TriangularTable::from_rows(family.name(), rows)?
        }
        _ => {
            let (lo, hi) = elliptic_window(family, n, m, r);
            let params = elliptic_params(&args.params, args.seed, lo, hi, &mut echo)?;
            elliptic_table(family, n, m, r, &params, route)?
        }
    };
    TableDocument::from_numeric(family.name(), echo, &t)
}

fn exact_table(family: Family, n: usize, m: i64, r: i64, route: Route) -> CliResult<TriangularTable<ExactScalar>> {
    let t = match family {
        Family::Stirling => stirling2_table(n, route)?,
        Family::Eulerian => eulerian_classical_table(n, route)?,
        Family::RwhitneyEulerian => r_whitney_eulerian_table(n, m, r, route)?,
        Family::Lah => lah_table(n, route)?,
        Family::Qstirling => q_stirling2_table(n, route)?,
        Family::Qeulerian => q_eulerian_table(n, route)?,
        Family::Qwhitney => TriangularTable::build(family.name(), n, |i, k| Ok(whitney_qr(i, k, m, r)?.normalized))?,
        Family::QrwhitneyEulerian => q_r_whitney_eulerian_table(n, m, r, route)?,
        other => return Err(CliError::Config(format!("{} is not an exact family", other.name()))),
    };
    Ok(t)
}

/// The index window whose elliptic numbers the family reads.
fn elliptic_window(family: Family, n: usize, m: i64, r: i64) -> (i64, i64) {
    let n = n as i64;
    match family {
        Family::EshiftedStirling => (r.min(r + m * n), r.max(r + m * n)),
        Family::Elah => (-n, n),
        Family::Eeulerian => (-n, n + 1),
        Family::ErwhitneyEulerian => {
            let (x, y) = (-m * n - r, m * (n + 1) - r);
            (x.min(y), x.max(y))
        }
        _ => (0, n),
    }
}

fn elliptic_table(
    family: Family,
    n: usize,
    m: i64,
    r: i64,
    params: &EllipticParams,
    route: Route,
) -> CliResult<TriangularTable<Complex64>> {
    let t = match family {
        Family::Estirling => elliptic_stirling2_table(n, params, route)?,
        Family::EshiftedStirling => TriangularTable::build(family.name(), n, |i, k| {
            elliptic_shifted_stirling(i, k, m, r, params, route)
        })?,
        Family::Elah => elliptic_lah_table(n, params, route)?,
        Family::Eeulerian => elliptic_eulerian_table(n, params, route)?,
        Family::ErwhitneyEulerian => elliptic_r_whitney_eulerian_table(n, m, r, params, route)?,
        other => return Err(CliError::Config(format!("{} is not an elliptic family", other.name()))),
    };
    Ok(t)
}

/// Builds `(a, b, q, p)` from the given flags. Omitted parameters come from
/// a seeded generic draw over `lo..=hi`; the seed is echoed when used.
pub fn elliptic_params(
    given: &ParamArgs,
    seed: u64,
    lo: i64,
    hi: i64,
    echo: &mut BTreeMap<String, String>,
) -> CliResult<EllipticParams> {
    let explicit = [given.a, given.b, given.q, given.p];
    let [a, b, q, p] = if explicit.iter().all(Option::is_some) {
        explicit.map(|v| v.expect("checked"))
    } else {
        echo.insert("seed".to_string(), seed.to_string());
        let draw = ParamSampler::new(seed).elliptic(lo, hi)?;
        [
            given.a.unwrap_or(draw.a()),
            given.b.unwrap_or(draw.b()),
            given.q.unwrap_or(draw.q()),
            given.p.unwrap_or(draw.p()),
        ]
    };
    for (name, v) in [("a", a), ("b", b), ("q", q), ("p", p)] {
        echo.insert(name.to_string(), format_complex(v));
    }
    Ok(EllipticParams::from_values(a, b, q, p)?)
}
