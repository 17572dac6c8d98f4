//! The degeneration chain `p -> 0`, `a -> 0`, `b -> 0` as a command: the
//! elliptic family at the closed degenerate form is compared with the exact
//! q-analogue evaluated at the same numeric `q`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use genstirling::eulerian::{
    elliptic_eulerian_table, elliptic_r_whitney_eulerian_table, eulerian_classical_table, q_eulerian_table,
    q_r_whitney_eulerian_table, r_whitney_eulerian_table,
};
use genstirling::special::{
    elliptic_lah_table, elliptic_stirling2_table, lah_table, q_lah_table, q_stirling2_table, stirling2_table,
};
use genstirling::{Complex64, EllipticParams, ExactScalar, ParamSampler, Result, Route, TriangularTable};

use crate::config::{format_complex, ChainFamily, DegenerateArgs, MAX_N};
use crate::error::{CliError, CliResult};
use crate::measure::table_deviation;

impl ChainFamily {
    pub fn default_n(self) -> usize {
        match self {
            ChainFamily::Stirling => 7,
            ChainFamily::Eulerian | ChainFamily::Lah => 6,
            ChainFamily::RwhitneyEulerian => 5,
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            ChainFamily::Stirling | ChainFamily::Lah => 1e-9,
            ChainFamily::Eulerian | ChainFamily::RwhitneyEulerian => 1e-8,
        }
    }

    pub fn routes(self) -> &'static [Route] {
        match self {
            ChainFamily::Stirling => &[
                Route::Recurrence,
                Route::HSpecial,
                Route::ExplicitCorollary,
                Route::Oracle,
            ],
            ChainFamily::Eulerian => &[Route::Recurrence, Route::Explicit, Route::Engine],
            ChainFamily::Lah => &[Route::Recurrence, Route::Explicit, Route::Oracle],
            ChainFamily::RwhitneyEulerian => &[Route::Recurrence, Route::Explicit],
        }
    }
}

/// The elliptic table of `family` under `params`.
pub fn elliptic_table(
    family: ChainFamily,
    n: usize,
    m: i64,
    r: i64,
    params: &EllipticParams,
    route: Route,
) -> Result<TriangularTable<Complex64>> {
    match family {
        ChainFamily::Stirling => elliptic_stirling2_table(n, params, route),
        ChainFamily::Eulerian => elliptic_eulerian_table(n, params, route),
        ChainFamily::Lah => elliptic_lah_table(n, params, route),
        ChainFamily::RwhitneyEulerian => elliptic_r_whitney_eulerian_table(n, m, r, params, route),
    }
}

/// The exact q-analogue the chain ends at.
pub fn q_table(family: ChainFamily, n: usize, m: i64, r: i64) -> Result<TriangularTable<ExactScalar>> {
    static CACHE: OnceLock<[TriangularTable<ExactScalar>; 3]> = OnceLock::new();
    let cached = |i: usize| -> Option<TriangularTable<ExactScalar>> {
        let tables = CACHE.get_or_init(|| {
            [
                q_stirling2_table(7, Route::Recurrence).expect("q-Stirling table"),
                q_eulerian_table(6, Route::Recurrence).expect("q-Eulerian table"),
                q_lah_table(6).expect("q-Lah table"),
            ]
        });
        (tables[i].max_n() >= n).then(|| truncate(&tables[i], n))
    };
    match family {
        ChainFamily::Stirling => cached(0).map_or_else(|| q_stirling2_table(n, Route::Recurrence), Ok),
        ChainFamily::Eulerian => cached(1).map_or_else(|| q_eulerian_table(n, Route::Recurrence), Ok),
        ChainFamily::Lah => cached(2).map_or_else(|| q_lah_table(n), Ok),
        ChainFamily::RwhitneyEulerian => q_r_whitney_eulerian_table(n, m, r, Route::Recurrence),
    }
}

fn truncate(t: &TriangularTable<ExactScalar>, n: usize) -> TriangularTable<ExactScalar> {
    TriangularTable::from_rows(t.family(), t.rows()[..=n].to_vec()).expect("prefix of a triangle")
}

/// Largest deviation, over every route, between the elliptic family at the
/// q-analogue closed form and the exact q-analogue at `q`.
pub fn chain_deviation(family: ChainFamily, n: usize, m: i64, r: i64, q: Complex64) -> Result<Vec<(Route, f64)>> {
    let params = EllipticParams::q_analogue(q)?;
    let exact = q_table(family, n, m, r)?;
    let want = exact.map(|_, _, v| v.eval(q))?;
    family
        .routes()
        .iter()
        .map(|&route| {
            Ok((
                route,
                table_deviation(&elliptic_table(family, n, m, r, &params, route)?, &want),
            ))
        })
        .collect()
}

/// The classical (`q = 1`) integer triangle the chain reaches last.
pub fn classical_table(family: ChainFamily, n: usize, m: i64, r: i64) -> Result<TriangularTable<ExactScalar>> {
    match family {
        ChainFamily::Stirling => stirling2_table(n, Route::Recurrence),
        ChainFamily::Eulerian => eulerian_classical_table(n, Route::Recurrence),
        ChainFamily::Lah => lah_table(n, Route::Oracle),
        ChainFamily::RwhitneyEulerian => r_whitney_eulerian_table(n, m, r, Route::Recurrence),
    }
}

/// Largest deviation between the elliptic family in the classical form
/// and the integer triangle.
pub fn classical_deviation(family: ChainFamily, n: usize, m: i64, r: i64) -> Result<Vec<(Route, f64)>> {
    let params = EllipticParams::classical();
    let want = classical_table(family, n, m, r)?.map(|_, _, v| v.eval(Complex64::new(1.0, 0.0)))?;
    family
        .routes()
        .iter()
        .map(|&route| {
            Ok((
                route,
                table_deviation(&elliptic_table(family, n, m, r, &params, route)?, &want),
            ))
        })
        .collect()
}

/// Runs the command; returns the report and whether every deviation is
/// within tolerance.
pub fn run(args: &DegenerateArgs) -> CliResult<(String, bool)> {
    let family = args.family;
    if family != ChainFamily::RwhitneyEulerian && (args.m.is_some() || args.r.is_some()) {
        return Err(CliError::Config(format!(
            "family {} does not take --m or --r",
            family.name()
        )));
    }
    let n = args.n.unwrap_or(family.default_n());
    if n > MAX_N {
        return Err(CliError::Config(format!(
            "--n {n} exceeds the supported maximum {MAX_N}"
        )));
    }
    let (m, r) = (args.m.unwrap_or(2), args.r.unwrap_or(1));
    if family == ChainFamily::RwhitneyEulerian && (m < 1 || r < 0) {
        return Err(CliError::Config(format!(
            "r-Whitney Eulerian numbers need m >= 1 and r >= 0, got m = {m}, r = {r}"
        )));
    }
    let tol = args.tol.unwrap_or(family.default_tol());
    let q = args.q.unwrap_or_else(|| ParamSampler::new(args.seed).q());

    let mut out = format!("degenerate {}  n={n}  q={}", family.name(), format_complex(q));
    if args.q.is_none() {
        write!(out, "  seed={}", args.seed).expect("string write");
    }
    if family == ChainFamily::RwhitneyEulerian {
        write!(out, "  m={m}  r={r}").expect("string write");
    }
    out.push('\n');
    out.push_str("chain p -> 0, a -> 0, b -> 0 against the exact q-analogue at q\n");

    let mut worst = 0f64;
    for (route, dev) in chain_deviation(family, n, m, r, q)? {
        writeln!(out, "  {:<20} max rel. dev {dev:.3e}", route.name()).expect("string write");
        worst = worst.max(dev);
    }
    let mut ok = worst <= tol;
    writeln!(
        out,
        "q-analogue: max rel. dev {worst:.3e}  tol {tol:.1e}  {}",
        verdict(worst <= tol)
    )
    .expect("string write");

    if family == ChainFamily::Lah {
        out.push_str("then q -> 1 against the Newton oracle over a_i = i, c_i = 1 - i\n");
        let mut worst = 0f64;
        for (route, dev) in classical_deviation(family, n, m, r)? {
            writeln!(out, "  {:<20} max rel. dev {dev:.3e}", route.name()).expect("string write");
            worst = worst.max(dev);
        }
        let oracle = classical_table(family, n, m, r)?;
        let closed = lah_table(n, Route::Explicit)?;
        let same = oracle == closed;
        for row in oracle.rows() {
            let values: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(out, "  {}", values.join(" ")).expect("string write");
        }
        writeln!(
            out,
            "q = 1: max rel. dev {worst:.3e}  tol {tol:.1e}  binom(n-1,k-1) n!/k! {}  {}",
            if same { "matches" } else { "differs" },
            verdict(worst <= tol && same)
        )
        .expect("string write");
        ok &= worst <= tol && same;
    }
    Ok((out, ok))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
