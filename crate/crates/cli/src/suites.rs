//! Seeded identity suites behind the `check` command.
//!
//! Every check runs once per trial with its own sampler, seeded from the
//! run seed, the check's name and the trial index, so trials are
//! independent and run in parallel; results are collected in trial order.
//! Checks marked `once` are trial-independent and run a single time when
//! at least one trial is requested.

use std::fmt::{self, Write as _};

use genstirling::eulerian::{
    elliptic_eulerian_table, elliptic_r_whitney_eulerian_table, eulerian_classical_table, generalized_eulerian,
    lagrange_delta_check, q_eulerian_table, q_r_whitney_eulerian, q_r_whitney_eulerian_table, r_whitney_eulerian_table,
    worpitzky_defect, worpitzky_residual,
};
use genstirling::newton::{connection_explicit, connection_recurrence, falling_factorial, newton_oracle};
use genstirling::scalar::{identity_residual, relative_error};
use genstirling::special::{
    elliptic_lah_table, elliptic_rook_numbers, elliptic_shifted_stirling, elliptic_stirling2_table, lah_table,
    q_stirling2_table, st_shifted_stirling, stirling2_table,
};
use genstirling::theta::theta;
use genstirling::{
    Complex64, ComplexDd, EllipticParams, EulerianParams, ExactScalar, FerrersBoard, Numeric, ParamSampler, Result,
    Route, Scalar, ThetaPolicy, TriangularTable, ValueSequence,
};
use rayon::prelude::*;

use crate::config::{format_complex, ChainFamily, Suite};
use crate::degenerate::{chain_deviation, classical_deviation};
use crate::measure::{deviation, pairwise_deviation, table_deviation};

/// Parameters sampled by a trial, printed when it fails.
#[derive(Debug, Clone, Default)]
pub struct Record(Vec<(String, String)>);

impl Record {
    fn set(&mut self, key: &str, value: impl fmt::Display) {
        self.0.push((key.to_string(), value.to_string()));
    }

    fn complex(&mut self, key: &str, z: Complex64) {
        self.set(key, format_complex(z));
    }

    fn params(&mut self, params: &EllipticParams) {
        for (key, v) in [
            ("a", params.a()),
            ("b", params.b()),
            ("q", params.q()),
            ("p", params.p()),
        ] {
            self.complex(key, v);
        }
    }

    fn list(&mut self, key: &str, values: &[Complex64]) {
        let parts: Vec<String> = values.iter().map(|&z| format!("({})", format_complex(z))).collect();
        self.set(key, parts.join(" "));
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

type Run = fn(&mut ParamSampler, &mut Record) -> Result<f64>;

/// One identity or cross-route comparison; `tol = None` demands exact
/// agreement (residual zero).
pub struct Check {
    pub name: &'static str,
    pub tol: Option<f64>,
    pub once: bool,
    run: Run,
}

const fn numeric(name: &'static str, tol: f64, run: Run) -> Check {
    Check {
        name,
        tol: Some(tol),
        once: false,
        run,
    }
}

const fn numeric_once(name: &'static str, tol: f64, run: Run) -> Check {
    Check {
        name,
        tol: Some(tol),
        once: true,
        run,
    }
}

const fn exact(name: &'static str, run: Run) -> Check {
    Check {
        name,
        tol: None,
        once: true,
        run,
    }
}

pub fn checks(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Theta => vec![
            numeric("inversion", 1e-9, theta_inversion),
            numeric("quasi-periodicity", 1e-9, theta_quasi_periodicity),
            numeric("three-term", 1e-9, theta_three_term),
        ],
        Suite::EllipticIdentities => vec![
            numeric("factorization", 1e-9, ell_factorization),
            numeric("weight-shift", 1e-9, ell_weight_shift),
            numeric("negation", 1e-9, ell_negation),
            numeric("a-period", 1e-9, ell_a_period),
            numeric("b-period", 1e-9, ell_b_period),
        ],
        Suite::HRoutes => vec![
            numeric("estirling-routes", 1e-8, estirling_routes),
            numeric("eshifted-stirling-routes", 1e-8, eshifted_routes),
            numeric("st-stirling-routes", 1e-8, st_routes),
            exact("qstirling-routes", qstirling_exact),
        ],
        Suite::Connection => vec![
            numeric("random-sequence", 1e-8, connection_random),
            numeric("estirling-expansion", 1e-8, estirling_expansion),
            exact("classical-specializations", connection_classical),
        ],
        Suite::Rook => vec![
            numeric("random-board-routes", 1e-8, rook_random_board),
            numeric("staircase-stirling", 1e-8, rook_staircase),
            numeric("empty-board", 1e-14, rook_empty_board),
        ],
        Suite::Lah => vec![
            numeric("elah-routes", 1e-8, lah_routes),
            numeric("elah-expansion", 1e-8, lah_expansion),
            numeric_once("classical-limit", 1e-9, lah_classical),
            exact("integer-routes", lah_integer_routes),
        ],
        Suite::EulerianRoutes => vec![
            numeric("eeulerian-routes", 1e-7, eeulerian_routes),
            numeric("erwhitney-eulerian-routes", 1e-7, erwhitney_routes),
            numeric("random-sequence-routes", 1e-7, random_eulerian_routes),
            exact("qeulerian-routes", qeulerian_exact),
            exact("rwhitney-eulerian-routes", rwhitney_exact),
            exact("qrwhitney-eulerian-routes", qrwhitney_exact),
            exact("generalized-exact-routes", generalized_exact),
        ],
        Suite::Worpitzky => vec![
            numeric("elliptic", 1e-7, worpitzky_elliptic),
            numeric("random-sequence", 1e-7, worpitzky_random),
            numeric("lagrange-delta-elliptic", 1e-9, delta_elliptic),
            numeric("lagrange-delta-random", 1e-9, delta_random),
            exact("exact-sequences", worpitzky_exact),
        ],
        Suite::Degeneration => vec![
            numeric("stirling-chain", 1e-9, chain_stirling),
            numeric("eulerian-chain", 1e-8, chain_eulerian),
            numeric("lah-chain", 1e-9, chain_lah),
            numeric("rwhitney-eulerian-chain", 1e-8, chain_rwhitney),
            numeric_once("classical-limit", 1e-9, chain_classical),
        ],
        Suite::All => Suite::EACH.into_iter().flat_map(checks).collect(),
    }
}

/// A failing trial with everything needed to reproduce it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub trial: usize,
    pub residual: Option<f64>,
    pub error: Option<String>,
    pub record: Record,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub suite: Suite,
    pub name: &'static str,
    pub tol: Option<f64>,
    pub total: usize,
    pub passed: usize,
    pub worst: f64,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn total(&self) -> usize {
        self.checks.iter().map(|c| c.total).sum()
    }

    pub fn ok(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn worst(&self) -> f64 {
        self.checks.iter().map(|c| c.worst).fold(0.0, f64::max)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a over the check's qualified name.
fn stream(suite: Suite, check: &str) -> u64 {
    format!("{}/{check}", suite.name())
        .bytes()
        .fold(0xCBF2_9CE4_8422_2325, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01B3)
        })
}

pub fn trial_seed(seed: u64, suite: Suite, check: &str, trial: usize) -> u64 {
    mix(mix(mix(seed) ^ stream(suite, check)) ^ trial as u64)
}

/// Runs every check of one suite (not `All`).
pub fn run_suite(suite: Suite, trials: usize, seed: u64, tol: Option<f64>) -> SuiteReport {
    let checks = checks(suite)
        .into_iter()
        .map(|check| {
            let count = if check.once { trials.min(1) } else { trials };
            let limit = check.tol.map(|default| tol.unwrap_or(default));
            let outcomes: Vec<(Result<f64>, Record)> = (0..count)
                .into_par_iter()
                .map(|t| {
                    let mut sampler = ParamSampler::new(trial_seed(seed, suite, check.name, t));
                    let mut record = Record::default();
                    let result = (check.run)(&mut sampler, &mut record);
                    (result, record)
                })
                .collect();
            let mut report = CheckReport {
                suite,
                name: check.name,
                tol: limit,
                total: count,
                passed: 0,
                worst: 0.0,
                failures: Vec::new(),
            };
            for (trial, (result, record)) in outcomes.into_iter().enumerate() {
                match result {
                    Ok(residual) if within(residual, limit) => {
                        report.passed += 1;
                        report.worst = report.worst.max(residual);
                    }
                    Ok(residual) => {
                        report.worst = report
                            .worst
                            .max(if residual.is_nan() { f64::INFINITY } else { residual });
                        report.failures.push(Failure {
                            trial,
                            residual: Some(residual),
                            error: None,
                            record,
                        });
                    }
                    Err(e) => report.failures.push(Failure {
                        trial,
                        residual: None,
                        error: Some(e.to_string()),
                        record,
                    }),
                }
            }
            report
        })
        .collect();
    SuiteReport {
        suite,
        seed,
        trials,
        checks,
    }
}

fn within(residual: f64, limit: Option<f64>) -> bool {
    match limit {
        Some(tol) => residual <= tol,
        None => residual == 0.0,
    }
}

/// Runs one suite or all of them.
pub fn run(suite: Suite, trials: usize, seed: u64, tol: Option<f64>) -> Vec<SuiteReport> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    suites.into_iter().map(|s| run_suite(s, trials, seed, tol)).collect()
}

/// The text report; identical inputs give identical bytes.
pub fn render(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    let w = &mut out;
    for report in reports {
        writeln!(
            w,
            "suite {}  seed {}  trials {}",
            report.suite.name(),
            report.seed,
            report.trials
        )
        .expect("string write");
        for c in &report.checks {
            let tol = c.tol.map_or_else(|| "exact".to_string(), |t| format!("{t:.1e}"));
            writeln!(
                w,
                "  {:<28} {:>4}/{:<4} worst {:.3e}  tol {tol:<8} {}",
                c.name,
                c.passed,
                c.total,
                c.worst,
                if c.failures.is_empty() { "PASS" } else { "FAIL" }
            )
            .expect("string write");
            for f in &c.failures {
                let what = match (&f.residual, &f.error) {
                    (_, Some(e)) => format!("error: {e}"),
                    (Some(r), None) => format!("residual {r:.3e}"),
                    (None, None) => "no result".to_string(),
                };
                writeln!(
                    w,
                    "    FAIL {}/{} trial {} (seed {}, trial seed {:#018x}): {what}; {}",
                    report.suite.name(),
                    c.name,
                    f.trial,
                    report.seed,
                    trial_seed(report.seed, report.suite, c.name, f.trial),
                    f.record
                )
                .expect("string write");
            }
        }
        writeln!(
            w,
            "suite {}: {}/{} passed, worst residual {:.3e}",
            report.suite.name(),
            report.passed(),
            report.total(),
            report.worst()
        )
        .expect("string write");
    }
    if reports.len() > 1 {
        let passed: usize = reports.iter().map(SuiteReport::passed).sum();
        let total: usize = reports.iter().map(SuiteReport::total).sum();
        let worst = reports
            .iter()
            .flat_map(|r| &r.checks)
            .fold(None::<&CheckReport>, |best, c| match best {
                Some(b) if b.worst >= c.worst => Some(b),
                _ => Some(c),
            });
        let at = worst.map_or_else(String::new, |c| format!(" ({}/{})", c.suite.name(), c.name));
        let seed = reports.first().map_or(0, |r| r.seed);
        writeln!(
            w,
            "total: {passed}/{total} passed, worst residual {:.3e}{at}, seed {seed}",
            worst.map_or(0.0, |c| c.worst)
        )
        .expect("string write");
    }
    let ok = reports.iter().all(SuiteReport::ok);
    writeln!(w, "result: {}", if ok { "PASS" } else { "FAIL" }).expect("string write");
    out
}

// Sampling helpers.

/// An integer uniform in `lo..=hi`.
fn int_in(s: &mut ParamSampler, lo: i64, hi: i64) -> i64 {
    let width = (hi - lo + 1) as f64;
    lo + (s.uniform(0.0, width) as i64).min(hi - lo)
}

fn elliptic(s: &mut ParamSampler, rec: &mut Record, lo: i64, hi: i64) -> Result<EllipticParams> {
    let params = s.elliptic(lo, hi)?;
    rec.params(&params);
    Ok(params)
}

/// `a_i = i + u_i` on `lo..=hi` with `u_i` uniform in the disc of radius 1/4.
fn random_sequence(s: &mut ParamSampler, rec: &mut Record, lo: i64, hi: i64) -> Result<ValueSequence<Complex64>> {
    let values: Vec<Complex64> = (lo..=hi)
        .map(|i| Complex64::new(i as f64, 0.0) + s.disc(0.25))
        .collect();
    rec.set("lo", lo);
    rec.list("a", &values);
    ValueSequence::explicit(values, lo)
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn dd(z: Complex64) -> ComplexDd {
    ComplexDd::from_c64(z)
}

// theta

fn theta_at(x: Complex64, p: Complex64) -> Result<Complex64> {
    theta(x, p, &ThetaPolicy::for_nome(p)?)
}

fn theta_inversion(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let (p, x) = (s.nome(), s.annulus(0.3, 3.0));
    rec.complex("p", p);
    rec.complex("x", x);
    Ok(relative_error(theta_at(x, p)?, -x * theta_at(1.0 / x, p)?))
}

fn theta_quasi_periodicity(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let (p, x) = (s.nome(), s.annulus(0.3, 3.0));
    rec.complex("p", p);
    rec.complex("x", x);
    Ok(relative_error(theta_at(p * x, p)?, -theta_at(x, p)? / x))
}

fn theta_three_term(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let p = s.nome();
    let [x, y, u, z] = [(); 4].map(|()| s.annulus(0.3, 3.0));
    for (key, v) in [("p", p), ("x", x), ("y", y), ("u", u), ("z", z)] {
        rec.complex(key, v);
    }
    let th = |v: Complex64| theta_at(v, p);
    let lhs = th(x * y)? * th(x / y)? * th(u * z)? * th(u / z)?;
    let t1 = th(u * y)? * th(u / y)? * th(x * z)? * th(x / z)?;
    let t2 = x / z * th(z * y)? * th(z / y)? * th(u * x)? * th(u / x)?;
    Ok(identity_residual(lhs, &[t1, t2]))
}

// elliptic numbers and weights

fn ell_factorization(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -6, 8)?;
    let (y, z) = (int_in(s, -3, 4), int_in(s, -3, 4));
    rec.set("y", y);
    rec.set("z", z);
    let lhs = params.number(y + z)?;
    let t2 = params.weight(y)? * params.number_shifted(z, 2 * y, y)?;
    Ok(identity_residual(lhs, &[params.number(y)?, t2]))
}

fn ell_weight_shift(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -6, 8)?;
    let (k, j) = (int_in(s, -3, 4), int_in(s, -3, 4));
    rec.set("k", k);
    rec.set("j", j);
    let lhs = params.weight(k + j)?;
    let rhs = params.weight(j)? * params.shifted(2 * j, j).weight(k)?;
    Ok(relative_error(lhs, rhs))
}

fn ell_negation(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -5, 5)?;
    let k = int_in(s, 1, 5);
    rec.set("k", k);
    let rhs = -params.weight(-1)? * params.inverted_number(k)?;
    Ok(relative_error(params.number(-k)?, rhs))
}

fn ell_period(s: &mut ParamSampler, rec: &mut Record, shift_a: bool) -> Result<f64> {
    let params = elliptic(s, rec, -4, 6)?;
    let z = int_in(s, -4, 6);
    rec.set("z", z);
    let (a, b, p) = (params.a(), params.b(), params.p());
    let moved = if shift_a {
        EllipticParams::new(p * a, b, params.q(), p)?
    } else {
        EllipticParams::new(a, p * b, params.q(), p)?
    };
    Ok(relative_error(params.number(z)?, moved.number(z)?))
}

fn ell_a_period(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    ell_period(s, rec, true)
}

fn ell_b_period(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    ell_period(s, rec, false)
}

// complete homogeneous routes

fn estirling_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, 0, 7)?;
    let tables = [
        Route::Recurrence,
        Route::HSpecial,
        Route::ExplicitCorollary,
        Route::Oracle,
    ]
    .map(|route| elliptic_stirling2_table(7, &params, route));
    Ok(pairwise_deviation(&tables.into_iter().collect::<Result<Vec<_>>>()?))
}

fn h_route_tables<F>(n: usize, f: F) -> Result<Vec<TriangularTable<Complex64>>>
where
    F: Fn(usize, usize, Route) -> Result<Complex64>,
{
    [Route::HSpecial, Route::Explicit, Route::Oracle]
        .into_iter()
        .map(|route| TriangularTable::build("h", n, |i, k| f(i, k, route)))
        .collect()
}

fn eshifted_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let (m, r) = (int_in(s, 1, 3), int_in(s, 0, 2));
    rec.set("m", m);
    rec.set("r", r);
    let params = elliptic(s, rec, r, r + 6 * m)?;
    let tables = h_route_tables(6, |n, k, route| elliptic_shifted_stirling(n, k, m, r, &params, route))?;
    Ok(pairwise_deviation(&tables))
}

fn st_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let (m, r) = (int_in(s, 1, 3), int_in(s, 0, 2));
    let (sv, tv) = (s.annulus(0.4, 0.9), s.annulus(0.4, 0.9));
    rec.set("m", m);
    rec.set("r", r);
    rec.complex("s", sv);
    rec.complex("t", tv);
    let tables = h_route_tables(6, |n, k, route| st_shifted_stirling(n, k, m, r, sv, tv, route))?;
    Ok(pairwise_deviation(&tables))
}

fn qstirling_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 10);
    let rec_t = q_stirling2_table(10, Route::Recurrence)?;
    let carlitz = q_stirling2_table(10, Route::CarlitzSum)?;
    let h = q_stirling2_table(10, Route::HSpecial)?;
    let classical = stirling2_table(10, Route::Recurrence)?;
    let at_one = rec_t
        .entries()
        .map(|(n, k, v)| Ok(v.eval_at_one()? == classical.get(n, k as i64).eval_at_one()?))
        .collect::<Result<Vec<bool>>>()?;
    Ok(flag(
        same_entries(&rec_t, &carlitz) && same_entries(&rec_t, &h) && at_one.into_iter().all(|b| b),
    ))
}

fn same_entries(a: &TriangularTable<ExactScalar>, b: &TriangularTable<ExactScalar>) -> bool {
    a.rows() == b.rows()
}

// connection coefficients

fn connection_random(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let n = 7;
    let seq = random_sequence(s, rec, 0, n as i64)?;
    let c0 = s.annulus(0.5, 1.5);
    let c: Vec<Complex64> = (0..n).map(|_| s.annulus(0.3, 3.0)).collect();
    rec.complex("c0", c0);
    rec.list("c", &c);
    let rows = connection_recurrence(&c0, &c, &seq)?;
    let mut worst = 0f64;
    for (i, row) in rows.iter().enumerate() {
        for k in 0..=i {
            worst = worst.max(deviation(row.entries[k], connection_explicit(&c0, &c, &seq, i, k)?));
        }
    }
    let f: Vec<Complex64> = seq
        .values(0, n as i64)?
        .into_iter()
        .map(|a| c.iter().fold(c0, |acc, ci| acc * (a - ci)))
        .collect();
    let oracle = newton_oracle(&f, &seq, n)?;
    for k in 0..=n {
        worst = worst.max(deviation(rows[n].entries[k], oracle.entries[k]));
    }
    Ok(worst)
}

fn estirling_expansion(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, 0, 10)?;
    let table = elliptic_stirling2_table(7, &params, Route::Recurrence)?;
    let seq = ValueSequence::<Complex64>::elliptic(params);
    let mut worst = 0f64;
    for n in 0..=7usize {
        for z in 0..=(n as i64 + 3) {
            let az = params.number(z)?;
            let terms = (0..=n)
                .map(|k| Ok(table.get(n, k as i64) * falling_factorial(&az, &seq, k)?))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.max(identity_residual(az.powu(n as u32), &terms));
        }
    }
    Ok(worst)
}

fn connection_classical(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 10);
    let seq = ValueSequence::<ExactScalar>::classical();
    let rows = |c: Vec<ExactScalar>| -> Result<Vec<Vec<ExactScalar>>> {
        Ok(connection_recurrence(&ExactScalar::one(), &c, &seq)?
            .into_iter()
            .map(|r| r.entries)
            .collect())
    };
    let powers = rows(vec![ExactScalar::zero(); 10])?;
    let rising = rows((1..=10).map(|i| ExactScalar::from_integer(1 - i)).collect())?;
    Ok(flag(
        powers == stirling2_table(10, Route::Recurrence)?.rows() && rising == lah_table(10, Route::Explicit)?.rows(),
    ))
}

// rook numbers

fn rook_random_board(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let n = int_in(s, 1, 6) as usize;
    let mut heights: Vec<u32> = (0..n).map(|_| int_in(s, 0, 6) as u32).collect();
    heights.sort_unstable();
    let board = FerrersBoard::new(heights);
    rec.set("board", &board);
    let params = elliptic(s, rec, -6, 8)?;
    let e = elliptic_rook_numbers(&board, &params, Route::Explicit)?;
    let o = elliptic_rook_numbers(&board, &params, Route::Oracle)?;
    let scale = e.iter().chain(&o).fold(0f64, |m, v| m.max(v.norm()));
    Ok(e.iter()
        .zip(&o)
        .map(|(x, y)| (x - y).norm() / scale)
        .fold(0.0, f64::max))
}

fn rook_staircase(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -2, 8)?;
    let stirling = elliptic_stirling2_table(7, &params, Route::Recurrence)?;
    let mut worst = 0f64;
    for n in 0..=7 {
        let r = elliptic_rook_numbers(&FerrersBoard::staircase(n), &params, Route::Explicit)?;
        let mut weights = Complex64::new(1.0, 0.0);
        for k in 0..=n {
            if k > 0 {
                weights *= params.weight(k as i64 - 1)?;
            }
            worst = worst.max(deviation(r[n - k] / weights, stirling.get(n, k as i64)));
        }
    }
    Ok(worst)
}

fn rook_empty_board(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -2, 8)?;
    let mut worst = 0f64;
    for n in 0..=6 {
        for route in [Route::Explicit, Route::Oracle] {
            let r = elliptic_rook_numbers(&FerrersBoard::empty(n), &params, route)?;
            if r[1..].iter().any(|v| !Scalar::is_zero(v)) {
                rec.set("nonzero", format!("{route} n={n}"));
                return Ok(1.0);
            }
            worst = worst.max((r[0] - 1.0).norm());
        }
    }
    Ok(worst)
}

// Lah numbers

fn lah_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -6, 6)?;
    let tables = [Route::Recurrence, Route::Explicit, Route::Oracle]
        .map(|route| elliptic_lah_table(6, &params, route))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_deviation(&tables))
}

fn lah_expansion(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -6, 9)?;
    let table = elliptic_lah_table(6, &params, Route::Recurrence)?;
    let seq = ValueSequence::<Complex64>::elliptic(params);
    let mut worst = 0f64;
    for n in 0..=6usize {
        for z in 0..=(n as i64 + 3) {
            let az = params.number(z)?;
            let lhs = (0..n as i64).try_fold(Complex64::new(1.0, 0.0), |acc, i| Ok(acc * (az - params.number(-i)?)))?;
            let terms = (0..=n)
                .map(|k| Ok(table.get(n, k as i64) * falling_factorial(&az, &seq, k)?))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.max(identity_residual(lhs, &terms));
        }
    }
    Ok(worst)
}

fn lah_classical(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 6);
    Ok(classical_deviation(ChainFamily::Lah, 6, 0, 0)?
        .into_iter()
        .map(|(_, d)| d)
        .fold(0.0, f64::max))
}

fn lah_integer_routes(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 12);
    Ok(flag(lah_table(12, Route::Explicit)? == lah_table(12, Route::Oracle)?))
}

// Eulerian routes

fn eeulerian_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -8, 9)?;
    let tables = [Route::Recurrence, Route::Explicit, Route::Engine]
        .map(|route| elliptic_eulerian_table(7, &params, route))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_deviation(&tables))
}

fn erwhitney_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let m = int_in(s, 1, 3);
    let r = int_in(s, 0, m - 1);
    rec.set("m", m);
    rec.set("r", r);
    let n = 5;
    let params = elliptic(s, rec, -m * n - r, m * (n + 1) - r)?;
    let rec_t = elliptic_r_whitney_eulerian_table(n as usize, m, r, &params, Route::Recurrence)?;
    let exp_t = elliptic_r_whitney_eulerian_table(n as usize, m, r, &params, Route::Explicit)?;
    Ok(table_deviation(&rec_t, &exp_t))
}

fn random_eulerian_routes(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let engine = EulerianParams::new(random_sequence(s, rec, -7, 8)?);
    let rec_t = generalized_eulerian(&engine, 7, Route::Recurrence)?;
    let exp_t = generalized_eulerian(&engine, 7, Route::Explicit)?;
    Ok(table_deviation(&rec_t, &exp_t))
}

fn qeulerian_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 9);
    let r = q_eulerian_table(9, Route::Recurrence)?;
    let c = q_eulerian_table(9, Route::CarlitzSum)?;
    let classical = eulerian_classical_table(9, Route::Recurrence)?;
    let at_one = r
        .entries()
        .map(|(n, k, v)| Ok(v.eval_at_one()? == classical.get(n, k as i64).eval_at_one()?))
        .collect::<Result<Vec<bool>>>()?;
    Ok(flag(same_entries(&r, &c) && at_one.into_iter().all(|b| b)))
}

fn rwhitney_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 8);
    for m in 1..=3 {
        for r in 0..m {
            let direct = r_whitney_eulerian_table(8, m, r, Route::Recurrence)?;
            let engine = r_whitney_eulerian_table(8, m, r, Route::Engine)?;
            if !same_entries(&direct, &engine) {
                rec.set("m", m);
                rec.set("r", r);
                return Ok(1.0);
            }
        }
    }
    Ok(0.0)
}

fn qrwhitney_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 6);
    for (m, r) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 2)] {
        let t = q_r_whitney_eulerian_table(6, m, r, Route::Recurrence)?;
        let mut ok = same_entries(&t, &q_r_whitney_eulerian_table(6, m, r, Route::Explicit)?)
            && same_entries(&t, &q_r_whitney_eulerian_table(6, m, r, Route::Engine)?);
        if (m, r) == (1, 0) {
            ok &= same_entries(&t, &q_eulerian_table(6, Route::Recurrence)?);
        }
        if !ok {
            rec.set("m", m);
            rec.set("r", r);
            return Ok(1.0);
        }
    }
    // a single entry through the entry-level function
    let entry = q_r_whitney_eulerian(3, 2, 1, 0, Route::Explicit)?;
    Ok(flag(entry == q_eulerian_table(3, Route::Recurrence)?.get(3, 2)))
}

fn exact_sequences() -> Vec<ValueSequence<ExactScalar>> {
    vec![
        ValueSequence::classical(),
        ValueSequence::q_numbers(),
        ValueSequence::affine_whitney(2, 1),
        ValueSequence::q_whitney(2, 1),
    ]
}

fn generalized_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 7);
    for seq in exact_sequences() {
        let engine = EulerianParams::new(seq);
        let r = generalized_eulerian(&engine, 7, Route::Recurrence)?;
        let e = generalized_eulerian(&engine, 7, Route::Explicit)?;
        if !same_entries(&r, &e) {
            rec.set("sequence", format!("{:?}", engine.sequence().kind()));
            return Ok(1.0);
        }
    }
    Ok(0.0)
}

// Worpitzky and Lagrange identities

fn real_samples(s: &mut ParamSampler, rec: &mut Record) -> Vec<Complex64> {
    let zs: Vec<Complex64> = (0..20).map(|_| Complex64::new(s.uniform(-3.0, 3.0), 0.0)).collect();
    rec.list("z", &zs);
    zs
}

fn worpitzky_elliptic(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -8, 9)?;
    let engine = EulerianParams::new(ValueSequence::<ComplexDd>::elliptic(params));
    let table = generalized_eulerian(&engine, 7, Route::Recurrence)?;
    let zs: Vec<ComplexDd> = real_samples(s, rec).into_iter().map(dd).collect();
    (0..=7).try_fold(0f64, |worst, n| {
        Ok(worst.max(worpitzky_residual(&table, &engine, n, &zs)?))
    })
}

fn worpitzky_random(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let engine = EulerianParams::new(random_sequence(s, rec, -7, 8)?);
    let table = generalized_eulerian(&engine, 7, Route::Recurrence)?;
    let zs = real_samples(s, rec);
    (0..=7).try_fold(0f64, |worst, n| {
        Ok(worst.max(worpitzky_residual(&table, &engine, n, &zs)?))
    })
}

fn delta_residual<T: Numeric>(engine: &EulerianParams<T>) -> Result<f64> {
    let mut worst = 0f64;
    for n in 0..=6 {
        for k in 0..=n {
            for l in 0..=k {
                let v = lagrange_delta_check(engine, n, k, l)?.to_c64();
                let want = Complex64::new(if k == l { 1.0 } else { 0.0 }, 0.0);
                worst = worst.max((v - want).norm());
            }
        }
    }
    Ok(worst)
}

fn delta_elliptic(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let params = elliptic(s, rec, -7, 8)?;
    delta_residual(&EulerianParams::new(ValueSequence::<ComplexDd>::elliptic(params)))
}

fn delta_random(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    delta_residual(&EulerianParams::new(random_sequence(s, rec, -7, 8)?))
}

fn worpitzky_exact(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    rec.set("n", 7);
    let zs = [
        ExactScalar::from_integer(-3),
        ExactScalar::from_integer(11),
        "q^2 + 5".parse::<ExactScalar>()?,
    ];
    for seq in exact_sequences() {
        let engine = EulerianParams::new(seq);
        let table = generalized_eulerian(&engine, 7, Route::Recurrence)?;
        for n in 0..=7 {
            for z in &zs {
                if !worpitzky_defect(&table, &engine, n, z)?.is_zero() {
                    rec.set("sequence", format!("{:?}", engine.sequence().kind()));
                    rec.set("z", z);
                    return Ok(1.0);
                }
            }
        }
    }
    Ok(0.0)
}

// degeneration

fn chain(s: &mut ParamSampler, rec: &mut Record, family: ChainFamily, m: i64, r: i64) -> Result<f64> {
    let q = s.q();
    rec.complex("q", q);
    let n = family.default_n();
    Ok(chain_deviation(family, n, m, r, q)?
        .into_iter()
        .map(|(_, d)| d)
        .fold(0.0, f64::max))
}

fn chain_stirling(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    chain(s, rec, ChainFamily::Stirling, 0, 0)
}

fn chain_eulerian(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    chain(s, rec, ChainFamily::Eulerian, 0, 0)
}

fn chain_lah(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    chain(s, rec, ChainFamily::Lah, 0, 0)
}

fn chain_rwhitney(s: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let m = int_in(s, 1, 3);
    let r = int_in(s, 0, m - 1);
    rec.set("m", m);
    rec.set("r", r);
    chain(s, rec, ChainFamily::RwhitneyEulerian, m, r)
}

fn chain_classical(_: &mut ParamSampler, rec: &mut Record) -> Result<f64> {
    let mut worst = 0f64;
    for family in [ChainFamily::Stirling, ChainFamily::Eulerian, ChainFamily::Lah] {
        let n = family.default_n();
        rec.set(&family.name(), format!("n={n}"));
        for (_, d) in classical_deviation(family, n, 0, 0)? {
            worst = worst.max(d);
        }
    }
    Ok(worst)
}
