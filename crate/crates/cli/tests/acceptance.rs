//! Acceptance criteria, one PASS/FAIL line each. A FAIL verdict is reported,
//! not raised; errors inside a criterion count as FAIL with the message.

use std::process::Command;
use std::time::{Duration, Instant};

use genstirling::eulerian::{
    eulerian_classical_table, generalized_eulerian, lagrange_delta_check, q_eulerian_table, q_r_whitney_eulerian_table,
    r_whitney_eulerian_table, worpitzky_defect, worpitzky_residual,
};
use genstirling::special::{
    elliptic_lah_table, elliptic_rook_numbers, elliptic_stirling2_table, lah_table, q_stirling2_table, stirling2_table,
};
use genstirling::{
    Complex64, ComplexDd, EulerianParams, ExactScalar, FerrersBoard, Numeric, ParamSampler, Result, Route, Scalar,
    TriangularTable, ValueSequence,
};
use genstirling_cli::config::{ChainFamily, Suite};
use genstirling_cli::degenerate::{chain_deviation, classical_deviation, classical_table};
use genstirling_cli::measure::{deviation, pairwise_deviation, table_deviation};
use genstirling_cli::suites::run_suite;

const SEED: u64 = 20_260_101;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

fn sampler(stream: u64, trial: u64) -> ParamSampler {
    ParamSampler::new(SEED ^ (stream << 32) ^ trial)
}

fn same<S: Scalar + PartialEq>(a: &TriangularTable<S>, b: &TriangularTable<S>) -> bool {
    a.rows() == b.rows()
}

fn within_time(elapsed: Duration, limit: Duration) -> (bool, String) {
    (
        elapsed < limit,
        format!("{:.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn q_stirling() -> Result<Verdict> {
    let start = Instant::now();
    let rec = q_stirling2_table(10, Route::Recurrence)?;
    let sum = q_stirling2_table(10, Route::CarlitzSum)?;
    let h = q_stirling2_table(10, Route::HSpecial)?;
    let classical = stirling2_table(10, Route::Recurrence)?;
    let routes = same(&rec, &sum) && same(&rec, &h);
    let at_one = rec
        .entries()
        .map(|(n, k, v)| Ok(v.eval_at_one()? == classical.get(n, k as i64).eval_at_one()?))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let (fast, time) = within_time(start.elapsed(), Duration::from_secs(5));
    Ok(Verdict::new(
        routes && at_one && fast,
        format!("n <= 10: three routes identical {routes}, q = 1 is S(n,k) {at_one}, {time}"),
    ))
}

fn q_eulerian() -> Result<Verdict> {
    let start = Instant::now();
    let rec = q_eulerian_table(9, Route::Recurrence)?;
    let sum = q_eulerian_table(9, Route::CarlitzSum)?;
    let classical = eulerian_classical_table(9, Route::Recurrence)?;
    let routes = same(&rec, &sum);
    let at_one = rec
        .entries()
        .map(|(n, k, v)| Ok(v.eval_at_one()? == classical.get(n, k as i64).eval_at_one()?))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let row3 = rec
        .row(3)
        .iter()
        .map(ExactScalar::eval_at_one)
        .collect::<Result<Vec<_>>>()?;
    let want = [0, 1, 4, 1]
        .map(|v| ExactScalar::from_integer(v).eval_at_one())
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let row_ok = row3 == want;
    let (fast, time) = within_time(start.elapsed(), Duration::from_secs(5));
    Ok(Verdict::new(
        routes && at_one && row_ok && fast,
        format!("n <= 9: recurrence = sum {routes}, q = 1 classical {at_one}, row 3 = 0,1,4,1 {row_ok}, {time}"),
    ))
}

fn suite(suite: Suite, trials: usize, expect_checks: usize) -> Verdict {
    let report = run_suite(suite, trials, SEED, None);
    let ok =
        report.ok() && report.total() == trials * expect_checks && report.checks.iter().all(|c| c.tol == Some(1e-9));
    let parts: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{} {}/{}", c.name, c.passed, c.total))
        .collect();
    Verdict::new(
        ok,
        format!("{}; worst {:.2e} (tol 1e-9)", parts.join(", "), report.worst()),
    )
}

fn elliptic_stirling() -> Result<Verdict> {
    let mut routes = 0f64;
    for trial in 0..25 {
        let params = sampler(5, trial).elliptic(0, 7)?;
        let tables = [Route::Recurrence, Route::ExplicitCorollary, Route::Oracle]
            .map(|route| elliptic_stirling2_table(7, &params, route))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        routes = routes.max(pairwise_deviation(&tables));
    }
    let mut chain = 0f64;
    for trial in 0..25 {
        let q = sampler(50, trial).q();
        for (_, dev) in chain_deviation(ChainFamily::Stirling, 7, 0, 0, q)? {
            chain = chain.max(dev);
        }
    }
    Ok(Verdict::new(
        routes <= 1e-8 && chain <= 1e-9,
        format!("25 tuples, n <= 7: routes {routes:.2e} (tol 1e-8), chain vs exact q {chain:.2e} (tol 1e-9)"),
    ))
}

fn real_samples(s: &mut ParamSampler) -> Vec<Complex64> {
    (0..20).map(|_| Complex64::new(s.uniform(-3.0, 3.0), 0.0)).collect()
}

fn random_sequence(s: &mut ParamSampler) -> Result<ValueSequence<Complex64>> {
    let values = (-7..=8)
        .map(|i| Complex64::new(f64::from(i), 0.0) + s.disc(0.25))
        .collect();
    ValueSequence::explicit(values, -7)
}

/// Route and Worpitzky residuals, then the Lagrange delta residual.
fn numeric_eulerian<T: Numeric>(engine: &EulerianParams<T>, zs: &[T]) -> Result<(f64, f64)> {
    let rec = generalized_eulerian(engine, 7, Route::Recurrence)?;
    let exp = generalized_eulerian(engine, 7, Route::Explicit)?;
    let round = |t: &TriangularTable<T>| t.map(|_, _, v| Ok(v.to_c64()));
    let mut worst = table_deviation(&round(&rec)?, &round(&exp)?);
    for n in 0..=7 {
        worst = worst.max(worpitzky_residual(&rec, engine, n, zs)?);
    }
    let mut delta = 0f64;
    for n in 0..=6 {
        for k in 0..=n {
            for l in 0..=k {
                let v = lagrange_delta_check(engine, n, k, l)?.to_c64();
                delta = delta.max((v - if k == l { 1.0 } else { 0.0 }).norm());
            }
        }
    }
    Ok((worst, delta))
}

fn generalized() -> Result<Verdict> {
    let zs: Vec<ExactScalar> = ["-3", "0", "5", "q^2 + 5", "q^-1 - 2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let mut exact = true;
    for seq in [
        ValueSequence::classical(),
        ValueSequence::q_numbers(),
        ValueSequence::affine_whitney(2, 1),
        ValueSequence::q_whitney(2, 1),
    ] {
        let engine = EulerianParams::new(seq);
        let rec = generalized_eulerian(&engine, 7, Route::Recurrence)?;
        exact &= same(&rec, &generalized_eulerian(&engine, 7, Route::Explicit)?);
        for n in 0..=7 {
            for z in &zs {
                exact &= worpitzky_defect(&rec, &engine, n, z)?.is_zero();
            }
        }
    }
    let (mut numeric, mut delta, mut delta_at) = (0f64, 0f64, String::new());
    for trial in 0..25 {
        let mut s = sampler(6, trial);
        let params = s.elliptic(-8, 9)?;
        let zs: Vec<ComplexDd> = real_samples(&mut s).into_iter().map(ComplexDd::from_c64).collect();
        let (w, d) = numeric_eulerian(&EulerianParams::new(ValueSequence::<ComplexDd>::elliptic(params)), &zs)?;
        numeric = numeric.max(w);
        if d > delta {
            (delta, delta_at) = (d, format!("elliptic trial {trial}"));
        }

        let mut s = sampler(60, trial);
        let engine = EulerianParams::new(random_sequence(&mut s)?);
        let zs = real_samples(&mut s);
        let (w, d) = numeric_eulerian(&engine, &zs)?;
        numeric = numeric.max(w);
        if d > delta {
            (delta, delta_at) = (d, format!("random trial {trial}"));
        }
    }
    Ok(Verdict::new(
        exact && numeric <= 1e-7 && delta <= 1e-9,
        format!(
            "n <= 7: four exact sequences {exact}, elliptic and random {numeric:.2e} (tol 1e-7), \
             Lagrange delta {delta:.2e} at {delta_at} (tol 1e-9)"
        ),
    ))
}

fn rook_lah() -> Result<Verdict> {
    let (mut empty, mut staircase, mut lah) = (true, 0f64, 0f64);
    for trial in 0..25 {
        let params = sampler(7, trial).elliptic(-6, 8)?;
        for n in 0..=6 {
            let r = elliptic_rook_numbers(&FerrersBoard::empty(n), &params, Route::Explicit)?;
            empty &= r[0] == Complex64::new(1.0, 0.0) && r[1..].iter().all(|v| *v == Complex64::new(0.0, 0.0));
        }
        let stirling = elliptic_stirling2_table(7, &params, Route::Recurrence)?;
        for n in 0..=7 {
            let r = elliptic_rook_numbers(&FerrersBoard::staircase(n), &params, Route::Explicit)?;
            let mut weights = Complex64::new(1.0, 0.0);
            for k in 0..=n {
                if k > 0 {
                    weights *= params.weight(k as i64 - 1)?;
                }
                staircase = staircase.max(deviation(r[n - k] / weights, stirling.get(n, k as i64)));
            }
        }
        let tables = [Route::Recurrence, Route::Explicit, Route::Oracle]
            .map(|route| elliptic_lah_table(6, &params, route))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        lah = lah.max(pairwise_deviation(&tables));
    }
    let mut chain = 0f64;
    for trial in 0..25 {
        let q = sampler(70, trial).q();
        for (_, dev) in chain_deviation(ChainFamily::Lah, 6, 0, 0, q)? {
            chain = chain.max(dev);
        }
    }
    let classical = classical_deviation(ChainFamily::Lah, 6, 0, 0)?
        .into_iter()
        .map(|(_, d)| d)
        .fold(0.0, f64::max);
    let integers = classical_table(ChainFamily::Lah, 6, 0, 0)? == lah_table(6, Route::Explicit)?;
    Ok(Verdict::new(
        empty && staircase <= 1e-8 && lah <= 1e-8 && chain <= 1e-9 && classical <= 1e-9 && integers,
        format!(
            "empty board exact {empty}, staircase {staircase:.2e} (tol 1e-8), Lah routes {lah:.2e} (tol 1e-8), \
             chain {chain:.2e}, q = 1 {classical:.2e}, integer triangle matches oracle {integers}"
        ),
    ))
}

fn r_whitney() -> Result<Verdict> {
    let mut direct = true;
    for m in 1..=3 {
        for r in 0..m {
            direct &= same(
                &r_whitney_eulerian_table(8, m, r, Route::Recurrence)?,
                &r_whitney_eulerian_table(8, m, r, Route::Engine)?,
            );
        }
    }
    let mut q = true;
    for m in 1..=3 {
        for r in 0..m {
            let t = q_r_whitney_eulerian_table(6, m, r, Route::Recurrence)?;
            q &= same(&t, &q_r_whitney_eulerian_table(6, m, r, Route::Explicit)?);
            q &= same(&t, &q_r_whitney_eulerian_table(6, m, r, Route::Engine)?);
        }
    }
    let carlitz = same(
        &q_r_whitney_eulerian_table(6, 1, 0, Route::Recurrence)?,
        &q_eulerian_table(6, Route::Recurrence)?,
    );
    Ok(Verdict::new(
        direct && q && carlitz,
        format!(
            "m <= 3, r < m: integer n <= 8 {direct}, q-analogue n <= 6 three routes {q}, (1,0) is Carlitz {carlitz}"
        ),
    ))
}

fn whole_suite() -> Verdict {
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_genstirling"))
            .args(["check", "--suite", "all", "--trials", "25", "--seed", "1"])
            .output()
            .expect("binary runs");
        (out, start.elapsed())
    };
    let (first, t1) = run();
    let (second, t2) = run();
    let exits = first.status.code() == Some(0) && second.status.code() == Some(0);
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    let limit = Duration::from_secs(60);
    let fast = t1 < limit && t2 < limit;
    Verdict::new(
        exits && identical && fast,
        format!(
            "exit 0 twice {exits}, byte-identical {identical}, {:.1} s and {:.1} s (limit 60 s)",
            t1.as_secs_f64(),
            t2.as_secs_f64()
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn main() {
    let flatten = |r: Result<Verdict>| r.unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
    let criteria: [Criterion; 9] = [
        ("q-Stirling cross-route", Box::new(|| flatten(q_stirling()))),
        ("q-Eulerian cross-route", Box::new(|| flatten(q_eulerian()))),
        ("theta identities, 100 trials", Box::new(|| suite(Suite::Theta, 100, 3))),
        (
            "elliptic identities, 50 trials",
            Box::new(|| suite(Suite::EllipticIdentities, 50, 5)),
        ),
        (
            "elliptic Stirling triple route",
            Box::new(|| flatten(elliptic_stirling())),
        ),
        ("generalized Eulerian", Box::new(|| flatten(generalized()))),
        ("rook and Lah", Box::new(|| flatten(rook_lah()))),
        ("r-Whitney Eulerian", Box::new(|| flatten(r_whitney()))),
        ("whole-suite determinism", Box::new(whole_suite)),
    ];
    let mut passed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        passed += usize::from(v.ok);
        println!("{} {}. {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {passed}/{} passed", criteria.len());
}
