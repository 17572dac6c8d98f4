use num_complex::Complex64;

use super::generalized::{generalized_eulerian, round_table, EulerianParams};
use crate::error::Result;
use crate::newton::{divide, ValueSequence};
use crate::scalar::{ComplexDd, Numeric, Scalar};
use crate::special::{two_term_recurrence, Route, TriangularTable};
use crate::theta::EllipticParams;

type Work = ComplexDd;

/// `[z]_{a q^(2t), b q^t}`.
fn number_at(params: &EllipticParams, z: i64, t: i64) -> Result<Work> {
    params.number_shifted_in(z, 2 * t, t)
}

fn guard(params: &EllipticParams, n: usize) -> Result<()> {
    let n = n as i64;
    params.check_window(-n, n + 1, params.min_denominator())
}

/// `P_{a,b;q,p}(n,k) = W_{aq^(-2k), bq^(-k)}(n+1)
///  prod_{i=1}^{n+1} [n-i+2]_{aq^(2(i-k)), bq^(i-k)} / [n-i+2]_{aq^(2(i-k-1)), bq^(i-k-1)}`,
/// the factor `P(n,k)` of the generalized Eulerian recurrence for the
/// elliptic sequence.
pub fn elliptic_p_factor(n: usize, k: usize, params: &EllipticParams) -> Result<Complex64> {
    p_factor(n, k, params).map(|v| v.to_c64())
}

fn p_factor(n: usize, k: usize, params: &EllipticParams) -> Result<Work> {
    let (n, k) = (n as i64, k as i64);
    let mut value: Work = params.shifted(-2 * k, -k).weight_in(n + 1)?;
    for i in 1..=n + 1 {
        let num = number_at(params, n - i + 2, i - k)?;
        let den = number_at(params, n - i + 2, i - k - 1)?;
        value *= divide(num, &den, || format!("P({n}, {k}) factor i = {i}"))?;
    }
    Ok(value)
}

/// Elliptic Eulerian numbers, the generalized Eulerian numbers over
/// `a_i = [i]_{a,b;q,p}`.
///
/// Routes: `Recurrence`
/// (`A(n+1,k) = [n-k+2] A(n,k-1) + W(-1) [k]_{1/a,b/a} P_{a,b;q,p}(n,k) A(n,k)`),
/// `Explicit`
/// (`(-1)^n W(-1)^n sum_j prod_{i!=j} [n-i+1]_{aq^(2(i-k)),bq^(i-k)} / [j-i]_{aq^(2(i-k)),bq^(i-k)} * [k-j]_{1/a,b/a}^n`)
/// and `Engine` (the generic recurrence over the elliptic numbers).
pub fn elliptic_eulerian(n: usize, k: usize, params: &EllipticParams, route: Route) -> Result<Complex64> {
    if k > n {
        return Ok(Complex64::zero());
    }
    guard(params, n)?;
    match route {
        Route::Explicit => explicit_entry(n, k, params).map(|v| v.to_c64()),
        _ => Ok(elliptic_eulerian_table(n, params, route)?.get(n, k as i64)),
    }
}

fn explicit_entry(n: usize, k: usize, params: &EllipticParams) -> Result<Work> {
    let (ni, ki) = (n as i64, k as i64);
    let w = params.weight_in::<Work>(-1)?;
    let mut sum = Work::zero();
    for j in 0..=ki {
        let mut num = params.inverted_number_in::<Work>(ki - j)?.powu(n as u32);
        let mut den = Work::one();
        for i in (0..=ni).filter(|&i| i != j) {
            num *= number_at(params, ni - i + 1, i - ki)?;
            den *= number_at(params, j - i, i - ki)?;
        }
        sum += divide(num, &den, || {
            format!("explicit denominator at (n, k, j) = ({n}, {k}, {j})")
        })?;
    }
    let sign = if n.is_multiple_of(2) { Work::one() } else { -Work::one() };
    Ok(sign * w.powu(n as u32) * sum)
}

pub fn elliptic_eulerian_table(
    max_n: usize,
    params: &EllipticParams,
    route: Route,
) -> Result<TriangularTable<Complex64>> {
    guard(params, max_n)?;
    let table = match route {
        Route::Recurrence => {
            let w = params.weight_in::<Work>(-1)?;
            let rows = two_term_recurrence(
                max_n,
                |n, k| params.number_in::<Work>(n as i64 - k as i64 + 2),
                |n, k| Ok(w * params.inverted_number_in::<Work>(k as i64)? * p_factor(n, k, params)?),
            )?;
            round_table(&TriangularTable::from_rows("eeulerian", rows)?)?
        }
        Route::Explicit => TriangularTable::build("eeulerian", max_n, |n, k| {
            explicit_entry(n, k, params).map(|v| v.to_c64())
        })?,
        Route::Engine => {
            let engine = EulerianParams::new(ValueSequence::<Work>::elliptic(*params));
            round_table(&generalized_eulerian(&engine, max_n, Route::Recurrence)?)?
        }
        other => return Err(other.unsupported("eeulerian")),
    };
    TriangularTable::from_rows("eeulerian", table.rows().to_vec())
}

/// Elliptic r-Whitney Eulerian numbers, the generalized Eulerian numbers
/// over `a_i = [m i - r]_{a,b;q,p}`.
///
/// Routes: `Recurrence` and `Explicit` of the generic engine.
pub fn elliptic_r_whitney_eulerian(
    n: usize,
    k: usize,
    m: i64,
    r: i64,
    params: &EllipticParams,
    route: Route,
) -> Result<Complex64> {
    if k > n {
        return Ok(Complex64::zero());
    }
    Ok(elliptic_r_whitney_eulerian_table(n, m, r, params, route)?.get(n, k as i64))
}

pub fn elliptic_r_whitney_eulerian_table(
    max_n: usize,
    m: i64,
    r: i64,
    params: &EllipticParams,
    route: Route,
) -> Result<TriangularTable<Complex64>> {
    let n = max_n as i64;
    let (x, y) = (-m * n - r, m * (n + 1) - r);
    params.check_window(x.min(y), x.max(y), params.min_denominator())?;
    let engine = EulerianParams::new(ValueSequence::<Work>::elliptic_whitney(m, r, *params));
    let table = match route {
        Route::Recurrence | Route::Explicit => generalized_eulerian(&engine, max_n, route)?,
        other => return Err(other.unsupported("erwhitney-eulerian")),
    };
    Ok(
        TriangularTable::from_rows("erwhitney-eulerian", round_table(&table)?.rows().to_vec())?
            .with_param("m", m)
            .with_param("r", r),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::generalized::{lagrange_delta_check, worpitzky_residual, PFactor};
    use crate::eulerian::{q_eulerian_table, q_r_whitney_eulerian_table};
    use crate::sampling::ParamSampler;
    use crate::scalar::relative_error;

    fn sample(seed: u64, n: usize) -> EllipticParams {
        let n = n as i64;
        ParamSampler::new(seed).elliptic(-n - 1, n + 2).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        relative_error(a, b) <= tol || (a - b).norm() <= 1e-14
    }

    #[test]
    fn first_entries() {
        let params = sample(1, 1);
        for route in [Route::Recurrence, Route::Explicit, Route::Engine] {
            assert!(close(
                elliptic_eulerian(1, 1, &params, route).unwrap(),
                Complex64::one(),
                1e-12
            ));
            assert!(close(
                elliptic_eulerian(0, 0, &params, route).unwrap(),
                Complex64::one(),
                1e-12
            ));
            assert!(elliptic_eulerian(1, 0, &params, route).unwrap().norm() <= 1e-12);
        }
    }

    #[test]
    fn p_factor_matches_generic() {
        for seed in 0..5 {
            let params = sample(seed, 6);
            let generic = EulerianParams::new(ValueSequence::<Work>::elliptic(params));
            for n in 0..6 {
                for k in 0..=n {
                    let closed = elliptic_p_factor(n, k, &params).unwrap();
                    let direct = PFactor::compute(&generic, n, k).unwrap().value.to_c64();
                    assert!(close(closed, direct, 1e-10), "seed {seed} ({n},{k})");
                }
            }
        }
    }

    #[test]
    fn routes_agree() {
        for seed in 0..25 {
            let params = sample(seed, 6);
            let rec = elliptic_eulerian_table(6, &params, Route::Recurrence).unwrap();
            let exp = elliptic_eulerian_table(6, &params, Route::Explicit).unwrap();
            let eng = elliptic_eulerian_table(6, &params, Route::Engine).unwrap();
            for (n, k, v) in rec.entries() {
                assert!(close(*v, exp.get(n, k as i64), 1e-7), "seed {seed} explicit ({n},{k})");
                assert!(close(*v, eng.get(n, k as i64), 1e-7), "seed {seed} engine ({n},{k})");
            }
        }
    }

    #[test]
    fn worpitzky_and_delta_in_working_precision() {
        for seed in 0..5 {
            let params = sample(seed, 7);
            let engine = EulerianParams::new(ValueSequence::<Work>::elliptic(params));
            let table = generalized_eulerian(&engine, 7, Route::Recurrence).unwrap();
            let mut sampler = ParamSampler::new(seed + 7);
            let zs: Vec<Work> = (0..20)
                .map(|_| Work::from_c64(Complex64::new(sampler.uniform(-3.0, 3.0), 0.0)))
                .collect();
            for n in 0..=7 {
                assert!(
                    worpitzky_residual(&table, &engine, n, &zs).unwrap() <= 1e-8,
                    "seed {seed} n {n}"
                );
            }
            for n in 0..=6 {
                for k in 0..=n {
                    for l in 0..=k {
                        let v = lagrange_delta_check(&engine, n, k, l).unwrap().to_c64();
                        let want = Complex64::new(if k == l { 1.0 } else { 0.0 }, 0.0);
                        assert!((v - want).norm() <= 1e-9, "seed {seed} ({n},{k},{l}) {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn degenerates_to_q_eulerian() {
        let mut sampler = ParamSampler::new(99);
        for _ in 0..5 {
            let q = sampler.q();
            let params = EllipticParams::q_analogue(q).unwrap();
            let exact = q_eulerian_table(6, Route::Recurrence).unwrap();
            for route in [Route::Recurrence, Route::Explicit, Route::Engine] {
                let t = elliptic_eulerian_table(6, &params, route).unwrap();
                for (n, k, v) in t.entries() {
                    let want = exact.get(n, k as i64).eval(q).unwrap();
                    assert!(close(*v, want, 1e-8), "{route} ({n},{k})");
                }
            }
        }
        let classical = EllipticParams::classical();
        let t = elliptic_eulerian_table(5, &classical, Route::Explicit).unwrap();
        assert!(close(t.get(4, 2), Complex64::new(11.0, 0.0), 1e-12));
    }

    #[test]
    fn r_whitney_specializes() {
        let params = sample(4, 5);
        let base = elliptic_eulerian_table(5, &params, Route::Recurrence).unwrap();
        for route in [Route::Recurrence, Route::Explicit] {
            let t = elliptic_r_whitney_eulerian_table(5, 1, 0, &params, route).unwrap();
            for (n, k, v) in t.entries() {
                assert!(close(*v, base.get(n, k as i64), 1e-8), "({n},{k})");
            }
        }
        let sampled = ParamSampler::new(8).elliptic(-14, 14).unwrap();
        let rec = elliptic_r_whitney_eulerian_table(5, 2, 1, &sampled, Route::Recurrence).unwrap();
        let exp = elliptic_r_whitney_eulerian_table(5, 2, 1, &sampled, Route::Explicit).unwrap();
        for (n, k, v) in rec.entries() {
            assert!(close(*v, exp.get(n, k as i64), 1e-7), "({n},{k})");
        }
    }

    #[test]
    fn r_whitney_degenerates_to_q_r_whitney() {
        let q = Complex64::from_polar(0.7, 0.4);
        let params = EllipticParams::q_analogue(q).unwrap();
        for (m, r) in [(2, 1), (3, 1)] {
            let exact = q_r_whitney_eulerian_table(5, m, r, Route::Recurrence).unwrap();
            let t = elliptic_r_whitney_eulerian_table(5, m, r, &params, Route::Recurrence).unwrap();
            for (n, k, v) in t.entries() {
                assert!(
                    close(*v, exact.get(n, k as i64).eval(q).unwrap(), 1e-8),
                    "({m},{r}) ({n},{k})"
                );
            }
        }
    }
}
