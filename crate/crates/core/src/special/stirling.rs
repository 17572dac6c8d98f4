use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::Pow;

use super::{round, round_rows, two_term_recurrence, Route, TriangularTable, Work};
use crate::error::{Error, Result};
use crate::newton::{h_explicit, h_recurrence, newton_oracle, ValueSequence};
use crate::scalar::{q_binomial, q_factorial, q_number, st_number, ExactScalar, Numeric, Scalar};
use crate::theta::EllipticParams;

fn in_triangle(n: usize, k: usize) -> bool {
    k <= n
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize, route: Route) -> Result<BigInt> {
    if !in_triangle(n, k) {
        return Ok(BigInt::from(0));
    }
    match route {
        Route::Recurrence => {
            let table = stirling2_table(n, Route::Recurrence)?;
            Ok(table.get(n, k as i64).to_integer().expect("integer table"))
        }
        Route::Explicit => {
            // (1/k!) sum_j (-1)^j C(k,j) (k-j)^n
            let mut sum = BigInt::from(0);
            for j in 0..=k {
                let term = BigInt::from(binomial(k as u64, j as u64)) * BigInt::from(k - j).pow(n as u32);
                if j % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            let fact: BigInt = (1..=k).fold(BigInt::from(1), |acc, i| acc * i);
            Ok(sum / fact)
        }
        other => Err(other.unsupported("stirling")),
    }
}

pub fn stirling2_table(max_n: usize, route: Route) -> Result<TriangularTable<ExactScalar>> {
    let rows = match route {
        Route::Recurrence => two_term_recurrence(
            max_n,
            |_, _| Ok(ExactScalar::one()),
            |_, k| Ok(ExactScalar::from_integer(k as i64)),
        )?,
        Route::Explicit => {
            return TriangularTable::build("stirling", max_n, |n, k| {
                Ok(ExactScalar::from_integer(stirling2(n, k, route)?))
            })
        }
        other => return Err(other.unsupported("stirling")),
    };
    TriangularTable::from_rows("stirling", rows)
}

/// Carlitz' q-Stirling numbers of the second kind.
///
/// Routes: `Recurrence`, `CarlitzSum`, `HSpecial` (the explicit formula for
/// `h_(n-k)([0]_q, ..., [k]_q)`).
pub fn q_stirling2(n: usize, k: usize, route: Route) -> Result<ExactScalar> {
    if !in_triangle(n, k) {
        return Ok(ExactScalar::zero());
    }
    match route {
        Route::Recurrence => Ok(q_stirling2_table(n, route)?.get(n, k as i64)),
        Route::CarlitzSum => {
            let k_i = k as i64;
            let mut sum = ExactScalar::zero();
            for j in 0..=k_i {
                let mut term =
                    ExactScalar::q_power(j * (j - 1) / 2) * q_binomial(k_i, j)? * q_number(k_i - j).powu(n as u32);
                if j % 2 == 1 {
                    term = -term;
                }
                sum = sum + term;
            }
            let prefactor = ExactScalar::q_power(-k_i * (k_i - 1) / 2).checked_div(&q_factorial(k_i)?)?;
            Ok(prefactor * sum)
        }
        Route::HSpecial => {
            let values: Vec<ExactScalar> = (0..=k as i64).map(q_number).collect();
            h_explicit(n - k, &values)
        }
        other => Err(other.unsupported("qstirling")),
    }
}

pub fn q_stirling2_table(max_n: usize, route: Route) -> Result<TriangularTable<ExactScalar>> {
    match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(max_n, |_, _| Ok(ExactScalar::one()), |_, k| Ok(q_number(k as i64)))?;
            TriangularTable::from_rows("qstirling", rows)
        }
        _ => TriangularTable::build("qstirling", max_n, |n, k| q_stirling2(n, k, route)),
    }
}

fn guard(params: &EllipticParams, lo: i64, hi: i64) -> Result<()> {
    params.check_window(lo, hi, params.min_denominator())
}

fn elliptic_numbers(params: &EllipticParams, lo: i64, hi: i64) -> Result<Vec<Work>> {
    (lo..=hi).map(|i| params.number_in(i)).collect()
}

/// Elliptic Stirling numbers of the second kind, defined by
/// `[z]^n = sum_k S(n,k) prod_{i<k} ([z] - [i])`.
///
/// Routes: `Recurrence`, `HSpecial` (explicit formula for `h_(n-k)` over
/// `[0], ..., [k]`), `ExplicitCorollary` (the same sum with each difference
/// `[j] - [i]` factored as `W(i) [j-i]_{aq^2i, bq^i}`) and `Oracle`
/// (divided differences of `z^n` at the nodes `[0], ..., [n]`).
pub fn elliptic_stirling2(n: usize, k: usize, params: &EllipticParams, route: Route) -> Result<Complex64> {
    if !in_triangle(n, k) {
        return Ok(Complex64::zero());
    }
    guard(params, 0, n as i64)?;
    let value = match route {
        Route::Recurrence => return Ok(elliptic_stirling2_table(n, params, route)?.get(n, k as i64)),
        Route::HSpecial => h_explicit(n - k, &elliptic_numbers(params, 0, k as i64)?)?,
        Route::ExplicitCorollary => {
            let k = k as i64;
            let mut sum = Work::zero();
            for j in 0..=k {
                let idx = k - j;
                let mut den = Work::one();
                for i in (0..=k).filter(|&i| i != idx) {
                    den *= params.weight_in::<Work>(i)? * params.number_shifted_in::<Work>(idx - i, 2 * i, i)?;
                }
                let num = Scalar::powu(&params.number_in::<Work>(idx)?, n as u32);
                sum += crate::newton::divide(num, &den, || format!("corollary denominator at j = {j}"))?;
            }
            sum
        }
        Route::Oracle => elliptic_stirling2_oracle_row(n, params)?[k],
        other => return Err(other.unsupported("estirling")),
    };
    Ok(round(value))
}

fn elliptic_stirling2_oracle_row(n: usize, params: &EllipticParams) -> Result<Vec<Work>> {
    let seq = ValueSequence::<Work>::elliptic(*params);
    let f = seq
        .values(0, n as i64)?
        .iter()
        .map(|a| Scalar::powu(a, n as u32))
        .collect::<Vec<_>>();
    Ok(newton_oracle(&f, &seq, n)?.entries)
}

pub fn elliptic_stirling2_table(
    max_n: usize,
    params: &EllipticParams,
    route: Route,
) -> Result<TriangularTable<Complex64>> {
    guard(params, 0, max_n as i64)?;
    match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(max_n, |_, _| Ok(Work::one()), |_, k| params.number_in(k as i64))?;
            TriangularTable::from_rows("estirling", round_rows(rows))
        }
        Route::Oracle => {
            let rows = (0..=max_n)
                .map(|n| {
                    Ok(elliptic_stirling2_oracle_row(n, params)?
                        .into_iter()
                        .map(round)
                        .collect())
                })
                .collect::<Result<Vec<_>>>()?;
            TriangularTable::from_rows("estirling", rows)
        }
        _ => TriangularTable::build("estirling", max_n, |n, k| elliptic_stirling2(n, k, params, route)),
    }
}

/// `(q,r)`-Whitney numbers of the second kind.
#[derive(Debug, Clone, PartialEq)]
pub struct WhitneyValue {
    /// `W*_{m,r}[n,k]_q = h_(n-k)([r]_q, [m+r]_q, ..., [km+r]_q)`.
    pub starred: ExactScalar,
    /// `W_{m,r}[n,k]_q = q^(kr + m C(k,2)) W*_{m,r}[n,k]_q`.
    pub normalized: ExactScalar,
}

pub fn whitney_qr(n: usize, k: usize, m: i64, r: i64) -> Result<WhitneyValue> {
    if m < 1 || r < 0 {
        return Err(Error::Domain(format!(
            "(q,r)-Whitney numbers need m >= 1 and r >= 0, got m = {m}, r = {r}"
        )));
    }
    if !in_triangle(n, k) {
        return Ok(WhitneyValue {
            starred: ExactScalar::zero(),
            normalized: ExactScalar::zero(),
        });
    }
    let values: Vec<ExactScalar> = (0..=k as i64).map(|i| q_number(i * m + r)).collect();
    let starred = h_recurrence(n - k, &values);
    let k = k as i64;
    let normalized = starred.clone() * ExactScalar::q_power(k * r + m * k * (k - 1) / 2);
    Ok(WhitneyValue { starred, normalized })
}

fn h_by_route<T: Numeric>(n: usize, k: usize, seq: &ValueSequence<T>, route: Route, family: &str) -> Result<T> {
    if !in_triangle(n, k) {
        return Ok(T::zero());
    }
    match route {
        Route::HSpecial | Route::Recurrence => Ok(h_recurrence(n - k, &seq.values(0, k as i64)?)),
        Route::Explicit => h_explicit(n - k, &seq.values(0, k as i64)?),
        Route::Oracle => {
            let f = seq
                .values(0, n as i64)?
                .iter()
                .map(|a| Scalar::powu(a, n as u32))
                .collect::<Vec<_>>();
            Ok(newton_oracle(&f, seq, n)?.entries[k])
        }
        other => Err(other.unsupported(family)),
    }
}

/// Shifted Stirling numbers `h_(n-k)([r]_{s,t}, [m+r]_{s,t}, ..., [km+r]_{s,t})`.
///
/// Routes: `HSpecial`/`Recurrence` (the h recursion), `Explicit`, `Oracle`.
pub fn st_shifted_stirling(
    n: usize,
    k: usize,
    m: i64,
    r: i64,
    s: Complex64,
    t: Complex64,
    route: Route,
) -> Result<Complex64> {
    st_number(1, s, t)?;
    h_by_route(n, k, &ValueSequence::<Work>::st(m, r, s, t)?, route, "st-stirling").map(round)
}

/// `h_(n-k)([r], [m+r], ..., [km+r])` over elliptic numbers.
///
/// Routes as for [`st_shifted_stirling`].
pub fn elliptic_shifted_stirling(
    n: usize,
    k: usize,
    m: i64,
    r: i64,
    params: &EllipticParams,
    route: Route,
) -> Result<Complex64> {
    let (lo, hi) = (r.min(r + m * n as i64), r.max(r + m * n as i64));
    guard(params, lo, hi)?;
    let seq = ValueSequence::<Work>::elliptic_whitney(m, -r, *params);
    h_by_route(n, k, &seq, route, "eshifted-stirling").map(round)
}
