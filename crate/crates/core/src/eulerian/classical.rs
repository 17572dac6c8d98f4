use num_bigint::BigInt;
use num_integer::binomial;

use super::generalized::{generalized_eulerian, EulerianParams};
use crate::error::{Error, Result};
use crate::newton::ValueSequence;
use crate::scalar::{q_binomial, q_number, ExactScalar};
use crate::special::{two_term_recurrence, Route, TriangularTable};

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n)
}

fn to_integer(v: ExactScalar) -> BigInt {
    v.to_integer().expect("integer table")
}

/// Eulerian numbers in the convention `A(n+1,k) = (n-k+2) A(n,k-1) + k A(n,k)`,
/// so that row `n >= 1` starts at `k = 1`.
///
/// Routes: `Recurrence`, `Explicit` (`sum_j (-1)^j C(n+1,j) (k-j)^n`).
pub fn eulerian_classical(n: usize, k: usize, route: Route) -> Result<BigInt> {
    if k > n {
        return Ok(BigInt::from(0));
    }
    match route {
        Route::Recurrence => Ok(to_integer(eulerian_classical_table(n, route)?.get(n, k as i64))),
        Route::Explicit => {
            let mut sum = BigInt::from(0);
            for j in 0..=k {
                let term = BigInt::from(binomial(n as u64 + 1, j as u64)) * BigInt::from(k - j).pow(n as u32);
                if j % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            Ok(sum)
        }
        other => Err(other.unsupported("eulerian")),
    }
}

pub fn eulerian_classical_table(max_n: usize, route: Route) -> Result<TriangularTable<ExactScalar>> {
    match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(max_n, |n, k| Ok(int(n as i64 - k as i64 + 2)), |_, k| Ok(int(k as i64)))?;
            TriangularTable::from_rows("eulerian", rows)
        }
        _ => TriangularTable::build("eulerian", max_n, |n, k| {
            Ok(ExactScalar::from_integer(eulerian_classical(n, k, route)?))
        }),
    }
}

/// Carlitz' q-Eulerian numbers.
///
/// Routes: `Recurrence` (`A(n+1,k) = [n-k+2] A(n,k-1) + q^(n-k+1) [k] A(n,k)`)
/// and `CarlitzSum`
/// (`q^(C(n-k+1,2) - C(k,2)) sum_j (-1)^j q^C(j,2) [n+1 choose j]_q [k-j]^n`).
pub fn q_eulerian(n: usize, k: usize, route: Route) -> Result<ExactScalar> {
    if k > n {
        return Ok(ExactScalar::zero());
    }
    match route {
        Route::Recurrence => Ok(q_eulerian_table(n, route)?.get(n, k as i64)),
        Route::CarlitzSum => {
            let (n, k) = (n as i64, k as i64);
            let mut sum = ExactScalar::zero();
            for j in 0..=k {
                let term = ExactScalar::q_power(binom2(j)) * q_binomial(n + 1, j)? * q_number(k - j).powi(n)?;
                sum = if j % 2 == 0 { sum + term } else { sum - term };
            }
            Ok(ExactScalar::q_power(binom2(n - k + 1) - binom2(k)) * sum)
        }
        other => Err(other.unsupported("qeulerian")),
    }
}

pub fn q_eulerian_table(max_n: usize, route: Route) -> Result<TriangularTable<ExactScalar>> {
    match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(
                max_n,
                |n, k| Ok(q_number(n as i64 - k as i64 + 2)),
                |n, k| {
                    let (n, k) = (n as i64, k as i64);
                    Ok(ExactScalar::q_power(n - k + 1) * q_number(k))
                },
            )?;
            TriangularTable::from_rows("qeulerian", rows)
        }
        _ => TriangularTable::build("qeulerian", max_n, |n, k| q_eulerian(n, k, route)),
    }
}

fn check_m(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "r-Whitney Eulerian numbers need m >= 1, got {m}"
        )));
    }
    Ok(())
}

/// r-Whitney Eulerian numbers `A_(m,r)(n,k)`.
///
/// Routes: `Recurrence`
/// (`A(n+1,k) = (m(n-k+2) - r) A(n,k-1) + (mk + r) A(n,k)`) and `Engine`
/// (generalized Eulerian numbers over `a_i = m i - r`).
pub fn r_whitney_eulerian(n: usize, k: usize, m: i64, r: i64, route: Route) -> Result<BigInt> {
    check_m(m)?;
    if k > n {
        return Ok(BigInt::from(0));
    }
    Ok(to_integer(r_whitney_eulerian_table(n, m, r, route)?.get(n, k as i64)))
}

pub fn r_whitney_eulerian_table(max_n: usize, m: i64, r: i64, route: Route) -> Result<TriangularTable<ExactScalar>> {
    check_m(m)?;
    let table = match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(
                max_n,
                |n, k| Ok(int(m * (n as i64 - k as i64 + 2) - r)),
                |_, k| Ok(int(m * k as i64 + r)),
            )?;
            TriangularTable::from_rows("rwhitney-eulerian", rows)?
        }
        Route::Engine => {
            let params = EulerianParams::new(ValueSequence::affine_whitney(m, r));
            let t = generalized_eulerian(&params, max_n, Route::Recurrence)?;
            TriangularTable::from_rows("rwhitney-eulerian", t.rows().to_vec())?
        }
        other => return Err(other.unsupported("rwhitney-eulerian")),
    };
    Ok(table.with_param("m", m).with_param("r", r))
}

fn check_qr(m: i64, r: i64) -> Result<()> {
    if m < 1 || r < 0 {
        return Err(Error::Domain(format!(
            "q-r-Whitney Eulerian numbers need m >= 1 and r >= 0, got m = {m}, r = {r}"
        )));
    }
    Ok(())
}

/// q-analogue of the r-Whitney Eulerian numbers, over `a_i = [m i - r]_q`.
///
/// Routes: `Recurrence`
/// (`A(n+1,k) = [m(n-k+2) - r] A(n,k-1) + q^(m(n+1) - mk - r) [mk + r] A(n,k)`),
/// `Explicit`
/// (`sum_j (-1)^j q^(m C(n-j+1,2) - n(m(k-j) + r)) [n+1 choose j]_(q^m) [m(k-j) + r]^n`)
/// and `Engine`.
pub fn q_r_whitney_eulerian(n: usize, k: usize, m: i64, r: i64, route: Route) -> Result<ExactScalar> {
    check_qr(m, r)?;
    if k > n {
        return Ok(ExactScalar::zero());
    }
    match route {
        Route::Explicit => {
            let (n, k) = (n as i64, k as i64);
            let mut sum = ExactScalar::zero();
            for j in 0..=k {
                let base = m * (k - j) + r;
                let term = ExactScalar::q_power(m * binom2(n - j + 1) - n * base)
                    * q_binomial(n + 1, j)?.substitute_power(m)?
                    * q_number(base).powi(n)?;
                sum = if j % 2 == 0 { sum + term } else { sum - term };
            }
            Ok(sum)
        }
        _ => Ok(q_r_whitney_eulerian_table(n, m, r, route)?.get(n, k as i64)),
    }
}

pub fn q_r_whitney_eulerian_table(max_n: usize, m: i64, r: i64, route: Route) -> Result<TriangularTable<ExactScalar>> {
    check_qr(m, r)?;
    let table = match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(
                max_n,
                |n, k| Ok(q_number(m * (n as i64 - k as i64 + 2) - r)),
                |n, k| {
                    let (n, k) = (n as i64, k as i64);
                    Ok(ExactScalar::q_power(m * (n + 1) - m * k - r) * q_number(m * k + r))
                },
            )?;
            TriangularTable::from_rows("qrwhitney-eulerian", rows)?
        }
        Route::Engine => {
            let params = EulerianParams::new(ValueSequence::q_whitney(m, r));
            let t = generalized_eulerian(&params, max_n, Route::Recurrence)?;
            TriangularTable::from_rows("qrwhitney-eulerian", t.rows().to_vec())?
        }
        Route::Explicit => TriangularTable::build("qrwhitney-eulerian", max_n, |n, k| {
            q_r_whitney_eulerian(n, k, m, r, route)
        })?,
        other => return Err(other.unsupported("qrwhitney-eulerian")),
    };
    Ok(table.with_param("m", m).with_param("r", r))
}
