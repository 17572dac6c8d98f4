use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;

use super::{round, round_rows, two_term_recurrence, Route, TriangularTable, Work};
use crate::error::{Error, Result};
use crate::newton::{connection_explicit, connection_recurrence, divide, newton_oracle, ValueSequence};
use crate::scalar::{q_number, ExactScalar, Scalar};
use crate::theta::EllipticParams;

/// A Ferrers board `B(b_1, ..., b_n)` given by its column heights.
///
/// Heights need not be weakly increasing: the generating identity is
/// defined for any nonnegative heights. The rook-placement reading of the
/// numbers assumes a genuine Ferrers shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FerrersBoard {
    heights: Vec<u32>,
}

impl FerrersBoard {
    pub fn new(heights: Vec<u32>) -> Self {
        Self { heights }
    }

    /// `n` empty columns.
    pub fn empty(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// `b_i = i - 1`, the board whose rook numbers are Stirling numbers.
    pub fn staircase(n: usize) -> Self {
        Self::new((0..n as u32).collect())
    }

    /// `n` columns of height `h`.
    pub fn rectangle(n: usize, h: u32) -> Self {
        Self::new(vec![h; n])
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn columns(&self) -> usize {
        self.heights.len()
    }

    /// Parameter shifts `s_i = i - 1 - b_i`, `i = 1..=n`.
    fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.heights.iter().enumerate().map(|(i, &b)| i as i64 - i64::from(b))
    }
}

impl fmt::Display for FerrersBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FerrersBoard {
    type Err = Error;

    /// Comma-separated heights; the empty string is the board with no columns.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        s.split(',')
            .map(|part| {
                part.trim().parse::<u32>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("column height {part:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// `[z]_{a q^(2s), b q^s}`.
fn shifted_number(params: &EllipticParams, z: i64, s: i64) -> Result<Work> {
    params.number_shifted_in::<Work>(z, 2 * s, s)
}

fn rook_guard(board: &FerrersBoard, params: &EllipticParams) -> Result<()> {
    let lo = board.shifts().min().unwrap_or(0).min(0);
    params.check_window(lo, board.columns() as i64, params.min_denominator())
}

/// The elliptic rook numbers `r_0, ..., r_n` of a board with `n` columns,
/// defined by
/// `prod_i [z-i+1+b_i]_{aq^(2s_i), bq^(s_i)} = sum_k r_(n-k) prod_{j=1}^k [z-j+1]_{aq^(2(j-1)), bq^(j-1)}`
/// with `s_i = i - 1 - b_i`.
///
/// Routes: `Explicit` (closed sum over shifted elliptic numbers) and
/// `Oracle` (connection coefficients of `c_0 prod_i (z - [s_i])` in the
/// Newton basis of `[0], [1], ...`, with `c_0 = prod_i W(s_i)^-1`).
pub fn elliptic_rook_numbers(board: &FerrersBoard, params: &EllipticParams, route: Route) -> Result<Vec<Complex64>> {
    rook_guard(board, params)?;
    let n = board.columns();
    let mut r = vec![Work::zero(); n + 1];
    match route {
        Route::Explicit => {
            for k in 0..=n as i64 {
                let wk = params.weight_in::<Work>(k)?;
                let mut sum = Work::zero();
                for j in 0..=k {
                    let mut num = Work::one();
                    for s in board.shifts() {
                        num *= shifted_number(params, j - s, s)?;
                    }
                    if num.is_zero() {
                        continue;
                    }
                    let mut den = Work::one();
                    for i in (0..=k).filter(|&i| i != j) {
                        den *= shifted_number(params, j - i, i)?;
                    }
                    let ratio = divide(params.weight_in::<Work>(j)?, &wk, || format!("W({k})"))?;
                    sum += ratio * divide(num, &den, || format!("prod_(i != {j}) [{j}-i]"))?;
                }
                r[n - k as usize] = sum;
            }
        }
        Route::Oracle => {
            let seq = ValueSequence::<Work>::elliptic(*params);
            let mut c0 = Work::one();
            let mut c = Vec::with_capacity(n);
            for s in board.shifts() {
                c0 = divide(c0, &params.weight_in::<Work>(s)?, || format!("W({s})"))?;
                c.push(params.number_in::<Work>(s)?);
            }
            let mut weights = Work::one();
            for k in 0..=n {
                if k > 0 {
                    weights *= params.weight_in::<Work>(k as i64 - 1)?;
                }
                r[n - k] = connection_explicit(&c0, &c, &seq, n, k)? * weights;
            }
        }
        other => return Err(other.unsupported("erook")),
    }
    Ok(r.into_iter().map(round).collect())
}

/// The single rook number `r_j`; zero for `j` beyond the column count.
pub fn elliptic_rook(board: &FerrersBoard, j: usize, params: &EllipticParams, route: Route) -> Result<Complex64> {
    if j > board.columns() {
        return Ok(Complex64::zero());
    }
    Ok(elliptic_rook_numbers(board, params, route)?[j])
}

/// Elliptic Lah numbers, defined by
/// `prod_{i<n} ([z] - [-i]) = sum_k L(n,k) prod_{i<k} ([z] - [i])`.
///
/// Routes: `Recurrence`, `Explicit`, `Oracle` (divided differences of the
/// rising factorial at the nodes `[0], ..., [n]`).
pub fn elliptic_lah(n: usize, k: usize, params: &EllipticParams, route: Route) -> Result<Complex64> {
    if k > n {
        return Ok(Complex64::zero());
    }
    let nn = n as i64;
    params.check_window(-nn, nn, params.min_denominator())?;
    match route {
        Route::Recurrence => Ok(elliptic_lah_table(n, params, route)?.get(n, k as i64)),
        Route::Explicit => {
            let mut sum = Work::zero();
            for j in 0..=k as i64 {
                let aj = params.number_in::<Work>(j)?;
                let mut num = Work::one();
                for i in 1..=nn {
                    num *= aj - params.number_in::<Work>(i - nn)?;
                }
                let mut den = Work::one();
                for i in (0..=k as i64).filter(|&i| i != j) {
                    den *= aj - params.number_in::<Work>(i)?;
                }
                sum += divide(num, &den, || format!("prod_(i != {j}) ([{j}] - [i])"))?;
            }
            Ok(round(sum))
        }
        Route::Oracle => Ok(round(lah_oracle_row(n, params)?[k])),
        other => Err(other.unsupported("elah")),
    }
}

fn lah_oracle_row(n: usize, params: &EllipticParams) -> Result<Vec<Work>> {
    let seq = ValueSequence::<Work>::elliptic(*params);
    let c = (1..=n as i64)
        .map(|i| params.number_in::<Work>(1 - i))
        .collect::<Result<Vec<_>>>()?;
    let f = seq
        .values(0, n as i64)?
        .into_iter()
        .map(|a| c.iter().fold(Work::one(), |acc, ci| acc * (a - ci)))
        .collect::<Vec<_>>();
    Ok(newton_oracle(&f, &seq, n)?.entries)
}

pub fn elliptic_lah_table(max_n: usize, params: &EllipticParams, route: Route) -> Result<TriangularTable<Complex64>> {
    let nn = max_n as i64;
    params.check_window(-nn, nn, params.min_denominator())?;
    match route {
        Route::Recurrence => {
            // L(n+1,k) = L(n,k-1) + W(-n) [n+k]_{aq^(-2n), bq^(-n)} L(n,k)
            let rows = two_term_recurrence(
                max_n,
                |_, _| Ok(Work::one()),
                |n, k| {
                    let n = n as i64;
                    Ok(params.weight_in::<Work>(-n)? * params.number_shifted_in::<Work>(n + k as i64, -2 * n, -n)?)
                },
            )?;
            TriangularTable::from_rows("elah", round_rows(rows))
        }
        Route::Oracle => {
            let rows = (0..=max_n)
                .map(|n| lah_oracle_row(n, params))
                .collect::<Result<Vec<_>>>()?;
            TriangularTable::from_rows("elah", round_rows(rows))
        }
        _ => TriangularTable::build("elah", max_n, |n, k| elliptic_lah(n, k, params, route)),
    }
}

/// Classical Lah numbers `binom(n-1, k-1) n! / k!`.
///
/// Routes: `Explicit` (the closed form) and `Oracle` (connection
/// coefficients of `prod_{i<n} (z + i)` in the basis `prod_{i<k} (z - i)`).
pub fn lah_table(max_n: usize, route: Route) -> Result<TriangularTable<ExactScalar>> {
    match route {
        Route::Explicit => TriangularTable::build("lah", max_n, |n, k| {
            if n == 0 || k == 0 {
                return Ok(ExactScalar::from_integer(i64::from(n == k)));
            }
            // n! / k! = (k+1) (k+2) ... n
            let ratio: BigInt = (k + 1..=n).map(BigInt::from).product();
            Ok(ExactScalar::from_integer(
                binomial(BigInt::from(n - 1), BigInt::from(k - 1)) * ratio,
            ))
        }),
        Route::Oracle => {
            let c: Vec<ExactScalar> = (1..=max_n as i64).map(|i| ExactScalar::from_integer(1 - i)).collect();
            connection_rows("lah", &c, &ValueSequence::classical())
        }
        other => Err(other.unsupported("lah")),
    }
}

/// q-Lah numbers: connection coefficients of `prod_{i<n} (z - [-i]_q)` in
/// the basis `prod_{i<k} (z - [i]_q)`, the `p, a, b -> 0` limit of the
/// elliptic Lah numbers.
pub fn q_lah_table(max_n: usize) -> Result<TriangularTable<ExactScalar>> {
    let c: Vec<ExactScalar> = (1..=max_n as i64).map(|i| q_number(1 - i)).collect();
    connection_rows("qlah", &c, &ValueSequence::q_numbers())
}

fn connection_rows(
    family: &str,
    c: &[ExactScalar],
    seq: &ValueSequence<ExactScalar>,
) -> Result<TriangularTable<ExactScalar>> {
    let rows = connection_recurrence(&ExactScalar::one(), c, seq)?;
    TriangularTable::from_rows(family, rows.into_iter().map(|r| r.entries).collect())
}
