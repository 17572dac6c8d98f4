//! Named number families: Stirling numbers of the second kind (classical,
//! q-, elliptic), (q,r)-Whitney and shifted variants, elliptic rook numbers
//! on Ferrers boards and elliptic Lah numbers.
//!
//! Elliptic families follow the convention without the weight prefactor
//! `prod_{j<k} W(j)`; [`ks_convention`] converts.

mod rook;
mod stirling;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{ComplexDd, Numeric, Scalar};
use crate::theta::EllipticParams;

pub use rook::{
    elliptic_lah, elliptic_lah_table, elliptic_rook, elliptic_rook_numbers, lah_table, q_lah_table, FerrersBoard,
};
pub use stirling::{
    elliptic_shifted_stirling, elliptic_stirling2, elliptic_stirling2_table, q_stirling2, q_stirling2_table,
    st_shifted_stirling, stirling2, stirling2_table, whitney_qr, WhitneyValue,
};

/// Computation route for a number family. Each family accepts a subset and
/// rejects the rest with [`Error::InvalidArgument`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Recurrence,
    Explicit,
    CarlitzSum,
    HSpecial,
    ExplicitCorollary,
    Oracle,
    Engine,
}

impl Route {
    pub const ALL: [Route; 7] = [
        Route::Recurrence,
        Route::Explicit,
        Route::CarlitzSum,
        Route::HSpecial,
        Route::ExplicitCorollary,
        Route::Oracle,
        Route::Engine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Recurrence => "recurrence",
            Route::Explicit => "explicit",
            Route::CarlitzSum => "carlitz-sum",
            Route::HSpecial => "h-special",
            Route::ExplicitCorollary => "explicit-corollary",
            Route::Oracle => "oracle",
            Route::Engine => "engine",
        }
    }

    pub(crate) fn unsupported(self, family: &str) -> Error {
        Error::InvalidArgument(format!("route {self} is not available for {family}"))
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        if key == "direct" || key == "direct-recurrence" {
            return Ok(Route::Recurrence);
        }
        Route::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown route".into(),
            })
    }
}

/// Working precision of the elliptic families. Their explicit sums divide
/// by products of node differences that can be tiny for clustered nodes,
/// so they are evaluated in double-double and rounded once.
pub(crate) type Work = ComplexDd;

pub(crate) fn round(v: Work) -> Complex64 {
    v.to_c64()
}

pub(crate) fn round_rows(rows: Vec<Vec<Work>>) -> Vec<Vec<Complex64>> {
    rows.into_iter().map(|r| r.into_iter().map(round).collect()).collect()
}

/// Rows `0..=N` of a triangle; row `n` holds the entries `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularTable<S> {
    family: String,
    params: Vec<(String, String)>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> TriangularTable<S> {
    pub fn from_rows(family: impl Into<String>, rows: Vec<Vec<S>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidArgument(format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(Self {
            family: family.into(),
            params: Vec::new(),
            rows,
        })
    }

    /// Fills every entry independently.
    pub fn build<F>(family: impl Into<String>, max_n: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<S>,
    {
        let rows = (0..=max_n)
            .map(|n| (0..=n).map(|k| f(n, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(family, rows)
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.rows[n]
    }

    /// Entry `(n, k)`; zero for `k < 0` or `k > n`.
    pub fn get(&self, n: usize, k: i64) -> S {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.rows.get(n)?.get(k).cloned())
            .unwrap_or_else(S::zero)
    }

    /// `(n, k, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    pub fn map<T: Scalar, F>(&self, mut f: F) -> Result<TriangularTable<T>>
    where
        F: FnMut(usize, usize, &S) -> Result<T>,
    {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| row.iter().enumerate().map(|(k, v)| f(n, k, v)).collect())
            .collect::<Result<Vec<_>>>()?;
        Ok(TriangularTable {
            family: self.family.clone(),
            params: self.params.clone(),
            rows,
        })
    }
}

/// Builds rows `0..=max_n` from `T(0,0) = 1` and
/// `T(n+1,k) = left(n,k) T(n,k-1) + right(n,k) T(n,k)`.
///
/// A coefficient is only evaluated when the entry it multiplies lies inside
/// the triangle.
pub(crate) fn two_term_recurrence<S, L, R>(max_n: usize, mut left: L, mut right: R) -> Result<Vec<Vec<S>>>
where
    S: Scalar,
    L: FnMut(usize, usize) -> Result<S>,
    R: FnMut(usize, usize) -> Result<S>,
{
    let mut rows = vec![vec![S::one()]];
    for n in 0..max_n {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let mut v = S::zero();
                if k >= 1 {
                    v = left(n, k)? * prev[k - 1].clone();
                }
                if k <= n {
                    v = v + right(n, k)? * prev[k].clone();
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Multiplies entry `(n, k)` by `prod_{j=0}^{k-1} W(j)`, giving the
/// convention in which the weights are part of the elliptic Stirling
/// numbers.
pub fn ks_convention(
    table: &TriangularTable<Complex64>,
    params: &EllipticParams,
) -> Result<TriangularTable<Complex64>> {
    let mut prefix = vec![Complex64::new(1.0, 0.0)];
    for j in 0..table.max_n() {
        prefix.push(prefix[j] * params.weight(j as i64)?);
    }
    table.map(|_, k, v| Ok(v * prefix[k]))
}
