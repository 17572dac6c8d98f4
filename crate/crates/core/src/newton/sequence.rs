use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{q_number, q_number_numeric, st_number, st_number_in, ExactScalar, Numeric, Scalar};
use crate::theta::EllipticParams;

/// Which specialization a [`ValueSequence`] realizes.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// `a_i = i`
    Classical,
    /// `a_i = [i]_q`
    QNumber,
    /// `a_i = [i]_{a,b;q,p}`
    Elliptic,
    /// `a_i = m*i - r`
    AffineWhitney { m: i64, r: i64 },
    /// `a_i = [m*i - r]_q`
    QWhitney { m: i64, r: i64 },
    /// `a_i = [m*i - r]_{a,b;q,p}`
    EllipticWhitney { m: i64, r: i64 },
    /// `a_i = [m*i + r]_{s,t}`
    St { m: i64, r: i64 },
    /// Explicit values on the window `lo..=hi`.
    Explicit { lo: i64, hi: i64 },
    /// Caller-supplied closure.
    Custom(String),
}

type Eval<S> = Arc<dyn Fn(i64) -> Result<S> + Send + Sync>;

/// A bi-infinite sequence `..., a_-1, a_0, a_1, ...` of scalars.
///
/// Sequences are immutable and cheap to clone. [`ValueSequence::shifted`]
/// realizes the index shift `a_i -> a_{i+k}`.
#[derive(Clone)]
pub struct ValueSequence<S> {
    kind: SequenceKind,
    offset: i64,
    window: Option<(i64, i64)>,
    eval: Eval<S>,
}

impl<S: Scalar> ValueSequence<S> {
    /// A sequence backed by an arbitrary total function.
    pub fn from_fn<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(i64) -> Result<S> + Send + Sync + 'static,
    {
        Self::with_kind(SequenceKind::Custom(name.into()), None, f)
    }

    fn with_kind<F>(kind: SequenceKind, window: Option<(i64, i64)>, f: F) -> Self
    where
        F: Fn(i64) -> Result<S> + Send + Sync + 'static,
    {
        Self {
            kind,
            offset: 0,
            window,
            eval: Arc::new(f),
        }
    }

    /// Explicit values with `values[0] = a_lo`.
    pub fn explicit(values: Vec<S>, lo: i64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "explicit sequence needs at least one value".into(),
            ));
        }
        let hi = lo + values.len() as i64 - 1;
        let values = Arc::new(values);
        Ok(Self::with_kind(
            SequenceKind::Explicit { lo, hi },
            Some((lo, hi)),
            move |i| Ok(values[(i - lo) as usize].clone()),
        ))
    }

    /// `a_i = i`.
    pub fn classical() -> Self {
        Self::with_kind(SequenceKind::Classical, None, |i| Ok(S::from_i64(i)))
    }

    /// `a_i = m*i - r`.
    pub fn affine_whitney(m: i64, r: i64) -> Self {
        Self::with_kind(SequenceKind::AffineWhitney { m, r }, None, move |i| {
            Ok(S::from_i64(m * i - r))
        })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Total index shift applied so far.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Window of valid indices (after shifting), if restricted.
    pub fn window(&self) -> Option<(i64, i64)> {
        self.window.map(|(lo, hi)| (lo - self.offset, hi - self.offset))
    }

    pub fn get(&self, i: i64) -> Result<S> {
        let j = i + self.offset;
        if let Some((lo, hi)) = self.window {
            if j < lo || j > hi {
                return Err(Error::OutOfWindow {
                    index: i,
                    lo: lo - self.offset,
                    hi: hi - self.offset,
                });
            }
        }
        (self.eval)(j)
    }

    /// `a_lo, ..., a_hi`.
    pub fn values(&self, lo: i64, hi: i64) -> Result<Vec<S>> {
        (lo..=hi).map(|i| self.get(i)).collect()
    }

    /// The sequence `i -> a_{i+k}`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.offset += k;
        out
    }

    /// Fails with the offending pair if two values in `lo..=hi` are not
    /// distinct under the scalar's distinctness test.
    pub fn check_distinct(&self, lo: i64, hi: i64) -> Result<()> {
        let values = self.values(lo, hi)?;
        for (x, vi) in values.iter().enumerate() {
            for (y, vj) in values.iter().enumerate().skip(x + 1) {
                if !vi.is_distinct_from(vj) {
                    return Err(Error::DegenerateSequence(format!(
                        "a_{} and a_{} are not distinct",
                        lo + x as i64,
                        lo + y as i64
                    )));
                }
            }
        }
        Ok(())
    }
}

impl ValueSequence<ExactScalar> {
    /// `a_i = [i]_q` over the formal variable.
    pub fn q_numbers() -> Self {
        Self::with_kind(SequenceKind::QNumber, None, |i| Ok(q_number(i)))
    }

    /// `a_i = [m*i - r]_q` over the formal variable.
    pub fn q_whitney(m: i64, r: i64) -> Self {
        Self::with_kind(SequenceKind::QWhitney { m, r }, None, move |i| Ok(q_number(m * i - r)))
    }
}

impl ValueSequence<Complex64> {
    /// `a_i = [i]_q` at a numeric `q`.
    pub fn q_numbers_at(q: Complex64) -> Self {
        Self::with_kind(SequenceKind::QNumber, None, move |i| Ok(q_number_numeric(i as f64, q)))
    }

    /// `a_i = [m*i - r]_q` at a numeric `q`.
    pub fn q_whitney_at(m: i64, r: i64, q: Complex64) -> Self {
        Self::with_kind(SequenceKind::QWhitney { m, r }, None, move |i| {
            Ok(q_number_numeric((m * i - r) as f64, q))
        })
    }
}

impl<T: Numeric> ValueSequence<T> {
    /// `a_i = [m*i + r]_{s,t} = (s^(mi+r) - t^(mi+r))/(s - t)`, evaluated in precision `T`.
    pub fn st(m: i64, r: i64, s: Complex64, t: Complex64) -> Result<Self> {
        st_number(0, s, t)?;
        Ok(Self::with_kind(SequenceKind::St { m, r }, None, move |i| {
            st_number_in(m * i + r, s, t)
        }))
    }

    /// `a_i = [i]_{a,b;q,p}`, evaluated in precision `T`.
    pub fn elliptic(params: EllipticParams) -> Self {
        Self::with_kind(SequenceKind::Elliptic, None, move |i| params.number_in(i))
    }

    /// `a_i = [m*i - r]_{a,b;q,p}`.
    pub fn elliptic_whitney(m: i64, r: i64, params: EllipticParams) -> Self {
        Self::with_kind(SequenceKind::EllipticWhitney { m, r }, None, move |i| {
            params.number_in(m * i - r)
        })
    }
}

impl<S> fmt::Debug for ValueSequence<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValueSequence")
            .field("kind", &self.kind)
            .field("offset", &self.offset)
            .finish()
    }
}
