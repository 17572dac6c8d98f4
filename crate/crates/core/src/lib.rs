//! Generalized Stirling, rook, Lah and Eulerian numbers.
//!
//! Every number family in this crate is a connection coefficient between a
//! power (or product) basis and a Newton basis `prod_{i<k} (z - a_i)` built
//! from a value sequence `a_i`. Specializing the sequence gives the classical
//! numbers (`a_i = i`), Carlitz' q-analogues (`a_i = [i]_q`), r-Whitney
//! variants (`a_i = m*i - r` and lifts) and the elliptic analogues
//! (`a_i = [i]_{a,b;q,p}`).
//!
//! Exact families are computed over [`ExactScalar`], a Laurent-rational
//! function of one formal variable `q`. Elliptic families are evaluated in
//! double-double complex arithmetic ([`ComplexDd`]) and returned as
//! `Complex64`, compared under an explicit [`Tolerance`] policy.
//!
//! Each family is available through at least two independent routes
//! (recurrence, explicit sum, divided-difference oracle) so that callers can
//! cross-check results.

pub mod error;
pub mod eulerian;
pub mod newton;
pub mod sampling;
pub mod scalar;
pub mod special;
pub mod theta;

pub use error::{Error, Result};
pub use eulerian::{EulerianParams, PFactor};

pub use newton::{NewtonCoefficients, SequenceKind, ValueSequence};
pub use num_complex::Complex64;
pub use scalar::{ComplexDd, ExactScalar, LaurentPoly, Numeric, Scalar, Tolerance};

pub use sampling::ParamSampler;
pub use special::{FerrersBoard, Route, TriangularTable};
pub use theta::{EllipticParams, Regime, ThetaPolicy};
