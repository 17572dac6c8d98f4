//! The modified Jacobi theta function and the elliptic numbers and weights
//! built from it.

mod elliptic;

use num_complex::Complex64;

pub use elliptic::{EllipticParams, Regime};

use crate::error::{Error, Result};
use crate::scalar::{Numeric, Scalar};

/// Per-factor tail accuracy used by [`ThetaPolicy::for_nome`].
pub const DEFAULT_TARGET_EPS: f64 = 1e-16;

/// Minimum number of product factors kept regardless of the nome.
pub const MIN_TERMS: usize = 24;

/// Truncation of the infinite theta product.
///
/// Keeps `terms` factor pairs; the first dropped pair differs from 1 by
/// roughly `|p|^terms`, which must not exceed `target_eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPolicy {
    terms: usize,
    target_eps: f64,
}

impl ThetaPolicy {
    /// Checks `terms >= ceil(ln(target_eps) / ln|p|)` for `p != 0`.
    pub fn new(terms: usize, target_eps: f64, p: Complex64) -> Result<Self> {
        if terms == 0 || !(target_eps > 0.0 && target_eps < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "theta policy needs terms >= 1 and 0 < eps < 1, got ({terms}, {target_eps})"
            )));
        }
        let needed = required_terms(target_eps, p.norm())?;
        if terms < needed {
            return Err(Error::InvalidArgument(format!(
                "{terms} theta factors cannot reach eps {target_eps:e} at |p| = {}; need {needed}",
                p.norm()
            )));
        }
        Ok(Self { terms, target_eps })
    }

    /// `J = max(24, ceil(ln(1e-16) / ln|p|))`.
    pub fn for_nome(p: Complex64) -> Result<Self> {
        let needed = required_terms(DEFAULT_TARGET_EPS, p.norm())?;
        Ok(Self {
            terms: needed.max(MIN_TERMS),
            target_eps: DEFAULT_TARGET_EPS,
        })
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn target_eps(&self) -> f64 {
        self.target_eps
    }
}

pub(crate) fn required_terms(target_eps: f64, p_abs: f64) -> Result<usize> {
    if p_abs.is_nan() || p_abs >= 1.0 {
        return Err(Error::Domain(format!("nome must satisfy |p| < 1, got {p_abs}")));
    }
    if p_abs == 0.0 {
        return Ok(1);
    }
    Ok((target_eps.ln() / p_abs.ln()).ceil().max(1.0) as usize)
}

/// `theta(x; p) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x)`, truncated per
/// `policy`. At `p = 0` this is exactly `1 - x`.
pub fn theta(x: Complex64, p: Complex64, policy: &ThetaPolicy) -> Result<Complex64> {
    theta_in(x, p, policy.terms)
}

/// [`theta`] in working precision `T` with an explicit number of factor
/// pairs.
pub fn theta_in<T: Numeric>(x: T, p: T, terms: usize) -> Result<T> {
    if Scalar::is_zero(&x) {
        return Err(Error::Domain("theta argument must be nonzero".into()));
    }
    if p.modulus().is_nan() || p.modulus() >= 1.0 {
        return Err(Error::Domain(format!(
            "nome must satisfy |p| < 1, got |p| = {}",
            p.modulus()
        )));
    }
    let one = T::one();
    if Scalar::is_zero(&p) {
        return Ok(one - x);
    }
    let inv = one / x;
    let mut pj = one;
    let mut acc = one;
    for _ in 0..terms {
        let next = pj * p;
        acc = acc * (one - pj * x) * (one - next * inv);
        pj = next;
    }
    Ok(acc)
}

/// Factor pairs needed in precision `T`: the policy's count, raised when
/// `T` resolves more digits than the policy targets.
pub(crate) fn terms_for<T: Numeric>(policy: &ThetaPolicy, p_abs: f64) -> usize {
    if T::UNIT_ROUNDOFF >= policy.target_eps || p_abs == 0.0 {
        policy.terms
    } else {
        required_terms(T::UNIT_ROUNDOFF, p_abs).map_or(policy.terms, |n| n.max(policy.terms))
    }
}

/// `theta(x_1, ..., x_l; p) = prod_k theta(x_k; p)`; the empty product is 1.
pub fn theta_multi(xs: &[Complex64], p: Complex64, policy: &ThetaPolicy) -> Result<Complex64> {
    xs.iter()
        .try_fold(Complex64::new(1.0, 0.0), |acc, &x| Ok(acc * theta(x, p, policy)?))
}
