use num_complex::Complex64;

use super::{ExactScalar, LaurentPoly, Numeric, NUMERIC_DISTINCTNESS};
use crate::error::{Error, Result};

/// The q-number `[z]_q = (1 - q^z)/(1 - q)`.
///
/// For `z >= 0` this is `1 + q + ... + q^(z-1)`; for `z < 0` it is
/// `-(q^z + ... + q^-1)`.
pub fn q_number(z: i64) -> ExactScalar {
    let poly = if z >= 0 {
        LaurentPoly::from_terms((0..z).map(|e| (e, 1)))
    } else {
        LaurentPoly::from_terms((z..0).map(|e| (e, -1)))
    };
    ExactScalar::from_poly(poly)
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: i64) -> Result<ExactScalar> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative n = {n}")));
    }
    Ok((1..=n).fold(ExactScalar::one(), |acc, i| acc * q_number(i)))
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`, a polynomial in `q`
/// with nonnegative coefficients.
pub fn q_binomial(n: i64, k: i64) -> Result<ExactScalar> {
    if k < 0 || k > n {
        return Err(Error::Domain(format!(
            "q-binomial needs 0 <= k <= n, got (n, k) = ({n}, {k})"
        )));
    }
    let value = q_factorial(n)?.checked_div(&(q_factorial(k)? * q_factorial(n - k)?))?;
    debug_assert!(
        value
            .as_poly()
            .is_some_and(|p| p.terms().all(|(e, c)| e >= 0 && c.sign() != num_bigint::Sign::Minus)),
        "q-binomial must reduce to a polynomial with nonnegative coefficients"
    );
    Ok(value)
}

/// `[z]_q` at a numeric `q`; `q = 1` gives `z`.
pub fn q_number_numeric(z: f64, q: Complex64) -> Complex64 {
    if q == Complex64::new(1.0, 0.0) {
        return Complex64::new(z, 0.0);
    }
    let qz = if z.fract() == 0.0 && z.abs() < i32::MAX as f64 {
        q.powi(z as i32)
    } else {
        q.powf(z)
    };
    (1.0 - qz) / (1.0 - q)
}

/// The `(s,t)`-number `(s^i - t^i)/(s - t)`.
pub fn st_number(i: i64, s: Complex64, t: Complex64) -> Result<Complex64> {
    st_number_in(i, s, t)
}

/// [`st_number`] evaluated in precision `T`.
pub fn st_number_in<T: Numeric>(i: i64, s: Complex64, t: Complex64) -> Result<T> {
    let scale = 1f64.max(s.norm()).max(t.norm());
    let gap = (s - t).norm();
    if gap < NUMERIC_DISTINCTNESS * scale {
        return Err(Error::DegenerateParameters {
            factor: "s - t".into(),
            modulus: gap,
        });
    }
    if i32::try_from(i).is_err() {
        return Err(Error::InvalidArgument(format!("index {i} too large")));
    }
    let (s, t) = (T::from_c64(s), T::from_c64(t));
    Ok((s.ipow(i) - t.ipow(i)) / (s - t))
}
