use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{dense, LaurentPoly};
use crate::error::{Error, Result};

/// A rational function `numerator / denominator` in the formal variable `q`.
///
/// Values are kept in a unique reduced form: the two parts are coprime in
/// `Z[q]`, and the denominator's lowest term has exponent 0 and a positive
/// coefficient. All Laurent monomials live in the numerator, so a Laurent
/// polynomial has denominator exactly `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(n))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::from_poly(LaurentPoly::monomial(1, e))
    }

    /// Builds `num / den` in reduced form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_one() {
            return Ok(Self::from_poly(num));
        }
        let (num_shift, n) = num.to_dense().expect("nonzero");
        let (den_shift, d) = den.to_dense().expect("nonzero");
        let shift = num_shift - den_shift;

        let (mut n, mut d) = if d.len() == 1 {
            (n, d)
        } else if let Some(quot) = dense::div_exact(&n, &d) {
            (quot, vec![BigInt::one()])
        } else {
            let cn = dense::content(&n);
            let cd = dense::content(&d);
            let np = dense::div_scalar(&n, &cn);
            let dp = dense::div_scalar(&d, &cd);
            let g = dense::gcd(&np, &dp);
            let (np, dp) = if g.len() > 1 {
                (
                    dense::div_exact(&np, &g).expect("gcd divides"),
                    dense::div_exact(&dp, &g).expect("gcd divides"),
                )
            } else {
                (np, dp)
            };
            let r = cn.gcd(&cd);
            let (cn, cd) = (&cn / &r, &cd / &r);
            (
                np.iter().map(|c| c * &cn).collect(),
                dp.iter().map(|c| c * &cd).collect(),
            )
        };

        // remaining integer content shared by both parts
        let g = dense::content(&n).gcd(&dense::content(&d));
        if !g.is_one() {
            n = dense::div_scalar(&n, &g);
            d = dense::div_scalar(&d, &g);
        }
        if d[0].is_negative() {
            n.iter_mut().for_each(|c| *c = -&*c);
            d.iter_mut().for_each(|c| *c = -&*c);
        }
        Ok(Self {
            num: LaurentPoly::from_dense(shift, &n),
            den: LaurentPoly::from_dense(0, &d),
        })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.as_poly().and_then(LaurentPoly::as_constant)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let n =
            u32::try_from(e.unsigned_abs()).map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
        // reduced parts stay coprime under powers
        Ok(Self {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    /// Substitutes `q -> q^m` for `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument(format!(
                "substitution exponent must be positive, got {m}"
            )));
        }
        Self::new(self.num.substitute_power(m), self.den.substitute_power(m))
    }

    pub fn eval(&self, q: Complex64) -> Result<Complex64> {
        let d = self.den.eval(q);
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(q) / d)
    }

    pub fn eval_rational(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(q)? / d)
    }

    /// Value at `q = 1` when it is an integer.
    pub fn eval_at_one(&self) -> Result<BigRational> {
        self.eval_rational(&BigRational::one())
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<LaurentPoly> for ExactScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.den == rhs.den {
            if self.den.is_one() {
                return ExactScalar::from_poly(&self.num + &rhs.num);
            }
            return ExactScalar::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        ExactScalar::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return ExactScalar::from_poly(&self.num * &rhs.num);
        }
        ExactScalar::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::checked_div`] otherwise.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &'a ExactScalar) -> ExactScalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

/// `N` for Laurent polynomials, `(N)/(D)` otherwise.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            let (num, den) = rest.split_once(")/(").ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected (numerator)/(denominator)".into(),
            })?;
            let den = den.strip_suffix(')').ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unterminated denominator".into(),
            })?;
            Self::new(num.parse()?, den.parse()?)
        } else {
            Ok(Self::from_poly(t.parse()?))
        }
    }
}
