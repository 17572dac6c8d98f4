use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in one formal variable `q` with arbitrary-precision
/// integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns the constant value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `q -> q^m`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m != 0, "substitution q -> q^0 collapses the variable");
        Self {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    /// Positive gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn eval(&self, q: Complex64) -> Complex64 {
        let Some((shift, dense)) = self.to_dense() else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for c in dense.iter().rev() {
            acc = acc * q + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * q.powi(shift as i32)
    }

    /// Exact evaluation at a rational point. Fails at `q = 0` when negative
    /// exponents are present.
    pub fn eval_rational(&self, q: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            if q.is_zero() && e < 0 {
                return Err(Error::DivisionByZero);
            }
            acc += BigRational::from_integer(c.clone()) * pow_rational(q, e);
        }
        Ok(acc)
    }

    /// Splits into `q^shift * dense(q)` with `dense[0] != 0`.
    pub(crate) fn to_dense(&self) -> Option<(i64, Vec<BigInt>)> {
        let lo = self.min_exponent()?;
        let hi = self.max_exponent()?;
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        Some((lo, dense))
    }

    pub(crate) fn from_dense(shift: i64, dense: &[BigInt]) -> Self {
        Self {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone()))
                .collect(),
        }
    }
}

fn pow_rational(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Canonical form: ascending exponents, `c*q^e`, unit coefficients omitted
/// for non-constant terms, `q^1` written `q`, e.g. `-q^-2 - q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if *e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut pos = 0;
        let mut out = LaurentPoly::zero();
        let mut first = true;
        while pos < compact.len() {
            let mut sign = BigInt::one();
            match compact[pos] {
                '+' if !first => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err("expected '+' or '-' between terms")),
            }
            first = false;

            let digits = take_digits(&compact, &mut pos);
            let coeff = if digits.is_empty() {
                None
            } else {
                Some(digits.parse::<BigInt>().map_err(|_| err("bad coefficient"))?)
            };
            let has_var = if coeff.is_some() {
                if compact.get(pos) == Some(&'*') {
                    pos += 1;
                    if compact.get(pos) != Some(&'q') {
                        return Err(err("expected 'q' after '*'"));
                    }
                    pos += 1;
                    true
                } else {
                    false
                }
            } else if compact.get(pos) == Some(&'q') {
                pos += 1;
                true
            } else {
                return Err(err("expected coefficient or 'q'"));
            };
            let exponent = if has_var {
                if compact.get(pos) == Some(&'^') {
                    pos += 1;
                    let negative = compact.get(pos) == Some(&'-');
                    if negative {
                        pos += 1;
                    }
                    let digits = take_digits(&compact, &mut pos);
                    let e: i64 = digits.parse().map_err(|_| err("bad exponent"))?;
                    if negative {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                }
            } else {
                0
            };
            out.add_term(exponent, sign * coeff.unwrap_or_else(BigInt::one));
        }
        Ok(out)
    }
}

fn take_digits(chars: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    chars[start..*pos].iter().collect()
}

/// Dense integer polynomials (little-endian coefficient vectors) used for
/// gcd and exact division.
pub(crate) mod dense {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn content(p: &[BigInt]) -> BigInt {
        p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn div_scalar(p: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        p.iter().map(|x| x / c).collect()
    }

    pub fn primitive(p: &[BigInt]) -> Vec<BigInt> {
        let c = content(p);
        if c.is_zero() || c.is_one() {
            p.to_vec()
        } else {
            div_scalar(p, &c)
        }
    }

    /// Quotient of `a / b` when `b` divides `a` in `Z[q]`.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        if b.is_empty() {
            return None;
        }
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let mut rem = a.to_vec();
        let lead = b.last().unwrap();
        let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, bc) in b.iter().enumerate() {
                rem[i + j] -= &qc * bc;
            }
            quot[i] = qc;
        }
        if rem.iter().all(|c| c.is_zero()) {
            trim(&mut quot);
            Some(quot)
        } else {
            None
        }
    }

    /// Pseudo-remainder of `a` by `b`.
    fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut rem = a.to_vec();
        let lead = b.last().unwrap().clone();
        let db = b.len() - 1;
        while rem.len() > db && !rem.is_empty() {
            let top = rem.last().unwrap().clone();
            let shift = rem.len() - 1 - db;
            let g = top.gcd(&lead);
            let ml = &lead / &g;
            let mt = &top / &g;
            if !ml.is_one() {
                for c in rem.iter_mut() {
                    *c *= &ml;
                }
            }
            for (j, bc) in b.iter().enumerate() {
                rem[shift + j] -= &mt * bc;
            }
            trim(&mut rem);
        }
        rem
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut x = primitive(a);
        let mut y = primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive(&r);
        }
        if x.last().is_some_and(|c| c.is_negative()) {
            for c in x.iter_mut() {
                *c = -&*c;
            }
        }
        x
    }
}
