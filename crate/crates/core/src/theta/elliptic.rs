use num_complex::Complex64;

use super::{terms_for, theta_in, ThetaPolicy};
use crate::error::{Error, Result};
use crate::scalar::Numeric;

/// Default lower bound on the modulus of any guarded denominator factor.
pub const DEFAULT_MIN_DENOMINATOR: f64 = 1e-12;

/// Which closed form the elliptic quantities are evaluated with.
///
/// The degenerate regimes are the ordered limits `p -> 0`, then `a -> 0`,
/// then `b -> 0`, and finally `q -> 1`. They are evaluated in closed form
/// rather than as numerical limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Full theta quotients.
    Elliptic,
    /// `p = 0`: every theta factor becomes `1 - x`.
    NomeZero,
    /// `p = 0`, then `a -> 0`.
    NomeZeroAZero,
    /// `p = 0`, `a -> 0`, `b -> 0`: elliptic numbers become `[z]_q`.
    QAnalogue,
    /// Additionally `q -> 1`: elliptic numbers become `z`.
    Classical,
}

/// The parameters `(a, b, q, p)` of elliptic numbers and weights.
///
/// Shifts `a -> a q^alpha`, `b -> b q^beta` are stored as exponents and
/// applied in the working precision of each evaluation, so that shifted
/// families stay consistent beyond double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    a: Complex64,
    b: Complex64,
    q: Complex64,
    p: Complex64,
    shift: (f64, f64),
    regime: Regime,
    policy: ThetaPolicy,
    min_denominator: f64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `(a, b, q)` in working precision with shifts applied.
struct Base<T> {
    a: T,
    b: T,
    q: T,
}

impl EllipticParams {
    /// Generic elliptic parameters; needs `a, b, q != 0` and `|p| < 1`.
    pub fn new(a: Complex64, b: Complex64, q: Complex64, p: Complex64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("q", q)] {
            if v == ZERO || !v.is_finite() {
                return Err(Error::Domain(format!("parameter {name} must be finite and nonzero")));
            }
        }
        let policy = ThetaPolicy::for_nome(p)?;
        Ok(Self {
            a,
            b,
            q,
            p,
            shift: (0.0, 0.0),
            regime: Regime::Elliptic,
            policy,
            min_denominator: DEFAULT_MIN_DENOMINATOR,
        })
    }

    /// The `p = 0` rational form.
    pub fn nome_zero(a: Complex64, b: Complex64, q: Complex64) -> Result<Self> {
        let mut params = Self::new(a, b, q, ZERO)?;
        params.regime = Regime::NomeZero;
        Ok(params)
    }

    /// The `p = 0, a -> 0` form.
    pub fn nome_zero_a_zero(b: Complex64, q: Complex64) -> Result<Self> {
        let mut params = Self::new(ONE, b, q, ZERO)?;
        params.a = ZERO;
        params.regime = Regime::NomeZeroAZero;
        Ok(params)
    }

    /// The fully degenerated q-analogue form at numeric `q`.
    pub fn q_analogue(q: Complex64) -> Result<Self> {
        let mut params = Self::new(ONE, ONE, q, ZERO)?;
        params.a = ZERO;
        params.b = ZERO;
        params.regime = Regime::QAnalogue;
        Ok(params)
    }

    /// The classical form (`q = 1`).
    pub fn classical() -> Self {
        let mut params = Self::new(ONE, ONE, ONE, ZERO).expect("valid");
        params.a = ZERO;
        params.b = ZERO;
        params.regime = Regime::Classical;
        params
    }

    /// Builds the regime reached from `(a, b, q, p)` by the degeneration
    /// chain: `p = 0` selects the rational form, `a = 0` on top of that
    /// the next stage, and `b = 0` the q-analogue.
    pub fn from_values(a: Complex64, b: Complex64, q: Complex64, p: Complex64) -> Result<Self> {
        if p != ZERO {
            return Self::new(a, b, q, p);
        }
        match (a == ZERO, b == ZERO) {
            (false, false) => Self::nome_zero(a, b, q),
            (true, false) => Self::nome_zero_a_zero(b, q),
            (true, true) => Self::q_analogue(q),
            (false, true) => Err(Error::Domain(
                "b = 0 requires a = 0 (limits are taken p, then a, then b)".into(),
            )),
        }
    }

    pub fn with_min_denominator(mut self, min_denominator: f64) -> Self {
        self.min_denominator = min_denominator;
        self
    }

    pub fn with_policy(mut self, policy: ThetaPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// `a`, including any shift.
    pub fn a(&self) -> Complex64 {
        self.base::<Complex64>().a
    }
    /// `b`, including any shift.
    pub fn b(&self) -> Complex64 {
        self.base::<Complex64>().b
    }
    pub fn q(&self) -> Complex64 {
        self.q
    }
    pub fn p(&self) -> Complex64 {
        self.p
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    pub fn policy(&self) -> &ThetaPolicy {
        &self.policy
    }
    pub fn min_denominator(&self) -> f64 {
        self.min_denominator
    }

    /// Parameters `(a q^alpha, b q^beta, q, p)`.
    pub fn shifted(&self, alpha: i64, beta: i64) -> Self {
        self.shifted_real(alpha as f64, beta as f64)
    }

    /// Parameters `(a q^alpha, b q^beta, q, p)` for real shifts.
    pub fn shifted_real(&self, alpha: f64, beta: f64) -> Self {
        let mut out = *self;
        out.shift = (self.shift.0 + alpha, self.shift.1 + beta);
        out
    }

    /// Parameters `(a p^i, b p^j, q, p)`; elliptic numbers are invariant
    /// under this map.
    pub fn nome_shifted(&self, i: i32, j: i32) -> Result<Self> {
        if self.regime != Regime::Elliptic {
            return Err(Error::Domain("nome shift only applies to elliptic parameters".into()));
        }
        let mut out = Self::new(self.a * self.p.powi(i), self.b * self.p.powi(j), self.q, self.p)?
            .with_policy(self.policy)
            .with_min_denominator(self.min_denominator);
        out.shift = self.shift;
        Ok(out)
    }

    fn q_pow_in<T: Numeric>(&self, e: f64) -> T {
        if e.fract() == 0.0 && e.abs() < i32::MAX as f64 {
            T::from_c64(self.q).ipow(e as i64)
        } else {
            T::from_c64(self.q.powf(e))
        }
    }

    fn base<T: Numeric>(&self) -> Base<T> {
        let (alpha, beta) = self.shift;
        let shift = |v: Complex64, e: f64| {
            if v == ZERO || e == 0.0 {
                T::from_c64(v)
            } else {
                T::from_c64(v) * self.q_pow_in(e)
            }
        };
        Base {
            a: shift(self.a, alpha),
            b: shift(self.b, beta),
            q: T::from_c64(self.q),
        }
    }

    /// A theta factor in the current regime.
    fn th<T: Numeric>(&self, x: T) -> Result<T> {
        match self.regime {
            Regime::Elliptic => theta_in(x, T::from_c64(self.p), terms_for::<T>(&self.policy, self.p.norm())),
            _ => Ok(T::one() - x),
        }
    }

    fn guard<T: Numeric>(&self, value: T, factor: impl FnOnce() -> String) -> Result<T> {
        let modulus = value.modulus();
        if modulus < self.min_denominator || !modulus.is_finite() {
            return Err(Error::DegenerateParameters {
                factor: factor(),
                modulus,
            });
        }
        Ok(value)
    }

    /// Product of guarded denominator factors `theta(x_i)`.
    fn guarded_product<T: Numeric>(&self, xs: &[(T, &str)], at: f64) -> Result<T> {
        let mut acc = T::one();
        for &(x, name) in xs {
            let v = self.th(x)?;
            acc = acc * self.guard(v, || format!("theta({name}) at {at}"))?;
        }
        Ok(acc)
    }

    fn product<T: Numeric>(&self, xs: &[T]) -> Result<T> {
        xs.iter().try_fold(T::one(), |acc, &x| Ok(acc * self.th(x)?))
    }

    /// The elliptic number `[z]_{a,b;q,p}` at an integer.
    pub fn number(&self, z: i64) -> Result<Complex64> {
        self.number_in(z)
    }

    /// [`number`](Self::number) in working precision `T`.
    pub fn number_in<T: Numeric>(&self, z: i64) -> Result<T> {
        self.number_with(z as f64, self.q_pow_in(z as f64))
    }

    /// The elliptic number at a real argument (`q^z` on the principal branch).
    pub fn number_real(&self, z: f64) -> Result<Complex64> {
        self.number_with(z, self.q_pow_in(z))
    }

    /// `[z]_{a q^alpha, b q^beta; q, p}`.
    pub fn number_shifted(&self, z: i64, alpha: i64, beta: i64) -> Result<Complex64> {
        self.shifted(alpha, beta).number(z)
    }

    pub fn number_shifted_in<T: Numeric>(&self, z: i64, alpha: i64, beta: i64) -> Result<T> {
        self.shifted(alpha, beta).number_in(z)
    }

    fn number_with<T: Numeric>(&self, z: f64, qz: T) -> Result<T> {
        let Base { a, b, q } = self.base::<T>();
        let one = T::one();
        match self.regime {
            Regime::Elliptic | Regime::NomeZero => {
                let num = self.product(&[qz, a * qz, b * q, a * q / b])?;
                let den = self.guarded_product(
                    &[(q, "q"), (a * q, "a*q"), (b * qz, "b*q^z"), (a * qz / b, "a*q^z/b")],
                    z,
                )?;
                Ok(num / den)
            }
            Regime::NomeZeroAZero => {
                let den = self.guarded_product(&[(q, "q"), (b * qz, "b*q^z")], z)?;
                Ok((one - qz) * (one - b * q) / den)
            }
            Regime::QAnalogue => {
                let den = self.guarded_product(&[(q, "q")], z)?;
                Ok((one - qz) / den)
            }
            Regime::Classical => Ok(T::from_c64(Complex64::new(z, 0.0))),
        }
    }

    /// The elliptic weight `W_{a,b;q,p}(k)`; degenerates to `q^k`.
    pub fn weight(&self, k: i64) -> Result<Complex64> {
        self.weight_in(k)
    }

    pub fn weight_in<T: Numeric>(&self, k: i64) -> Result<T> {
        self.weight_with(k as f64, self.q_pow_in(k as f64))
    }

    pub fn weight_real(&self, k: f64) -> Result<Complex64> {
        self.weight_with(k, self.q_pow_in(k))
    }

    fn weight_with<T: Numeric>(&self, k: f64, qk: T) -> Result<T> {
        let Base { a, b, q } = self.base::<T>();
        let one = T::one();
        match self.regime {
            Regime::Elliptic | Regime::NomeZero => {
                let num = self.product(&[a * q * qk * qk, b, b * q, a / b, a * q / b])?;
                let den = self.guarded_product(
                    &[
                        (a * q, "a*q"),
                        (b * qk, "b*q^k"),
                        (b * q * qk, "b*q^(k+1)"),
                        (a * qk / b, "a*q^k/b"),
                        (a * q * qk / b, "a*q^(k+1)/b"),
                    ],
                    k,
                )?;
                Ok(num / den * qk)
            }
            Regime::NomeZeroAZero => {
                let den = self.guarded_product(&[(b * qk, "b*q^k"), (b * q * qk, "b*q^(k+1)")], k)?;
                Ok((one - b) * (one - b * q) / den * qk)
            }
            Regime::QAnalogue => Ok(qk),
            Regime::Classical => Ok(one),
        }
    }

    /// `[z]_{1/a, b/a; q, p}`, the number appearing in
    /// `[-k] = -W(-1) [k]_{1/a,b/a}`. Degenerate regimes use the limits of
    /// the inverted parameters, which stay finite.
    pub fn inverted_number(&self, z: i64) -> Result<Complex64> {
        self.inverted_number_in(z)
    }

    pub fn inverted_number_in<T: Numeric>(&self, z: i64) -> Result<T> {
        let qz: T = self.q_pow_in(z as f64);
        let Base { a, b, q } = self.base::<T>();
        let one = T::one();
        let at = z as f64;
        match self.regime {
            Regime::Elliptic | Regime::NomeZero => {
                let (ia, ib) = (one / a, b / a);
                let num = self.product(&[qz, ia * qz, ib * q, ia * q / ib])?;
                let den = self.guarded_product(
                    &[(q, "q"), (ia * q, "q/a"), (ib * qz, "b*q^z/a"), (ia * qz / ib, "q^z/b")],
                    at,
                )?;
                Ok(num / den)
            }
            Regime::NomeZeroAZero => {
                let den = self.guarded_product(&[(q, "q"), (qz / b, "q^z/b")], at)?;
                Ok((one - qz) * (one - q / b) / den)
            }
            Regime::QAnalogue => {
                let den = self.guarded_product(&[(q, "q")], at)?;
                Ok(q / qz * (one - qz) / den)
            }
            Regime::Classical => Ok(T::from_c64(Complex64::new(at, 0.0))),
        }
    }

    /// Verifies every theta factor that can enter a numerator or
    /// denominator for indices in `lo..=hi` (including the shifted and
    /// inverted parameter families used by the number-family engines) has
    /// modulus at least `min_modulus`.
    pub fn check_window(&self, lo: i64, hi: i64, min_modulus: f64) -> Result<()> {
        if lo > hi {
            return Ok(());
        }
        let Base { a, b, .. } = self.base::<Complex64>();
        let span_lo = 2 * lo - 2;
        let span_hi = 2 * hi + 2;
        let check = |x: Complex64, name: &str, m: i64| -> Result<()> {
            let v = self.th(x)?;
            if v.norm() < min_modulus || !v.is_finite() {
                return Err(Error::DegenerateParameters {
                    factor: format!("theta({name}) at m = {m}"),
                    modulus: v.norm(),
                });
            }
            Ok(())
        };
        for m in span_lo..=span_hi {
            let qm: Complex64 = self.q_pow_in(m as f64);
            if m != 0 && self.regime != Regime::Classical {
                check(qm, "q^m", m)?;
            }
            match self.regime {
                Regime::Elliptic | Regime::NomeZero => {
                    for (x, name) in [
                        (a * qm, "a*q^m"),
                        (b * qm, "b*q^m"),
                        (a * qm / b, "a*q^m/b"),
                        (qm / a, "q^m/a"),
                        (b * qm / a, "b*q^m/a"),
                        (qm / b, "q^m/b"),
                    ] {
                        check(x, name, m)?;
                    }
                }
                Regime::NomeZeroAZero => {
                    check(b * qm, "b*q^m", m)?;
                    check(qm / b, "q^m/b", m)?;
                }
                Regime::QAnalogue | Regime::Classical => {}
            }
        }
        Ok(())
    }
}
