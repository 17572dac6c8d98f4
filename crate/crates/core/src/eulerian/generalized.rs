use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::newton::{divide, ValueSequence};
use crate::scalar::{Numeric, Scalar};
use crate::special::{two_term_recurrence, Route, TriangularTable};

/// A bi-infinite value sequence used by the generalized Eulerian engine.
///
/// A table up to degree `N` reads the values `a_-N, ..., a_(N+1)`.
#[derive(Debug, Clone)]
pub struct EulerianParams<S> {
    sequence: ValueSequence<S>,
}

impl<S: Scalar> EulerianParams<S> {
    pub fn new(sequence: ValueSequence<S>) -> Self {
        Self { sequence }
    }

    pub fn sequence(&self) -> &ValueSequence<S> {
        &self.sequence
    }

    /// Checks that `a_-N, ..., a_(N+1)` are pairwise distinct.
    pub fn check(&self, max_n: usize) -> Result<()> {
        let n = max_n as i64;
        self.sequence.check_distinct(-n, n + 1)
    }

    pub fn a(&self, i: i64) -> Result<S> {
        self.sequence.get(i)
    }
}

/// `x - y`, rejected when the two values are not distinct.
fn difference<S: Scalar>(x: &S, y: &S, what: impl FnOnce() -> String) -> Result<S> {
    if !x.is_distinct_from(y) {
        return Err(Error::DegenerateSequence(format!("{} vanishes", what())));
    }
    Ok(x.clone() - y.clone())
}

/// `P(n,k) = prod_{i=1}^{n+1} (a_(n-k+2) - a_(i-k)) / (a_(n-k+1) - a_(i-1-k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PFactor<S> {
    pub n: usize,
    pub k: usize,
    pub value: S,
}

impl<S: Scalar> PFactor<S> {
    pub fn compute(params: &EulerianParams<S>, n: usize, k: usize) -> Result<Self> {
        let (ni, ki) = (n as i64, k as i64);
        let top = params.a(ni - ki + 2)?;
        let below = params.a(ni - ki + 1)?;
        let mut num = S::one();
        let mut den = S::one();
        for i in 1..=ni + 1 {
            num = num * (top.clone() - params.a(i - ki)?);
            den = den
                * difference(&below, &params.a(i - 1 - ki)?, || {
                    format!("a_{} - a_{} in P({n}, {k})", ni - ki + 1, i - 1 - ki)
                })?;
        }
        let value = divide(num, &den, || format!("denominator of P({n}, {k})"))?;
        Ok(Self { n, k, value })
    }
}

/// Generalized Eulerian numbers `A_a(n,k)` for `n <= max_n`, the
/// connection coefficients in
/// `z^n = sum_k A(n,k) prod_{i=1}^n (z - a_(i-k)) / (a_(n-k+1) - a_(i-k))`.
///
/// Routes: `Recurrence` (`A(n+1,k) = a_(n-k+2) A(n,k-1) - a_(-k) P(n,k) A(n,k)`)
/// and `Explicit` (the closed sum over `a_0, a_-1, ..., a_-k`).
pub fn generalized_eulerian<S: Scalar>(
    params: &EulerianParams<S>,
    max_n: usize,
    route: Route,
) -> Result<TriangularTable<S>> {
    params.check(max_n)?;
    match route {
        Route::Recurrence => {
            let rows = two_term_recurrence(
                max_n,
                |n, k| params.a(n as i64 - k as i64 + 2),
                |n, k| {
                    let p = PFactor::compute(params, n, k)?.value;
                    Ok(-(params.a(-(k as i64))? * p))
                },
            )?;
            TriangularTable::from_rows("eulerian", rows)
        }
        Route::Explicit => TriangularTable::build("eulerian", max_n, |n, k| explicit_entry(params, n, k)),
        other => Err(other.unsupported("generalized eulerian")),
    }
}

/// A single entry by the explicit sum.
pub fn generalized_eulerian_entry<S: Scalar>(params: &EulerianParams<S>, n: usize, k: usize) -> Result<S> {
    if k > n {
        return Ok(S::zero());
    }
    params.check(n)?;
    explicit_entry(params, n, k)
}

fn explicit_entry<S: Scalar>(params: &EulerianParams<S>, n: usize, k: usize) -> Result<S> {
    let (ni, ki) = (n as i64, k as i64);
    let top = params.a(ni - ki + 1)?;
    let mut sum = S::zero();
    for j in 0..=ki {
        let aj = params.a(-j)?;
        let mut num = aj.powu(n as u32);
        let mut den = S::one();
        for i in (0..=ni).filter(|&i| i != ki - j) {
            let ai = params.a(i - ki)?;
            num = num * (top.clone() - ai.clone());
            den = den
                * difference(&aj, &ai, || {
                    format!("a_{} - a_{} at (n, k, i) = ({n}, {k}, {i})", -j, i - ki)
                })?;
        }
        sum = sum + divide(num, &den, || format!("explicit denominator at (n, k) = ({n}, {k})"))?;
    }
    Ok(sum)
}

/// The basis polynomial `prod_{i=1}^n (z - a_(i-k)) / (a_(n-k+1) - a_(i-k))` at `z`.
pub fn worpitzky_basis<S: Scalar>(params: &EulerianParams<S>, n: usize, k: usize, z: &S) -> Result<S> {
    let (ni, ki) = (n as i64, k as i64);
    let top = params.a(ni - ki + 1)?;
    let mut num = S::one();
    let mut den = S::one();
    for i in 1..=ni {
        let ai = params.a(i - ki)?;
        num = num * (z.clone() - ai.clone());
        den = den
            * difference(&top, &ai, || {
                format!("a_{} - a_{} in the basis at (n, k) = ({n}, {k})", ni - ki + 1, i - ki)
            })?;
    }
    divide(num, &den, || format!("basis denominator at (n, k) = ({n}, {k})"))
}

/// `z^n - sum_k A(n,k) B_(n,k)(z)` for row `n` of `table`; zero exactly
/// when the identity holds.
pub fn worpitzky_defect<S: Scalar>(
    table: &TriangularTable<S>,
    params: &EulerianParams<S>,
    n: usize,
    z: &S,
) -> Result<S> {
    let mut rhs = S::zero();
    for k in 0..=n {
        rhs = rhs + table.get(n, k as i64) * worpitzky_basis(params, n, k, z)?;
    }
    Ok(z.powu(n as u32) - rhs)
}

/// Largest `|defect(z)| / max(1, |z|^n)` over the samples.
pub fn worpitzky_residual<T: Numeric>(
    table: &TriangularTable<T>,
    params: &EulerianParams<T>,
    n: usize,
    z_samples: &[T],
) -> Result<f64> {
    let mut worst = 0f64;
    for &z in z_samples {
        let defect = worpitzky_defect(table, params, n, &z)?;
        let scale = 1f64.max(z.modulus().powi(n as i32));
        worst = worst.max(defect.modulus() / scale);
    }
    Ok(worst)
}

/// The left side of the Lagrange identity behind the explicit formula,
/// `sum_{j=l}^k (prod_{i=0, i!=k-j}^n (a_(n-k+1) - a_(i-k)) / (a_-j - a_(i-k)))
///  * prod_{i=1}^n (a_-j - a_(i-l)) / (a_(n-l+1) - a_(i-l))`,
/// which equals `1` for `k = l` and `0` for `l < k`.
pub fn lagrange_delta_check<S: Scalar>(params: &EulerianParams<S>, n: usize, k: usize, l: usize) -> Result<S> {
    if l > k || k > n {
        return Err(Error::InvalidArgument(format!(
            "need l <= k <= n, got (n, k, l) = ({n}, {k}, {l})"
        )));
    }
    params.check(n)?;
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    let top = params.a(ni - ki + 1)?;
    let mut sum = S::zero();
    for j in li..=ki {
        let aj = params.a(-j)?;
        let mut num = S::one();
        let mut den = S::one();
        for i in (0..=ni).filter(|&i| i != ki - j) {
            let ai = params.a(i - ki)?;
            num = num * (top.clone() - ai.clone());
            den = den * difference(&aj, &ai, || format!("a_{} - a_{}", -j, i - ki))?;
        }
        let basis = worpitzky_basis(params, n, l, &aj)?;
        sum = sum + divide(num, &den, || format!("Lagrange denominator at j = {j}"))? * basis;
    }
    Ok(sum)
}

/// Rounds a working-precision table to `Complex64`.
pub(crate) fn round_table<T: Numeric>(table: &TriangularTable<T>) -> Result<TriangularTable<Complex64>> {
    table.map(|_, _, v| Ok(v.to_c64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::ParamSampler;
    use crate::scalar::ExactScalar;
    use num_bigint::BigInt;

    fn ex(n: i64) -> ExactScalar {
        ExactScalar::from_integer(n)
    }

    fn random_sequence(seed: u64, max_n: usize) -> EulerianParams<Complex64> {
        let mut sampler = ParamSampler::new(seed);
        let n = max_n as i64;
        let values = (-n..=n + 1)
            .map(|i| Complex64::new(i as f64, 0.0) + sampler.disc(0.25))
            .collect();
        EulerianParams::new(ValueSequence::explicit(values, -n).unwrap())
    }

    #[test]
    fn first_row_closed_form() {
        let mut sampler = ParamSampler::new(11);
        let values: Vec<Complex64> = (-1..=2)
            .map(|i| Complex64::new(i as f64, 0.0) + sampler.disc(0.25))
            .collect();
        let params = EulerianParams::new(ValueSequence::explicit(values.clone(), -1).unwrap());
        let (a0, a1, a2) = (values[1], values[2], values[3]);
        for route in [Route::Recurrence, Route::Explicit] {
            let t = generalized_eulerian(&params, 1, route).unwrap();
            assert!((t.get(1, 1) - a1).norm() < 1e-14);
            let expected = -a0 * (a2 - a1) / (a1 - a0);
            assert!((t.get(1, 0) - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn classical_sequence_gives_integers() {
        let params = EulerianParams::new(ValueSequence::<ExactScalar>::classical());
        let rec = generalized_eulerian(&params, 8, Route::Recurrence).unwrap();
        let exp = generalized_eulerian(&params, 8, Route::Explicit).unwrap();
        assert_eq!(rec, exp);
        assert_eq!(rec.row(3), &[ex(0), ex(1), ex(4), ex(1)]);
        for n in 0..=8usize {
            let sum = rec.row(n).iter().fold(ExactScalar::zero(), |acc, v| acc + v.clone());
            let fact: BigInt = (1..=n as u64).product();
            assert_eq!(sum, ExactScalar::from_integer(fact));
        }
    }

    #[test]
    fn p_factor_collapses() {
        let classical = EulerianParams::new(ValueSequence::<ExactScalar>::classical());
        let q = EulerianParams::new(ValueSequence::<ExactScalar>::q_numbers());
        let affine = EulerianParams::new(ValueSequence::<ExactScalar>::affine_whitney(3, 2));
        for n in 0..5 {
            for k in 0..=n {
                assert_eq!(PFactor::compute(&classical, n, k).unwrap().value, ExactScalar::one());
                assert_eq!(PFactor::compute(&affine, n, k).unwrap().value, ExactScalar::one());
                assert_eq!(
                    PFactor::compute(&q, n, k).unwrap().value,
                    ExactScalar::q_power(n as i64 + 1)
                );
            }
        }
    }

    #[test]
    fn exact_worpitzky_holds() {
        for seq in [
            ValueSequence::<ExactScalar>::classical(),
            ValueSequence::q_numbers(),
            ValueSequence::affine_whitney(2, 1),
            ValueSequence::q_whitney(2, 1),
        ] {
            let params = EulerianParams::new(seq);
            let table = generalized_eulerian(&params, 6, Route::Recurrence).unwrap();
            for n in 0..=6 {
                for z in -2..=(n as i64 + 3) {
                    let zs = params.a(z).unwrap();
                    assert!(worpitzky_defect(&table, &params, n, &zs).unwrap().is_zero());
                }
            }
        }
        // classical n = 3 at plain integers z
        let params = EulerianParams::new(ValueSequence::<ExactScalar>::classical());
        let table = generalized_eulerian(&params, 3, Route::Explicit).unwrap();
        for z in -2..=5 {
            assert!(worpitzky_defect(&table, &params, 3, &ex(z)).unwrap().is_zero());
        }
    }

    #[test]
    fn numeric_routes_and_worpitzky() {
        for seed in 0..10 {
            let params = random_sequence(seed, 7);
            let rec = generalized_eulerian(&params, 7, Route::Recurrence).unwrap();
            let exp = generalized_eulerian(&params, 7, Route::Explicit).unwrap();
            for (n, k, v) in rec.entries() {
                let e = exp.get(n, k as i64);
                assert!((v - e).norm() <= 1e-8 * v.norm().max(e.norm()).max(1.0), "({n},{k})");
            }
            let mut sampler = ParamSampler::new(seed + 100);
            let zs: Vec<Complex64> = (0..20)
                .map(|_| Complex64::new(sampler.uniform(-3.0, 3.0), 0.0))
                .collect();
            for n in 0..=7 {
                assert_eq!(worpitzky_residual(&rec, &params, 0, &zs).unwrap(), 0.0);
                assert!(worpitzky_residual(&rec, &params, n, &zs).unwrap() <= 1e-8);
            }
        }
    }

    #[test]
    fn lagrange_delta() {
        let exact = EulerianParams::new(ValueSequence::<ExactScalar>::classical());
        for n in 0..=6 {
            for k in 0..=n {
                for l in 0..=k {
                    let v = lagrange_delta_check(&exact, n, k, l).unwrap();
                    assert_eq!(v, if k == l { ex(1) } else { ex(0) }, "({n},{k},{l})");
                }
            }
        }
        let numeric = random_sequence(5, 6);
        for n in 0..=6 {
            for k in 0..=n {
                for l in 0..=k {
                    let v = lagrange_delta_check(&numeric, n, k, l).unwrap();
                    let want = if k == l { 1.0 } else { 0.0 };
                    assert!((v - Complex64::new(want, 0.0)).norm() <= 1e-9, "({n},{k},{l})");
                }
            }
        }
        assert!(lagrange_delta_check(&exact, 3, 1, 2).is_err());
    }

    #[test]
    fn vanishing_denominator_is_named() {
        let values = vec![ex(0), ex(1), ex(1), ex(3)];
        let params = EulerianParams::new(ValueSequence::explicit(values, -1).unwrap());
        let err = generalized_eulerian(&params, 1, Route::Explicit).unwrap_err();
        assert!(matches!(err, Error::DegenerateSequence(_)));
        let seq = ValueSequence::from_fn("collide", |i| Ok(if i == -1 { ex(0) } else { ex(i) }));
        match explicit_entry(&EulerianParams::new(seq), 1, 1) {
            Err(Error::DegenerateSequence(msg)) => assert!(msg.contains("(n, k, i) = (1, 1, 0)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q_numbers_vanish_in_column_zero() {
        let params = EulerianParams::new(ValueSequence::<ExactScalar>::q_numbers());
        let t = generalized_eulerian(&params, 5, Route::Recurrence).unwrap();
        for n in 1..=5 {
            assert!(t.get(n, 0).is_zero());
            assert!(t.get(n, n as i64 + 1).is_zero());
        }
        assert_eq!(t.get(2, 1), ExactScalar::q_power(1));
    }
}
