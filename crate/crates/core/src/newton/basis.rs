use super::ValueSequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One row `C_{n,0}, ..., C_{n,n}` of connection coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonCoefficients<S> {
    pub n: usize,
    pub entries: Vec<S>,
}

impl<S: Scalar> NewtonCoefficients<S> {
    /// `C_{n,k}`, zero outside `0..=n`.
    pub fn get(&self, k: i64) -> S {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.entries.get(k).cloned())
            .unwrap_or_else(S::zero)
    }
}

/// Divides, reporting a vanishing denominator as a degenerate sequence.
pub(crate) fn divide<S: Scalar>(num: S, den: &S, what: impl FnOnce() -> String) -> Result<S> {
    num.try_div(den).map_err(|e| match e {
        Error::DivisionByZero => Error::DegenerateSequence(format!("{} vanishes", what())),
        other => other,
    })
}

fn ensure_distinct<S: Scalar>(values: &[S]) -> Result<()> {
    for (i, x) in values.iter().enumerate() {
        for (j, y) in values.iter().enumerate().skip(i + 1) {
            if !x.is_distinct_from(y) {
                return Err(Error::DegenerateSequence(format!(
                    "values a_{i} and a_{j} are not distinct"
                )));
            }
        }
    }
    Ok(())
}

/// `prod_{i != j} (a_j - a_i)` over the given values.
fn vandermonde_row<S: Scalar>(values: &[S], j: usize) -> S {
    values
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .fold(S::one(), |acc, (_, ai)| acc * (values[j].clone() - ai.clone()))
}

/// `prod_{i=0}^{n-1} (z - a_i)`; the empty product is 1.
pub fn falling_factorial<S: Scalar>(z: &S, seq: &ValueSequence<S>, n: usize) -> Result<S> {
    (0..n as i64).try_fold(S::one(), |acc, i| Ok(acc * (z.clone() - seq.get(i)?)))
}

/// The generalized factorial `a_n! = prod_{i<n} (a_n - a_i)`.
pub fn gen_factorial<S: Scalar>(seq: &ValueSequence<S>, n: usize) -> Result<S> {
    falling_factorial(&seq.get(n as i64)?, seq, n)
}

/// `h_n(a_0, ..., a_k)` via the recursion
/// `h_m(a_0..a_j) = h_m(a_0..a_{j-1}) + a_j h_{m-1}(a_0..a_j)`.
pub fn h_recurrence<S: Scalar>(n: usize, values: &[S]) -> S {
    if values.is_empty() {
        return if n == 0 { S::one() } else { S::zero() };
    }
    // column[m] = h_m(a_0..a_j) for the current j
    let mut column: Vec<S> = std::iter::successors(Some(S::one()), |prev| Some(prev.clone() * values[0].clone()))
        .take(n + 1)
        .collect();
    for a in &values[1..] {
        for m in 1..=n {
            column[m] = column[m].clone() + a.clone() * column[m - 1].clone();
        }
    }
    column[n].clone()
}

/// `h_n(a_0, ..., a_k) = sum_j a_j^(n+k) / prod_{i != j} (a_j - a_i)`.
pub fn h_explicit<S: Scalar>(n: usize, values: &[S]) -> Result<S> {
    if values.is_empty() {
        return Ok(if n == 0 { S::one() } else { S::zero() });
    }
    ensure_distinct(values)?;
    let power = (n + values.len() - 1) as u32;
    values.iter().enumerate().try_fold(S::zero(), |acc, (j, aj)| {
        let term = divide(aj.powu(power), &vandermonde_row(values, j), || {
            format!("prod_(i != {j}) (a_{j} - a_i)")
        })?;
        Ok(acc + term)
    })
}

/// The sequence binomial `(-1)^(n-k) a_n! / prod_{i != k} (a_k - a_i)`.
pub fn a_binomial<S: Scalar>(n: usize, k: usize, seq: &ValueSequence<S>) -> Result<S> {
    if k > n {
        return Err(Error::Domain(format!("a-binomial needs k <= n, got ({n}, {k})")));
    }
    let values = seq.values(0, n as i64)?;
    ensure_distinct(&values)?;
    let value = divide(gen_factorial(seq, n)?, &vandermonde_row(&values, k), || {
        format!("prod_(i != {k}) (a_{k} - a_i)")
    })?;
    Ok(if (n - k) % 2 == 1 { -value } else { value })
}

/// Connection coefficients of `c_0 prod_{i=1}^n (z - c_i)` in the Newton
/// basis of `seq`, by `C_{n+1,k} = C_{n,k-1} + (a_k - c_{n+1}) C_{n,k}`.
///
/// Returns rows `0..=c.len()`; `c[i-1]` plays the role of `c_i`.
pub fn connection_recurrence<S: Scalar>(c0: &S, c: &[S], seq: &ValueSequence<S>) -> Result<Vec<NewtonCoefficients<S>>> {
    let mut rows = vec![NewtonCoefficients {
        n: 0,
        entries: vec![c0.clone()],
    }];
    for (n, cn1) in c.iter().enumerate() {
        let prev = &rows[n];
        let entries = (0..=n + 1)
            .map(|k| {
                let mut v = prev.get(k as i64 - 1);
                if k <= n {
                    v = v + (seq.get(k as i64)? - cn1.clone()) * prev.entries[k].clone();
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(NewtonCoefficients { n: n + 1, entries });
    }
    Ok(rows)
}

/// `C_{n,k} = c_0 sum_{j=0}^k prod_{i=1}^n (a_j - c_i) / prod_{i != j} (a_j - a_i)`.
pub fn connection_explicit<S: Scalar>(c0: &S, c: &[S], seq: &ValueSequence<S>, n: usize, k: usize) -> Result<S> {
    if c.len() < n {
        return Err(Error::InvalidArgument(format!(
            "need {n} values c_1..c_n, got {}",
            c.len()
        )));
    }
    if k > n {
        return Ok(S::zero());
    }
    let a = seq.values(0, k as i64)?;
    ensure_distinct(&a)?;
    let sum = a.iter().enumerate().try_fold(S::zero(), |acc, (j, aj)| {
        let num = c[..n].iter().fold(S::one(), |p, ci| p * (aj.clone() - ci.clone()));
        let term = divide(num, &vandermonde_row(&a, j), || {
            format!("prod_(i != {j}) (a_{j} - a_i)")
        })?;
        Ok(acc + term)
    })?;
    Ok(c0.clone() * sum)
}

/// Newton-form coefficients of the interpolant through `(a_i, f(a_i))`,
/// `i = 0..=n`, from the divided-difference triangle.
pub fn newton_oracle<S: Scalar>(f_values: &[S], seq: &ValueSequence<S>, n: usize) -> Result<NewtonCoefficients<S>> {
    if f_values.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} function values, got {}",
            n + 1,
            f_values.len()
        )));
    }
    let a = seq.values(0, n as i64)?;
    ensure_distinct(&a)?;
    let mut d = f_values.to_vec();
    for level in 1..=n {
        for i in (level..=n).rev() {
            let den = a[i].clone() - a[i - level].clone();
            d[i] = divide(d[i].clone() - d[i - 1].clone(), &den, || {
                format!("a_{i} - a_{}", i - level)
            })?;
        }
    }
    Ok(NewtonCoefficients { n, entries: d })
}

/// `Delta_x^j f` at `z = 0, x_i = a_i`, via the closed expansion
/// `sum_k x_j! / prod_{i != k} (x_k - x_i) * E^k`, where `E^k` shifts `z`
/// by `k` and every sequence index by `k`.
///
/// `f(z, x)` evaluates the operand at integer `z` and sequence `x`.
pub fn difference_operator<S, F>(j: usize, f: F, seq: &ValueSequence<S>) -> Result<S>
where
    S: Scalar,
    F: Fn(i64, &ValueSequence<S>) -> Result<S>,
{
    let x = seq.values(0, j as i64)?;
    ensure_distinct(&x)?;
    let factorial = gen_factorial(seq, j)?;
    (0..=j).try_fold(S::zero(), |acc, k| {
        let weight = divide(factorial.clone(), &vandermonde_row(&x, k), || {
            format!("prod_(i != {k}) (x_{k} - x_i)")
        })?;
        Ok(acc + weight * f(k as i64, &seq.shifted(k as i64))?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::ParamSampler;
    use crate::scalar::{q_number, relative_error, ExactScalar};
    use num_complex::Complex64;

    type Ex = ExactScalar;

    fn int(n: i64) -> Ex {
        Ex::from_integer(n)
    }

    /// Brute-force h_n: sum over all multisets of size n.
    fn h_enumerate<S: Scalar>(n: usize, values: &[S]) -> S {
        fn rec<S: Scalar>(n: usize, start: usize, values: &[S], prefix: S, acc: &mut S) {
            if n == 0 {
                *acc = acc.clone() + prefix;
                return;
            }
            for i in start..values.len() {
                rec(n - 1, i, values, prefix.clone() * values[i].clone(), acc);
            }
        }
        let mut acc = S::zero();
        rec(n, 0, values, S::one(), &mut acc);
        acc
    }

    /// Difference operator by its defining recursion (exponential; small j only).
    fn difference_recursive<S, F>(j: usize, f: &F, z: i64, x: &ValueSequence<S>) -> S
    where
        S: Scalar,
        F: Fn(i64, &ValueSequence<S>) -> Result<S>,
    {
        if j == 0 {
            return f(z, x).unwrap();
        }
        let m = j - 1;
        let coeff = (0..m as i64).fold(S::one(), |acc, i| {
            let num = x.get(m as i64 + 1).unwrap() - x.get(i + 1).unwrap();
            let den = x.get(m as i64).unwrap() - x.get(i).unwrap();
            acc * num.try_div(&den).unwrap()
        });
        difference_recursive(m, f, z + 1, &x.shifted(1)) - coeff * difference_recursive(m, f, z, x)
    }

    /// a_i = i + small complex perturbation keeps values well separated.
    fn random_sequence(sampler: &mut ParamSampler, lo: i64, hi: i64) -> ValueSequence<Complex64> {
        let values = (lo..=hi)
            .map(|i| Complex64::new(i as f64, 0.0) + sampler.disc(0.25))
            .collect();
        ValueSequence::explicit(values, lo).unwrap()
    }

    #[test]
    fn falling_factorial_examples() {
        let seq = ValueSequence::<Ex>::classical();
        assert_eq!(falling_factorial(&int(5), &seq, 0).unwrap(), int(1));
        assert_eq!(falling_factorial(&int(5), &seq, 3).unwrap(), int(60));

        let qseq = ValueSequence::q_numbers();
        let got = falling_factorial(&q_number(4), &qseq, 2).unwrap();
        assert_eq!(got, q_number(4) * Ex::q_power(1) * q_number(3));
    }

    #[test]
    fn gen_factorial_examples() {
        let seq = ValueSequence::<Ex>::classical();
        assert_eq!(gen_factorial(&seq, 0).unwrap(), int(1));
        assert_eq!(gen_factorial(&seq, 4).unwrap(), int(24));
        // [3] ([3]-[1]) ([3]-[2]) = [3] * q[2] * q^2[1] = q^3 [3]_q!
        let qseq = ValueSequence::q_numbers();
        let expected = Ex::q_power(3) * crate::scalar::q_factorial(3).unwrap();
        assert_eq!(gen_factorial(&qseq, 3).unwrap(), expected);
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_recurrence(0, &[int(5)]), int(1));
        let (a0, a1) = (int(3), int(-2));
        assert_eq!(h_recurrence(2, &[a0.clone(), a1.clone()]), int(9 - 6 + 4));
        let qs = [q_number(0), q_number(1), q_number(2)];
        assert_eq!(h_recurrence(1, &qs), "2 + q".parse::<Ex>().unwrap());
        assert_eq!(h_explicit(0, &[int(4)]).unwrap(), int(1));
        assert_eq!(h_explicit(2, &[int(1), int(2)]).unwrap(), int(7));
        assert!(matches!(
            h_explicit(2, &[int(1), int(1)]),
            Err(Error::DegenerateSequence(_))
        ));
    }

    #[test]
    fn h_routes_agree_with_enumeration_exactly() {
        let qs: Vec<Ex> = (0..5).map(q_number).collect();
        for k in 0..5 {
            for n in 0..6 {
                let values = &qs[..=k];
                let brute = h_enumerate(n, values);
                assert_eq!(h_recurrence(n, values), brute);
                assert_eq!(h_explicit(n, values).unwrap(), brute);
            }
        }
    }

    #[test]
    fn h_routes_agree_numerically() {
        let mut sampler = ParamSampler::new(31);
        for trial in 0..50 {
            let k = trial % 7;
            let n = trial % 9;
            let values: Vec<Complex64> = (0..=k)
                .map(|i| Complex64::new(i as f64, 0.0) + sampler.disc(0.3))
                .collect();
            let rec = h_recurrence(n, &values);
            let exp = h_explicit(n, &values).unwrap();
            assert!(relative_error(rec, exp) <= 1e-9, "k={k} n={n}");
            assert!(relative_error(rec, h_enumerate(n, &values)) <= 1e-12);
        }
    }

    #[test]
    fn h_explicit_is_symmetric() {
        let values: Vec<Ex> = [3, -1, 4, 0, 7].into_iter().map(q_number).collect();
        let mut permuted = values.clone();
        permuted.rotate_left(2);
        permuted.swap(0, 3);
        assert_eq!(h_explicit(4, &values).unwrap(), h_explicit(4, &permuted).unwrap());

        let mut sampler = ParamSampler::new(5);
        let nv: Vec<Complex64> = (0..5)
            .map(|i| Complex64::new(i as f64, 0.0) + sampler.disc(0.3))
            .collect();
        let mut np = nv.clone();
        np.reverse();
        assert!(relative_error(h_explicit(6, &nv).unwrap(), h_explicit(6, &np).unwrap()) <= 1e-10);
    }

    #[test]
    fn a_binomial_classical_and_top() {
        let seq = ValueSequence::<Ex>::classical();
        for n in 0..=10usize {
            for k in 0..=n {
                let expected = num_integer::binomial(n as i64, k as i64);
                assert_eq!(a_binomial(n, k, &seq).unwrap(), int(expected));
            }
        }
        let qseq = ValueSequence::q_numbers();
        assert_eq!(a_binomial(5, 5, &qseq).unwrap(), int(1));
    }

    #[test]
    fn a_binomial_recurrence() {
        let mut sampler = ParamSampler::new(77);
        for _ in 0..5 {
            let seq = random_sequence(&mut sampler, 0, 10);
            for n in 1..8usize {
                let ratio = (0..n as i64).fold(Complex64::new(1.0, 0.0), |acc, j| {
                    let num = seq.get(n as i64 + 1).unwrap() - seq.get(j + 1).unwrap();
                    let den = seq.get(n as i64).unwrap() - seq.get(j).unwrap();
                    acc * num / den
                });
                for k in 1..=n {
                    let lhs = a_binomial(n + 1, k, &seq).unwrap();
                    let rhs = ratio * a_binomial(n, k, &seq).unwrap() + a_binomial(n, k - 1, &seq.shifted(1)).unwrap();
                    assert!(relative_error(lhs, rhs) <= 1e-9, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn connection_examples() {
        let seq = ValueSequence::<Ex>::classical();
        // c_i = a_i: the two bases coincide
        let c: Vec<Ex> = (0..5).map(int).collect();
        let rows = connection_recurrence(&int(3), &c, &seq).unwrap();
        for row in &rows {
            for (k, v) in row.entries.iter().enumerate() {
                let expected = if k == row.n { int(3) } else { int(0) };
                assert_eq!(*v, expected);
            }
        }
        // n = 1, c_0 = 1: z - c_1 = (a_0 - c_1) + (z - a_0)
        let c1 = int(7);
        let rows = connection_recurrence(&int(1), std::slice::from_ref(&c1), &seq).unwrap();
        assert_eq!(rows[1].entries, vec![int(0) - c1, int(1)]);
        // k = 0 reduces to a single term
        let c: Vec<Ex> = vec![int(2), int(5), int(-1)];
        assert_eq!(connection_explicit(&int(2), &c, &seq, 3, 0).unwrap(), int(2 * -2 * -5));
        // c = 0 on the classical sequence gives Stirling numbers
        let zeros = vec![int(0); 4];
        assert_eq!(connection_explicit(&int(1), &zeros, &seq, 4, 2).unwrap(), int(7));
    }

    #[test]
    fn connection_routes_and_oracle_agree() {
        let mut sampler = ParamSampler::new(13);
        for trial in 0..50 {
            let n = 1 + trial % 6;
            let seq = random_sequence(&mut sampler, 0, n as i64);
            let c0 = sampler.annulus(0.5, 2.0);
            let c: Vec<Complex64> = (0..n).map(|_| sampler.disc(3.0)).collect();
            let rows = connection_recurrence(&c0, &c, &seq).unwrap();
            let f: Vec<Complex64> = (0..=n as i64)
                .map(|i| {
                    let ai = seq.get(i).unwrap();
                    c.iter().fold(c0, |acc, ci| acc * (ai - ci))
                })
                .collect();
            let oracle = newton_oracle(&f, &seq, n).unwrap();
            for k in 0..=n {
                let explicit = connection_explicit(&c0, &c, &seq, n, k).unwrap();
                let scale = rows[n].entries.iter().fold(0f64, |m, v| m.max(v.norm()));
                assert!((rows[n].entries[k] - explicit).norm() <= 1e-9 * scale);
                assert!((oracle.entries[k] - explicit).norm() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn newton_oracle_examples() {
        let seq = ValueSequence::<Ex>::classical();
        let ones = vec![int(1); 4];
        assert_eq!(
            newton_oracle(&ones, &seq, 3).unwrap().entries,
            vec![int(1), int(0), int(0), int(0)]
        );
        let squares: Vec<Ex> = (0..3).map(|z| int(z * z)).collect();
        assert_eq!(
            newton_oracle(&squares, &seq, 2).unwrap().entries,
            vec![int(0), int(1), int(1)]
        );
        assert!(newton_oracle(&squares, &seq, 3).is_err());
    }

    #[test]
    fn basis_expansion_identity_exact() {
        for seq in [ValueSequence::<Ex>::classical(), ValueSequence::q_numbers()] {
            let a: Vec<Ex> = seq.values(0, 9).unwrap();
            for n in 0..=8usize {
                let coeffs: Vec<Ex> = (0..=n).map(|k| h_recurrence(n - k, &a[..=k])).collect();
                for x in 0..=n as i64 {
                    for z in [int(x - 3), seq.get(x + 2).unwrap()] {
                        let rhs = coeffs.iter().enumerate().fold(Ex::zero(), |acc, (k, h)| {
                            acc + h.clone() * falling_factorial(&z, &seq, k).unwrap()
                        });
                        assert_eq!(z.powu(n as u32), rhs, "n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn basis_expansion_identity_numeric() {
        let mut sampler = ParamSampler::new(4);
        let seq = random_sequence(&mut sampler, 0, 9);
        let a = seq.values(0, 9).unwrap();
        for n in 0..=8usize {
            for _ in 0..20 {
                let z = sampler.disc(4.0);
                let terms: Vec<Complex64> = (0..=n)
                    .map(|k| h_recurrence(n - k, &a[..=k]) * falling_factorial(&z, &seq, k).unwrap())
                    .collect();
                let scale = terms.iter().fold(z.norm().powi(n as i32), |m, t| m.max(t.norm()));
                let resid = (z.powu(n as u32) - terms.iter().sum::<Complex64>()).norm();
                assert!(resid <= 1e-9 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn connection_residual_at_random_points() {
        let mut sampler = ParamSampler::new(8);
        let seq = random_sequence(&mut sampler, 0, 7);
        let n = 6;
        let c0 = Complex64::new(1.5, -0.5);
        let c: Vec<Complex64> = (0..n).map(|_| sampler.disc(2.0)).collect();
        let rows = connection_recurrence(&c0, &c, &seq).unwrap();
        let explicit: Vec<Complex64> = (0..=n)
            .map(|k| connection_explicit(&c0, &c, &seq, n, k).unwrap())
            .collect();
        for coeffs in [&rows[n].entries, &explicit] {
            for _ in 0..20 {
                let z = sampler.disc(4.0);
                let lhs = c.iter().fold(c0, |acc, ci| acc * (z - ci));
                let terms: Vec<Complex64> = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, ck)| ck * falling_factorial(&z, &seq, k).unwrap())
                    .collect();
                assert!(crate::scalar::identity_residual(lhs, &terms) <= 1e-9);
            }
        }

        // exact: q-numbers with c_i = [i - 2]_q
        let qseq = ValueSequence::q_numbers();
        let c: Vec<Ex> = (1..=5).map(|i| q_number(i - 2)).collect();
        let rows = connection_recurrence(&int(2), &c, &qseq).unwrap();
        for k in 0..=5 {
            assert_eq!(
                rows[5].entries[k],
                connection_explicit(&int(2), &c, &qseq, 5, k).unwrap()
            );
        }
        for x in -3..4 {
            let z = q_number(x);
            let lhs = c.iter().fold(int(2), |acc, ci| acc * (z.clone() - ci.clone()));
            let rhs = rows[5].entries.iter().enumerate().fold(Ex::zero(), |acc, (k, ck)| {
                acc + ck.clone() * falling_factorial(&z, &qseq, k).unwrap()
            });
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn difference_operator_examples() {
        let seq = ValueSequence::<Ex>::q_numbers();
        let f = |z: i64, _: &ValueSequence<Ex>| Ok(q_number(z).powu(3) + int(2));
        assert_eq!(difference_operator(0, f, &seq).unwrap(), int(2));

        // expansion agrees with the defining recursion
        for j in 0..=5 {
            let g = |z: i64, x: &ValueSequence<Ex>| Ok(q_number(z).powu(4) * x.get(1)?);
            let closed = difference_operator(j, g, &seq).unwrap();
            assert_eq!(closed, difference_recursive(j, &g, 0, &seq), "j={j}");
        }
    }

    #[test]
    fn difference_operator_delta_identity() {
        let mut sampler = ParamSampler::new(21);
        for _ in 0..3 {
            let seq = random_sequence(&mut sampler, 0, 14);
            for j in 0..=6usize {
                let fact = gen_factorial(&seq, j).unwrap();
                for k in 0..=6usize {
                    let base = seq.clone();
                    let f = move |z: i64, _: &ValueSequence<Complex64>| falling_factorial(&base.get(z)?, &base, k);
                    let got = difference_operator(j, f, &seq).unwrap();
                    let expected = if j == k { fact } else { Complex64::new(0.0, 0.0) };
                    assert!((got - expected).norm() <= 1e-9 * fact.norm().max(1.0), "j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn difference_operator_gives_h() {
        let seq = ValueSequence::<Ex>::q_numbers();
        let a = seq.values(0, 8).unwrap();
        for n in 0..=7usize {
            for k in 0..=n {
                let base = seq.clone();
                let f = move |z: i64, _: &ValueSequence<Ex>| Ok(base.get(z)?.powu(n as u32));
                let delta = difference_operator(k, f, &seq).unwrap();
                let ck = delta.checked_div(&gen_factorial(&seq, k).unwrap()).unwrap();
                assert_eq!(ck, h_recurrence(n - k, &a[..=k]), "n={n} k={k}");
            }
        }
    }
}
