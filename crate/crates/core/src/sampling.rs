//! Seeded parameter sampling for identity suites.
//!
//! Nomes have `|p|` uniform in `[0.05, 0.5]`; `q`, `a`, `b` lie on the
//! annulus `0.4 <= |x| <= 0.9` with uniform phase. A draw is rejected (up to
//! [`MAX_RETRIES`] times) when any guarded theta factor over the requested
//! index window has modulus below [`SAMPLING_GUARD`], or when two elliptic
//! numbers in the window are closer than [`SAMPLING_GUARD`] (relative).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::theta::EllipticParams;

pub const SAMPLING_GUARD: f64 = 1e-6;
pub const MAX_RETRIES: usize = 100;

pub const NOME_RANGE: (f64, f64) = (0.05, 0.5);
pub const PARAM_RANGE: (f64, f64) = (0.4, 0.9);

/// Deterministic sampler; the seed fully determines every draw.
#[derive(Debug, Clone)]
pub struct ParamSampler {
    rng: ChaCha8Rng,
}

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A point with modulus uniform in `[lo, hi]` and uniform phase.
    pub fn annulus(&mut self, lo: f64, hi: f64) -> Complex64 {
        let r = self.rng.random_range(lo..=hi);
        let phase = self.rng.random_range(0.0..TAU);
        Complex64::from_polar(r, phase)
    }

    pub fn nome(&mut self) -> Complex64 {
        self.annulus(NOME_RANGE.0, NOME_RANGE.1)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// A complex number uniform in the disc of the given radius.
    pub fn disc(&mut self, radius: f64) -> Complex64 {
        let r = radius * self.rng.random_range(0.0f64..1.0).sqrt();
        let phase = self.rng.random_range(0.0..TAU);
        Complex64::from_polar(r, phase)
    }

    /// Generic elliptic parameters whose guarded factors over `lo..=hi`
    /// stay away from zero and whose numbers `[lo], ..., [hi]` are pairwise
    /// separated.
    pub fn elliptic(&mut self, lo: i64, hi: i64) -> Result<EllipticParams> {
        let mut last = None;
        for _ in 0..MAX_RETRIES {
            let q = self.annulus(PARAM_RANGE.0, PARAM_RANGE.1);
            let a = self.annulus(PARAM_RANGE.0, PARAM_RANGE.1);
            let b = self.annulus(PARAM_RANGE.0, PARAM_RANGE.1);
            let p = self.nome();
            let params = EllipticParams::new(a, b, q, p)?;
            let checked = params
                .check_window(lo, hi, SAMPLING_GUARD)
                .and_then(|()| separated(&params, lo, hi));
            match checked {
                Ok(()) => return Ok(params),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Domain("no sample drawn".into())))
    }

    /// A numeric `q` on the sampling annulus, for q-analogue comparisons.
    pub fn q(&mut self) -> Complex64 {
        self.annulus(PARAM_RANGE.0, PARAM_RANGE.1)
    }
}

/// Requires `|[i] - [j]| >= SAMPLING_GUARD * max(1, |[i]|, |[j]|)` for
/// distinct `i, j` in `lo..=hi`.
fn separated(params: &EllipticParams, lo: i64, hi: i64) -> Result<()> {
    let values = (lo..=hi).map(|i| params.number(i)).collect::<Result<Vec<_>>>()?;
    for (x, vx) in values.iter().enumerate() {
        for (y, vy) in values.iter().enumerate().skip(x + 1) {
            let scale = 1f64.max(vx.norm()).max(vy.norm());
            if (vx - vy).norm() < SAMPLING_GUARD * scale {
                return Err(Error::DegenerateSequence(format!(
                    "[{}] and [{}] are closer than the sampling guard",
                    lo + x as i64,
                    lo + y as i64
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = ParamSampler::new(42).elliptic(-3, 5).unwrap();
        let b = ParamSampler::new(42).elliptic(-3, 5).unwrap();
        assert_eq!(a, b);
        let c = ParamSampler::new(43).elliptic(-3, 5).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn samples_respect_ranges() {
        let mut s = ParamSampler::new(7);
        for _ in 0..50 {
            let params = s.elliptic(0, 4).unwrap();
            assert!((NOME_RANGE.0..=NOME_RANGE.1).contains(&params.p().norm()));
            for v in [params.a(), params.b(), params.q()] {
                assert!((PARAM_RANGE.0 - 1e-12..=PARAM_RANGE.1 + 1e-12).contains(&v.norm()));
            }
        }
    }
}
