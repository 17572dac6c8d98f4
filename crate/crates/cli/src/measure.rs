//! Deviation measures shared by the suites and the degeneration command.

use genstirling::{Complex64, TriangularTable};

/// Magnitudes below this are compared absolutely rather than relatively,
/// so that entries which vanish in exact arithmetic do not turn rounding
/// noise into a relative error of one.
pub const SCALE_FLOOR: f64 = 1e-6;

/// `|x - y| / max(|x|, |y|, SCALE_FLOOR)`.
pub fn deviation(x: Complex64, y: Complex64) -> f64 {
    let scale = x.norm().max(y.norm()).max(SCALE_FLOOR);
    (x - y).norm() / scale
}

/// Largest entrywise [`deviation`]; tables of different shape are
/// compared over the smaller one.
pub fn table_deviation(a: &TriangularTable<Complex64>, b: &TriangularTable<Complex64>) -> f64 {
    a.entries()
        .filter(|&(n, _, _)| n <= b.max_n())
        .map(|(n, k, v)| deviation(*v, b.get(n, k as i64)))
        .fold(0.0, f64::max)
}

/// Largest [`table_deviation`] over all pairs.
pub fn pairwise_deviation(tables: &[TriangularTable<Complex64>]) -> f64 {
    let mut worst = 0f64;
    for (i, a) in tables.iter().enumerate() {
        for b in &tables[i + 1..] {
            worst = worst.max(table_deviation(a, b));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn deviation_is_relative_above_the_floor() {
        assert!((deviation(c(2.0), c(2.0 + 2e-9)) - 1e-9).abs() < 1e-15);
        assert_eq!(deviation(c(0.0), c(0.0)), 0.0);
        assert!((deviation(c(0.0), c(1e-17)) - 1e-11).abs() < 1e-20);
    }

    #[test]
    fn pairwise_takes_the_worst_pair() {
        let t = |v: f64| TriangularTable::build("t", 1, |_, _| Ok(c(v))).unwrap();
        let dev = pairwise_deviation(&[t(1.0), t(1.0 + 1e-10), t(1.0 - 1e-10)]);
        assert!((dev - 2e-10).abs() < 1e-15);
        assert_eq!(pairwise_deviation(&[t(1.0)]), 0.0);
    }
}
