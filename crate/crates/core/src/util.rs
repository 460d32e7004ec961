//! Small numerical helpers shared across modules.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// `e(a/q) = exp(2 pi i a / q)` with the residue reduced exactly first.
pub fn e_q(a: i64, q: u64) -> Complex64 {
    let r = a.rem_euclid(q as i64) as f64;
    Complex64::from_polar(1.0, TAU * r / q as f64)
}

/// `e(x) = exp(2 pi i x)`, reducing `x` modulo 1 first.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x.rem_euclid(1.0))
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

#[inline]
fn two_sum(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        two_sum(&mut self.re, &mut self.re_c, z.re);
        two_sum(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

/// Sum in iteration order with compensation.
pub fn compensated_sum<I: IntoIterator<Item = Complex64>>(iter: I) -> Complex64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Least-squares fit of `log y = exponent * log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub rms_residual: f64,
    pub points: usize,
}

/// Fits a power law through the positive points; `None` with fewer than two.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Option<PowerFit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let rss: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - exponent * p.0).powi(2))
        .sum();
    Some(PowerFit {
        exponent,
        intercept,
        rms_residual: (rss / n).sqrt(),
        points: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let terms = [1e16, 1.0, -1e16, 1.0].map(|x| Complex64::new(x, -x));
        let s = compensated_sum(terms);
        assert_eq!(s, Complex64::new(2.0, -2.0));
    }

    #[test]
    fn exact_power_law() {
        let xs: Vec<f64> = (1..10).map(|k| 2f64.powi(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(0.75)).collect();
        let fit = fit_power_law(&xs, &ys).unwrap();
        assert!((fit.exponent - 0.75).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);
        assert!(fit_power_law(&xs[..1], &ys[..1]).is_none());
    }

    #[test]
    fn roots_of_unity() {
        assert!((e_q(5, 5) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e_q(-1, 4) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((e(0.5) + Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
