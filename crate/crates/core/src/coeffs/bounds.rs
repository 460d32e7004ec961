use serde::{Deserialize, Serialize};

use super::table::GL3CoefficientTable;
use crate::util::{fit_power_law, CompensatedSum, PowerFit};
use crate::{Error, Result};

/// Numerical view of the pointwise, mean-square and partial-sum bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsDiagnostics {
    /// `max_n |A(n,1)| / n^{5/14}` and where it is attained.
    pub pointwise_ratio: f64,
    pub pointwise_argmax: usize,
    /// `(X, sum_{n <= X} |A(n,1)|^2 / X)` for `X = 10^k`.
    pub rankin_selberg: Vec<(usize, f64)>,
    /// `(X, |sum_{n <= X} A(n,1)|)` for `X = 2^k`.
    pub partial_sums: Vec<(usize, f64)>,
    /// Log-log fit of the partial sums against `X` over `X >= 2^10`.
    pub partial_sum_fit: Option<PowerFit>,
}

pub fn check_bounds(table: &GL3CoefficientTable) -> Result<BoundsDiagnostics> {
    let n_max = table.len();
    if n_max < 1000 {
        return Err(Error::IncompleteData {
            required: 1000,
            available: n_max,
        });
    }
    let mut pointwise_ratio = 0.0;
    let mut pointwise_argmax = 1;
    let mut sq = 0.0;
    let mut sum = CompensatedSum::new();
    let mut rankin_selberg = Vec::new();
    let mut partial_sums = Vec::new();
    let (mut next_ten, mut next_two) = (1usize, 1usize);
    for (i, &a) in table.values().iter().enumerate() {
        let n = i + 1;
        let r = a.norm() / (n as f64).powf(5.0 / 14.0);
        if r > pointwise_ratio {
            pointwise_ratio = r;
            pointwise_argmax = n;
        }
        sq += a.norm_sqr();
        sum.add(a);
        if n == next_ten {
            rankin_selberg.push((n, sq / n as f64));
            next_ten *= 10;
        }
        if n == next_two {
            partial_sums.push((n, sum.value().norm()));
            next_two *= 2;
        }
    }
    let tail: Vec<&(usize, f64)> = partial_sums.iter().filter(|(x, _)| *x >= 1 << 10).collect();
    let xs: Vec<f64> = tail.iter().map(|(x, _)| *x as f64).collect();
    let ys: Vec<f64> = tail.iter().map(|(_, v)| *v).collect();
    Ok(BoundsDiagnostics {
        pointwise_ratio,
        pointwise_argmax,
        rankin_selberg,
        partial_sums,
        partial_sum_fit: fit_power_law(&xs, &ys),
    })
}

#[cfg(test)]
/// `|sum_{n <= X} A(n,1)|` for each `X`.
pub(crate) fn partial_sum_abs(values: &[crate::Complex64], ladder: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(ladder.len());
    let mut sum = CompensatedSum::new();
    let mut n = 0;
    for &x in ladder {
        while n < x.min(values.len()) {
            sum.add(values[n]);
            n += 1;
        }
        out.push(sum.value().norm());
    }
    out
}
