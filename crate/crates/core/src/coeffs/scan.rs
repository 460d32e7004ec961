use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::GL3CoefficientTable;
use crate::util::{fit_power_law, CompensatedSum, PowerFit};
use crate::{Error, Result};

/// `|sum_{n <= X} A(n,1) e(nx)|` over a ladder of `X` and a grid of `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistScanReport {
    pub ladder: Vec<usize>,
    pub grid: Vec<f64>,
    /// `values[i][j]` is the sum at `x = grid[i]`, `X = ladder[j]`.
    pub values: Vec<Vec<f64>>,
    pub per_x_fits: Vec<Option<PowerFit>>,
    /// Supremum over the grid at each `X`.
    pub sup: Vec<f64>,
    pub sup_fit: Option<PowerFit>,
    /// `exponent - 1/2` of the supremum fit.
    pub measured_a: Option<f64>,
}

/// `k / n` for `k = 0..n`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / n as f64).collect()
}

/// `n` seeded uniform points in `[0, 1)`, sorted.
pub fn random_grid(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    g.sort_by(f64::total_cmp);
    g
}

pub fn additive_twist_scan(
    table: &GL3CoefficientTable,
    ladder: &[usize],
    grid: &[f64],
) -> Result<TwistScanReport> {
    if grid.is_empty() || ladder.is_empty() {
        return Err(Error::Domain("twist scan needs a non-empty grid and ladder".into()));
    }
    if grid.iter().any(|x| !(0.0..1.0).contains(x)) {
        return Err(Error::Domain("grid points must lie in [0, 1)".into()));
    }
    if ladder.windows(2).any(|w| w[0] >= w[1]) || ladder[0] == 0 {
        return Err(Error::Domain("ladder must be positive and ascending".into()));
    }
    table.require(*ladder.last().expect("non-empty"))?;
    let values: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&x| {
            let mut out = Vec::with_capacity(ladder.len());
            let mut sum = CompensatedSum::new();
            let mut n = 0usize;
            for &big_x in ladder {
                while n < big_x {
                    n += 1;
                    let phase = ((n as f64) * x).rem_euclid(1.0);
                    sum.add(table.get(n) * crate::util::e(phase));
                }
                out.push(sum.value().norm());
            }
            out
        })
        .collect();
    let xs: Vec<f64> = ladder.iter().map(|&x| x as f64).collect();
    let per_x_fits = values.iter().map(|v| fit_power_law(&xs, v)).collect();
    let sup: Vec<f64> = (0..ladder.len())
        .map(|j| values.iter().map(|v| v[j]).fold(0.0, f64::max))
        .collect();
    let sup_fit = fit_power_law(&xs, &sup);
    Ok(TwistScanReport {
        ladder: ladder.to_vec(),
        grid: grid.to_vec(),
        values,
        per_x_fits,
        measured_a: sup_fit.map(|f| f.exponent - 0.5),
        sup,
        sup_fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::bounds::partial_sum_abs;
    use crate::coeffs::sym2_delta_table;
    use crate::Complex64;

    #[test]
    fn zero_frequency_is_plain_partial_sum() {
        let t = sym2_delta_table(4096).unwrap();
        let ladder = [256, 1024, 4096];
        let r = additive_twist_scan(&t, &ladder, &[0.0, 0.5]).unwrap();
        let plain = partial_sum_abs(t.values(), &ladder);
        for j in 0..3 {
            assert!((r.values[0][j] - plain[j]).abs() < 1e-12 * plain[j].max(1.0));
        }
        let alt: Complex64 = (1..=4096)
            .map(|n| t.get(n) * if n % 2 == 0 { 1.0 } else { -1.0 })
            .sum();
        assert!((r.values[1][2] - alt.norm()).abs() < 1e-9 * alt.norm().max(1.0));
        assert!(r.sup.iter().zip(&plain).all(|(s, p)| s >= p));
    }

    #[test]
    fn invalid_inputs() {
        let t = sym2_delta_table(100).unwrap();
        assert!(additive_twist_scan(&t, &[10], &[]).is_err());
        assert!(additive_twist_scan(&t, &[10], &[1.0]).is_err());
        assert!(additive_twist_scan(&t, &[20, 10], &[0.0]).is_err());
        assert!(additive_twist_scan(&t, &[200], &[0.0]).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(uniform_grid(4), vec![0.0, 0.25, 0.5, 0.75]);
        let g = random_grid(64, 1);
        assert_eq!(g, random_grid(64, 1));
        assert!(g.iter().all(|x| (0.0..1.0).contains(x)));
    }
}
