use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::table::{hecke_expand, GL3CoefficientTable, Provider};
use super::tau::tau_coefficients;
use crate::arith::sieve_primes;
use crate::special::ArchimedeanData;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gl2Source {
    /// The weight-12 level-1 form, from `tau(p)`.
    Discriminant,
    /// Eigenvalues supplied by the caller.
    User(String),
}

/// Normalized GL(2) Hecke eigenvalues `lambda(p)` at primes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GL2EigenData {
    primes: Vec<u64>,
    lambda: Vec<f64>,
    /// `lambda(p)^2`, computed exactly from integer data when available.
    lambda_sq: Vec<f64>,
    pub source: Gl2Source,
}

impl GL2EigenData {
    /// `lambda(p) = tau(p) / p^{11/2}` for every prime `p <= p_max`.
    pub fn from_tau(p_max: usize) -> Result<Self> {
        let tau = tau_coefficients(p_max)?;
        let primes = if p_max >= 2 {
            sieve_primes(p_max as u64)?.primes
        } else {
            Vec::new()
        };
        let mut lambda = Vec::with_capacity(primes.len());
        let mut lambda_sq = Vec::with_capacity(primes.len());
        for &p in &primes {
            let t = tau[p as usize - 1] as f64;
            let p11 = (p as f64).powi(11);
            lambda.push(t / p11.sqrt());
            lambda_sq.push(t * t / p11);
        }
        Ok(Self {
            primes,
            lambda,
            lambda_sq,
            source: Gl2Source::Discriminant,
        })
    }

    pub fn from_eigenvalues(primes: Vec<u64>, lambda: Vec<f64>, label: &str) -> Result<Self> {
        if primes.len() != lambda.len() || primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "eigenvalues need one value per prime, primes ascending".into(),
            ));
        }
        let lambda_sq = lambda.iter().map(|l| l * l).collect();
        Ok(Self {
            primes,
            lambda,
            lambda_sq,
            source: Gl2Source::User(label.to_string()),
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn lambda(&self, p: u64) -> Option<f64> {
        self.primes.binary_search(&p).ok().map(|i| self.lambda[i])
    }

    pub fn lambda_squared(&self, p: u64) -> Option<f64> {
        self.primes.binary_search(&p).ok().map(|i| self.lambda_sq[i])
    }

    /// Primes where `|lambda(p)| > 2`.
    pub fn deligne_violations(&self) -> Vec<u64> {
        self.primes
            .iter()
            .zip(&self.lambda)
            .filter(|(_, l)| l.abs() > 2.0 + 1e-12)
            .map(|(p, _)| *p)
            .collect()
    }
}

/// Symmetric-square coefficients `A(n,1)`, `n <= n_max`, with
/// `A(p,1) = A(1,p) = lambda(p)^2 - 1`.
pub fn sym_square_lift(lambda: &GL2EigenData, n_max: usize) -> Result<GL3CoefficientTable> {
    let values = hecke_expand(n_max, |p| {
        let sq = lambda
            .lambda_squared(p)
            .ok_or_else(|| Error::MissingData(format!("no eigenvalue at the prime {p}")))?;
        let a = Complex64::new(sq - 1.0, 0.0);
        Ok((a, a))
    })?;
    let (arch, provider) = match lambda.source {
        Gl2Source::Discriminant => (ArchimedeanData::sym2_holomorphic(12), Provider::Sym2Delta),
        Gl2Source::User(_) => (
            ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]),
            Provider::Synthetic,
        ),
    };
    GL3CoefficientTable::new(values, arch, true, provider)
}

/// The default concrete form: symmetric square of the discriminant.
pub fn sym2_delta_table(n_max: usize) -> Result<GL3CoefficientTable> {
    sym_square_lift(&GL2EigenData::from_tau(n_max)?, n_max)
}

/// Synthetic table with unitary Satake parameters
/// `{e(theta_1), e(theta_2), e(-theta_1 - theta_2)}` at every prime.
pub fn synthetic_from_angles<F>(n_max: usize, mut angles: F) -> Result<GL3CoefficientTable>
where
    F: FnMut(u64) -> (f64, f64),
{
    let values = hecke_expand(n_max, |p| {
        let (t1, t2) = angles(p);
        let a = crate::util::e(t1) + crate::util::e(t2) + crate::util::e(-t1 - t2);
        Ok((a, a.conj()))
    })?;
    let self_dual = values.iter().all(|v| v.im == 0.0);
    GL3CoefficientTable::new(
        values,
        ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]),
        self_dual,
        Provider::Synthetic,
    )
}

/// Angles drawn uniformly from a seeded stream, prime by prime.
pub fn synthetic_random(n_max: usize, seed: u64) -> Result<GL3CoefficientTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    synthetic_from_angles(n_max, |_| (rng.gen::<f64>(), rng.gen::<f64>()))
}

/// `A(n,1) = [n = 1]`.
pub fn synthetic_unit(n_max: usize) -> Result<GL3CoefficientTable> {
    if n_max == 0 {
        return Err(Error::Domain("truncation must be positive".into()));
    }
    let mut values = vec![Complex64::new(0.0, 0.0); n_max];
    values[0] = Complex64::new(1.0, 0.0);
    GL3CoefficientTable::new(
        values,
        ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]),
        true,
        Provider::Synthetic,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_fixtures() {
        let t = sym2_delta_table(64).unwrap();
        assert_eq!(t.get(2).re, -23.0 / 32.0);
        assert!((t.get(4).re - 1265.0 / 1024.0).abs() < 1e-15);
        assert!((t.get(6) - t.get(2) * t.get(3)).norm() < 1e-15);
        assert_eq!(t.provider, Provider::Sym2Delta);
        assert!(t.self_dual);
        assert!(t.values().iter().all(|v| v.im.abs() < 1e-14));
    }

    #[test]
    fn lambda_of_two() {
        let l = GL2EigenData::from_tau(10).unwrap();
        assert!((l.lambda(2).unwrap() + 24.0 / 2f64.powf(5.5)).abs() < 1e-15);
        assert_eq!(l.lambda_squared(2).unwrap(), 9.0 / 32.0);
        assert!(l.deligne_violations().is_empty());
    }

    #[test]
    fn missing_prime() {
        let l = GL2EigenData::from_eigenvalues(vec![2, 3], vec![0.5, -1.0], "test").unwrap();
        assert!(matches!(sym_square_lift(&l, 5), Err(Error::MissingData(_))));
        let t = sym_square_lift(&l, 4).unwrap();
        assert_eq!(t.provider, Provider::Synthetic);
        assert_eq!(t.get(2).re, -0.75);
    }

    #[test]
    fn synthetic_tables() {
        let u = synthetic_unit(20).unwrap();
        assert_eq!(u.get(1).re, 1.0);
        assert!(u.values()[1..].iter().all(|v| v.norm() == 0.0));
        let a = synthetic_random(100, 7).unwrap();
        let b = synthetic_random(100, 7).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_automorphic());
        for p in [2usize, 3, 5, 7] {
            assert!(a.get(p).norm() <= 3.0 + 1e-12);
        }
    }
}
