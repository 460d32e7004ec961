use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, mobius, smallest_prime_factors};
use crate::special::ArchimedeanData;
use crate::{Error, Result};

/// Where a coefficient table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provider {
    /// Symmetric square of the weight-12 discriminant form.
    Sym2Delta,
    /// Read from a cache file; trusted to be automorphic.
    Imported,
    /// Hand-chosen Satake data; satisfies the Hecke relations but no
    /// functional equation.
    Synthetic,
}

impl Provider {
    pub fn label(&self) -> &'static str {
        match self {
            Provider::Sym2Delta => "sym2delta",
            Provider::Imported => "import",
            Provider::Synthetic => "synthetic",
        }
    }
}

/// `A(n,1)` for `1 <= n <= N` with the archimedean data of the form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GL3CoefficientTable {
    values: Vec<Complex64>,
    pub arch: ArchimedeanData,
    /// `A(1,n) = A(n,1)` and the coefficients are real.
    pub self_dual: bool,
    pub provider: Provider,
}

impl GL3CoefficientTable {
    /// Wraps `values[k] = A(k+1, 1)`; requires `A(1,1) = 1`.
    pub fn new(
        values: Vec<Complex64>,
        arch: ArchimedeanData,
        self_dual: bool,
        provider: Provider,
    ) -> Result<Self> {
        match values.first() {
            None => return Err(Error::EmptyDomain("coefficient table is empty".into())),
            Some(a1) if (a1 - 1.0).norm() > 1e-12 => {
                return Err(Error::Normalization(format!("A(1,1) = {a1}, expected 1")))
            }
            _ => {}
        }
        Ok(Self {
            values,
            arch,
            self_dual,
            provider,
        })
    }

    /// Truncation `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_automorphic(&self) -> bool {
        self.provider != Provider::Synthetic
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn require(&self, n: usize) -> Result<()> {
        if n > self.values.len() {
            return Err(Error::IncompleteData {
                required: n,
                available: self.values.len(),
            });
        }
        Ok(())
    }

    /// `A(n,1)`.
    pub fn a(&self, n: usize) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::Domain("coefficients are indexed from 1".into()));
        }
        self.require(n)?;
        Ok(self.values[n - 1])
    }

    /// `A(1,n) = conj(A(n,1))`.
    pub fn a_dual(&self, n: usize) -> Result<Complex64> {
        Ok(self.a(n)?.conj())
    }

    /// Unchecked `A(n,1)` for `1 <= n <= N`.
    #[inline]
    pub fn get(&self, n: usize) -> Complex64 {
        self.values[n - 1]
    }

    pub fn truncated(&self, n: usize) -> Result<Self> {
        self.require(n)?;
        Ok(Self {
            values: self.values[..n].to_vec(),
            ..self.clone()
        })
    }
}

/// Extends local data to all `n <= n_max` via the prime-power recursion
/// `A(p^k) = A(p) A(p^{k-1}) - A(1,p) A(p^{k-2}) + A(p^{k-3})` and
/// multiplicativity. `local(p)` returns `(A(p,1), A(1,p))`.
pub fn hecke_expand<F>(n_max: usize, mut local: F) -> Result<Vec<Complex64>>
where
    F: FnMut(u64) -> Result<(Complex64, Complex64)>,
{
    if n_max == 0 {
        return Err(Error::Domain("truncation must be positive".into()));
    }
    let spf = smallest_prime_factors(n_max);
    let zero = Complex64::new(0.0, 0.0);
    let mut a = vec![zero; n_max + 1];
    a[1] = Complex64::new(1.0, 0.0);
    let mut dual_at_prime = vec![zero; n_max + 1];
    for n in 2..=n_max {
        let p = spf[n] as usize;
        if p == n {
            let (ap, a1p) = local(p as u64)?;
            a[n] = ap;
            dual_at_prime[p] = a1p;
            continue;
        }
        let mut m = n;
        let mut pk = 1;
        while m % p == 0 {
            m /= p;
            pk *= p;
        }
        if m > 1 {
            a[n] = a[pk] * a[m];
        } else {
            let prev = |e: usize| if e >= 1 { a[e] } else { zero };
            let a3 = if pk >= p * p * p {
                a[pk / (p * p * p)]
            } else {
                zero
            };
            a[n] = a[p] * prev(pk / p) - dual_at_prime[p] * prev(pk / (p * p)) + a3;
        }
    }
    a.remove(0);
    Ok(a)
}

/// `A(m,n) = sum_{d | (m,n)} mu(d) A(m/d, 1) A(1, n/d)`, with `A(m,-n) = A(m,n)`.
pub fn coefficient_amn(table: &GL3CoefficientTable, m: i64, n: i64) -> Result<Complex64> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("A(m,n) needs nonzero indices".into()));
    }
    let (m, n) = (m.unsigned_abs(), n.unsigned_abs());
    table.require(m.max(n) as usize)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for d in divisors(gcd(m, n))? {
        let mu = mobius(d)?;
        if mu != 0 {
            acc += mu as f64 * table.get((m / d) as usize) * table.get((n / d) as usize).conj();
        }
    }
    Ok(acc)
}
