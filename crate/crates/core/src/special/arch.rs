use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::log_gamma;
use crate::{Error, Result};

/// Gamma-factor data `mu` of a degree-3 form, optionally extended by the
/// degree-1 factor of an even Dirichlet character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchimedeanData {
    pub mu: [Complex64; 3],
    /// 3 for the form alone, 4 once the `Gamma(s/2)` factor is attached.
    pub degree: u8,
}

impl ArchimedeanData {
    /// Cuspidal data; the parameters must sum to zero.
    pub fn cuspidal(mu: [Complex64; 3]) -> Result<Self> {
        let sum: Complex64 = mu.iter().sum();
        if sum.norm() > 1e-12 {
            return Err(Error::Domain(format!(
                "Langlands parameters sum to {sum}, expected 0"
            )));
        }
        Ok(Self { mu, degree: 3 })
    }

    /// Accepts any parameters; a nonzero sum is logged.
    pub fn with_override(mu: [Complex64; 3]) -> Self {
        let sum: Complex64 = mu.iter().sum();
        if sum.norm() > 1e-12 {
            log::debug!("Langlands parameters {mu:?} sum to {sum}; accepted by override");
        }
        Self { mu, degree: 3 }
    }

    /// Symmetric square of a holomorphic level-one form of weight `k`:
    /// `mu = (1, k-1, k)`.
    pub fn sym2_holomorphic(k: u32) -> Self {
        let k = k as f64;
        Self {
            mu: [1.0, k - 1.0, k].map(|x| Complex64::new(x, 0.0)),
            degree: 3,
        }
    }

    pub fn real(mu: [f64; 3]) -> Result<Self> {
        Self::cuspidal(mu.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn dual(&self) -> Self {
        Self {
            mu: self.mu.map(|m| m.conj()),
            degree: self.degree,
        }
    }

    pub fn with_dirichlet_factor(&self) -> Self {
        Self {
            mu: self.mu,
            degree: 4,
        }
    }

    /// All shifts entering the product of `Gamma((s + m)/2)` factors.
    pub fn parameters(&self) -> Vec<Complex64> {
        let mut p = self.mu.to_vec();
        if self.degree == 4 {
            p.push(Complex64::new(0.0, 0.0));
        }
        p
    }

    pub fn is_real(&self) -> bool {
        self.mu.iter().all(|m| m.im == 0.0)
    }
}

/// `ln(pi^{-d s/2} prod_j Gamma((s + m_j)/2))` for the shifts `params`.
pub fn ln_gamma_factor(s: Complex64, params: &[Complex64]) -> Result<Complex64> {
    let mut acc = -(params.len() as f64) * 0.5 * PI.ln() * s;
    for &m in params {
        acc += log_gamma((s + m) * 0.5)?;
    }
    Ok(acc)
}

/// `G_pi(s) = pi^{-3s/2} prod Gamma((s + mu_i)/2)`, or its degree-4 extension.
pub fn g_pi(s: Complex64, arch: &ArchimedeanData) -> Result<Complex64> {
    Ok(ln_gamma_factor(s, &arch.parameters())?.exp())
}

/// The degree-4 factor `G_pi(s) pi^{-s/2} Gamma(s/2)`.
pub fn g_full(s: Complex64, arch: &ArchimedeanData) -> Result<Complex64> {
    g_pi(s, &arch.with_dirichlet_factor())
}
