//! Approximate functional equations for Dirichlet and twisted GL(3)
//! central values, a Hurwitz-zeta oracle, and `L(1, pi)`.

mod afe;
mod engine;

pub use afe::AfeKernels;
pub use engine::{required_length, AfeKind, ModulusAfe};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::characters::Character;
use crate::coeffs::GL3CoefficientTable;
use crate::special::zeta::hurwitz_zeta_finite_part;
use crate::util::compensated_sum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Degree-3 and degree-1 expansions evaluated separately and multiplied.
    Factored,
    /// The single degree-4 expansion of the product.
    Combined,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralValue {
    pub value: Complex64,
    pub method: Method,
    pub eta: f64,
    pub truncation: usize,
    pub error_estimate: f64,
}

fn half() -> Complex64 {
    Complex64::new(0.5, 0.0)
}

fn require_even_primitive(chi: &Character) -> Result<()> {
    if !chi.is_even() || !chi.is_primitive() {
        return Err(Error::Domain(format!(
            "character {} mod {} is not even primitive",
            chi.index(),
            chi.modulus()
        )));
    }
    Ok(())
}

/// `L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q)`.
pub fn dirichlet_l_oracle(s: Complex64, chi: &Character) -> Result<Complex64> {
    if chi.is_trivial() && (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole {
            function: "dirichlet_l_oracle",
            at: s.to_string(),
        });
    }
    let q = chi.modulus();
    let qf = q as f64;
    let sum = compensated_sum((1..=q as i64).map(|a| {
        let c = chi.eval(a);
        if c.norm() == 0.0 {
            c
        } else {
            c * hurwitz_zeta_finite_part(s, a as f64 / qf)
        }
    }));
    Ok((-s * qf.ln()).exp() * sum)
}

pub fn dirichlet_l_half(chi: &Character) -> Result<CentralValue> {
    require_even_primitive(chi)?;
    let afe = ModulusAfe::dirichlet(chi.modulus())?;
    Ok(CentralValue {
        value: afe.evaluate(chi)?,
        method: Method::Factored,
        eta: 0.0,
        truncation: afe.truncation,
        error_estimate: afe.error_estimate,
    })
}

/// `L(s0, pi x chi)` from the degree-3 expansion; `s0 = 1/2` is the central value.
pub fn twisted_l_value(
    table: &GL3CoefficientTable,
    chi: &Character,
    s0: Complex64,
    eta: f64,
) -> Result<CentralValue> {
    require_even_primitive(chi)?;
    let afe = ModulusAfe::twisted(table, chi.modulus(), eta, s0)?;
    Ok(CentralValue {
        value: afe.evaluate(chi)?,
        method: Method::Factored,
        eta,
        truncation: afe.truncation,
        error_estimate: afe.error_estimate,
    })
}

pub fn twisted_l_half(table: &GL3CoefficientTable, chi: &Character, eta: f64) -> Result<CentralValue> {
    twisted_l_value(table, chi, half(), eta)
}

/// `L(1/2, pi x chi) L(1/2, conj chi)` from the combined degree-4 expansion.
pub fn product_central_value(
    table: &GL3CoefficientTable,
    chi: &Character,
    eta: f64,
) -> Result<CentralValue> {
    require_even_primitive(chi)?;
    let afe = ModulusAfe::combined(table, chi.modulus(), eta)?;
    Ok(CentralValue {
        value: afe.evaluate(chi)?,
        method: Method::Combined,
        eta,
        truncation: afe.truncation,
        error_estimate: afe.error_estimate,
    })
}

/// The same product as two separate expansions multiplied together.
pub fn product_factored(table: &GL3CoefficientTable, chi: &Character, eta: f64) -> Result<CentralValue> {
    let a = twisted_l_half(table, chi, eta)?;
    let b = dirichlet_l_half(&chi.conj())?;
    Ok(CentralValue {
        value: a.value * b.value,
        method: Method::Factored,
        eta,
        truncation: a.truncation.max(b.truncation),
        error_estimate: a.error_estimate * b.value.norm()
            + b.error_estimate * a.value.norm()
            + a.error_estimate * b.error_estimate,
    })
}

/// `L(1, pi)` by several methods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LOnePi {
    /// Smoothed series when the table has a functional equation, else the full partial sum.
    pub value: Complex64,
    pub smoothed: Option<Complex64>,
    pub smoothed_error: f64,
    /// `sum_{n <= N/2} A(n)/n` and `sum_{n <= N} A(n)/n`.
    pub partial_half: Complex64,
    pub partial_full: Complex64,
    /// Abel-summation bound on `|sum_{N/2 < n <= N} A(n)/n|` from the observed partial sums of `A`.
    pub tail_bound: f64,
    pub euler: Complex64,
    pub euler_prime_limit: u64,
    /// `|value - euler|`.
    pub gap: f64,
    pub truncation: usize,
}

pub const L_ONE_MIN_LENGTH: usize = 10_000;

/// `1 - A(p)/p + A(1,p)/p^2 - 1/p^3`, the inverse local factor at `s = 1`.
pub fn local_factor_inverse_at_1(table: &GL3CoefficientTable, p: u64) -> Result<Complex64> {
    let a = table.a(p as usize)?;
    let p = p as f64;
    Ok(1.0 - a / p + a.conj() / (p * p) - 1.0 / (p * p * p))
}

pub fn l_one_pi(table: &GL3CoefficientTable) -> Result<LOnePi> {
    table.require(L_ONE_MIN_LENGTH)?;
    let n = table.len();
    let half = n / 2;
    let mut partial = crate::util::CompensatedSum::new();
    let mut partial_half = Complex64::new(0.0, 0.0);
    let mut coeff_sum = Complex64::new(0.0, 0.0);
    let mut coeff_at_half = Complex64::new(0.0, 0.0);
    let mut max_dev: f64 = 0.0;
    for k in 1..=n {
        let a = table.get(k);
        partial.add(a / k as f64);
        coeff_sum += a;
        if k == half {
            partial_half = partial.value();
            coeff_at_half = coeff_sum;
        }
        if k > half {
            max_dev = max_dev.max((coeff_sum - coeff_at_half).norm());
        }
    }
    let partial_full = partial.value();
    let tail_bound = 2.0 * max_dev / half as f64;

    let primes = crate::arith::sieve_primes(n as u64)?;
    let mut euler = Complex64::new(1.0, 0.0);
    for &p in &primes.primes {
        euler /= local_factor_inverse_at_1(table, p)?;
    }

    let (smoothed, smoothed_error, truncation) = if table.is_automorphic() {
        let (v, e, t) = smoothed_l_one(table)?;
        (Some(v), e, t)
    } else {
        (None, tail_bound, n)
    };
    let value = smoothed.unwrap_or(partial_full);
    Ok(LOnePi {
        value,
        smoothed,
        smoothed_error,
        partial_half,
        partial_full,
        tail_bound,
        euler,
        euler_prime_limit: n as u64,
        gap: (value - euler).norm(),
        truncation,
    })
}

/// Expansion at `s = 1` with conductor 1, balanced so the direct side uses the whole table.
fn smoothed_l_one(table: &GL3CoefficientTable) -> Result<(Complex64, f64, usize)> {
    let one = Complex64::new(1.0, 0.0);
    let mu = table.arch.mu.to_vec();
    let dual_mu = table.arch.dual().mu.to_vec();
    let probe = AfeKernels::new(&mu, &dual_mu, one, 1.0, 1.0)?;
    let x = table.len() as f64 / probe.direct.cutoff();
    let k = AfeKernels::new(&mu, &dual_mu, one, 1.0, x)?;
    let (ld, lw) = k.lengths();
    let ld = ld.min(table.len());
    table.require(lw)?;
    let vw = k.direct_weights(ld);
    let ww = k.dual_weights(lw);
    let direct = compensated_sum((1..=ld).map(|n| table.get(n) * vw[n - 1]));
    let dual = compensated_sum((1..=lw).map(|n| table.get(n).conj() * ww[n - 1]));
    let l1: f64 = (1..=ld).map(|n| (table.get(n) * vw[n - 1]).norm()).sum::<f64>()
        + (1..=lw).map(|n| (table.get(n) * ww[n - 1]).norm()).sum::<f64>();
    Ok((direct + dual, k.error_bound(l1), ld.max(lw)))
}

/// `prod_i (1 - A(q_i)/q_i + A(1,q_i)/q_i^2 - 1/q_i^3) L(1, pi)`.
pub fn l_q1q2_at_1(table: &GL3CoefficientTable, l_one: Complex64, q1: u64, q2: u64) -> Result<Complex64> {
    if q1 == q2 {
        return Err(Error::Domain(format!("q1 = q2 = {q1}; distinct primes required")));
    }
    for q in [q1, q2] {
        if !is_prime(q) {
            return Err(Error::Domain(format!("{q} is not prime")));
        }
    }
    Ok(local_factor_inverse_at_1(table, q1)? * local_factor_inverse_at_1(table, q2)? * l_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_characters, even_primitive_characters};
    use crate::coeffs::{sym2_delta_table, synthetic_unit};
    use std::sync::OnceLock;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quadratic_mod5() -> Character {
        enumerate_characters(5)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_trivial() && c.eval(2).im.abs() < 1e-12)
            .unwrap()
    }

    fn sym2() -> &'static GL3CoefficientTable {
        static T: OnceLock<GL3CoefficientTable> = OnceLock::new();
        T.get_or_init(|| sym2_delta_table(1 << 17).unwrap())
    }

    #[test]
    fn oracle_quadratic_mod5() {
        let chi = quadratic_mod5();
        let v = dirichlet_l_oracle(half(), &chi).unwrap();
        assert!((v - c(0.23175094750401575588, 0.0)).norm() < 1e-12, "{v}");
        let v2 = dirichlet_l_oracle(c(2.0, 0.0), &chi).unwrap();
        assert!((v2 - c(0.70621140325974096993, 0.0)).norm() < 1e-12, "{v2}");
        let direct: f64 = (1..=1_000_000i64).map(|n| chi.eval(n).re / (n * n) as f64).sum();
        assert!((v2.re - direct).abs() < 1e-9);
        assert!(v.im.abs() < 1e-12 && v2.im.abs() < 1e-12);
    }

    #[test]
    fn oracle_odd_character_mod7() {
        let chi = enumerate_characters(7)
            .unwrap()
            .into_iter()
            .find(|c| (c.eval(3) - crate::util::e(1.0 / 6.0)).norm() < 1e-12)
            .unwrap();
        assert!(!chi.is_even());
        let v = dirichlet_l_oracle(half(), &chi).unwrap();
        assert!((v - c(0.71394334376831949286, 0.47490218277139938264)).norm() < 1e-11, "{v}");
    }

    #[test]
    fn oracle_pole_only_for_trivial() {
        let triv = enumerate_characters(5).unwrap().into_iter().find(|c| c.is_trivial()).unwrap();
        assert!(matches!(dirichlet_l_oracle(c(1.0, 0.0), &triv), Err(Error::Pole { .. })));
        // L(1, chi_5) = 2 ln(golden ratio) / sqrt 5
        let v = dirichlet_l_oracle(c(1.0, 0.0), &quadratic_mod5()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((v.re - 2.0 * phi.ln() / 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn dirichlet_afe_matches_oracle() {
        for q in [5, 7, 11, 13, 35] {
            for chi in even_primitive_characters(q).unwrap() {
                let afe = dirichlet_l_half(&chi).unwrap();
                let oracle = dirichlet_l_oracle(half(), &chi).unwrap();
                assert!((afe.value - oracle).norm() < 1e-7, "q={q}: {} vs {oracle}", afe.value);
                let conj = dirichlet_l_half(&chi.conj()).unwrap();
                assert!((conj.value - afe.value.conj()).norm() < 1e-10);
            }
        }
        let odd = enumerate_characters(7).unwrap().into_iter().find(|c| !c.is_even()).unwrap();
        assert!(matches!(dirichlet_l_half(&odd), Err(Error::Domain(_))));
    }

    #[test]
    fn twisted_balance_invariance_and_reality() {
        let table = sym2();
        for chi in even_primitive_characters(13).unwrap() {
            let v: Vec<_> = [-0.2, 0.0, 0.2]
                .iter()
                .map(|&eta| twisted_l_half(table, &chi, eta).unwrap().value)
                .collect();
            assert!((v[0] - v[1]).norm() < 1e-6 && (v[2] - v[1]).norm() < 1e-6, "{v:?}");
            let conj = twisted_l_half(table, &chi.conj(), 0.0).unwrap().value;
            assert!((conj - v[1].conj()).norm() < 1e-10);
            if chi.values().iter().all(|z| z.im.abs() < 1e-12) {
                assert!(v[1].im.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn twisted_at_two_matches_series() {
        let table = sym2();
        let chi = &even_primitive_characters(13).unwrap()[1];
        let afe = twisted_l_value(table, chi, c(2.0, 0.0), 0.0).unwrap();
        let series = compensated_sum((1..=table.len()).map(|n| table.get(n) * chi.eval(n as i64) / (n * n) as f64));
        assert!((afe.value - series).norm() < 1e-8, "{} vs {series}", afe.value);
    }

    #[test]
    fn combined_matches_factored() {
        let table = sym2();
        for chi in even_primitive_characters(13).unwrap() {
            let comb = product_central_value(table, &chi, 0.0).unwrap();
            let fact = product_factored(table, &chi, 0.0).unwrap();
            assert!((comb.value - fact.value).norm() < 1e-6, "{} vs {}", comb.value, fact.value);
            let shifted = product_central_value(table, &chi, 0.1).unwrap();
            assert!((shifted.value - comb.value).norm() < 1e-6);
        }
    }

    #[test]
    fn synthetic_tables_are_refused() {
        let table = synthetic_unit(100_000).unwrap();
        let chi = &even_primitive_characters(5).unwrap()[0];
        assert!(matches!(twisted_l_half(&table, chi, 0.0), Err(Error::NonAutomorphic(_))));
        assert!(matches!(product_central_value(&table, chi, 0.0), Err(Error::NonAutomorphic(_))));
        let l = l_one_pi(&table).unwrap();
        assert_eq!(l.value, c(1.0, 0.0));
        assert!(l.smoothed.is_none());
    }

    #[test]
    fn l_one_pi_methods_agree() {
        let table = sym2();
        let l = l_one_pi(table).unwrap();
        assert!((l.partial_full - l.partial_half).norm() < l.tail_bound);
        assert!((l.value - l.partial_full).norm() < l.tail_bound);
        assert!(l.gap < 1e-4, "gap {}", l.gap);
        assert!(l.value.im.abs() < 1e-12);
    }

    #[test]
    fn local_factors() {
        let table = sym2();
        let l = l_one_pi(table).unwrap().value;
        let v = l_q1q2_at_1(table, l, 101, 103).unwrap();
        let back = v / (local_factor_inverse_at_1(table, 101).unwrap() * local_factor_inverse_at_1(table, 103).unwrap());
        assert!((back - l).norm() < 1e-12);
        assert!((local_factor_inverse_at_1(table, 9973).unwrap() - 1.0).norm() < 1e-3);
        assert!(l_q1q2_at_1(table, l, 7, 7).is_err());
        assert!(matches!(
            l_q1q2_at_1(table, l, 7, 1_000_003),
            Err(Error::IncompleteData { .. })
        ));
    }
}
