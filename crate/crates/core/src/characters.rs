//! Dirichlet characters modulo a prime or a product of two distinct primes.
//!
//! A character is stored as one exponent per prime factor `p_i`: its value at
//! the smallest primitive root `g_i` of `p_i` is `e(k_i / (p_i - 1))`. Values
//! are produced from the exact exponent sum, so parity, conjugation and
//! primitivity are integer computations.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{self, DlogTable};
use crate::util::{compensated_sum, e_q};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug)]
struct PrimeComponent {
    p: u64,
    /// `None` for `p = 2`, whose unit group is trivial.
    dlog: Option<Arc<DlogTable>>,
}

impl PrimeComponent {
    fn order(&self) -> u64 {
        self.p - 1
    }

    fn log(&self, n: u64) -> u64 {
        match &self.dlog {
            Some(t) => t.log(n).expect("unit residue") as u64,
            None => 0,
        }
    }
}

/// The dual group of `(Z/qZ)^*` together with the discrete-log data it needs.
#[derive(Debug)]
pub struct CharacterGroup {
    modulus: u64,
    components: Vec<PrimeComponent>,
    /// Common denominator of all character values (lcm of the component orders).
    denominator: u64,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let factors = arith::factorize(q);
        let supported = q >= 2
            && factors.iter().all(|&(_, k)| k == 1)
            && (1..=2).contains(&factors.len());
        if !supported {
            return Err(Error::Domain(format!(
                "modulus {q} is neither a prime nor a product of two distinct primes"
            )));
        }
        let components = factors
            .into_iter()
            .map(|(p, _)| {
                let dlog = if p == 2 {
                    None
                } else {
                    Some(arith::dlog_table(p)?)
                };
                Ok(PrimeComponent { p, dlog })
            })
            .collect::<Result<Vec<_>>>()?;
        let denominator = components
            .iter()
            .map(PrimeComponent::order)
            .fold(1, |acc, o| acc / arith::gcd(acc, o) * o);
        Ok(Arc::new(Self {
            modulus: q,
            components,
            denominator,
        }))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn primes(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.p).collect()
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(PrimeComponent::order).product()
    }

    fn make(self: &Arc<Self>, exponents: Vec<u64>) -> Character {
        let index = exponents
            .iter()
            .zip(&self.components)
            .rev()
            .fold(0u64, |acc, (&k, c)| acc * c.order() + k) as usize;
        let conductor = exponents
            .iter()
            .zip(&self.components)
            .filter(|(&k, _)| k != 0)
            .map(|(_, c)| c.p)
            .product();
        // chi(-1) = (-1)^(sum of exponents) because log(-1) = (p-1)/2
        let parity = if exponents.iter().sum::<u64>() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        Character {
            group: Arc::clone(self),
            exponents,
            parity,
            conductor,
            index,
        }
    }

    /// All `phi(q)` characters, ordered by [`Character::index`].
    pub fn characters(self: &Arc<Self>) -> Vec<Character> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for idx in 0..self.order() {
            let mut rest = idx;
            let exps = self
                .components
                .iter()
                .map(|c| {
                    let k = rest % c.order();
                    rest /= c.order();
                    k
                })
                .collect();
            out.push(self.make(exps));
        }
        out
    }

    /// Exponent numerator `sum k_i log_i(n) * (D / (p_i - 1)) mod D` for a unit `n`.
    fn numerator(&self, exponents: &[u64], n: u64) -> u64 {
        let d = self.denominator;
        exponents
            .iter()
            .zip(&self.components)
            .map(|(&k, c)| {
                let l = c.log(n % c.p);
                ((k * l) % c.order()) * (d / c.order())
            })
            .sum::<u64>()
            % d
    }
}

/// A Dirichlet character `chi mod q`.
#[derive(Clone)]
pub struct Character {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
    parity: Parity,
    conductor: u64,
    index: usize,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Character")
            .field("modulus", &self.modulus())
            .field("exponents", &self.exponents)
            .field("parity", &self.parity)
            .field("conductor", &self.conductor)
            .finish()
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for Character {}

impl Character {
    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    /// Position in [`enumerate_characters`] order.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &Arc<CharacterGroup> {
        &self.group
    }

    /// Recomputes the parity from the character value at `-1`.
    pub fn parity_from_value(&self) -> Parity {
        if self.eval(-1).re > 0.0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn conj(&self) -> Character {
        let exps = self
            .exponents
            .iter()
            .zip(&self.group.components)
            .map(|(&k, c)| (c.order() - k) % c.order())
            .collect();
        self.group.make(exps)
    }

    /// Pointwise product of two characters with the same modulus.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.modulus() != other.modulus() {
            return Err(Error::Domain(format!(
                "characters of moduli {} and {} cannot be multiplied",
                self.modulus(),
                other.modulus()
            )));
        }
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(&self.group.components)
            .map(|((&a, &b), c)| (a + b) % c.order())
            .collect();
        Ok(self.group.make(exps))
    }

    /// The factors `chi_i mod p_i` with `chi = prod chi_i`.
    pub fn components(&self) -> Result<Vec<Character>> {
        self.group
            .components
            .iter()
            .zip(&self.exponents)
            .map(|(c, &k)| {
                let g = CharacterGroup::new(c.p)?;
                Ok(g.make(vec![k]))
            })
            .collect()
    }

    pub fn eval(&self, n: i64) -> Complex64 {
        let q = self.modulus();
        let r = n.rem_euclid(q as i64) as u64;
        if arith::gcd(r, q) != 1 {
            return Complex64::new(0.0, 0.0);
        }
        let num = self.group.numerator(&self.exponents, r);
        e_q(num as i64, self.group.denominator)
    }

    /// Values at the residues `0..q`.
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.modulus() as i64).map(|n| self.eval(n)).collect()
    }
}

/// All characters modulo `q` (a prime or a product of two distinct primes).
pub fn enumerate_characters(q: u64) -> Result<Vec<Character>> {
    Ok(CharacterGroup::new(q)?.characters())
}

/// Even primitive characters modulo `q`.
///
/// For `q = q1 q2` these are exactly the products `chi1 chi2` with both
/// factors primitive and `chi1 chi2` even.
pub fn even_primitive_characters(q: u64) -> Result<Vec<Character>> {
    Ok(enumerate_characters(q)?
        .into_iter()
        .filter(|c| c.is_even() && c.is_primitive())
        .collect())
}

/// Normalized Gauss sum `eps(chi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub value: Complex64,
}

/// `eps(chi) = q^(-1/2) sum_{a mod q} e_q(a) chi(a)`.
pub fn gauss_sum(chi: &Character) -> GaussSumValue {
    let q = chi.modulus();
    let sum = compensated_sum((0..q as i64).map(|a| e_q(a, q) * chi.eval(a)));
    GaussSumValue {
        value: sum / (q as f64).sqrt(),
    }
}

/// Both sides of an orthogonality relation at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityCheck {
    pub q1: u64,
    pub q2: u64,
    pub n: i64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub deviation: f64,
}

fn check_pair(q1: u64, q2: u64, n: i64) -> Result<u64> {
    if q1 == q2 {
        return Err(Error::Domain(format!("q1 = q2 = {q1}; distinct primes required")));
    }
    for p in [q1, q2] {
        if !arith::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
    }
    let q = q1 * q2;
    if arith::gcd(n.rem_euclid(q as i64) as u64, q) != 1 {
        return Err(Error::Domain(format!("{n} is not coprime to {q}")));
    }
    Ok(q)
}

fn congruent_pm1(n: i64, m: u64) -> bool {
    let r = n.rem_euclid(m as i64) as u64;
    r == 1 % m || r == m - 1
}

/// First even-primitive orthogonality relation:
/// `(2/phi(q)) sum* chi1 chi2 (n)` against
/// `1[n = +-1 (q)] - 1[n = +-1 (q2)]/phi(q1) - 1[n = +-1 (q1)]/phi(q2) + 2/phi(q)`.
pub fn verify_orthogonality_first(q1: u64, q2: u64, n: i64) -> Result<OrthogonalityCheck> {
    let q = check_pair(q1, q2, n)?;
    let phi = |m: u64| arith::euler_phi(m).map(|v| v as f64);
    let chars = even_primitive_characters(q)?;
    let lhs = compensated_sum(chars.iter().map(|c| c.eval(n))) * (2.0 / phi(q)?);
    let ind = |m: u64| if congruent_pm1(n, m) { 1.0 } else { 0.0 };
    let rhs = ind(q) - ind(q2) / phi(q1)? - ind(q1) / phi(q2)? + 2.0 / phi(q)?;
    let rhs = Complex64::new(rhs, 0.0);
    Ok(OrthogonalityCheck {
        q1,
        q2,
        n,
        lhs,
        rhs,
        deviation: (lhs - rhs).norm(),
    })
}

/// Second relation, with both candidate right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondOrthogonality {
    pub q1: u64,
    pub q2: u64,
    pub r: i64,
    pub lhs: Complex64,
    /// `q^(-1/2) sum_alpha sum_{d|q} phi(d)^(-1) e_{q/d}(alpha r)`.
    pub rhs_literal: Complex64,
    /// Same sum with `e_{q/d}(alpha r dbar)`, `dbar = d^(-1) mod q/d`.
    pub rhs_crt: Complex64,
    pub deviation_literal: f64,
    pub deviation_crt: f64,
}

impl SecondOrthogonality {
    pub fn literal(&self) -> OrthogonalityCheck {
        OrthogonalityCheck {
            q1: self.q1,
            q2: self.q2,
            n: self.r,
            lhs: self.lhs,
            rhs: self.rhs_literal,
            deviation: self.deviation_literal,
        }
    }

    pub fn crt(&self) -> OrthogonalityCheck {
        OrthogonalityCheck {
            rhs: self.rhs_crt,
            deviation: self.deviation_crt,
            ..self.literal()
        }
    }
}

/// `(2/phi(q)) sum* eps(conj(chi1 chi2)) chi1 chi2 (r)` against the exponential
/// sum over divisors of `q`, evaluated both literally and with the CRT
/// multiplier `dbar`.
pub fn verify_orthogonality_second(q1: u64, q2: u64, r: i64) -> Result<SecondOrthogonality> {
    let q = check_pair(q1, q2, r)?;
    let phi_q = arith::euler_phi(q)? as f64;
    let chars = even_primitive_characters(q)?;
    let lhs = compensated_sum(
        chars
            .iter()
            .map(|c| gauss_sum(&c.conj()).value * c.eval(r)),
    ) * (2.0 / phi_q);
    let mut literal = Vec::new();
    let mut crt = Vec::new();
    for d in arith::divisors(q)? {
        let qd = q / d;
        let dbar = arith::mod_inv(d % qd.max(1), qd).unwrap_or(0) as i64;
        let w = 1.0 / arith::euler_phi(d)? as f64;
        for alpha in [1i64, -1] {
            literal.push(e_q(alpha * r, qd) * w);
            crt.push(e_q((alpha * r).rem_euclid(qd as i64) * dbar, qd) * w);
        }
    }
    let norm = 1.0 / (q as f64).sqrt();
    let rhs_literal = compensated_sum(literal) * norm;
    let rhs_crt = compensated_sum(crt) * norm;
    Ok(SecondOrthogonality {
        q1,
        q2,
        r,
        lhs,
        rhs_literal,
        rhs_crt,
        deviation_literal: (lhs - rhs_literal).norm(),
        deviation_crt: (lhs - rhs_crt).norm(),
    })
}

/// `eps(chi)` against `chi1(q2) chi2(q1) eps(chi1) eps(chi2)` for `chi = chi1 chi2`.
pub fn gauss_crt_check(chi: &Character) -> Result<OrthogonalityCheck> {
    let primes = chi.group().primes();
    if primes.len() != 2 {
        return Err(Error::Domain(format!(
            "modulus {} is not a product of two primes",
            chi.modulus()
        )));
    }
    let parts = chi.components()?;
    let (q1, q2) = (primes[0], primes[1]);
    let lhs = gauss_sum(chi).value;
    let rhs = parts[0].eval(q2 as i64)
        * parts[1].eval(q1 as i64)
        * gauss_sum(&parts[0]).value
        * gauss_sum(&parts[1]).value;
    Ok(OrthogonalityCheck {
        q1,
        q2,
        n: chi.index() as i64,
        lhs,
        rhs,
        deviation: (lhs - rhs).norm(),
    })
}
