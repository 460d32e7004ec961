//! The weight `H`, the character-family sums `B_k(s, m)`, the large-sieve
//! style mean value `sum_m H(m/y) |B_k(s, m)|^2`, and `psi_p`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd, is_prime};
use crate::characters::{even_primitive_characters, gauss_sum};
use crate::moments::ModuliFamily;
use crate::util::{compensated_sum, e_q, CompensatedSum};
use crate::{Error, Result};

/// `H(y) = 1 / (pi (1 + y^2))`.
pub fn h_weight(y: f64) -> f64 {
    1.0 / (PI * (1.0 + y * y))
}

/// How `eps(conj chi)^k` is read for `chi = chi1 chi2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaussConvention {
    /// `eps(conj(chi1 chi2))^k`.
    Product,
    /// `eps(conj chi1)^k eps(conj chi2)^k`.
    Factorwise,
}

/// Per-modulus residue tables `c_q[r] = sum*_chi eps(conj chi)^k chi(r)`.
#[derive(Debug, Clone)]
pub struct BkTable {
    pub k: u32,
    pub convention: GaussConvention,
    size: usize,
    moduli: Vec<u64>,
    phi: Vec<f64>,
    pairs: Vec<usize>,
    residues: Vec<Vec<Complex64>>,
}

impl BkTable {
    pub fn new(family: &ModuliFamily, k: u32, convention: GaussConvention) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyDomain("family has no members".into()));
        }
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        let mut moduli = Vec::new();
        let mut phi = Vec::new();
        let mut pairs = Vec::new();
        let mut residues = Vec::new();
        for m in &family.members {
            let q = m.q;
            let chars = even_primitive_characters(q)?;
            let mut acc = vec![CompensatedSum::new(); q as usize];
            for chi in &chars {
                let bar = chi.conj();
                let w = match convention {
                    GaussConvention::Product => gauss_sum(&bar).value.powi(k as i32),
                    GaussConvention::Factorwise => bar
                        .components()?
                        .iter()
                        .map(|c| gauss_sum(c).value.powi(k as i32))
                        .product(),
                };
                for (a, v) in acc.iter_mut().zip(chi.values()) {
                    a.add(w * v);
                }
            }
            moduli.push(q);
            phi.push(euler_phi(q)? as f64);
            pairs.push(chars.len());
            residues.push(acc.iter().map(|s| s.value()).collect());
        }
        Ok(Self {
            k,
            convention,
            size: family.len(),
            moduli,
            phi,
            pairs,
            residues,
        })
    }

    fn weights(&self, s: Complex64) -> Vec<Complex64> {
        self.moduli
            .iter()
            .zip(&self.phi)
            .map(|(&q, &phi)| (s * (q as f64).ln()).exp() / (phi * self.size as f64))
            .collect()
    }

    /// `B_k(s, m)`.
    pub fn eval(&self, s: Complex64, m: i64) -> Complex64 {
        self.eval_weighted(&self.weights(s), m)
    }

    fn eval_weighted(&self, w: &[Complex64], m: i64) -> Complex64 {
        compensated_sum(
            self.moduli
                .iter()
                .zip(w)
                .zip(&self.residues)
                .map(|((&q, w), c)| w * c[m.rem_euclid(q as i64) as usize]),
        )
    }

    /// `(1/|Q|) sum_q q^{Re s} #pairs / phi(q)`, which bounds `|B_k(s, m)|`.
    pub fn trivial_bound(&self, s: Complex64) -> f64 {
        self.moduli
            .iter()
            .zip(&self.phi)
            .zip(&self.pairs)
            .map(|((&q, &phi), &n)| (q as f64).powf(s.re) * n as f64 / phi)
            .sum::<f64>()
            / self.size as f64
    }

    /// `sum_{|m| <= m_cut} H(m/y) |B_k(s, m)|^2`.
    pub fn mean_square_truncated(&self, s: Complex64, y: f64, m_cut: u64) -> f64 {
        let w = self.weights(s);
        let terms: Vec<f64> = (-(m_cut as i64)..=m_cut as i64)
            .into_par_iter()
            .map(|m| h_weight(m as f64 / y) * self.eval_weighted(&w, m).norm_sqr())
            .collect();
        terms.iter().sum()
    }

    /// `sum_{m in Z} H(m/y) |B_k(s, m)|^2` without truncation.
    ///
    /// Each cross term `c_q[m] conj(c_q'[m])` is periodic modulo `L = lcm(q, q')`,
    /// and `sum_j H((r + jL)/y) = (y/L) sinh(b) / (cosh(b) - cos(2 pi r/L))` with `b = 2 pi y / L`.
    pub fn mean_square_exact(&self, s: Complex64, y: f64) -> f64 {
        let w = self.weights(s);
        let n = self.moduli.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let parts: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (qi, qj) = (self.moduli[i], self.moduli[j]);
                let l = qi / gcd(qi, qj) * qj;
                let b = 2.0 * PI * y / l as f64;
                let sinh_half = (0.5 * b).sinh();
                let lead = y / l as f64 * b.sinh();
                let mut acc = CompensatedSum::new();
                for r in 0..l {
                    let x = self.residues[i][(r % qi) as usize] * self.residues[j][(r % qj) as usize].conj();
                    if x == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let sin_half = (PI * r as f64 / l as f64).sin();
                    let kernel = lead / (2.0 * (sinh_half * sinh_half + sin_half * sin_half));
                    acc.add(x * kernel);
                }
                let v = (w[i] * w[j].conj() * acc.value()).re;
                if i == j {
                    v
                } else {
                    2.0 * v
                }
            })
            .collect();
        parts.iter().sum()
    }
}

/// `B_k(s, m)` for a single argument.
pub fn b_k(s: Complex64, m: i64, family: &ModuliFamily, k: u32, convention: GaussConvention) -> Result<Complex64> {
    Ok(BkTable::new(family, k, convention)?.eval(s, m))
}

pub const DEFAULT_CUT_FACTOR: f64 = 50.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LuoSweep {
    pub k: u32,
    pub s: Complex64,
    pub y: f64,
    pub scale: f64,
    pub delta: f64,
    pub size: usize,
    pub convention: GaussConvention,
    pub m_cut: u64,
    /// Truncated sum over `|m| <= m_cut`.
    pub lhs_truncated: f64,
    /// Full sum over all integers.
    pub lhs: f64,
    /// `Q^{Re s}` times `y Q^{-2} Q1^2`, `Q2^{-1/2}`, `Q^{-1} Q2`.
    pub rhs_terms: [f64; 3],
    /// The same terms with `Q1 = Q^delta`, `Q2 = Q^{1-delta}`.
    pub rhs_terms_delta: [f64; 3],
    /// `lhs / sum(rhs_terms)`.
    pub fitted_constant: f64,
}

pub fn luo_lemma_check(
    table: &BkTable,
    family: &ModuliFamily,
    s: Complex64,
    y: f64,
    m_cut: Option<u64>,
) -> Result<LuoSweep> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("y = {y} must be positive")));
    }
    let m_cut = m_cut.unwrap_or((DEFAULT_CUT_FACTOR * y).ceil() as u64);
    let q = family.scale;
    let (q1, q2) = (family.q1_bound, family.q2_bound);
    let d = family.delta;
    let pre = q.powf(s.re);
    let rhs_terms = [y * q.powi(-2) * q1 * q1, q2.powf(-0.5), q2 / q].map(|t| pre * t);
    let rhs_terms_delta = [y * q.powf(-2.0 + 2.0 * d), q.powf(-0.5 + 0.5 * d), q.powf(-d)].map(|t| pre * t);
    let lhs = table.mean_square_exact(s, y);
    Ok(LuoSweep {
        k: table.k,
        s,
        y,
        scale: q,
        delta: d,
        size: family.len(),
        convention: table.convention,
        m_cut,
        lhs_truncated: table.mean_square_truncated(s, y, m_cut),
        lhs,
        rhs_terms,
        rhs_terms_delta,
        fitted_constant: lhs / rhs_terms.iter().sum::<f64>(),
    })
}

/// `psi_p(n) = 1 - p^{-1} sum_{b mod p} e_p(b n)`: 0 if `p | n`, else 1.
pub fn psi_p(n: i64, p: u64) -> Result<u8> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(u8::from(gcd(n.unsigned_abs(), p) == 1))
}

/// `psi_p` evaluated through the exponential sum.
pub fn psi_p_exponential(n: i64, p: u64) -> Result<f64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let s = compensated_sum((0..p as i64).map(|b| e_q(b * n.rem_euclid(p as i64), p)));
    Ok(1.0 - s.re / p as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::moments::{build_family, Member};

    fn single(q1: u64, q2: u64) -> ModuliFamily {
        ModuliFamily {
            scale: (q1 * q2) as f64,
            delta: (q1 as f64).ln() / ((q1 * q2) as f64).ln(),
            q1_bound: q1 as f64,
            q2_bound: q2 as f64,
            q1_primes: vec![q1],
            q2_primes: vec![q2],
            widened: [false, false],
            members: vec![Member { q: q1 * q2, q1, q2 }],
        }
    }

    #[test]
    fn weight_values() {
        assert_eq!(h_weight(0.0), 1.0 / PI);
        assert_eq!(h_weight(1.0), 1.0 / (2.0 * PI));
        assert_eq!(h_weight(-3.5), h_weight(3.5));
    }

    #[test]
    fn pair_sum_mod_35_by_brute_force() {
        let fam = single(5, 7);
        let zero = Complex64::new(0.0, 0.0);
        let got = b_k(zero, 1, &fam, 3, GaussConvention::Product).unwrap();
        let mut expect = zero;
        let mut count = 0;
        for c1 in enumerate_characters(5).unwrap().iter().filter(|c| c.is_primitive()) {
            for c2 in enumerate_characters(7).unwrap().iter().filter(|c| c.is_primitive()) {
                let values: Vec<Complex64> = (0..35).map(|a| c1.eval(a) * c2.eval(a)).collect();
                if (values[34] - 1.0).norm() > 1e-12 {
                    continue;
                }
                count += 1;
                let tau: Complex64 = (0..35).map(|a| e_q(a, 35) * values[a as usize].conj()).sum();
                expect += (tau / 35f64.sqrt()).powi(3) * values[1];
            }
        }
        assert_eq!(count, 8);
        expect /= 24.0;
        assert!((got - expect).norm() < 1e-12, "{got} vs {expect}");
        assert!((got - Complex64::new(-0.08688847070536869, 0.0)).norm() < 1e-12, "{got}");
    }

    #[test]
    fn bk_symmetries_and_bounds() {
        let fam = build_family(50.0, 0.3).unwrap();
        for conv in [GaussConvention::Product, GaussConvention::Factorwise] {
            let t = BkTable::new(&fam, 3, conv).unwrap();
            let s = Complex64::new(0.3, 1.0);
            assert_eq!(t.eval(s, 0), Complex64::new(0.0, 0.0));
            let bound = t.trivial_bound(s);
            for m in 1..200 {
                assert!((t.eval(s, m) - t.eval(s, -m)).norm() < 1e-12);
                assert!(t.eval(s, m).norm() <= bound * (1.0 + 1e-12));
            }
        }
        let one = single(5, 7);
        let t = BkTable::new(&one, 2, GaussConvention::Product).unwrap();
        let z = Complex64::new(0.0, 0.0);
        for m in 0..50 {
            assert!((t.eval(z, m) - t.eval(z, m + 35)).norm() < 1e-14);
        }
    }

    #[test]
    fn exact_mean_square_matches_long_truncation() {
        let fam = build_family(20.0, 0.3).unwrap();
        let t = BkTable::new(&fam, 3, GaussConvention::Product).unwrap();
        let s = Complex64::new(0.0, 0.0);
        let exact = t.mean_square_exact(s, 10.0);
        let long = t.mean_square_truncated(s, 10.0, 2_000_000);
        // the neglected tail is at most max|B|^2 * 2 y^2 / (pi M)
        let tail = t.trivial_bound(s).powi(2) * 200.0 / (PI * 2e6);
        assert!((exact - long).abs() <= tail, "{exact} vs {long}");
        let short = t.mean_square_truncated(s, 10.0, 500);
        assert!(short < exact && (exact - short) / exact < 0.02);
    }

    #[test]
    fn lemma_check_forms_agree() {
        let fam = build_family(50.0, 0.3).unwrap();
        let t = BkTable::new(&fam, 3, GaussConvention::Product).unwrap();
        let r = luo_lemma_check(&t, &fam, Complex64::new(0.0, 0.0), 10.0, None).unwrap();
        assert_eq!(r.m_cut, 500);
        for (a, b) in r.rhs_terms.iter().zip(&r.rhs_terms_delta) {
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
        assert!(r.lhs > 0.0 && r.lhs.is_finite() && r.fitted_constant > 0.0);
        let tiny = luo_lemma_check(&t, &fam, Complex64::new(0.0, 0.0), 1e-3, None).unwrap();
        assert!(tiny.lhs < 1e-6 * r.lhs);
    }

    #[test]
    fn psi_both_forms() {
        assert_eq!(psi_p(6, 3).unwrap(), 0);
        assert_eq!(psi_p(7, 3).unwrap(), 1);
        for p in [2, 3, 5, 7] {
            for n in -5..=100 {
                let e = psi_p_exponential(n, p).unwrap();
                assert!((e - psi_p(n, p).unwrap() as f64).abs() < 1e-12);
            }
        }
        assert!(psi_p(5, 9).is_err());
    }
}
