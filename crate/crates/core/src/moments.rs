//! Moduli families `q = q1 q2` and the averaged first moment
//! `S_Q = (2/|Q|) sum_q phi(q)^{-1} sum*_chi L(1/2, pi x chi) L(1/2, conj chi)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, sieve_primes};
use crate::characters::{even_primitive_characters, gauss_sum};
use crate::coeffs::GL3CoefficientTable;
use crate::lfunc::{l_one_pi, l_q1q2_at_1, LOnePi, Method, ModulusAfe};
use crate::util::{fit_power_law, PowerFit};
use crate::{Error, Result};

const WINDOW_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub q: u64,
    pub q1: u64,
    pub q2: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliFamily {
    pub scale: f64,
    pub delta: f64,
    pub q1_bound: f64,
    pub q2_bound: f64,
    /// Prime windows actually used, inclusive.
    pub q1_primes: Vec<u64>,
    pub q2_primes: Vec<u64>,
    /// Set when an open window held no prime and was widened to its integer hull.
    pub widened: [bool; 2],
    /// Sorted by `q`.
    pub members: Vec<Member>,
}

impl ModuliFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_modulus(&self) -> u64 {
        self.members.iter().map(|m| m.q).max().unwrap_or(0)
    }
}

fn window_primes(bound: f64, side: &str) -> Result<(Vec<u64>, bool)> {
    let hi = (2.0 * bound).ceil() as u64 + 1;
    let table = sieve_primes(hi.max(2))?;
    let strict = table.in_open_interval(bound * (1.0 + WINDOW_SLACK), 2.0 * bound * (1.0 - WINDOW_SLACK));
    if !strict.is_empty() {
        return Ok((strict, false));
    }
    let (lo, hi) = (bound.floor(), (2.0 * bound).ceil());
    let hull: Vec<u64> = table
        .primes
        .iter()
        .copied()
        .filter(|&p| p as f64 >= lo && p as f64 <= hi)
        .collect();
    if hull.is_empty() {
        return Err(Error::Construction(format!(
            "{side} window ({bound}, {}) contains no prime",
            2.0 * bound
        )));
    }
    Ok((hull, true))
}

/// Products `q1 q2` of distinct primes with `q1` in `(Q^delta, 2 Q^delta)` and
/// `q2` in `(Q^{1-delta}, 2 Q^{1-delta})`.
pub fn build_family(scale: f64, delta: f64) -> Result<ModuliFamily> {
    if !(scale >= 20.0) {
        return Err(Error::Construction(format!("scale Q = {scale} below 20")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Construction(format!("delta = {delta} outside (0, 1/2)")));
    }
    let q1_bound = scale.powf(delta);
    let q2_bound = scale.powf(1.0 - delta);
    let (q1_primes, w1) = window_primes(q1_bound, "q1")?;
    let (q2_primes, w2) = window_primes(q2_bound, "q2")?;
    let mut members: Vec<Member> = q1_primes
        .iter()
        .flat_map(|&q1| {
            q2_primes
                .iter()
                .filter(move |&&q2| q2 != q1)
                .map(move |&q2| Member { q: q1 * q2, q1, q2 })
        })
        .collect();
    members.sort_by_key(|m| (m.q, m.q1));
    members.dedup_by_key(|m| m.q);
    if members.is_empty() {
        return Err(Error::Construction(format!(
            "no pair of distinct primes for Q = {scale}, delta = {delta}"
        )));
    }
    Ok(ModuliFamily {
        scale,
        delta,
        q1_bound,
        q2_bound,
        q1_primes,
        q2_primes,
        widened: [w1, w2],
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusContribution {
    pub member: Member,
    /// Number of even primitive characters summed.
    pub admissible: usize,
    /// `sum*_chi L(1/2, pi x chi) L(1/2, conj chi)`, unnormalized.
    pub sum: Complex64,
    pub s0: Option<Complex64>,
    pub s1: Option<Complex64>,
    /// `sum*_chi L(1/2, pi x chi)`.
    pub twisted_sum: Option<Complex64>,
    /// `L_{q1,q2}(1)`.
    pub local_main_term: Complex64,
    pub truncation: usize,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub scale: f64,
    pub delta: f64,
    pub eta: f64,
    pub method: Method,
    pub size: usize,
    pub s_q: Complex64,
    pub s0: Option<Complex64>,
    pub s1: Option<Complex64>,
    pub l_one_pi: Complex64,
    /// `(1/|Q|) sum_q L_{q1,q2}(1)`.
    pub diagonal_literal: Complex64,
    /// `(2/|Q|) sum_q (#admissible / phi(q)) L_{q1,q2}(1)`, normalized like `S_Q`.
    pub diagonal: Complex64,
    pub residual: f64,
    pub error_estimate: f64,
    pub max_truncation: usize,
    /// Moduli with no admissible character; they contribute 0.
    pub empty_moduli: Vec<u64>,
    pub per_modulus: Vec<ModulusContribution>,
}

fn modulus_contribution(
    member: Member,
    table: &GL3CoefficientTable,
    eta: f64,
    method: Method,
    l_one: Complex64,
    with_twisted: bool,
) -> Result<ModulusContribution> {
    let q = member.q;
    let chars = even_primitive_characters(q)?;
    let local_main_term = l_q1q2_at_1(table, l_one, member.q1, member.q2)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut twisted_sum = None;
    let (mut s0, mut s1) = (None, None);
    let (truncation, error_estimate);
    match method {
        Method::Combined => {
            let afe = ModulusAfe::combined(table, q, eta)?;
            let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for chi in &chars {
                let (d, u) = afe.evaluate_parts(chi, gauss_sum(chi).value)?;
                a += d;
                b += u;
            }
            sum = a + b;
            s0 = Some(a);
            s1 = Some(b);
            truncation = afe.truncation;
            error_estimate = afe.error_estimate * chars.len() as f64;
            if with_twisted {
                let t = ModulusAfe::twisted(table, q, eta, Complex64::new(0.5, 0.0))?;
                let mut acc = Complex64::new(0.0, 0.0);
                for chi in &chars {
                    acc += t.evaluate(chi)?;
                }
                twisted_sum = Some(acc);
            }
        }
        Method::Factored => {
            let t = ModulusAfe::twisted(table, q, eta, Complex64::new(0.5, 0.0))?;
            let d = ModulusAfe::dirichlet(q)?;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            for chi in &chars {
                let a = t.evaluate(chi)?;
                let b = d.evaluate(&chi.conj())?;
                sum += a * b;
                acc += a;
                err += t.error_estimate * b.norm() + d.error_estimate * a.norm();
            }
            twisted_sum = Some(acc);
            truncation = t.truncation.max(d.truncation);
            error_estimate = err;
        }
        Method::Oracle => {
            return Err(Error::Domain("the moment has no oracle method".into()));
        }
    }
    Ok(ModulusContribution {
        member,
        admissible: chars.len(),
        sum,
        s0,
        s1,
        twisted_sum,
        local_main_term,
        truncation,
        error_estimate,
    })
}

fn contributions(
    family: &ModuliFamily,
    table: &GL3CoefficientTable,
    eta: f64,
    method: Method,
    l_one: Complex64,
    with_twisted: bool,
) -> Result<Vec<ModulusContribution>> {
    family
        .members
        .par_iter()
        .map(|&m| modulus_contribution(m, table, eta, method, l_one, with_twisted))
        .collect()
}

fn weight(family: &ModuliFamily, q: u64) -> Result<f64> {
    Ok(2.0 / (family.len() as f64 * euler_phi(q)? as f64))
}

/// Assembles the report from contributions, reducing in member order.
fn assemble(
    family: &ModuliFamily,
    eta: f64,
    method: Method,
    l_one: Complex64,
    per_modulus: Vec<ModulusContribution>,
) -> Result<MomentReport> {
    let size = family.len();
    let mut s_q = Complex64::new(0.0, 0.0);
    let (mut s0, mut s1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut diagonal = Complex64::new(0.0, 0.0);
    let mut diagonal_literal = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    for c in &per_modulus {
        let w = weight(family, c.member.q)?;
        s_q += w * c.sum;
        s0 += w * c.s0.unwrap_or_default();
        s1 += w * c.s1.unwrap_or_default();
        diagonal += w * c.admissible as f64 * c.local_main_term;
        diagonal_literal += c.local_main_term / size as f64;
        error_estimate += w * c.error_estimate;
    }
    let split = method == Method::Combined;
    if !s_q.re.is_finite() || !s_q.im.is_finite() {
        return Err(Error::Domain(format!("non-finite moment at Q = {}", family.scale)));
    }
    Ok(MomentReport {
        scale: family.scale,
        delta: family.delta,
        eta,
        method,
        size,
        s_q,
        s0: split.then_some(s0),
        s1: split.then_some(s1),
        l_one_pi: l_one,
        diagonal_literal,
        diagonal,
        residual: (s_q - l_one).norm(),
        error_estimate,
        max_truncation: per_modulus.iter().map(|c| c.truncation).max().unwrap_or(0),
        empty_moduli: per_modulus
            .iter()
            .filter(|c| c.admissible == 0)
            .map(|c| c.member.q)
            .collect(),
        per_modulus,
    })
}

/// `S_Q` for one family with a precomputed `L(1, pi)`.
pub fn moment_with_main_term(
    family: &ModuliFamily,
    table: &GL3CoefficientTable,
    eta: f64,
    method: Method,
    l_one: &LOnePi,
) -> Result<MomentReport> {
    let per = contributions(family, table, eta, method, l_one.value, false)?;
    assemble(family, eta, method, l_one.value, per)
}

pub fn moment_s_q(
    family: &ModuliFamily,
    table: &GL3CoefficientTable,
    eta: f64,
    method: Method,
) -> Result<MomentReport> {
    moment_with_main_term(family, table, eta, method, &l_one_pi(table)?)
}

/// `(S_0, S_1)` from the combined expansion.
pub fn split_s0_s1(
    family: &ModuliFamily,
    table: &GL3CoefficientTable,
    eta: f64,
) -> Result<(Complex64, Complex64)> {
    let r = moment_s_q(family, table, eta, Method::Combined)?;
    Ok((r.s0.expect("combined split"), r.s1.expect("combined split")))
}

/// `(2/|Q|) sum_q phi(q)^{-1} sum*_chi L(1/2, pi x chi)`, the average without the Dirichlet factor.
pub fn munshi_sengupta_variant(
    family: &ModuliFamily,
    table: &GL3CoefficientTable,
    eta: f64,
) -> Result<Complex64> {
    let per: Vec<Complex64> = family
        .members
        .par_iter()
        .map(|m| -> Result<Complex64> {
            let t = ModulusAfe::twisted(table, m.q, eta, Complex64::new(0.5, 0.0))?;
            let mut acc = Complex64::new(0.0, 0.0);
            for chi in even_primitive_characters(m.q)? {
                acc += t.evaluate(&chi)?;
            }
            Ok(acc * weight(family, m.q)?)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().sum())
}

/// Error exponents predicted for `S_Q - L(1, pi)` given the additive-twist exponent `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedRates {
    pub a: f64,
    /// `3a/4 - 1/8 + delta/2`.
    pub off_diagonal: f64,
    /// `-delta/2`.
    pub diagonal: f64,
    pub combined: f64,
    /// `-1/16 + 3a/8`, attained at `delta = 1/8 - 3a/4`.
    pub optimal: f64,
    pub delta_admissible: bool,
}

impl PredictedRates {
    pub fn new(a: f64, delta: f64) -> Self {
        let off_diagonal = 0.75 * a - 0.125 + 0.5 * delta;
        let diagonal = -0.5 * delta;
        Self {
            a,
            off_diagonal,
            diagonal,
            combined: off_diagonal.max(diagonal),
            optimal: -1.0 / 16.0 + 3.0 * a / 8.0,
            delta_admissible: delta < 0.25 - 1.5 * a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub delta: f64,
    pub eta: f64,
    pub rungs: Vec<MomentReport>,
    /// `sum*_chi L(1/2, pi x chi)` averages per rung.
    pub twisted_averages: Vec<Complex64>,
    pub l_one: LOnePi,
    /// Power-law fit of the residual against `Q`; `None` for a single rung.
    pub residual_fit: Option<PowerFit>,
    pub s1_fit: Option<PowerFit>,
    pub predicted: Option<PredictedRates>,
    pub notes: Vec<String>,
}

pub fn convergence_report(
    delta: f64,
    ladder: &[f64],
    table: &GL3CoefficientTable,
    eta: f64,
    method: Method,
    measured_a: Option<f64>,
) -> Result<ConvergenceReport> {
    if ladder.is_empty() {
        return Err(Error::EmptyDomain("empty Q ladder".into()));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("Q ladder must be strictly ascending".into()));
    }
    let l_one = l_one_pi(table)?;
    let mut rungs = Vec::with_capacity(ladder.len());
    let mut twisted_averages = Vec::with_capacity(ladder.len());
    for &scale in ladder {
        let family = build_family(scale, delta)?;
        let per = contributions(&family, table, eta, method, l_one.value, true)?;
        let mut avg = Complex64::new(0.0, 0.0);
        for c in &per {
            avg += weight(&family, c.member.q)? * c.twisted_sum.unwrap_or_default();
        }
        twisted_averages.push(avg);
        rungs.push(assemble(&family, eta, method, l_one.value, per)?);
    }
    let qs: Vec<f64> = rungs.iter().map(|r| r.scale).collect();
    let residuals: Vec<f64> = rungs.iter().map(|r| r.residual).collect();
    let s1: Vec<f64> = rungs.iter().map(|r| r.s1.map_or(0.0, |v| v.norm())).collect();
    let mut notes = Vec::new();
    let residual_fit = fit_power_law(&qs, &residuals);
    if residual_fit.is_none() {
        notes.push("residual slope undefined: fewer than two usable rungs".to_string());
    }
    Ok(ConvergenceReport {
        delta,
        eta,
        rungs,
        twisted_averages,
        l_one,
        residual_fit,
        s1_fit: fit_power_law(&qs, &s1),
        predicted: measured_a.map(|a| PredictedRates::new(a, delta)),
        notes,
    })
}
