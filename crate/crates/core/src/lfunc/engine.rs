use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::afe::{check_table, AfeKernels};
use crate::arith::{gcd, mod_inv};
use crate::characters::{gauss_sum, Character};
use crate::coeffs::GL3CoefficientTable;
use crate::special::ArchimedeanData;
use crate::util::CompensatedSum;
use crate::{Error, Result};

/// Which approximate functional equation a residue-class sum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AfeKind {
    /// `L(s, chi)`, conductor `q`, root number `eps(chi)`.
    Dirichlet,
    /// `L(s, pi x chi)`, conductor `q^3`, root number `eps(chi)^3`.
    Twisted,
    /// `L(1/2, pi x chi) L(1/2, conj chi)`, conductor `q^4`, root number `eps(chi)^2`.
    Combined,
}

impl AfeKind {
    fn root_number_power(self) -> i32 {
        match self {
            AfeKind::Dirichlet => 1,
            AfeKind::Twisted => 3,
            AfeKind::Combined => 2,
        }
    }

    fn degree(self) -> i32 {
        match self {
            AfeKind::Dirichlet => 1,
            AfeKind::Twisted => 3,
            AfeKind::Combined => 4,
        }
    }

    /// Balance `X` for the parameter `eta`: direct length `q^{d/2} X`.
    pub fn balance(self, q: u64, eta: f64) -> f64 {
        let q = q as f64;
        match self {
            AfeKind::Dirichlet => 1.0,
            AfeKind::Twisted => q.powf(-1.5 * eta),
            AfeKind::Combined => q.powf(-eta),
        }
    }
}

fn kernels(
    kind: AfeKind,
    arch: &ArchimedeanData,
    q: u64,
    eta: f64,
    s0: Complex64,
) -> Result<AfeKernels> {
    let (params, dual) = match kind {
        AfeKind::Dirichlet => (vec![Complex64::new(0.0, 0.0)], vec![Complex64::new(0.0, 0.0)]),
        AfeKind::Twisted => (arch.mu.to_vec(), arch.dual().mu.to_vec()),
        AfeKind::Combined => {
            let full = arch.with_dirichlet_factor();
            (full.parameters(), full.dual().parameters())
        }
    };
    let conductor = (q as f64).powi(kind.degree());
    AfeKernels::new(&params, &dual, s0, conductor, kind.balance(q, eta))
}

/// Largest coefficient index an evaluation will read.
pub fn required_length(
    kind: AfeKind,
    arch: &ArchimedeanData,
    q: u64,
    eta: f64,
) -> Result<usize> {
    let k = kernels(kind, arch, q, eta, Complex64::new(0.5, 0.0))?;
    Ok(match kind {
        AfeKind::Dirichlet => 0,
        _ => k.required_length(),
    })
}

/// Weighted coefficient sums split by residue class modulo `q`.
///
/// For a character `chi` mod `q` the value is
/// `sum_r chi(r) direct[r] + eps(chi)^k sum_r conj(chi(r)) dual[r]`.
#[derive(Debug, Clone)]
pub struct ModulusAfe {
    pub kind: AfeKind,
    pub q: u64,
    pub eta: f64,
    pub s0: Complex64,
    direct: Vec<Complex64>,
    dual: Vec<Complex64>,
    /// Largest summation index on either side.
    pub truncation: usize,
    /// Sum of `|coefficient * weight|`, which scales every rounding error.
    pub weight_l1: f64,
    pub error_estimate: f64,
}

fn residue_sums(
    q: u64,
    len: usize,
    mut term: impl FnMut(usize) -> Complex64,
) -> (Vec<Complex64>, f64) {
    let mut acc = vec![CompensatedSum::new(); q as usize];
    let mut l1 = 0.0;
    for n in 1..=len {
        let r = n % q as usize;
        if gcd(r as u64, q) != 1 {
            continue;
        }
        let t = term(n);
        l1 += t.norm();
        acc[r].add(t);
    }
    (acc.iter().map(|s| s.value()).collect(), l1)
}

/// `out[r] = sum_{m n^{-1} = r} c(m) w[m n - 1]` over units `m, n` with `m n <= w.len()`.
fn convolved_residue_sums(
    q: u64,
    w: &[Complex64],
    mut c: impl FnMut(usize) -> Complex64,
) -> (Vec<Complex64>, f64) {
    let qs = q as usize;
    let inv: Vec<usize> = (0..qs)
        .map(|n| mod_inv(n as u64, q).map_or(usize::MAX, |v| v as usize))
        .collect();
    let len = w.len();
    let mut acc = vec![CompensatedSum::new(); qs];
    let mut l1 = 0.0;
    for m in 1..=len {
        let rm = m % qs;
        if inv[rm] == usize::MAX {
            continue;
        }
        let cm = c(m);
        let mut row = vec![CompensatedSum::new(); qs];
        let mut any = false;
        for n in 1..=len / m {
            let rn = n % qs;
            if inv[rn] == usize::MAX {
                continue;
            }
            let t = w[m * n - 1];
            row[rm * inv[rn] % qs].add(t);
            l1 += t.norm() * cm.norm();
            any = true;
        }
        if any {
            for (a, r) in acc.iter_mut().zip(&row) {
                a.add(cm * r.value());
            }
        }
    }
    (acc.iter().map(|s| s.value()).collect(), l1)
}

impl ModulusAfe {
    /// Dirichlet `L(1/2, chi)` sums; no coefficient table involved.
    pub fn dirichlet(q: u64) -> Result<Self> {
        let s0 = Complex64::new(0.5, 0.0);
        let k = kernels(AfeKind::Dirichlet, &ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]), q, 0.0, s0)?;
        let (ld, lw) = k.lengths();
        let vw = k.direct_weights(ld);
        let ww = k.dual_weights(lw);
        let (direct, l1a) = residue_sums(q, ld, |n| vw[n - 1]);
        let (dual, l1b) = residue_sums(q, lw, |n| ww[n - 1]);
        let l1 = l1a + l1b;
        Ok(Self {
            kind: AfeKind::Dirichlet,
            q,
            eta: 0.0,
            s0,
            direct,
            dual,
            truncation: ld.max(lw),
            weight_l1: l1,
            error_estimate: k.error_bound(l1),
        })
    }

    /// `L(s0, pi x chi)` sums with conductor `q^3` and balance `q^{-3 eta/2}`.
    pub fn twisted(table: &GL3CoefficientTable, q: u64, eta: f64, s0: Complex64) -> Result<Self> {
        let k = kernels(AfeKind::Twisted, &table.arch, q, eta, s0)?;
        let (ld, lw) = k.lengths();
        check_table(table, ld.max(lw))?;
        let vw = k.direct_weights(ld);
        let ww = k.dual_weights(lw);
        let (direct, l1a) = residue_sums(q, ld, |n| table.get(n) * vw[n - 1]);
        let (dual, l1b) = residue_sums(q, lw, |n| table.get(n).conj() * ww[n - 1]);
        let l1 = l1a + l1b;
        Ok(Self {
            kind: AfeKind::Twisted,
            q,
            eta,
            s0,
            direct,
            dual,
            truncation: ld.max(lw),
            weight_l1: l1,
            error_estimate: k.error_bound(l1),
        })
    }

    /// Degree-4 sums for `L(1/2, pi x chi) L(1/2, conj chi)` with balance `q^{-eta}`.
    pub fn combined(table: &GL3CoefficientTable, q: u64, eta: f64) -> Result<Self> {
        let s0 = Complex64::new(0.5, 0.0);
        let k = kernels(AfeKind::Combined, &table.arch, q, eta, s0)?;
        let (ld, lw) = k.lengths();
        check_table(table, ld.max(lw))?;
        let vw = k.direct_weights(ld);
        let ww = k.dual_weights(lw);
        let (direct, l1a) = convolved_residue_sums(q, &vw, |m| table.get(m));
        let (dual, l1b) = convolved_residue_sums(q, &ww, |m| table.get(m).conj());
        let l1 = l1a + l1b;
        Ok(Self {
            kind: AfeKind::Combined,
            q,
            eta,
            s0,
            direct,
            dual,
            truncation: ld.max(lw),
            weight_l1: l1,
            error_estimate: k.error_bound(l1),
        })
    }

    pub fn evaluate(&self, chi: &Character) -> Result<Complex64> {
        let eps = gauss_sum(chi).value;
        self.evaluate_with_root(chi, eps)
    }

    /// As [`ModulusAfe::evaluate`] with a precomputed normalized Gauss sum.
    pub fn evaluate_with_root(&self, chi: &Character, eps: Complex64) -> Result<Complex64> {
        let (a, b) = self.evaluate_parts(chi, eps)?;
        Ok(a + b)
    }

    /// The direct sum and the root-number-weighted dual sum separately.
    pub fn evaluate_parts(&self, chi: &Character, eps: Complex64) -> Result<(Complex64, Complex64)> {
        if chi.modulus() != self.q {
            return Err(Error::Domain(format!(
                "character modulus {} does not match {}",
                chi.modulus(),
                self.q
            )));
        }
        let values = chi.values();
        let mut a = CompensatedSum::new();
        let mut b = CompensatedSum::new();
        for (r, v) in values.iter().enumerate() {
            a.add(v * self.direct[r]);
            b.add(v.conj() * self.dual[r]);
        }
        Ok((a.value(), eps.powi(self.kind.root_number_power()) * b.value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::sym2_delta_table;

    #[test]
    fn convolution_matches_direct_double_sum() {
        let q = 7;
        let w: Vec<Complex64> = (1..=60).map(|k| Complex64::new(1.0 / k as f64, k as f64)).collect();
        let c = |m: usize| Complex64::new(m as f64, -1.0);
        let (out, _) = convolved_residue_sums(q, &w, c);
        let mut expect = vec![Complex64::new(0.0, 0.0); q as usize];
        for m in 1..=60usize {
            for n in 1..=60 / m {
                if m % 7 == 0 || n % 7 == 0 {
                    continue;
                }
                let r = (m as u64 * mod_inv(n as u64, q).unwrap()) % q;
                expect[r as usize] += c(m) * w[m * n - 1];
            }
        }
        for (a, b) in out.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-10 * b.norm().max(1.0));
        }
    }

    #[test]
    fn required_length_grows_with_modulus() {
        let arch = ArchimedeanData::sym2_holomorphic(12);
        let a = required_length(AfeKind::Twisted, &arch, 5, 0.0).unwrap();
        let b = required_length(AfeKind::Twisted, &arch, 13, 0.0).unwrap();
        assert!(b > a);
        let c = required_length(AfeKind::Twisted, &arch, 13, 0.2).unwrap();
        assert!(c != b);
    }

    #[test]
    fn short_table_names_required_length() {
        let table = sym2_delta_table(50).unwrap();
        match ModulusAfe::twisted(&table, 13, 0.0, Complex64::new(0.5, 0.0)) {
            Err(Error::IncompleteData { required, available }) => {
                assert_eq!(available, 50);
                assert!(required > 50);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
