//! A quick fixture suite over the library, one line per check.

use moment_lab::characters::{
    enumerate_characters, even_primitive_characters, gauss_sum, CharacterGroup, verify_orthogonality_first,
};
use moment_lab::coeffs::sym2_delta_table;
use moment_lab::lfunc::{
    dirichlet_l_half, dirichlet_l_oracle, product_central_value, product_factored, twisted_l_half,
};
use moment_lab::special::{eval_direct, ArchimedeanData, KernelSpec};
use moment_lab::Complex64;

use crate::error::{CliError, CliResult};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check {
        name,
        passed: worst.is_finite() && worst < tol,
        detail: format!("{worst:.3e} < {tol:.0e}"),
    }
}

pub fn checks() -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for n in [1i64, 2, 3, 4, 6, 8, 9, 11, 12, 13, 16, 17, 18, 19, 22, 23, 24, 26, 27, 29, 31, 32, 33, 34] {
        worst = worst.max(verify_orthogonality_first(5, 7, n)?.deviation);
    }
    out.push(check("first orthogonality identity mod 35", worst, 1e-10));

    let mut worst: f64 = 0.0;
    for q in (3..=60).filter(|&q| CharacterGroup::new(q).is_ok()) {
        for c in enumerate_characters(q)?.iter().filter(|c| c.is_primitive()) {
            worst = worst.max((gauss_sum(c).value.norm() - 1.0).abs());
        }
    }
    out.push(check("unimodular Gauss sums, moduli up to 60", worst, 1e-12));

    let table = sym2_delta_table(1 << 13)?;
    out.push(check("A(2) = -23/32", (table.a(2)? - Complex64::new(-23.0 / 32.0, 0.0)).norm(), 1e-15));

    let arch = ArchimedeanData::sym2_holomorphic(12);
    let spec = KernelSpec::afe_weight(&arch, Complex64::new(0.5, 0.0))?;
    out.push(check("V(1e-8) near 1", (eval_direct(&spec, 1e-8)?.value - 1.0).norm(), 1e-3));

    let half = Complex64::new(0.5, 0.0);
    let mut worst: f64 = 0.0;
    for q in [5, 7, 11, 13] {
        for c in even_primitive_characters(q)? {
            worst = worst.max((dirichlet_l_half(&c)?.value - dirichlet_l_oracle(half, &c)?).norm());
        }
    }
    out.push(check("degree-1 expansion against Hurwitz oracle", worst, 1e-7));

    let (mut eta_gap, mut fact_gap): (f64, f64) = (0.0, 0.0);
    for c in even_primitive_characters(13)? {
        let a = twisted_l_half(&table, &c, -0.2)?.value;
        let b = twisted_l_half(&table, &c, 0.2)?.value;
        eta_gap = eta_gap.max((a - b).norm());
        let p = product_central_value(&table, &c, 0.0)?.value;
        fact_gap = fact_gap.max((p - product_factored(&table, &c, 0.0)?.value).norm());
    }
    out.push(check("degree-3 balance invariance mod 13", eta_gap, 1e-6));
    out.push(check("degree-4 factorization mod 13", fact_gap, 1e-6));
    Ok(out)
}

pub fn selftest() -> CliResult<()> {
    let results = checks()?;
    let mut failed = 0;
    for c in &results {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(CliError::Numeric(format!("{failed} of {} self-test checks failed", results.len())));
    }
    Ok(())
}
