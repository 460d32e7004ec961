//! One function per subcommand; each parses nothing and computes nothing of
//! its own beyond calling the library and formatting the result.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use moment_lab::arith::gcd;
use moment_lab::characters::{
    enumerate_characters, gauss_crt_check, gauss_sum, verify_orthogonality_first,
    verify_orthogonality_second,
};
use moment_lab::coeffs::{
    additive_twist_scan, check_bounds, export_table, random_grid, uniform_grid,
};
use moment_lab::lfunc::{
    dirichlet_l_half, dirichlet_l_oracle, product_central_value, product_factored, required_length,
    twisted_l_half, AfeKind, CentralValue, Method,
};
use moment_lab::luo::{luo_lemma_check, BkTable};
use moment_lab::moments::{build_family, convergence_report};
use moment_lab::special::{
    eval_direct, hurwitz_zeta, log_gamma, mellin_window, BumpWindow, KernelSpec,
};
use moment_lab::Complex64;
use serde::Serialize;

use crate::config::{ConventionArg, MethodArg};
use crate::error::{CliError, CliResult};
use crate::forms::{FormSpec, ProviderKind};
use crate::output::{echo, emit, fmt_f64, render_json, CsvReport};

const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Args, Serialize)]
pub struct FormArgs {
    #[arg(long, value_enum, default_value = "sym2-delta")]
    pub provider: ProviderKind,
    /// Table length (default: what the computation needs).
    #[arg(long)]
    pub n: Option<usize>,
    /// Real Langlands parameters `mu1,mu2,mu3`.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub mu: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient file for `--provider imported`.
    #[arg(long)]
    pub import: Option<PathBuf>,
}

impl FormArgs {
    pub fn spec(&self) -> FormSpec {
        FormSpec {
            provider: self.provider,
            n: self.n,
            mu: self.mu.as_ref().map(|m| [m[0], m[1], m[2]]),
            path: self.import.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    /// Characters with exponents, parity and conductor.
    List,
    Orth1,
    /// The second identity exactly as displayed.
    Orth2,
    /// The second identity with the CRT multiplier.
    Orth2Crt,
    /// Normalized Gauss sums and the CRT factorization.
    Gauss,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CharsArgs {
    #[arg(long)]
    pub q1: u64,
    #[arg(long)]
    pub q2: Option<u64>,
    #[arg(long, value_enum, default_value = "list")]
    pub verify: Verify,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn complex_cells(z: Complex64) -> [String; 2] {
    [fmt_f64(z.re), fmt_f64(z.im)]
}

pub fn chars(a: &CharsArgs) -> CliResult<()> {
    let q = a.q1 * a.q2.unwrap_or(1);
    let pair = || a.q2.ok_or_else(|| CliError::Config("--q2 is required for this check".into()));
    let mut worst: f64 = 0.0;
    let report = match a.verify {
        Verify::List => {
            let mut r = CsvReport::new(echo(a)?, &["index", "exponents", "parity", "conductor", "primitive"]);
            for c in enumerate_characters(q)? {
                let exps: Vec<String> = c.exponents().iter().map(|e| e.to_string()).collect();
                r.push(vec![
                    c.index().to_string(),
                    exps.join(" "),
                    if c.is_even() { "even" } else { "odd" }.into(),
                    c.conductor().to_string(),
                    c.is_primitive().to_string(),
                ]);
            }
            r
        }
        Verify::Orth1 => {
            let q2 = pair()?;
            let mut r = CsvReport::new(echo(a)?, &["q1", "q2", "n", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "deviation"]);
            for n in (1..q as i64).filter(|&n| gcd(n as u64, q) == 1) {
                let c = verify_orthogonality_first(a.q1, q2, n)?;
                worst = worst.max(c.deviation);
                let mut row = vec![a.q1.to_string(), q2.to_string(), n.to_string()];
                row.extend(complex_cells(c.lhs));
                row.extend(complex_cells(c.rhs));
                row.push(fmt_f64(c.deviation));
                r.push(row);
            }
            r
        }
        Verify::Orth2 | Verify::Orth2Crt => {
            let q2 = pair()?;
            let mut r = CsvReport::new(echo(a)?, &["q1", "q2", "r", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "deviation"]);
            for n in (1..q as i64).filter(|&n| gcd(n as u64, q) == 1) {
                let s = verify_orthogonality_second(a.q1, q2, n)?;
                let c = if a.verify == Verify::Orth2 { s.literal() } else { s.crt() };
                if a.verify == Verify::Orth2Crt {
                    worst = worst.max(c.deviation);
                }
                let mut row = vec![a.q1.to_string(), q2.to_string(), n.to_string()];
                row.extend(complex_cells(c.lhs));
                row.extend(complex_cells(c.rhs));
                row.push(fmt_f64(c.deviation));
                r.push(row);
            }
            r
        }
        Verify::Gauss => {
            let mut r = CsvReport::new(echo(a)?, &["index", "primitive", "eps_re", "eps_im", "abs_eps", "crt_deviation"]);
            for c in enumerate_characters(q)? {
                let eps = gauss_sum(&c).value;
                let crt = if c.is_primitive() && a.q2.is_some() {
                    let d = gauss_crt_check(&c)?.deviation;
                    worst = worst.max(d);
                    fmt_f64(d)
                } else {
                    String::new()
                };
                if c.is_primitive() {
                    worst = worst.max((eps.norm() - 1.0).abs());
                }
                let mut row = vec![c.index().to_string(), c.is_primitive().to_string()];
                row.extend(complex_cells(eps));
                row.push(fmt_f64(eps.norm()));
                row.push(crt);
                r.push(row);
            }
            r
        }
    };
    emit(&report.render()?, a.out.as_deref())?;
    if worst > IDENTITY_TOLERANCE {
        return Err(CliError::Numeric(format!("largest deviation {worst:e} exceeds {IDENTITY_TOLERANCE:e}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub form: FormArgs,
    /// Write the table to this file.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Additive-twist grid size (0 disables the scan).
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long)]
    pub random_grid: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CoeffsSummary {
    n: usize,
    provider: &'static str,
    mu: [f64; 3],
    self_dual: bool,
    first: Vec<[f64; 2]>,
    bounds: moment_lab::coeffs::BoundsDiagnostics,
    scan_ladder: Vec<usize>,
    scan_x0_exponent: Option<f64>,
    scan_sup_exponent: Option<f64>,
    measured_a: Option<f64>,
}

pub fn coeffs(a: &CoeffsArgs) -> CliResult<()> {
    let spec = a.form.spec();
    let n = spec.length(1 << 17)?;
    let table = spec.table(n, a.form.seed)?;
    if let Some(p) = &a.export {
        export_table(&table, p)?;
    }
    let bounds = check_bounds(&table)?;
    let ladder: Vec<usize> = (10..).map(|k| 1usize << k).take_while(|&x| x <= table.len()).collect();
    let scan = if a.grid > 0 && !ladder.is_empty() {
        let grid = if a.random_grid { random_grid(a.grid, a.form.seed) } else { uniform_grid(a.grid) };
        Some(additive_twist_scan(&table, &ladder, &grid)?)
    } else {
        None
    };
    let summary = CoeffsSummary {
        n: table.len(),
        provider: table.provider.label(),
        mu: table.arch.mu.map(|m| m.re),
        self_dual: table.self_dual,
        first: table.values().iter().take(10).map(|z| [z.re, z.im]).collect(),
        bounds,
        scan_x0_exponent: scan.as_ref().and_then(|s| s.per_x_fits[0].map(|f| f.exponent)),
        scan_sup_exponent: scan.as_ref().and_then(|s| s.sup_fit.map(|f| f.exponent)),
        measured_a: scan.as_ref().and_then(|s| s.measured_a),
        scan_ladder: ladder,
    };
    emit(&render_json(a, &summary)?, a.out.as_deref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LKind {
    /// `L(1/2, pi x chi) L(1/2, conj chi)`.
    Product,
    Twisted,
    Dirichlet,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LvalueArgs {
    #[arg(long)]
    pub q: u64,
    /// Position in the enumeration printed by `chars --verify list`.
    #[arg(long)]
    pub char_index: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, value_enum, default_value = "combined")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "product")]
    pub kind: LKind,
    #[command(flatten)]
    pub form: FormArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct LvalueJson {
    value_re: f64,
    value_im: f64,
    eta: f64,
    trunc: usize,
    err_est: f64,
    method: Method,
}

pub fn lvalue(a: &LvalueArgs) -> CliResult<()> {
    let chi = enumerate_characters(a.q)?
        .into_iter()
        .nth(a.char_index)
        .ok_or_else(|| CliError::Config(format!("--char-index {} out of range", a.char_index)))?;
    let half = Complex64::new(0.5, 0.0);
    let table = |kind: AfeKind| -> CliResult<_> {
        let spec = a.form.spec();
        let n = spec.length(required_length(kind, &spec.arch(), a.q, a.eta)?)?;
        spec.table(n, a.form.seed)
    };
    let v: CentralValue = match (a.kind, a.method) {
        (LKind::Dirichlet, MethodArg::Oracle) => CentralValue {
            value: dirichlet_l_oracle(half, &chi)?,
            method: Method::Oracle,
            eta: a.eta,
            truncation: 0,
            error_estimate: 1e-10,
        },
        (LKind::Dirichlet, _) => dirichlet_l_half(&chi)?,
        (LKind::Twisted, MethodArg::Combined) => {
            return Err(CliError::Config("the twisted value alone has no combined expansion".into()))
        }
        (LKind::Twisted, _) => twisted_l_half(&table(AfeKind::Twisted)?, &chi, a.eta)?,
        (LKind::Product, MethodArg::Combined) => product_central_value(&table(AfeKind::Combined)?, &chi, a.eta)?,
        (LKind::Product, MethodArg::Factored) => product_factored(&table(AfeKind::Twisted)?, &chi, a.eta)?,
        (LKind::Product, MethodArg::Oracle) => {
            let t = twisted_l_half(&table(AfeKind::Twisted)?, &chi, a.eta)?;
            let d = dirichlet_l_oracle(half, &chi.conj())?;
            CentralValue {
                value: t.value * d,
                method: Method::Oracle,
                eta: a.eta,
                truncation: t.truncation,
                error_estimate: t.error_estimate * d.norm() + 1e-10 * t.value.norm(),
            }
        }
    };
    let out = LvalueJson {
        value_re: v.value.re,
        value_im: v.value.im,
        eta: v.eta,
        trunc: v.truncation,
        err_est: v.error_estimate,
        method: v.method,
    };
    emit(&render_json(a, &out)?, a.out.as_deref())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentArgs {
    /// Family scale `Q`, used when no ladder is given.
    #[arg(long = "Q")]
    pub scale: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, value_delimiter = ',')]
    pub ladder: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "combined")]
    pub method: MethodArg,
    /// Additive-twist exponent for the predicted rate.
    #[arg(long)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub form: FormArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const MOMENT_COLUMNS: [&str; 14] = [
    "Q", "delta", "size", "S0_re", "S1_re", "SQ_re", "L1pi", "residual", "SQ_im", "S1_abs",
    "diagonal", "diagonal_literal", "err_est", "trunc",
];

pub(crate) fn moment_table_length(form: &FormSpec, ladder: &[f64], delta: f64, eta: f64, method: Method) -> CliResult<usize> {
    let kind = if method == Method::Combined { AfeKind::Combined } else { AfeKind::Twisted };
    let mut need = moment_lab::lfunc::L_ONE_MIN_LENGTH;
    for &q in ladder {
        for m in build_family(q, delta)?.members {
            need = need.max(required_length(kind, &form.arch(), m.q, eta)?);
        }
    }
    form.length(need)
}

pub(crate) fn moment_rows(report: &moment_lab::moments::ConvergenceReport, r: &mut CsvReport) {
    for rung in &report.rungs {
        let opt = |z: Option<Complex64>| z.map_or_else(String::new, |z| fmt_f64(z.re));
        r.push(vec![
            fmt_f64(rung.scale),
            fmt_f64(rung.delta),
            rung.size.to_string(),
            opt(rung.s0),
            opt(rung.s1),
            fmt_f64(rung.s_q.re),
            fmt_f64(rung.l_one_pi.re),
            fmt_f64(rung.residual),
            fmt_f64(rung.s_q.im),
            rung.s1.map_or_else(String::new, |z| fmt_f64(z.norm())),
            fmt_f64(rung.diagonal.re),
            fmt_f64(rung.diagonal_literal.re),
            fmt_f64(rung.error_estimate),
            rung.max_truncation.to_string(),
        ]);
    }
}

pub fn moment(a: &MomentArgs) -> CliResult<()> {
    let ladder = match (&a.ladder, a.scale) {
        (Some(l), _) => l.clone(),
        (None, Some(q)) => vec![q],
        (None, None) => return Err(CliError::Config("give --Q or --ladder".into())),
    };
    let method: Method = a.method.into();
    let spec = a.form.spec();
    let n = moment_table_length(&spec, &ladder, a.delta, a.eta, method)?;
    let table = spec.table(n, a.form.seed)?;
    let report = convergence_report(a.delta, &ladder, &table, a.eta, method, a.a)?;
    let mut csv = CsvReport::new(echo(a)?, &MOMENT_COLUMNS);
    moment_rows(&report, &mut csv);
    emit(&csv.render()?, a.out.as_deref())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LuoArgs {
    #[arg(long = "Q")]
    pub scale: f64,
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub s_re: f64,
    #[arg(long, value_delimiter = ',', default_value = "10,30,100")]
    pub y: Vec<f64>,
    #[arg(long, value_enum, default_value = "product")]
    pub convention: ConventionArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const LUO_COLUMNS: [&str; 13] = [
    "Q", "delta", "size", "k", "s_re", "y", "m_cut", "lhs", "lhs_truncated", "rhs1", "rhs2", "rhs3", "constant",
];

pub(crate) fn luo_rows(
    scale: f64,
    delta: f64,
    k: u32,
    s_re: f64,
    ys: &[f64],
    convention: ConventionArg,
    r: &mut CsvReport,
) -> CliResult<Vec<moment_lab::luo::LuoSweep>> {
    let family = build_family(scale, delta)?;
    let table = BkTable::new(&family, k, convention.into())?;
    let mut out = Vec::new();
    for &y in ys {
        let s = luo_lemma_check(&table, &family, Complex64::new(s_re, 0.0), y, None)?;
        let mut row = vec![
            fmt_f64(s.scale),
            fmt_f64(s.delta),
            s.size.to_string(),
            s.k.to_string(),
            fmt_f64(s_re),
            fmt_f64(y),
            s.m_cut.to_string(),
            fmt_f64(s.lhs),
            fmt_f64(s.lhs_truncated),
        ];
        row.extend(s.rhs_terms.iter().map(|&t| fmt_f64(t)));
        row.push(fmt_f64(s.fitted_constant));
        r.push(row);
        out.push(s);
    }
    Ok(out)
}

pub fn luo(a: &LuoArgs) -> CliResult<()> {
    let mut csv = CsvReport::new(echo(a)?, &LUO_COLUMNS);
    luo_rows(a.scale, a.delta, a.k, a.s_re, &a.y, a.convention, &mut csv)?;
    emit(&csv.render()?, a.out.as_deref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialFn {
    LogGamma,
    Hurwitz,
    /// Mellin transform of the bump window.
    Window,
    /// The degree-3 smoothing weight `V(y)` of the configured form at `s = 1/2`.
    Kernel,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpecialArgs {
    #[arg(long = "fn", value_enum)]
    pub function: SpecialFn,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub im: f64,
    /// Hurwitz shift `a`.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Kernel argument.
    #[arg(long, default_value_t = 1.0)]
    pub y: f64,
    #[arg(long, value_delimiter = ',', num_args = 3, default_value = "1,11,12")]
    pub mu: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn special(a: &SpecialArgs) -> CliResult<()> {
    let z = Complex64::new(a.re, a.im);
    let value = match a.function {
        SpecialFn::LogGamma => log_gamma(z)?,
        SpecialFn::Hurwitz => hurwitz_zeta(z, a.a)?,
        SpecialFn::Window => mellin_window(&BumpWindow, z),
        SpecialFn::Kernel => {
            let arch = moment_lab::special::ArchimedeanData::with_override([a.mu[0], a.mu[1], a.mu[2]].map(|m| Complex64::new(m, 0.0)));
            eval_direct(&KernelSpec::afe_weight(&arch, z)?, a.y)?.value
        }
    };
    #[derive(Serialize)]
    struct Out {
        value_re: f64,
        value_im: f64,
    }
    emit(&render_json(a, &Out { value_re: value.re, value_im: value.im })?, a.out.as_deref())
}
