//! The `run` subcommand: one configuration file in, a directory of reports out.

use std::path::PathBuf;

use log::info;
use moment_lab::coeffs::{additive_twist_scan, random_grid, uniform_grid};
use moment_lab::lfunc::Method;
use moment_lab::moments::{build_family, convergence_report, moment_with_main_term};
use serde::Serialize;

use crate::commands::{luo_rows, moment_rows, moment_table_length, LUO_COLUMNS, MOMENT_COLUMNS};
use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::{emit, fmt_f64, render_json, CsvReport};

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub table_length: usize,
    pub l_one_pi: f64,
    pub l_one_pi_euler: f64,
    pub l_one_pi_gap: f64,
    pub residual_exponent: Option<f64>,
    pub s1_exponent: Option<f64>,
    pub scan_x0_exponent: Option<f64>,
    pub scan_sup_exponent: Option<f64>,
    pub measured_a: Option<f64>,
    pub predicted: Option<moment_lab::moments::PredictedRates>,
    /// `|S_Q(combined) - S_Q(factored)|` on the first rung.
    pub cross_check_gap: f64,
    #[serde(skip)]
    pub files: Vec<PathBuf>,
}

pub fn run(cfg: &ExperimentConfig) -> CliResult<RunSummary> {
    cfg.validate()?;
    let echo = cfg.to_toml()?;
    let dir = &cfg.output.dir;
    std::fs::create_dir_all(dir)?;
    let method: Method = cfg.afe.method.into();
    let other = if method == Method::Combined { Method::Factored } else { Method::Combined };
    let ladder = &cfg.family.ladder;
    let mut n = moment_table_length(&cfg.form, ladder, cfg.family.delta, cfg.afe.eta, method)?
        .max(moment_table_length(&cfg.form, &ladder[..1], cfg.family.delta, cfg.afe.eta, other)?);
    if cfg.scan.enabled {
        n = n.max(cfg.form.length(1 << cfg.scan.log2_max)?);
    }
    info!("building coefficient table of length {n}");
    let table = cfg.form.table(n, cfg.seed)?;
    let mut files = Vec::new();
    let mut write = |name: &str, bytes: Vec<u8>| -> CliResult<()> {
        let path = dir.join(name);
        emit(&bytes, Some(&path))?;
        files.push(path);
        Ok(())
    };
    write("config.toml", echo.clone().into_bytes())?;

    let scan = if cfg.scan.enabled {
        let ladder: Vec<usize> = (cfg.scan.log2_min..=cfg.scan.log2_max).map(|k| 1usize << k).collect();
        let grid = if cfg.scan.random {
            random_grid(cfg.scan.grid, cfg.seed)
        } else {
            uniform_grid(cfg.scan.grid)
        };
        let report = additive_twist_scan(&table, &ladder, &grid)?;
        let mut header = vec!["x".to_string()];
        header.extend(ladder.iter().map(|x| format!("X{x}")));
        header.push("exponent".into());
        let mut csv = CsvReport {
            echo: echo.clone(),
            header,
            rows: Vec::new(),
        };
        for (i, &x) in report.grid.iter().enumerate() {
            let mut row = vec![fmt_f64(x)];
            row.extend(report.values[i].iter().map(|&v| fmt_f64(v)));
            row.push(report.per_x_fits[i].map_or_else(String::new, |f| fmt_f64(f.exponent)));
            csv.push(row);
        }
        write("scan.csv", csv.render()?)?;
        Some(report)
    } else {
        None
    };

    let a = scan.as_ref().and_then(|s| s.measured_a);
    let report = convergence_report(cfg.family.delta, &cfg.family.ladder, &table, cfg.afe.eta, method, a)?;
    let mut csv = CsvReport::new(echo.clone(), &MOMENT_COLUMNS);
    moment_rows(&report, &mut csv);
    write("moment.csv", csv.render()?)?;

    let first = build_family(cfg.family.ladder[0], cfg.family.delta)?;
    let check = moment_with_main_term(&first, &table, cfg.afe.eta, other, &report.l_one)?;
    let cross_check_gap = (check.s_q - report.rungs[0].s_q).norm();

    if cfg.luo.enabled {
        let mut csv = CsvReport::new(echo.clone(), &LUO_COLUMNS);
        for &q in &cfg.family.ladder {
            luo_rows(q, cfg.family.delta, cfg.luo.k, cfg.luo.s_re, &cfg.luo.y, cfg.luo.convention, &mut csv)?;
        }
        write("luo.csv", csv.render()?)?;
    }

    let mut summary = RunSummary {
        table_length: table.len(),
        l_one_pi: report.l_one.value.re,
        l_one_pi_euler: report.l_one.euler.re,
        l_one_pi_gap: report.l_one.gap,
        residual_exponent: report.residual_fit.map(|f| f.exponent),
        s1_exponent: report.s1_fit.map(|f| f.exponent),
        scan_x0_exponent: scan.as_ref().and_then(|s| s.per_x_fits[0].map(|f| f.exponent)),
        scan_sup_exponent: scan.as_ref().and_then(|s| s.sup_fit.map(|f| f.exponent)),
        measured_a: a,
        predicted: report.predicted,
        cross_check_gap,
        files: Vec::new(),
    };
    write("summary.json", render_json(cfg, &summary)?)?;
    summary.files = files;
    if cross_check_gap > cfg.afe.cross_check_tolerance {
        return Err(CliError::Numeric(format!(
            "combined and factored moments differ by {cross_check_gap:e} on Q = {}",
            cfg.family.ladder[0]
        )));
    }
    Ok(summary)
}
