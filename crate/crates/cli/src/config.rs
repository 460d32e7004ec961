use std::path::{Path, PathBuf};

use clap::ValueEnum;
use moment_lab::lfunc::Method;
use moment_lab::luo::GaussConvention;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::forms::FormSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Factored,
    Combined,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Factored => Method::Factored,
            MethodArg::Combined => Method::Combined,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionArg {
    Product,
    Factorwise,
}

impl From<ConventionArg> for GaussConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Product => GaussConvention::Product,
            ConventionArg::Factorwise => GaussConvention::Factorwise,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    /// Ascending scales `Q`.
    pub ladder: Vec<f64>,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AfeSpec {
    pub eta: f64,
    pub method: MethodArg,
    /// Allowed gap between the combined and factored moment on the first rung.
    pub cross_check_tolerance: f64,
}

impl Default for AfeSpec {
    fn default() -> Self {
        Self {
            eta: 0.0,
            method: MethodArg::Combined,
            cross_check_tolerance: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LuoSpec {
    pub enabled: bool,
    pub k: u32,
    pub s_re: f64,
    pub y: Vec<f64>,
    pub convention: ConventionArg,
}

impl Default for LuoSpec {
    fn default() -> Self {
        Self {
            enabled: true,
            k: 3,
            s_re: 0.0,
            y: vec![10.0, 30.0, 100.0],
            convention: ConventionArg::Product,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanSpec {
    pub enabled: bool,
    pub grid: usize,
    /// Draw the grid at random from `seed` instead of uniformly.
    pub random: bool,
    pub log2_min: u32,
    pub log2_max: u32,
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self {
            enabled: true,
            grid: 64,
            random: false,
            log2_min: 10,
            log2_max: 17,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
}

/// Everything `run` needs; read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub form: FormSpec,
    pub family: FamilySpec,
    #[serde(default)]
    pub afe: AfeSpec,
    #[serde(default)]
    pub luo: LuoSpec,
    #[serde(default)]
    pub scan: ScanSpec,
    pub output: OutputSpec,
}

fn invalid(field: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {why}"))
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> CliResult<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> CliResult<()> {
        let f = &self.family;
        if f.ladder.is_empty() {
            return Err(invalid("family.ladder", "empty"));
        }
        if f.ladder.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("family.ladder", "must be strictly ascending"));
        }
        if f.ladder.iter().any(|&q| !(q >= 20.0)) {
            return Err(invalid("family.ladder", "every Q must be at least 20"));
        }
        if !(f.delta > 0.0 && f.delta < 0.5) {
            return Err(invalid("family.delta", "must lie in (0, 1/2)"));
        }
        if !self.afe.eta.is_finite() || self.afe.eta.abs() >= 1.0 {
            return Err(invalid("afe.eta", "must lie in (-1, 1)"));
        }
        if self.afe.method == MethodArg::Oracle {
            return Err(invalid("afe.method", "the moment has no oracle method"));
        }
        if !(self.afe.cross_check_tolerance > 0.0) {
            return Err(invalid("afe.cross_check_tolerance", "must be positive"));
        }
        if self.form.n == Some(0) {
            return Err(invalid("form.n", "must be positive"));
        }
        if self.luo.k == 0 {
            return Err(invalid("luo.k", "must be at least 1"));
        }
        if self.luo.y.is_empty() || self.luo.y.iter().any(|&y| !(y > 0.0)) {
            return Err(invalid("luo.y", "values must be positive"));
        }
        let s = &self.scan;
        if s.grid == 0 {
            return Err(invalid("scan.grid", "must be positive"));
        }
        if s.log2_min >= s.log2_max || s.log2_max > 30 {
            return Err(invalid("scan", "need log2_min < log2_max <= 30"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
seed = 7

[form]
provider = "sym2-delta"

[family]
ladder = [20.0, 35.0]
delta = 0.3

[afe]
eta = 0.1

[output]
dir = "out"
"#;

    #[test]
    fn round_trip() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.afe.method, MethodArg::Combined);
        assert_eq!(cfg.luo.y, vec![10.0, 30.0, 100.0]);
        let again = ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = SAMPLE.replace("[20.0, 35.0]", "[35.0, 20.0]");
        let e = ExperimentConfig::from_toml(&bad).unwrap_err();
        assert!(e.to_string().contains("family.ladder"), "{e}");
        assert_eq!(e.exit_code(), 2);
        let bad = SAMPLE.replace("eta = 0.1", "eta = 0.1\nbogus = 1");
        let e = ExperimentConfig::from_toml(&bad).unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
        let bad = SAMPLE.replace("eta = 0.1", "cross_check_tolerance = 0.0");
        assert!(ExperimentConfig::from_toml(&bad).unwrap_err().to_string().contains("tolerance"));
    }
}
