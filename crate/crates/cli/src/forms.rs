//! Coefficient tables by provider, with an optional on-disk cache.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use clap::ValueEnum;
use log::info;
use moment_lab::coeffs::{
    import_table, read_table, sym2_delta_table, synthetic_random, synthetic_unit, write_table,
    GL3CoefficientTable, Provider,
};
use moment_lab::special::ArchimedeanData;
use moment_lab::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "MOMENT_LAB_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ProviderKind {
    Sym2Delta,
    SyntheticRandom,
    SyntheticUnit,
    Imported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub provider: ProviderKind,
    /// Table length; derived from the computation when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Real Langlands parameters replacing the provider's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

impl Default for FormSpec {
    fn default() -> Self {
        Self {
            provider: ProviderKind::Sym2Delta,
            n: None,
            mu: None,
            path: None,
        }
    }
}

impl FormSpec {
    /// Archimedean data the table will carry, known before it is built.
    pub fn arch(&self) -> ArchimedeanData {
        match (self.mu, self.provider) {
            (Some(mu), _) => ArchimedeanData::with_override(mu.map(|m| Complex64::new(m, 0.0))),
            (None, ProviderKind::Sym2Delta) => ArchimedeanData::sym2_holomorphic(12),
            (None, _) => ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]),
        }
    }

    /// Length to build: the configured `n`, which must cover `required`, or `required` itself.
    pub fn length(&self, required: usize) -> CliResult<usize> {
        match self.n {
            Some(n) if n < required => Err(CliError::Core(moment_lab::Error::IncompleteData {
                required,
                available: n,
            })),
            Some(n) => Ok(n),
            None => Ok(required),
        }
    }

    fn cache_name(&self, n: usize, seed: u64) -> Option<String> {
        let tag = match self.provider {
            ProviderKind::Sym2Delta => "sym2-delta".to_string(),
            ProviderKind::SyntheticRandom => format!("synthetic-random-s{seed}"),
            ProviderKind::SyntheticUnit | ProviderKind::Imported => return None,
        };
        let mu = self.arch().mu.map(|m| format!("{}", m.re)).join("_");
        Some(format!("{tag}-N{n}-mu{mu}.txt"))
    }

    fn build(&self, n: usize, seed: u64) -> CliResult<GL3CoefficientTable> {
        if let Some(mu) = self.mu {
            if mu.iter().sum::<f64>().abs() > 1e-12 {
                log::warn!("Langlands parameters {mu:?} do not sum to zero; using them as given");
            }
        }
        let mut table = match self.provider {
            ProviderKind::Sym2Delta => sym2_delta_table(n)?,
            ProviderKind::SyntheticRandom => synthetic_random(n, seed)?,
            ProviderKind::SyntheticUnit => synthetic_unit(n)?,
            ProviderKind::Imported => {
                let path = self
                    .path
                    .as_ref()
                    .ok_or_else(|| CliError::Config("form.path is required for imported tables".into()))?;
                let mut t = import_table(path)?;
                t.require(n)?;
                if self.mu.is_some() {
                    t.arch = self.arch();
                }
                return Ok(t);
            }
        };
        if self.mu.is_some() {
            table.arch = self.arch();
        }
        Ok(table)
    }

    /// Builds the table or reads it from `$MOMENT_LAB_CACHE`, writing it there on a miss.
    pub fn table(&self, n: usize, seed: u64) -> CliResult<GL3CoefficientTable> {
        let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        let path = match (cache, self.cache_name(n, seed)) {
            (Some(dir), Some(name)) => dir.join(name),
            _ => return self.build(n, seed),
        };
        if path.exists() {
            info!("reading cached coefficients {}", path.display());
            let mut t = read_table(BufReader::new(File::open(&path)?))?;
            t.provider = self.provider_label();
            return Ok(t);
        }
        let table = self.build(n, seed)?;
        std::fs::create_dir_all(path.parent().expect("cache file has a parent"))?;
        let tmp = path.with_extension("partial");
        write_table(&table, BufWriter::new(File::create(&tmp)?))?;
        std::fs::rename(&tmp, &path)?;
        info!("cached coefficients at {}", path.display());
        Ok(table)
    }

    fn provider_label(&self) -> Provider {
        match self.provider {
            ProviderKind::Sym2Delta => Provider::Sym2Delta,
            ProviderKind::Imported => Provider::Imported,
            _ => Provider::Synthetic,
        }
    }
}
