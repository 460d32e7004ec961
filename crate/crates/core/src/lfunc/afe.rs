use std::sync::Arc;

use num_complex::Complex64;

use crate::coeffs::GL3CoefficientTable;
use crate::special::{ln_gamma_factor, KernelShape, KernelSpec, KernelTable};
use crate::{Error, Result};

/// Table floor for kernels whose small-argument side is evaluated left of 0.
const SHIFTED_FLOOR: f64 = 1e-12;

/// Kernels of one two-sided approximate functional equation
///
/// `L(s0) = sum a_n n^{-s0} V(n / (sqrt(N) X)) + eps sum b_n n^{s0-1} W(n X / sqrt(N))`
///
/// with `V` normalized by `gamma(s0)` and `W = N^{1/2-s0} gamma~(1-s0+v)/gamma(s0)`.
#[derive(Debug, Clone)]
pub struct AfeKernels {
    pub direct: Arc<KernelTable>,
    pub dual: Arc<KernelTable>,
    pub s0: Complex64,
    pub sqrt_conductor: f64,
    /// Balance: the direct side has length `sqrt(N) X`, the dual `sqrt(N) / X`.
    pub x: f64,
}

fn table_for(spec: KernelSpec, min_arg: f64) -> Result<Arc<KernelTable>> {
    let floor = if min_arg >= SHIFTED_FLOOR && spec.divide_by_s && spec.shape.rightmost_pole() < 0.0 {
        SHIFTED_FLOOR
    } else {
        10f64.powf((0.5 * min_arg).log10().floor()).min(0.1)
    };
    KernelTable::cached(&spec, floor)
}

impl AfeKernels {
    pub fn new(
        params: &[Complex64],
        dual_params: &[Complex64],
        s0: Complex64,
        conductor: f64,
        x: f64,
    ) -> Result<Self> {
        if !(conductor >= 1.0) || !(x > 0.0) {
            return Err(Error::Domain("conductor and balance must be positive".into()));
        }
        let log_gamma_s0 = ln_gamma_factor(s0, params)?;
        let sqrt_conductor = conductor.sqrt();
        let direct = KernelSpec::new(KernelShape::Gamma {
            params: params.to_vec(),
            point: s0,
            log_scale: log_gamma_s0,
        });
        let dual = KernelSpec::new(KernelShape::Gamma {
            params: dual_params.to_vec(),
            point: 1.0 - s0,
            log_scale: log_gamma_s0 - (0.5 - s0) * conductor.ln(),
        });
        Ok(Self {
            direct: table_for(direct, 1.0 / (sqrt_conductor * x))?,
            dual: table_for(dual, x / sqrt_conductor)?,
            s0,
            sqrt_conductor,
            x,
        })
    }

    pub fn direct_scale(&self) -> f64 {
        self.sqrt_conductor * self.x
    }

    pub fn dual_scale(&self) -> f64 {
        self.sqrt_conductor / self.x
    }

    /// Last index with a non-negligible weight on each side.
    pub fn lengths(&self) -> (usize, usize) {
        (
            (self.direct.cutoff() * self.direct_scale()).floor() as usize,
            (self.dual.cutoff() * self.dual_scale()).floor() as usize,
        )
    }

    pub fn required_length(&self) -> usize {
        let (a, b) = self.lengths();
        a.max(b).max(1)
    }

    /// `n^{-s0} V(n / (sqrt(N) X))` for `n = 1..=len`.
    pub fn direct_weights(&self, len: usize) -> Vec<Complex64> {
        let scale = self.direct_scale();
        (1..=len)
            .map(|n| {
                let n = n as f64;
                (-self.s0 * n.ln()).exp() * self.direct.eval(n / scale)
            })
            .collect()
    }

    /// `n^{s0-1} W(n X / sqrt(N))` for `n = 1..=len`.
    pub fn dual_weights(&self, len: usize) -> Vec<Complex64> {
        let scale = self.dual_scale();
        (1..=len)
            .map(|n| {
                let n = n as f64;
                ((self.s0 - 1.0) * n.ln()).exp() * self.dual.eval(n / scale)
            })
            .collect()
    }

    /// Bound on the neglected and interpolated parts of a sum with
    /// coefficient magnitudes summing (against the weights) to `l1`.
    pub fn error_bound(&self, l1: f64) -> f64 {
        1e-11 * l1 + 1e-15 * (self.direct.scale() + self.dual.scale()) * self.required_length() as f64
    }
}

/// Refuses tables without a functional equation and short tables.
pub(crate) fn check_table(table: &GL3CoefficientTable, required: usize) -> Result<()> {
    if !table.is_automorphic() {
        return Err(Error::NonAutomorphic(format!(
            "{} table has no functional equation",
            table.provider.label()
        )));
    }
    table.require(required)
}
