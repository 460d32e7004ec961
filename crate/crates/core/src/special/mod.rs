//! Complex gamma machinery, archimedean factors and the vertical-line
//! contour quadrature that produces the smoothing kernels.

mod arch;
mod gamma;
mod kernel;
mod window;
pub(crate) mod zeta;

pub use arch::{g_full, g_pi, ln_gamma_factor, ArchimedeanData};
pub use gamma::{gamma, log_gamma};
pub use kernel::{
    eval_direct, vertical_line_transform, vertical_line_transform_batch, KernelShape, KernelSpec, KernelTable, QuadratureResult,
    DEFAULT_ABSCISSA,
};
pub use window::{mellin_window, mellin_window_sampled, BumpWindow};
pub use zeta::hurwitz_zeta;
