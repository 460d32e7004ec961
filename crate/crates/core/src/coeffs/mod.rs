//! GL(3) Hecke coefficients `A(n,1)`: providers, Hecke expansion, bound
//! diagnostics, the additive-twist scanner and a plain-text cache format.

mod bounds;
mod io;
mod lift;
mod scan;
mod table;
mod tau;

pub use bounds::{check_bounds, BoundsDiagnostics};
pub use io::{export_table, import_table, read_table, write_table};
pub use lift::{
    sym2_delta_table, sym_square_lift, synthetic_from_angles, synthetic_random, synthetic_unit,
    GL2EigenData, Gl2Source,
};
pub use scan::{additive_twist_scan, random_grid, uniform_grid, TwistScanReport};
pub use table::{coefficient_amn, hecke_expand, GL3CoefficientTable, Provider};
pub use tau::{tau_coefficients, TAU_BUDGET};
