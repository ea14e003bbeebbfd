//! Numerical experiments: rough data, convergence and mass-drift sweeps,
//! order fitting and CSV/SVG reports.

mod data;
mod fit;
mod local;
mod output;
mod run;

pub use data::{gen_rough_data, RoughDataSpec};
pub use fit::{fit_drift_order, fit_order, fit_order_above, OrderFit, DRIFT_FLOOR, ERROR_FLOOR};
pub use local::{
    adjusted, halving, local_error, per_step_deviation, per_step_mass_drift,
    twisted_equivalence_gap,
};
pub use output::{emit_csv, emit_svg_plot, read_csv, CSV_HEADER};
pub use run::{
    run_convergence, run_mass_drift, run_trajectory, step_plan, ConvergenceTable, RunRecord, Study,
};
