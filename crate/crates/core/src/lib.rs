//! Low-regularity Fourier integrators for the cubic nonlinear Schrödinger
//! equation `i u_t + u_xx + λ|u|²u = 0` on the torus (0, 2π).
//!
//! * [`spectral`]: Fourier representation, multipliers, norms and invariants.
//! * [`schemes`]: the LRI step, its mass-corrected variant (NLRI), baseline
//!   integrators and an RK4 reference solver.
//! * [`experiments`]: rough initial data, convergence and mass-drift studies,
//!   order fitting, CSV/SVG output.
//! * [`cli`]: the `nls-lri` command line.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod schemes;
pub mod spectral;

pub use error::{Error, Result};
pub use schemes::{Nonlinearity, Scheme, SchemeConfig, StepDiagnostics};
pub use spectral::{pointwise_product, pointwise_product_dealiased, Grid, PhysicalField, SpectralField};
