//! Time-stepping maps for `i u_t + u_xx + λ|u|²u = 0` on the torus.
//!
//! All steppers act on [`SpectralField`]s and are pure: the same input and
//! [`SchemeConfig`] give bitwise-identical output.

mod lri;
mod oracle;
mod splitting;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::SpectralField;

pub use lri::{combined_propagator_symbol, f_map, h_scalar, lri_step, nlri_step, twisted_phi_step};
pub use oracle::oracle_evolve;
pub use splitting::{exp_euler_step, lie_step, strang_step};

/// Time integrator selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// First-order low-regularity Fourier integrator.
    Lri,
    /// LRI with the mass-correcting terms; mass drift is fifth order.
    Nlri,
    Lie,
    Strang,
    ExpEuler,
    /// Fourth-order Runge–Kutta on the twisted variable with
    /// [`ORACLE_SUBSTEPS`] substeps per step.
    Oracle,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Lri,
        Scheme::Nlri,
        Scheme::Lie,
        Scheme::Strang,
        Scheme::ExpEuler,
        Scheme::Oracle,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Lri => "lri",
            Scheme::Nlri => "nlri",
            Scheme::Lie => "lie",
            Scheme::Strang => "strang",
            Scheme::ExpEuler => "exp-euler",
            Scheme::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.label() == key)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown scheme '{s}' (expected one of lri, nlri, lie, strang, exp-euler, oracle)"
                ))
            })
    }
}

/// Sign λ of the cubic term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Nonlinearity {
    /// λ = -1.
    Defocusing,
    /// λ = +1.
    Focusing,
}

impl Nonlinearity {
    pub fn lambda(self) -> f64 {
        match self {
            Nonlinearity::Defocusing => -1.0,
            Nonlinearity::Focusing => 1.0,
        }
    }

    /// Prefactor `-λ` carried by every term of nonlinear origin in the LRI
    /// map; it is 1 for λ = -1.
    pub(crate) fn duhamel_factor(self) -> f64 {
        -self.lambda()
    }
}

impl TryFrom<i64> for Nonlinearity {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        match value {
            -1 => Ok(Nonlinearity::Defocusing),
            1 => Ok(Nonlinearity::Focusing),
            other => Err(Error::InvalidConfig(format!("lambda must be -1 or +1, got {other}"))),
        }
    }
}

/// Step size, nonlinearity and the conserved quantities frozen from the
/// initial data.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub tau: f64,
    pub lambda: Nonlinearity,
    /// `M₀ = Π₀(|u₀|²)`.
    pub m0: f64,
    /// `P₀ = Π₀(u₀ ∂x ū₀)`, purely imaginary.
    pub p0: Complex64,
    /// Evaluate nonlinear terms on a 2n zero-padded grid (exact for cubic
    /// products) and truncate. On by default: without it the aliased cubic
    /// interactions break the low-regularity scheme's consistency in `H^γ`.
    pub dealias: bool,
}

impl SchemeConfig {
    pub fn new(
        scheme: Scheme,
        tau: f64,
        lambda: Nonlinearity,
        m0: f64,
        p0: Complex64,
    ) -> Result<Self> {
        let cfg = SchemeConfig {
            scheme,
            tau,
            lambda,
            m0,
            p0,
            dealias: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Config with `M₀`, `P₀` taken from the initial data.
    pub fn for_initial_data(
        scheme: Scheme,
        tau: f64,
        lambda: Nonlinearity,
        u0: &SpectralField,
    ) -> Result<Self> {
        Self::new(scheme, tau, lambda, u0.mass(), u0.momentum())
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        SchemeConfig {
            scheme,
            ..self.clone()
        }
    }

    pub fn with_tau(&self, tau: f64) -> Self {
        SchemeConfig { tau, ..self.clone() }
    }

    pub fn with_dealias(self, dealias: bool) -> Self {
        SchemeConfig { dealias, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "time step must be positive and finite, got {}",
                self.tau
            )));
        }
        if !(self.m0 >= 0.0 && self.m0.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "initial mass must be non-negative, got {}",
                self.m0
            )));
        }
        if self.scheme == Scheme::Nlri && self.m0 <= 0.0 {
            return Err(Error::DegenerateMass(self.m0));
        }
        if self.p0.re.abs() > 1e-13 * (1.0 + self.p0.im.abs()) {
            return Err(Error::InvalidConfig(format!(
                "initial momentum must be purely imaginary, got {}",
                self.p0
            )));
        }
        Ok(())
    }
}

/// Per-step quantities surfaced by the mass-corrected step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepDiagnostics {
    pub mass_after: f64,
    /// `‖F(Uⁿ)‖_{L²}`.
    pub f_norm_l2: f64,
    /// `H(Uⁿ)`; zero for schemes without the correction.
    pub h_value: f64,
}

/// RK4 substeps taken inside one step of [`Scheme::Oracle`], matching the
/// resolution of the reference solutions used by the studies.
pub const ORACLE_SUBSTEPS: usize = 100;

/// One step of the scheme selected in `cfg`.
pub fn step(u: &SpectralField, cfg: &SchemeConfig) -> Result<SpectralField> {
    Ok(match cfg.scheme {
        Scheme::Lri => lri_step(u, cfg),
        Scheme::Nlri => nlri_step(u, cfg)?.0,
        Scheme::Lie => lie_step(u, cfg),
        Scheme::Strang => strang_step(u, cfg),
        Scheme::ExpEuler => exp_euler_step(u, cfg),
        Scheme::Oracle => oracle_evolve(u, cfg.tau, ORACLE_SUBSTEPS, cfg)?,
    })
}

/// Runs `map` on a 2n zero-padded copy of `u` when dealiasing is on.
pub(crate) fn on_working_grid(
    u: &SpectralField,
    cfg: &SchemeConfig,
    map: impl FnOnce(&SpectralField) -> SpectralField,
) -> SpectralField {
    if cfg.dealias {
        let padded = u.padded(2 * u.n()).expect("doubling an even grid stays valid");
        map(&padded).truncated(u.grid())
    } else {
        map(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_labels_round_trip() {
        for scheme in Scheme::ALL {
            assert_eq!(scheme.label().parse::<Scheme>().unwrap(), scheme);
        }
        assert_eq!("EXP_EULER".parse::<Scheme>().unwrap(), Scheme::ExpEuler);
        assert!("rk4".parse::<Scheme>().is_err());
    }

    #[test]
    fn lambda_values() {
        assert_eq!(Nonlinearity::try_from(-1).unwrap(), Nonlinearity::Defocusing);
        assert_eq!(Nonlinearity::try_from(1).unwrap().lambda(), 1.0);
        assert!(Nonlinearity::try_from(0).is_err());
    }

    #[test]
    fn config_validation() {
        let ok = SchemeConfig::new(Scheme::Lri, 0.1, Nonlinearity::Defocusing, 0.0, Complex64::new(0.0, 0.3));
        assert!(ok.is_ok());
        let nlri = SchemeConfig::new(Scheme::Nlri, 0.1, Nonlinearity::Defocusing, 0.0, Complex64::default());
        assert!(matches!(nlri, Err(Error::DegenerateMass(_))));
        let bad_tau = SchemeConfig::new(Scheme::Lri, 0.0, Nonlinearity::Defocusing, 1.0, Complex64::default());
        assert!(matches!(bad_tau, Err(Error::InvalidConfig(_))));
        let bad_p0 = SchemeConfig::new(Scheme::Lri, 0.1, Nonlinearity::Defocusing, 1.0, Complex64::new(1e-6, 1.0));
        assert!(matches!(bad_p0, Err(Error::InvalidConfig(_))));
    }
}
