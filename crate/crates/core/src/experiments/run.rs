//! Trajectories, convergence studies and mass-drift studies.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::{fit_drift_order, fit_order, OrderFit};
use crate::error::{Error, Result};
use crate::schemes::{self, oracle_evolve, Scheme, SchemeConfig};
use crate::spectral::SpectralField;

/// One trajectory's measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scheme: Scheme,
    /// Step actually used, `t_final / steps`.
    pub tau: f64,
    pub n: usize,
    pub seed: u64,
    /// Sobolev exponent of the error norm, when an error was measured.
    pub gamma: Option<f64>,
    pub t_final: f64,
    /// `‖u(T) - u^{T/τ}‖_{H^γ}` against the reference solution.
    pub error: Option<f64>,
    /// `max_n |M(uⁿ) - M₀|` (endpoint drift only when invariants were not recorded).
    pub mass_drift: f64,
    pub wall_time: f64,
}

/// Records of one scheme over a sweep of step sizes, with the fitted order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub scheme: Scheme,
    pub n: usize,
    pub seed: u64,
    pub t_final: f64,
    /// Sorted by descending `tau`.
    pub records: Vec<RunRecord>,
    /// Fit of the error (convergence studies) or of the drift (mass studies).
    pub fit: Option<OrderFit>,
}

impl ConvergenceTable {
    pub fn fitted_order(&self) -> Option<f64> {
        self.fit.map(|f| f.order)
    }

    pub fn fit_residual(&self) -> Option<f64> {
        self.fit.map(|f| f.residual)
    }

    /// `(tau, error)` pairs, skipping records without an error.
    pub fn error_points(&self) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .filter_map(|r| r.error.map(|e| (r.tau, e)))
            .collect()
    }

    pub fn drift_points(&self) -> Vec<(f64, f64)> {
        self.records.iter().map(|r| (r.tau, r.mass_drift)).collect()
    }
}

/// Shared inputs of a study: initial data, its seed, the horizon and the
/// base configuration (step size and scheme are overridden per run).
#[derive(Clone, Debug)]
pub struct Study {
    pub u0: SpectralField,
    pub seed: u64,
    pub t_final: f64,
    pub base: SchemeConfig,
    /// Reference substeps per finest scheme step.
    pub reference_factor: usize,
}

impl Study {
    pub fn new(u0: SpectralField, seed: u64, t_final: f64, base: SchemeConfig) -> Self {
        Study {
            u0,
            seed,
            t_final,
            base,
            reference_factor: 100,
        }
    }

    pub fn reference_substeps(&self, finest_tau: f64) -> usize {
        ((self.reference_factor as f64 * self.t_final / finest_tau).ceil() as usize).max(1)
    }

    /// Reference solution at `t_final` from the RK4 oracle.
    pub fn reference(&self, finest_tau: f64) -> Result<SpectralField> {
        oracle_evolve(
            &self.u0,
            self.t_final,
            self.reference_substeps(finest_tau),
            &self.base,
        )
    }
}

/// Number of steps and the adjusted step for a horizon `t_final`.
pub fn step_plan(t_final: f64, tau: f64) -> (usize, f64) {
    if t_final == 0.0 {
        return (0, tau);
    }
    let steps = ((t_final / tau).round() as usize).max(1);
    (steps, t_final / steps as f64)
}

/// Iterates the configured stepper `round(t_final/τ)` times with τ adjusted
/// to land exactly on `t_final`.
pub fn run_trajectory(
    u0: &SpectralField,
    cfg: &SchemeConfig,
    t_final: f64,
    record_invariants: bool,
) -> Result<(SpectralField, RunRecord)> {
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "final time must be non-negative, got {t_final}"
        )));
    }
    cfg.validate()?;
    let (steps, tau) = step_plan(t_final, cfg.tau);
    let cfg = cfg.with_tau(tau);
    let start = Instant::now();
    let mut u = u0.clone();
    let mut drift = if record_invariants {
        (u.mass() - cfg.m0).abs()
    } else {
        0.0
    };
    for n in 0..steps {
        u = schemes::step(&u, &cfg)?;
        if !u.is_finite() {
            return Err(Error::BlowUp { step: n + 1 });
        }
        if record_invariants {
            drift = drift.max((u.mass() - cfg.m0).abs());
        }
    }
    if !record_invariants {
        drift = (u.mass() - cfg.m0).abs();
    }
    let record = RunRecord {
        scheme: cfg.scheme,
        tau,
        n: u0.n(),
        seed: 0,
        gamma: None,
        t_final,
        error: None,
        mass_drift: drift,
        wall_time: start.elapsed().as_secs_f64(),
    };
    Ok((u, record))
}

fn check_taus(taus: &[f64]) -> Result<()> {
    if taus.len() < 3 {
        return Err(Error::InvalidConfig(format!(
            "a sweep needs at least 3 step sizes, got {}",
            taus.len()
        )));
    }
    if taus.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidConfig("step sizes must be positive".into()));
    }
    if taus.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidConfig("step sizes must be strictly decreasing".into()));
    }
    Ok(())
}

fn unique(schemes: &[Scheme]) -> Vec<Scheme> {
    let mut out: Vec<Scheme> = Vec::new();
    for &s in schemes {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn sweep(
    study: &Study,
    schemes: &[Scheme],
    taus: &[f64],
    record_invariants: bool,
) -> Result<Vec<Vec<(SpectralField, RunRecord)>>> {
    schemes
        .iter()
        .map(|&scheme| {
            taus.par_iter()
                .map(|&tau| {
                    let cfg = study.base.with_scheme(scheme).with_tau(tau);
                    run_trajectory(&study.u0, &cfg, study.t_final, record_invariants)
                        .map(|(u, mut record)| {
                            record.seed = study.seed;
                            (u, record)
                        })
                        .map_err(|e| Error::Run {
                            scheme: scheme.label().to_string(),
                            tau,
                            source: Box::new(e),
                        })
                })
                .collect()
        })
        .collect()
}

/// Runs every scheme at every step size and measures `H^γ` errors against a
/// single oracle reference at `t_final`.
pub fn run_convergence(
    study: &Study,
    schemes: &[Scheme],
    taus: &[f64],
    gamma_norm: f64,
) -> Result<Vec<ConvergenceTable>> {
    check_taus(taus)?;
    if gamma_norm.is_nan() || gamma_norm < 0.0 {
        return Err(Error::InvalidConfig(format!(
            "error norm exponent must be non-negative, got {gamma_norm}"
        )));
    }
    let schemes = unique(schemes);
    let finest = taus[taus.len() - 1];
    let reference = study.reference(finest)?;
    let runs = sweep(study, &schemes, taus, false)?;
    Ok(schemes
        .iter()
        .zip(runs)
        .map(|(&scheme, runs)| {
            let records: Vec<RunRecord> = runs
                .into_iter()
                .map(|(u, mut record)| {
                    let diff = &u - &reference;
                    record.gamma = Some(gamma_norm);
                    record.error = Some(diff.sobolev_norm(gamma_norm));
                    record
                })
                .collect();
            table(study, scheme, records, |t| fit_order(&t.error_points()).ok())
        })
        .collect())
}

/// Tracks `max_n |M(uⁿ) - M₀|` per scheme and step size and fits its decay
/// with [`fit_drift_order`](super::fit_drift_order).
pub fn run_mass_drift(
    study: &Study,
    schemes: &[Scheme],
    taus: &[f64],
) -> Result<Vec<ConvergenceTable>> {
    check_taus(taus)?;
    let schemes = unique(schemes);
    let runs = sweep(study, &schemes, taus, true)?;
    Ok(schemes
        .iter()
        .zip(runs)
        .map(|(&scheme, runs)| {
            let records = runs.into_iter().map(|(_, r)| r).collect();
            table(study, scheme, records, |t| fit_drift_order(&t.drift_points()).ok())
        })
        .collect())
}

fn table(
    study: &Study,
    scheme: Scheme,
    mut records: Vec<RunRecord>,
    fit: impl Fn(&ConvergenceTable) -> Option<OrderFit>,
) -> ConvergenceTable {
    records.sort_by(|a, b| b.tau.total_cmp(&a.tau));
    let mut table = ConvergenceTable {
        scheme,
        n: study.u0.n(),
        seed: study.seed,
        t_final: study.t_final,
        records,
        fit: None,
    };
    table.fit = fit(&table);
    table
}
