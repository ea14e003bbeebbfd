//! Single-step studies on fixed data: local error, per-step mass drift and
//! the size of the mass correction.

use super::run::step_plan;
use crate::error::Result;
use crate::schemes::{self, oracle_evolve, Scheme, SchemeConfig};
use crate::spectral::SpectralField;

/// `(τ, ‖step(u) - oracle(u, τ)‖_{H^γ})` with `oracle_substeps` RK4 substeps
/// inside each reference step.
pub fn local_error(
    u: &SpectralField,
    base: &SchemeConfig,
    taus: &[f64],
    gamma: f64,
    oracle_substeps: usize,
) -> Result<Vec<(f64, f64)>> {
    taus.iter()
        .map(|&tau| {
            let cfg = base.with_tau(tau);
            let approx = schemes::step(u, &cfg)?;
            let exact = oracle_evolve(u, tau, oracle_substeps, &cfg)?;
            Ok((tau, (&approx - &exact).sobolev_norm(gamma)))
        })
        .collect()
}

/// `(τ, |M(step(u)) - M(u)|)` with `M₀` pinned to `M(u)`, so the measured
/// drift is exactly what one step adds.
pub fn per_step_mass_drift(
    u: &SpectralField,
    base: &SchemeConfig,
    taus: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let m = u.mass();
    taus.iter()
        .map(|&tau| {
            let cfg = SchemeConfig {
                tau,
                m0: m,
                ..base.clone()
            };
            let next = schemes::step(u, &cfg)?;
            Ok((tau, (next.mass() - m).abs()))
        })
        .collect()
}

/// `(τ, ‖step_a(u) - step_b(u)‖_{H^γ})` for two schemes sharing `base`.
pub fn per_step_deviation(
    u: &SpectralField,
    base: &SchemeConfig,
    taus: &[f64],
    schemes: (Scheme, Scheme),
    gamma: f64,
) -> Result<Vec<(f64, f64)>> {
    taus.iter()
        .map(|&tau| {
            let a = schemes::step(u, &base.with_scheme(schemes.0).with_tau(tau))?;
            let b = schemes::step(u, &base.with_scheme(schemes.1).with_tau(tau))?;
            Ok((tau, (&a - &b).sobolev_norm(gamma)))
        })
        .collect()
}

/// Iterates `Φⁿ` for `steps` steps and untwists, alongside plain iteration of
/// the LRI step; returns the largest relative `H^γ` gap
/// `‖uⁿ_twisted - uⁿ‖ / (1 + ‖uⁿ‖)` over the steps.
pub fn twisted_equivalence_gap(
    u0: &SpectralField,
    cfg: &SchemeConfig,
    steps: usize,
    gamma: f64,
) -> f64 {
    let tau = cfg.tau;
    let mut v = u0.clone();
    let mut u = u0.clone();
    let mut worst: f64 = 0.0;
    for n in 0..steps {
        v = schemes::twisted_phi_step(&v, n, cfg);
        u = schemes::lri_step(&u, cfg);
        let untwisted = v.free_flight((n + 1) as f64 * tau);
        let gap = (&untwisted - &u).sobolev_norm(gamma) / (1.0 + u.sobolev_norm(gamma));
        worst = worst.max(gap);
    }
    worst
}

/// Step sizes `start, start/2, …` while `≥ stop`.
pub fn halving(start: f64, stop: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut tau = start;
    while tau >= stop * (1.0 - 1e-12) {
        out.push(tau);
        tau /= 2.0;
    }
    out
}

/// Step sizes that divide `t_final` evenly, as `run_trajectory` would use.
pub fn adjusted(taus: &[f64], t_final: f64) -> Vec<f64> {
    taus.iter().map(|&t| step_plan(t_final, t).1).collect()
}
