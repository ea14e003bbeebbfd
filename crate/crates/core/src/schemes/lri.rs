//! The low-regularity Fourier integrator Ψ, its twisted-variable form Φⁿ and
//! the mass-corrected step built on top of it.
//!
//! With `s = -λ` and `u = uⁿ`,
//!
//! ```text
//! Ψ(u) = e^{iτ(s(-2M₀ - 2P₀∂x⁻¹) + ∂x²)} u - iτs Π₀(|u|²u) + 2iτs M₀ Π₀(u)
//!      - (s/2) ∂x⁻²[(e^{-iτ∂x²}ū) · e^{iτ∂x²}(u²)] + (s/2) e^{iτ∂x²} ∂x⁻²[|u|²u]
//!      + s ∂x⁻¹[(e^{iτ∂x²}u) · ∂x⁻¹|e^{iτ∂x²}u|²] - s e^{iτ∂x²} ∂x⁻¹[u · ∂x⁻¹|u|²]
//! ```
//!
//! which for λ = -1 is the scheme as derived; the λ = +1 variant flips the
//! sign of every term of nonlinear origin.

use num_complex::Complex64;

use super::{on_working_grid, SchemeConfig, StepDiagnostics};
use crate::error::{Error, Result};
use crate::spectral::{cubic, imaginary_unit, modulus_squared, product_unchecked, SpectralField};

/// Symbol of `e^{iτ(s(-2M₀ - 2P₀∂x⁻¹) + ∂x²)}` at wavenumber `k`. Unit modulus
/// whenever `P₀` is purely imaginary.
pub fn combined_propagator_symbol(k: i64, cfg: &SchemeConfig) -> Complex64 {
    twisted_phase_symbol(k, cfg) * Complex64::from_polar(1.0, -cfg.tau * (k * k) as f64)
}

/// Symbol of `e^{s(-2iτM₀ - 2iτP₀∂x⁻¹)}`.
fn twisted_phase_symbol(k: i64, cfg: &SchemeConfig) -> Complex64 {
    let i = imaginary_unit();
    let s = cfg.lambda.duhamel_factor();
    let tau = cfg.tau;
    let exponent = if k == 0 {
        -2.0 * i * tau * s * cfg.m0
    } else {
        // P₀ ∂x⁻¹ acts on mode k as P₀ / (ik).
        let p_over_ik = cfg.p0 / (i * k as f64);
        -2.0 * i * tau * s * (cfg.m0 + p_over_ik)
    };
    exponent.exp()
}

fn psi(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    let i = imaginary_unit();
    let tau = cfg.tau;
    let s = cfg.lambda.duhamel_factor();

    let propagated = u.apply_multiplier(|k| combined_propagator_symbol(k, cfg));
    let cube = cubic(u);
    let zero_mode_terms = -i * tau * s * cube.zero_mode() + 2.0 * i * tau * s * cfg.m0 * u.zero_mode();

    let flown = u.free_flight(tau);
    let conj_back = u.conj().free_flight(-tau);
    let square_flown = product_unchecked(u, u, false).free_flight(tau);
    let quadratic_pair = product_unchecked(&conj_back, &square_flown, false).inv_dx2();
    let cube_pair = cube.inv_dx2().free_flight(tau);

    let flown_mass = modulus_squared(&flown).inv_dx();
    let flown_term = product_unchecked(&flown, &flown_mass, false).inv_dx();
    let start_mass = modulus_squared(u).inv_dx();
    let start_term = product_unchecked(u, &start_mass, false).inv_dx().free_flight(tau);

    let nonlinear = &(&(&cube_pair - &quadratic_pair) * 0.5) + &(&flown_term - &start_term);
    (&propagated + &(&nonlinear * s)).add_constant(zero_mode_terms)
}

/// One step `uⁿ⁺¹ = Ψ(uⁿ)` of the first-order low-regularity integrator.
pub fn lri_step(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    on_working_grid(u, cfg, |w| psi(w, cfg))
}

/// `F(U) = Ψ(U) - e^{iτ∂x²}U`.
pub fn f_map(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    &lri_step(u, cfg) - &u.free_flight(cfg.tau)
}

struct Correction {
    psi: SpectralField,
    flown: SpectralField,
    f_norm_l2: f64,
    /// `Re Π₀(F · e^{-iτ∂x²}Ū)`.
    pairing: f64,
    h: f64,
}

fn correction(u: &SpectralField, cfg: &SchemeConfig) -> Result<Correction> {
    if cfg.m0.is_nan() || cfg.m0 <= 0.0 {
        return Err(Error::DegenerateMass(cfg.m0));
    }
    let psi = lri_step(u, cfg);
    let flown = u.free_flight(cfg.tau);
    let f = &psi - &flown;
    // Π₀(f ḡ) = Σ_k f̂_k conj(ĝ_k) under the mean-value normalization.
    let pairing = f.inner(&flown).re;
    let f_mass = f.mass();
    let h = -(pairing + 0.5 * f_mass) / cfg.m0;
    Ok(Correction {
        psi,
        flown,
        f_norm_l2: f.sobolev_norm(0.0),
        pairing,
        h,
    })
}

/// `H(U) = -M₀⁻¹ [Re Π₀(F(U) e^{-iτ∂x²}Ū) + ½ Π₀(|F(U)|²)]`.
pub fn h_scalar(u: &SpectralField, cfg: &SchemeConfig) -> Result<f64> {
    correction(u, cfg).map(|c| c.h)
}

/// Mass-corrected step `Uⁿ⁺¹ = Ψ(Uⁿ) + G₁(Uⁿ) + G₂(Uⁿ)`.
///
/// Both corrections are real multiples of `e^{iτ∂x²}U`:
/// `G₁ = H e^{iτ∂x²}U` and `G₂ = (-½H² - M₀⁻¹ H Re Π₀(F e^{-iτ∂x²}Ū)) e^{iτ∂x²}U`.
pub fn nlri_step(
    u: &SpectralField,
    cfg: &SchemeConfig,
) -> Result<(SpectralField, StepDiagnostics)> {
    let c = correction(u, cfg)?;
    let g1 = c.h;
    let g2 = -0.5 * c.h * c.h - c.h * c.pairing / cfg.m0;
    let next = &c.psi + &(&c.flown * (g1 + g2));
    let diagnostics = StepDiagnostics {
        mass_after: next.mass(),
        f_norm_l2: c.f_norm_l2,
        h_value: c.h,
    };
    Ok((next, diagnostics))
}

fn phi(f: &SpectralField, step_index: usize, cfg: &SchemeConfig) -> SpectralField {
    let i = imaginary_unit();
    let tau = cfg.tau;
    let s = cfg.lambda.duhamel_factor();
    let t_n = step_index as f64 * tau;
    let t_next = (step_index + 1) as f64 * tau;

    let rotated = f.apply_multiplier(|k| twisted_phase_symbol(k, cfg));
    let w_now = f.free_flight(t_n);
    let w_next = f.free_flight(t_next);
    let cube_now = cubic(&w_now);
    let zero_mode_terms = 2.0 * i * tau * s * cfg.m0 * f.zero_mode() - i * tau * s * cube_now.zero_mode();

    let next_mass = modulus_squared(&w_next).inv_dx();
    let next_term = product_unchecked(&w_next, &next_mass, false)
        .inv_dx()
        .free_flight(-t_next);
    let now_mass = modulus_squared(&w_now).inv_dx();
    let now_term = product_unchecked(&w_now, &now_mass, false)
        .inv_dx()
        .free_flight(-t_n);

    let conj_next = f.conj().free_flight(-t_next);
    let square = product_unchecked(&w_now, &w_now, false).free_flight(tau);
    let quadratic_pair = product_unchecked(&conj_next, &square, false)
        .inv_dx2()
        .free_flight(-t_next);
    let cube_pair = cube_now.inv_dx2().free_flight(-t_n);

    let nonlinear = &(&next_term - &now_term) + &(&(&cube_pair - &quadratic_pair) * 0.5);
    (&rotated + &(&nonlinear * s)).add_constant(zero_mode_terms)
}

/// Twisted-variable map `vⁿ⁺¹ = Φⁿ(vⁿ)` with `t_n = nτ`. Untwisting,
/// `uⁿ = e^{it_n∂x²}vⁿ`, recovers the iterates of [`lri_step`].
pub fn twisted_phi_step(v: &SpectralField, step_index: usize, cfg: &SchemeConfig) -> SpectralField {
    on_working_grid(v, cfg, |w| phi(w, step_index, cfg))
}
