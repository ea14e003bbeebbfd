//! Classical baselines: Lie and Strang splitting, exponential Euler.
//!
//! The splitting flows rotate phases pointwise on the computational grid and
//! conserve the discrete mass exactly; padding would not make the
//! non-polynomial phase flow alias-free and its truncation would leak mass.

use num_complex::Complex64;

use super::{on_working_grid, SchemeConfig};
use crate::spectral::{cubic, SpectralField};

/// Exact flow of `u_t = iλ|u|²u` over time `t`, pointwise in physical space.
fn nonlinear_phase(u: &SpectralField, t: f64, lambda: f64) -> SpectralField {
    u.to_physical()
        .map(|w| w * Complex64::from_polar(1.0, lambda * t * w.norm_sqr()))
        .to_spectral()
}

/// `e^{iτ∂x²}` after the exact nonlinear phase rotation.
pub fn lie_step(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    let lambda = cfg.lambda.lambda();
    nonlinear_phase(u, cfg.tau, lambda).free_flight(cfg.tau)
}

/// Half linear flight, full nonlinear phase flow, half linear flight.
pub fn strang_step(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    let lambda = cfg.lambda.lambda();
    let half = 0.5 * cfg.tau;
    nonlinear_phase(&u.free_flight(half), cfg.tau, lambda).free_flight(half)
}

/// `e^{iτ∂x²}(u + iλτ|u|²u)`: Duhamel with the integrand frozen at the
/// start of the step.
pub fn exp_euler_step(u: &SpectralField, cfg: &SchemeConfig) -> SpectralField {
    let factor = Complex64::new(0.0, cfg.lambda.lambda() * cfg.tau);
    let kick = on_working_grid(u, cfg, cubic);
    (u + &(&kick * factor)).free_flight(cfg.tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{Nonlinearity, Scheme};
    use crate::spectral::Grid;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn constant_cfg(a: Complex64, scheme: Scheme, tau: f64, lambda: Nonlinearity) -> (SpectralField, SchemeConfig) {
        let u = SpectralField::mode(&Grid::new(8).unwrap(), 0, a);
        let cfg = SchemeConfig::for_initial_data(scheme, tau, lambda, &u).unwrap();
        (u, cfg)
    }

    #[test]
    fn splittings_exact_on_constants() {
        let a = c(0.9, -0.3);
        let tau = 0.4;
        for lambda in [Nonlinearity::Defocusing, Nonlinearity::Focusing] {
            let exact = a * c(0.0, lambda.lambda() * tau * a.norm_sqr()).exp();
            let (u, cfg) = constant_cfg(a, Scheme::Lie, tau, lambda);
            assert!((lie_step(&u, &cfg).coeff(0) - exact).norm() < 1e-15);
            assert!((strang_step(&u, &cfg).coeff(0) - exact).norm() < 1e-15);
        }
    }

    #[test]
    fn exp_euler_on_constants() {
        let a = c(0.9, -0.3);
        let tau = 0.4;
        let (u, cfg) = constant_cfg(a, Scheme::ExpEuler, tau, Nonlinearity::Defocusing);
        let expected = a * (1.0 + c(0.0, -tau * a.norm_sqr()));
        assert!((exp_euler_step(&u, &cfg).coeff(0) - expected).norm() < 1e-15);
    }

    #[test]
    fn zero_stays_zero() {
        let (u, cfg) = constant_cfg(c(0.0, 0.0), Scheme::Lie, 0.1, Nonlinearity::Defocusing);
        assert_eq!(lie_step(&u, &cfg).mass(), 0.0);
        assert_eq!(strang_step(&u, &cfg).mass(), 0.0);
        assert_eq!(exp_euler_step(&u, &cfg).mass(), 0.0);
    }

    #[test]
    fn splittings_conserve_mass() {
        let g = Grid::new(32).unwrap();
        let u = SpectralField::from_modes(&g, |k| c(1.0 / (1.0 + (k * k) as f64), 0.3 / (3.0 + k.abs() as f64)));
        let cfg = SchemeConfig::for_initial_data(Scheme::Lie, 0.05, Nonlinearity::Defocusing, &u).unwrap();
        let m = u.mass();
        assert!((lie_step(&u, &cfg).mass() - m).abs() < 1e-14);
        assert!((strang_step(&u, &cfg).mass() - m).abs() < 1e-14);
    }

    #[test]
    fn lie_reproduces_plane_wave() {
        // e^{ix} evolves to e^{i(x - 2t)} for λ = -1; each Lie factor is exact on it.
        let g = Grid::new(16).unwrap();
        let u = SpectralField::mode(&g, 1, c(1.0, 0.0));
        let tau = 0.1;
        let cfg = SchemeConfig::for_initial_data(Scheme::Lie, tau, Nonlinearity::Defocusing, &u).unwrap();
        let next = lie_step(&u, &cfg);
        assert!((next.coeff(1) - c(0.0, -2.0 * tau).exp()).norm() < 1e-14);
    }
}
