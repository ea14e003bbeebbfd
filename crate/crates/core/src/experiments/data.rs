//! Seeded rough initial data of prescribed Sobolev regularity.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{Grid, PhysicalField, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoughDataSpec {
    pub n: usize,
    /// Regularity exponent: the noise is smoothed by `|l|^{-γ}`.
    pub gamma: f64,
    pub seed: u64,
}

impl RoughDataSpec {
    pub fn new(n: usize, gamma: f64, seed: u64) -> Result<Self> {
        let spec = RoughDataSpec { n, gamma, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.n.is_power_of_two() || self.n < 4 {
            return Err(Error::InvalidConfig(format!(
                "grid size must be a power of two and at least 4, got {}",
                self.n
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "regularity exponent must be non-negative, got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

/// `u₀ = |∂x|^{-γ}𝒰 / ‖|∂x|^{-γ}𝒰‖_{L∞}` with `𝒰 = rand + i·rand` sampled at
/// the nodes.
///
/// The generator is ChaCha8 seeded from `seed`; the `n` real parts are drawn
/// first, then the `n` imaginary parts, each uniform on [0, 1) with 53-bit
/// resolution. The result has zero mean and unit sup norm on the grid.
pub fn gen_rough_data(spec: &RoughDataSpec) -> Result<SpectralField> {
    spec.validate()?;
    let grid = Grid::new(spec.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let re: Vec<f64> = (0..spec.n).map(|_| rng.gen::<f64>()).collect();
    let im: Vec<f64> = (0..spec.n).map(|_| rng.gen::<f64>()).collect();
    let noise = PhysicalField::new(
        &grid,
        re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(),
    )?;

    let gamma = spec.gamma;
    let smoothed = noise.to_spectral().apply_multiplier(|l| {
        if l == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new((l.abs() as f64).powf(-gamma), 0.0)
        }
    });
    let physical = smoothed.to_physical();
    let sup = physical.max_abs();
    let normalized = physical.map(|v| v / sup).to_spectral();
    // Pin the mean to exactly zero; the transform round trip leaves ~1e-17.
    let mut coeffs = normalized.coeffs().to_vec();
    coeffs[0] = Complex64::new(0.0, 0.0);
    SpectralField::from_native(&grid, coeffs)
}
