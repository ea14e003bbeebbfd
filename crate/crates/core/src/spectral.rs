//! Discrete Fourier representation of 2π-periodic complex fields.
//!
//! Coefficients use the mean-value normalization
//! `û_k = (1/n) Σ_j e^{-ik x_j} u(x_j)`, so `û_0` is the zero mode (the mean)
//! and `Σ_k |û_k|²` is the mass `(1/2π)∫|u|²` with no stray factors.
//!
//! Coefficients are stored in the FFT-native layout (`0, 1, …, n/2-1, -n/2,
//! …, -1`). Multiplier code never indexes by position: it goes through
//! [`Grid::wavenumber`] / [`Grid::index_of`].

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Uniform collocation grid on (0, 2π) with cached FFT plans.
pub struct Grid {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n", &self.n).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

fn grid_cache() -> &'static Mutex<HashMap<usize, Arc<Grid>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Grid>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Grid {
    /// Shared grid of `n` points. Plans are built once per size and reused
    /// process-wide; the planned FFTs are immutable and safe to share.
    pub fn new(n: usize) -> Result<Arc<Grid>> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(n));
        }
        let mut cache = grid_cache().lock().unwrap_or_else(|e| e.into_inner());
        let grid = cache.entry(n).or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Grid {
                n,
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        });
        Ok(Arc::clone(grid))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Wavenumber stored at array position `index`.
    pub fn wavenumber(&self, index: usize) -> i64 {
        let half = self.n / 2;
        if index < half {
            index as i64
        } else {
            index as i64 - self.n as i64
        }
    }

    /// Wavenumbers in storage order.
    pub fn wavenumbers(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.wavenumber(i)).collect()
    }

    /// Array position of wavenumber `k`, which must lie in `[-n/2, n/2)`.
    pub fn index_of(&self, k: i64) -> usize {
        let half = (self.n / 2) as i64;
        assert!(
            (-half..half).contains(&k),
            "wavenumber {k} outside [-{half}, {half})"
        );
        k.rem_euclid(self.n as i64) as usize
    }

    pub fn contains(&self, k: i64) -> bool {
        let half = (self.n / 2) as i64;
        (-half..half).contains(&k)
    }

    /// Largest wavenumber modulus on the grid (`n/2`).
    pub fn max_wavenumber(&self) -> i64 {
        (self.n / 2) as i64
    }

    pub(crate) fn forward_plan(&self) -> Arc<dyn Fft<f64>> {
        Arc::clone(&self.forward)
    }

    pub(crate) fn inverse_plan(&self) -> Arc<dyn Fft<f64>> {
        Arc::clone(&self.inverse)
    }

    fn check_same(&self, other: &Grid) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

/// Collocation-side samples `u(x_j)`.
#[derive(Clone, Debug)]
pub struct PhysicalField {
    grid: Arc<Grid>,
    values: Vec<Complex64>,
}

/// Fourier coefficients `û_k` of a periodic field.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Arc<Grid>,
    coeffs: Vec<Complex64>,
}

impl PartialEq for SpectralField {
    fn eq(&self, other: &Self) -> bool {
        self.grid.n == other.grid.n && self.coeffs == other.coeffs
    }
}

impl PhysicalField {
    pub fn new(grid: &Arc<Grid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::GridMismatch {
                left: grid.n,
                right: values.len(),
            });
        }
        Ok(PhysicalField {
            grid: Arc::clone(grid),
            values,
        })
    }

    /// Samples `f(x_j)` at every node.
    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.n).map(|j| f(grid.node(j))).collect();
        PhysicalField {
            grid: Arc::clone(grid),
            values,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        PhysicalField {
            grid: Arc::clone(&self.grid),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// `û_k = (1/n) Σ_j e^{-ik x_j} u(x_j)`.
    pub fn to_spectral(&self) -> SpectralField {
        let mut coeffs = self.values.clone();
        self.grid.forward.process(&mut coeffs);
        let scale = 1.0 / self.grid.n as f64;
        for c in &mut coeffs {
            *c *= scale;
        }
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs,
        }
    }
}

impl SpectralField {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        SpectralField {
            grid: Arc::clone(grid),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n],
        }
    }

    /// Coefficients in storage (FFT-native) order.
    pub fn from_native(grid: &Arc<Grid>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n {
            return Err(Error::GridMismatch {
                left: grid.n,
                right: coeffs.len(),
            });
        }
        Ok(SpectralField {
            grid: Arc::clone(grid),
            coeffs,
        })
    }

    /// Coefficients listed by ascending wavenumber `-n/2, …, n/2-1`.
    pub fn from_ascending(grid: &Arc<Grid>, ascending: &[Complex64]) -> Result<Self> {
        if ascending.len() != grid.n {
            return Err(Error::GridMismatch {
                left: grid.n,
                right: ascending.len(),
            });
        }
        let half = (grid.n / 2) as i64;
        let mut field = SpectralField::zeros(grid);
        for (pos, &c) in ascending.iter().enumerate() {
            field.coeffs[grid.index_of(pos as i64 - half)] = c;
        }
        Ok(field)
    }

    /// Field whose coefficient at wavenumber `k` is `f(k)`.
    pub fn from_modes(grid: &Arc<Grid>, f: impl Fn(i64) -> Complex64) -> Self {
        let coeffs = (0..grid.n).map(|i| f(grid.wavenumber(i))).collect();
        SpectralField {
            grid: Arc::clone(grid),
            coeffs,
        }
    }

    /// Single Fourier mode `amplitude · e^{ikx}`.
    pub fn mode(grid: &Arc<Grid>, k: i64, amplitude: Complex64) -> Self {
        let mut field = SpectralField::zeros(grid);
        field.coeffs[grid.index_of(k)] = amplitude;
        field
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs[self.grid.index_of(k)]
    }

    pub fn ascending(&self) -> Vec<Complex64> {
        let half = (self.grid.n / 2) as i64;
        (-half..half).map(|k| self.coeff(k)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `u(x_j) = Σ_k û_k e^{ik x_j}`.
    pub fn to_physical(&self) -> PhysicalField {
        let mut values = self.coeffs.clone();
        self.grid.inverse.process(&mut values);
        PhysicalField {
            grid: Arc::clone(&self.grid),
            values,
        }
    }

    /// Applies the Fourier multiplier `symbol(k)` mode by mode.
    pub fn apply_multiplier(&self, symbol: impl Fn(i64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * symbol(self.grid.wavenumber(i)))
            .collect();
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs,
        }
    }

    /// Linear Schrödinger propagator `e^{it∂x²}`: multiplies mode `k` by `e^{-itk²}`.
    pub fn free_flight(&self, t: f64) -> Self {
        if t == 0.0 {
            return self.clone();
        }
        self.apply_multiplier(|k| Complex64::from_polar(1.0, -t * (k * k) as f64))
    }

    /// `∂x⁻¹`: `(ik)⁻¹` off the zero mode, zero mode annihilated.
    pub fn inv_dx(&self) -> Self {
        self.apply_multiplier(|k| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -1.0 / k as f64)
            }
        })
    }

    /// `∂x⁻²`, the square of [`SpectralField::inv_dx`]: `-k⁻²` off the zero mode.
    pub fn inv_dx2(&self) -> Self {
        self.inv_dx().inv_dx()
    }

    /// `Π₀`, the mean value.
    pub fn zero_mode(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `‖f‖_{H^γ} = (2π Σ_k (1+k²)^γ |f̂_k|²)^{1/2}`.
    pub fn sobolev_norm(&self, gamma: f64) -> f64 {
        assert!(gamma >= 0.0, "negative Sobolev exponent {gamma}");
        let sum: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.grid.wavenumber(i) as f64;
                let weight = if gamma == 0.0 {
                    1.0
                } else {
                    (1.0 + k * k).powf(gamma)
                };
                weight * c.norm_sqr()
            })
            .sum();
        (2.0 * PI * sum).sqrt()
    }

    /// `M(u) = (1/2π)∫|u|²`, evaluated as `Σ_k |û_k|²`.
    pub fn mass(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `P(u) = (1/2π)∫ u ∂x ū`, evaluated as `-i Σ_k k |û_k|²`.
    pub fn momentum(&self) -> Complex64 {
        let s: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| self.grid.wavenumber(i) as f64 * c.norm_sqr())
            .sum();
        Complex64::new(0.0, -s)
    }

    /// Coefficients of the complex conjugate field `ū`.
    pub fn conj(&self) -> Self {
        let n = self.grid.n;
        let coeffs = (0..n).map(|i| self.coeffs[(n - i) % n].conj()).collect();
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs,
        }
    }

    /// `Σ_k f̂_k conj(ĝ_k)`, i.e. `Π₀(f ḡ)`.
    pub fn inner(&self, other: &SpectralField) -> Complex64 {
        assert_same_grid(self, other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Adds `c` to the zero mode.
    pub fn add_constant(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    pub fn checked_sub(&self, other: &SpectralField) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(self - other)
    }

    /// Zero-pads onto a finer grid of `m ≥ n` points.
    pub fn padded(&self, m: usize) -> Result<Self> {
        let fine = Grid::new(m)?;
        if m < self.grid.n {
            return Err(Error::GridMismatch {
                left: self.grid.n,
                right: m,
            });
        }
        let mut out = SpectralField::zeros(&fine);
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[fine.index_of(self.grid.wavenumber(i))] = c;
        }
        Ok(out)
    }

    /// Keeps the modes `[-m/2, m/2)` of this field on a coarser grid.
    pub fn truncated(&self, coarse: &Arc<Grid>) -> Self {
        assert!(coarse.n <= self.grid.n);
        SpectralField::from_modes(coarse, |k| self.coeff(k))
    }

    pub fn max_abs_diff(&self, other: &SpectralField) -> f64 {
        assert_same_grid(self, other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json_value(&self) -> FieldFile {
        FieldFile {
            n: self.grid.n,
            coeffs: self.ascending().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn from_json_value(file: &FieldFile) -> Result<Self> {
        let grid = Grid::new(file.n)?;
        let ascending: Vec<Complex64> = file
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        SpectralField::from_ascending(&grid, &ascending)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("field serializes")
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: FieldFile = serde_json::from_str(&text).map_err(|e| Error::FieldFormat {
            path: path.to_path_buf(),
            source: e,
        })?;
        SpectralField::from_json_value(&file)
    }
}

/// On-disk field layout: `{ "n": int, "coeffs": [[re, im], ...] }`, ascending wavenumber.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldFile {
    pub n: usize,
    pub coeffs: Vec<[f64; 2]>,
}

fn assert_same_grid(a: &SpectralField, b: &SpectralField) {
    assert_eq!(
        a.grid.n, b.grid.n,
        "fields live on different grids ({} vs {})",
        a.grid.n, b.grid.n
    );
}

impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: &SpectralField) -> SpectralField {
        assert_same_grid(self, rhs);
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: &SpectralField) -> SpectralField {
        assert_same_grid(self, rhs);
        SpectralField {
            grid: Arc::clone(&self.grid),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<Complex64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: Complex64) -> SpectralField {
        self.scale(rhs)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

/// Collocation product `a·b` (or `ā·b`), without dealiasing.
pub fn pointwise_product(
    a: &SpectralField,
    b: &SpectralField,
    conjugate_a: bool,
) -> Result<SpectralField> {
    a.grid.check_same(&b.grid)?;
    Ok(product_unchecked(a, b, conjugate_a))
}

/// Collocation product evaluated on a 3n/2 zero-padded grid and truncated
/// back, which removes aliasing from a single quadratic product.
pub fn pointwise_product_dealiased(
    a: &SpectralField,
    b: &SpectralField,
    conjugate_a: bool,
) -> Result<SpectralField> {
    a.grid.check_same(&b.grid)?;
    let n = a.grid.n;
    // 3n/2 must stay even for the padded grid.
    let m = 3 * n / 2 + (3 * n / 2) % 2;
    let pa = a.padded(m)?;
    let pb = b.padded(m)?;
    Ok(product_unchecked(&pa, &pb, conjugate_a).truncated(&a.grid))
}

pub(crate) fn product_unchecked(
    a: &SpectralField,
    b: &SpectralField,
    conjugate_a: bool,
) -> SpectralField {
    let pa = a.to_physical();
    let pb = b.to_physical();
    let values = pa
        .values
        .iter()
        .zip(&pb.values)
        .map(|(x, y)| if conjugate_a { x.conj() * y } else { x * y })
        .collect();
    PhysicalField {
        grid: Arc::clone(&a.grid),
        values,
    }
    .to_spectral()
}

/// `|u|²u` by collocation.
pub(crate) fn cubic(u: &SpectralField) -> SpectralField {
    u.to_physical().map(|v| v * v.norm_sqr()).to_spectral()
}

/// `|u|²` by collocation.
pub(crate) fn modulus_squared(u: &SpectralField) -> SpectralField {
    u.to_physical()
        .map(|v| Complex64::new(v.norm_sqr(), 0.0))
        .to_spectral()
}

pub(crate) fn imaginary_unit() -> Complex64 {
    I
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid(n: usize) -> Arc<Grid> {
        Grid::new(n).unwrap()
    }

    fn random_field(grid: &Arc<Grid>, seed: u64) -> SpectralField {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..grid.n())
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        SpectralField::from_native(grid, coeffs).unwrap()
    }

    #[test]
    fn grid_layout() {
        let g = grid(8);
        assert_eq!(g.wavenumbers(), vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for k in -4..4 {
            assert_eq!(g.wavenumber(g.index_of(k)), k);
        }
        let nodes = g.nodes();
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(nodes[0] == 0.0 && *nodes.last().unwrap() < 2.0 * PI);
        let mut ks = g.wavenumbers();
        ks.sort();
        assert_eq!(ks, (-4..4).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_odd_and_tiny_grids() {
        assert!(matches!(Grid::new(7), Err(Error::InvalidGrid(7))));
        assert!(matches!(Grid::new(2), Err(Error::InvalidGrid(2))));
        assert!(Grid::new(12).is_ok());
    }

    #[test]
    fn constant_has_only_zero_mode() {
        let g = grid(8);
        let s = PhysicalField::from_fn(&g, |_| c(3.0, 0.0)).to_spectral();
        assert!((s.coeff(0) - c(3.0, 0.0)).norm() < 1e-15);
        for k in -4..4 {
            if k != 0 {
                assert!(s.coeff(k).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn single_mode_transform() {
        let g = grid(8);
        let s = PhysicalField::from_fn(&g, |x| c(0.0, x).exp()).to_spectral();
        for k in -4..4 {
            let expected = if k == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) };
            assert!((s.coeff(k) - expected).norm() < 1e-15, "k = {k}");
        }
    }

    #[test]
    fn two_plus_sine() {
        let g = grid(16);
        let s = PhysicalField::from_fn(&g, |x| c(2.0 + x.sin(), 0.0)).to_spectral();
        // sin x = (e^{ix} - e^{-ix}) / 2i
        assert!((s.coeff(0) - c(2.0, 0.0)).norm() < 1e-15);
        assert!((s.coeff(1) - c(0.0, -0.5)).norm() < 1e-15);
        assert!((s.coeff(-1) - c(0.0, 0.5)).norm() < 1e-15);
        assert!((s.zero_mode() - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inversion() {
        let g = grid(8);
        let one = SpectralField::mode(&g, 0, c(1.0, 0.0)).to_physical();
        assert!(one.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-15));
        let wave = SpectralField::mode(&g, 1, c(1.0, 0.0)).to_physical();
        for (j, v) in wave.values().iter().enumerate() {
            assert!((v - c(0.0, g.node(j)).exp()).norm() < 1e-15);
        }
    }

    #[test]
    fn free_flight_examples() {
        let g = grid(16);
        let s = random_field(&g, 3);
        assert_eq!(s.free_flight(0.0), s);
        let tau = 0.37;
        let one = SpectralField::mode(&g, 1, c(1.0, 0.0)).free_flight(tau);
        assert!((one.coeff(1) - Complex64::from_polar(1.0, -tau)).norm() < 1e-15);
        let moved = s.free_flight(1.3);
        assert!((moved.sobolev_norm(0.0) - s.sobolev_norm(0.0)).abs() < 1e-13);
    }

    #[test]
    fn inverse_derivative_examples() {
        let g = grid(16);
        let constant = SpectralField::mode(&g, 0, c(2.5, 1.0));
        assert!(constant.inv_dx().mass() == 0.0);
        assert!(constant.inv_dx2().mass() == 0.0);

        let wave = SpectralField::mode(&g, 1, c(1.0, 0.0));
        assert!((wave.inv_dx().coeff(1) - c(0.0, -1.0)).norm() < 1e-15);
        assert!((wave.inv_dx2().coeff(1) - c(-1.0, 0.0)).norm() < 1e-15);

        let sine = PhysicalField::from_fn(&g, |x| c(x.sin(), 0.0)).to_spectral();
        let anti = sine.inv_dx().to_physical();
        for (j, v) in anti.values().iter().enumerate() {
            assert!((v - c(-g.node(j).cos(), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn inv_dx2_is_inv_dx_squared() {
        let g = grid(32);
        let s = random_field(&g, 11);
        assert_eq!(s.inv_dx2(), s.inv_dx().inv_dx());
    }

    #[test]
    fn zero_mode_examples() {
        let g = grid(8);
        assert_eq!(SpectralField::mode(&g, 0, c(4.0, -1.0)).zero_mode(), c(4.0, -1.0));
        assert_eq!(SpectralField::mode(&g, 1, c(1.0, 0.0)).zero_mode(), c(0.0, 0.0));
    }

    #[test]
    fn sobolev_examples() {
        let g = grid(8);
        let one = SpectralField::mode(&g, 0, c(1.0, 0.0));
        for gamma in [0.0, 0.5, 1.0, 2.0, 3.7] {
            assert!((one.sobolev_norm(gamma) - (2.0 * PI).sqrt()).abs() < 1e-14);
        }
        let wave = SpectralField::mode(&g, 1, c(1.0, 0.0));
        assert!((wave.sobolev_norm(1.0) - (4.0 * PI).sqrt()).abs() < 1e-14);
        assert_eq!(SpectralField::zeros(&g).sobolev_norm(2.0), 0.0);
    }

    #[test]
    fn mass_examples() {
        let g = grid(8);
        let a = c(0.3, -1.2);
        assert!((PhysicalField::from_fn(&g, |_| a).to_spectral().mass() - a.norm_sqr()).abs() < 1e-15);
        assert!((SpectralField::mode(&g, 1, c(1.0, 0.0)).mass() - 1.0).abs() < 1e-15);
        let u = PhysicalField::from_fn(&g, |x| c(0.0, x).exp() * 2.0 + c(0.0, -3.0 * x).exp())
            .to_spectral();
        assert!((u.mass() - 5.0).abs() < 1e-14);
    }

    #[test]
    fn momentum_examples() {
        let g = grid(8);
        assert_eq!(SpectralField::mode(&g, 0, c(2.0, 0.0)).momentum(), c(0.0, 0.0));
        let wave = SpectralField::mode(&g, 1, c(1.0, 0.0));
        assert!((wave.momentum() - c(0.0, -1.0)).norm() < 1e-15);
        let cosine = PhysicalField::from_fn(&g, |x| c(2.0 * x.cos(), 0.0)).to_spectral();
        assert!(cosine.momentum().norm() < 1e-15);
    }

    #[test]
    fn product_examples() {
        let g = grid(8);
        let two = SpectralField::mode(&g, 0, c(2.0, 0.0));
        let three = SpectralField::mode(&g, 0, c(3.0, 0.0));
        let six = pointwise_product(&two, &three, false).unwrap();
        assert!((six.coeff(0) - c(6.0, 0.0)).norm() < 1e-15);

        let e1 = SpectralField::mode(&g, 1, c(1.0, 0.0));
        let one = pointwise_product(&e1, &e1, true).unwrap();
        assert!((one.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(one.sobolev_norm(0.0) - (2.0 * PI).sqrt() < 1e-14);

        let e2 = SpectralField::mode(&g, 2, c(1.0, 0.0));
        let e3 = pointwise_product(&e1, &e2, false).unwrap();
        assert!((e3.coeff(3) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(e3.mass() - 1.0 < 1e-14);
    }

    #[test]
    fn product_rejects_mismatched_grids() {
        let a = SpectralField::zeros(&grid(8));
        let b = SpectralField::zeros(&grid(16));
        assert!(matches!(
            pointwise_product(&a, &b, false),
            Err(Error::GridMismatch { left: 8, right: 16 })
        ));
        assert!(pointwise_product_dealiased(&a, &b, false).is_err());
    }

    #[test]
    fn dealiased_product_drops_aliased_modes() {
        let g = grid(8);
        // e^{3ix}·e^{3ix} = e^{6ix} aliases onto k = -2 without padding.
        let e3 = SpectralField::mode(&g, 3, c(1.0, 0.0));
        let aliased = pointwise_product(&e3, &e3, false).unwrap();
        assert!((aliased.coeff(-2) - c(1.0, 0.0)).norm() < 1e-14);
        let clean = pointwise_product_dealiased(&e3, &e3, false).unwrap();
        assert!(clean.mass() < 1e-28);
        // In-band products are untouched.
        let e1 = SpectralField::mode(&g, 1, c(1.0, 0.0));
        let e2 = SpectralField::mode(&g, 2, c(1.0, 0.0));
        let p = pointwise_product_dealiased(&e1, &e2, false).unwrap();
        assert!((p.coeff(3) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn conj_matches_physical_conjugate() {
        let g = grid(16);
        let s = random_field(&g, 5);
        let via_physical = s.to_physical().map(|v| v.conj()).to_spectral();
        assert!(s.conj().max_abs_diff(&via_physical) < 1e-15);
    }

    #[test]
    fn padding_round_trip() {
        let g = grid(16);
        let s = random_field(&g, 9);
        let p = s.padded(32).unwrap();
        assert_eq!(p.n(), 32);
        assert_eq!(p.truncated(&g), s);
        assert!((p.mass() - s.mass()).abs() < 1e-15);
    }

    #[test]
    fn json_layout() {
        let g = grid(4);
        let s = SpectralField::from_modes(&g, |k| c(k as f64, -(k as f64) / 2.0));
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"n":4,"coeffs":[[-2.0,1.0],[-1.0,0.5],[0.0,-0.0],[1.0,-0.5]]}"#
        );
        let back = SpectralField::from_json_value(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_length_mismatch_rejected() {
        let file = FieldFile {
            n: 8,
            coeffs: vec![[0.0, 0.0]; 4],
        };
        assert!(matches!(
            SpectralField::from_json_value(&file),
            Err(Error::GridMismatch { .. })
        ));
    }
}
