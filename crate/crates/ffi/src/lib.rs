//! C ABI over the `nls-lri` solver.
//!
//! Fields cross the boundary as opaque [`NlsField`] handles owned by the
//! caller and released with [`nls_field_free`]. Coefficients are exchanged as
//! separate real and imaginary arrays in ascending wavenumber order
//! `-n/2 … n/2-1`. Every fallible call returns an [`NlsStatus`]; the message
//! of the most recent failure on the calling thread is available through
//! [`nls_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nls_lri::experiments::{gen_rough_data, run_trajectory, RoughDataSpec};
use nls_lri::{Error, Grid, Nonlinearity, Scheme, SchemeConfig, SpectralField};
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlsStatus {
    Ok = 0,
    /// The field became non-finite during a run.
    BlowUp = 1,
    /// A parameter was out of range (grid size, step, scheme, lambda, ...).
    InvalidArgument = 2,
    /// File could not be read, written or parsed.
    Io = 3,
    NullPointer = 4,
    /// The mass-corrected scheme was asked to run on zero initial mass.
    DegenerateMass = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Time integrator selector, mirroring the library's `Scheme`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlsScheme {
    Lri = 0,
    Nlri = 1,
    Lie = 2,
    Strang = 3,
    ExpEuler = 4,
    Oracle = 5,
}

impl From<NlsScheme> for Scheme {
    fn from(s: NlsScheme) -> Self {
        match s {
            NlsScheme::Lri => Scheme::Lri,
            NlsScheme::Nlri => Scheme::Nlri,
            NlsScheme::Lie => Scheme::Lie,
            NlsScheme::Strang => Scheme::Strang,
            NlsScheme::ExpEuler => Scheme::ExpEuler,
            NlsScheme::Oracle => Scheme::Oracle,
        }
    }
}

/// Opaque spectral field.
pub struct NlsField {
    inner: SpectralField,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("interior nul bytes were replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(error: &Error) -> NlsStatus {
    if error.is_blow_up() {
        NlsStatus::BlowUp
    } else if error.is_io() {
        NlsStatus::Io
    } else if matches!(error.root(), Error::DegenerateMass(_)) {
        NlsStatus::DegenerateMass
    } else {
        NlsStatus::InvalidArgument
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NlsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NlsStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("{name} must not be null"));
            NlsStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(message))) => {
            set_last_error(message);
            NlsStatus::InvalidArgument
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {message}"));
            NlsStatus::Internal
        }
    }
}

unsafe fn field_ref<'a>(field: *const NlsField, name: &'static str) -> Result<&'a SpectralField, Failure> {
    // SAFETY: the caller passes a handle obtained from this library or null.
    unsafe { field.as_ref() }.map(|f| &f.inner).ok_or(Failure::Null(name))
}

unsafe fn out_ref<'a, T>(out: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller passes a writable location or null.
    unsafe { out.as_mut() }.ok_or(Failure::Null(name))
}

unsafe fn path_arg(path: *const c_char) -> Result<String, Failure> {
    if path.is_null() {
        return Err(Failure::Null("path"));
    }
    // SAFETY: non-null and nul-terminated per the API contract.
    unsafe { CStr::from_ptr(path) }
        .to_str()
        .map(str::to_string)
        .map_err(|_| Failure::Invalid("path is not valid UTF-8".into()))
}

fn into_handle(field: SpectralField) -> *mut NlsField {
    Box::into_raw(Box::new(NlsField { inner: field }))
}

/// Builds a field on an `n`-point grid from `n` real and `n` imaginary
/// parts in ascending wavenumber order.
///
/// # Safety
/// `re` and `im` must each point to `n` readable doubles; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_from_coeffs(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut NlsField,
) -> NlsStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = ptr::null_mut();
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("coefficient array"));
        }
        let grid = Grid::new(n)?;
        // SAFETY: both arrays hold `n` doubles per the contract.
        let (re, im) = unsafe { (std::slice::from_raw_parts(re, n), std::slice::from_raw_parts(im, n)) };
        let coeffs: Vec<Complex64> = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        *out = into_handle(SpectralField::from_ascending(&grid, &coeffs)?);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `field` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nls_field_free(field: *mut NlsField) {
    if !field.is_null() {
        // SAFETY: produced by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Grid size of the field, 0 for null.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nls_field_len(field: *const NlsField) -> usize {
    unsafe { field.as_ref() }.map_or(0, |f| f.inner.n())
}

/// Copies the coefficients in ascending wavenumber order into `re` and
/// `im`, each of capacity `len`, which must equal the grid size.
///
/// # Safety
/// `re` and `im` must each point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nls_field_coeffs(
    field: *const NlsField,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> NlsStatus {
    guard(|| {
        let f = unsafe { field_ref(field, "field") }?;
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("coefficient array"));
        }
        if len != f.n() {
            return Err(Failure::Invalid(format!("buffer length {len} does not match grid size {}", f.n())));
        }
        // SAFETY: both buffers hold `len` doubles per the contract.
        let (re, im) = unsafe { (std::slice::from_raw_parts_mut(re, len), std::slice::from_raw_parts_mut(im, len)) };
        for ((r, i), c) in re.iter_mut().zip(im.iter_mut()).zip(f.ascending()) {
            *r = c.re;
            *i = c.im;
        }
        Ok(())
    })
}

/// Seeded rough initial data with zero mean and unit sup norm.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nls_gen_rough_data(n: usize, gamma: f64, seed: u64, out: *mut *mut NlsField) -> NlsStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = ptr::null_mut();
        *out = into_handle(gen_rough_data(&RoughDataSpec::new(n, gamma, seed)?)?);
        Ok(())
    })
}

/// Discrete mass `Σ|û_k|²`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_mass(field: *const NlsField, out: *mut f64) -> NlsStatus {
    guard(|| {
        let f = unsafe { field_ref(field, "field") }?;
        *unsafe { out_ref(out, "out") }? = f.mass();
        Ok(())
    })
}

/// `H^gamma` norm, `gamma ≥ 0`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_sobolev_norm(field: *const NlsField, gamma: f64, out: *mut f64) -> NlsStatus {
    guard(|| {
        let f = unsafe { field_ref(field, "field") }?;
        let out = unsafe { out_ref(out, "out") }?;
        if gamma.is_nan() || gamma < 0.0 {
            return Err(Failure::Invalid(format!("gamma must be non-negative, got {gamma}")));
        }
        *out = f.sobolev_norm(gamma);
        Ok(())
    })
}

/// Parameters of [`nls_evolve`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NlsRunParams {
    pub scheme: NlsScheme,
    pub tau: f64,
    /// -1 (defocusing) or 1 (focusing).
    pub lambda: i32,
    pub t_final: f64,
    /// Nonzero to evaluate nonlinear terms on a zero-padded grid.
    pub dealias: i32,
}

/// Parameters with the library defaults for `scheme` and `tau`.
#[no_mangle]
pub extern "C" fn nls_run_params_default(scheme: NlsScheme, tau: f64) -> NlsRunParams {
    NlsRunParams {
        scheme,
        tau,
        lambda: -1,
        t_final: 1.0,
        dealias: 1,
    }
}

/// Evolves `field` to `params.t_final` and returns the final field in a new
/// handle. `mass_drift` (may be null) receives `max_n |M(uⁿ) - M(u⁰)|`.
///
/// # Safety
/// `field` must be a live handle, `params` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nls_evolve(
    field: *const NlsField,
    params: *const NlsRunParams,
    out: *mut *mut NlsField,
    mass_drift: *mut f64,
) -> NlsStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = ptr::null_mut();
        let u0 = unsafe { field_ref(field, "field") }?;
        let params = *unsafe { params.as_ref() }.ok_or(Failure::Null("params"))?;
        let lambda = Nonlinearity::try_from(i64::from(params.lambda))?;
        let cfg = SchemeConfig::for_initial_data(params.scheme.into(), params.tau, lambda, u0)?
            .with_dealias(params.dealias != 0);
        let (u, record) = run_trajectory(u0, &cfg, params.t_final, true)?;
        if let Some(drift) = unsafe { mass_drift.as_mut() } {
            *drift = record.mass_drift;
        }
        *out = into_handle(u);
        Ok(())
    })
}

/// Reads a JSON field file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nls_field_read_json(path: *const c_char, out: *mut *mut NlsField) -> NlsStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out") }?;
        *out = ptr::null_mut();
        let path = unsafe { path_arg(path) }?;
        *out = into_handle(SpectralField::read_json(path)?);
        Ok(())
    })
}

/// Writes the field as a JSON file.
///
/// # Safety
/// `field` must be a live handle and `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nls_field_write_json(field: *const NlsField, path: *const c_char) -> NlsStatus {
    guard(|| {
        let f = unsafe { field_ref(field, "field") }?;
        let path = unsafe { path_arg(path) }?;
        f.write_json(path)?;
        Ok(())
    })
}

/// Copies the last error message of this thread into `buf` (nul-terminated,
/// truncated to `len - 1` bytes) and returns the full message length, or 0
/// when no error has occurred. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn nls_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(message) = slot.as_ref() else {
            return 0;
        };
        let bytes = message.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            // SAFETY: `buf` holds `len > n` bytes per the contract.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn nls_status_name(status: NlsStatus) -> *const c_char {
    let name: &'static CStr = match status {
        NlsStatus::Ok => c"ok",
        NlsStatus::BlowUp => c"blow-up",
        NlsStatus::InvalidArgument => c"invalid argument",
        NlsStatus::Io => c"i/o error",
        NlsStatus::NullPointer => c"null pointer",
        NlsStatus::DegenerateMass => c"degenerate mass",
        NlsStatus::Internal => c"internal error",
    };
    name.as_ptr()
}
