//! C interface to `beamsynth`.
//!
//! Objects cross the boundary as opaque handles. Constructors write a new
//! handle through an out-pointer, and each handle type has a matching
//! `*_free`. Every fallible call returns a [`BsStatus`]; on failure,
//! [`bs_last_error_message`] describes the most recent error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::{ptr, slice};

use beamsynth::array::{array_factor, pattern_metrics, AngleGrid, ArrayGeometry, Excitation, Pattern};
use beamsynth::nn::{ModelFile, PhasePredictor};
use beamsynth::synthesis::{
    synthesize, ChebyshevSpec, DesiredPattern, Method, MethodSpecs, SectorShape, TaylorSpec, DEFAULT_N_BAR,
    DEFAULT_ROLLOFF, DEFAULT_WIDTH_U,
};
use beamsynth::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Dimension = 3,
    Argument = 4,
    Unsupported = 5,
    Resolution = 6,
    OutOfDomain = 7,
    Config = 8,
    DataIntegrity = 9,
    Numeric = 10,
    Parse = 11,
    Io = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

/// Synthesized weights together with the array they drive.
pub struct BsExcitation {
    geom: ArrayGeometry,
    exc: Excitation,
}

/// A sampled far-field pattern.
pub struct BsPattern {
    pattern: Pattern,
}

/// A trained phase network with its geometry and input encoding.
pub struct BsMlp {
    predictor: PhasePredictor,
}

/// Parameters for [`bs_synthesize`]. Start from [`bs_synth_params_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsSynthParams {
    pub n_elements: usize,
    pub spacing_wl: f64,
    pub steer_deg: f64,
    /// Sector width in u = cos(theta).
    pub width_u: f64,
    /// Raised-cosine edge fraction in (0, 1]; 0 selects a hard sector.
    pub rolloff: f64,
    pub angular_scaling: bool,
    pub sll_db: f64,
    pub n_bar: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsMetrics {
    pub peak_deg: f64,
    /// NaN when `has_sll` is false.
    pub sll_db: f64,
    pub has_sll: bool,
    pub hpbw_deg: f64,
}

struct Fail {
    status: BsStatus,
    message: String,
}

impl Fail {
    fn new(status: BsStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Dimension { .. } => BsStatus::Dimension,
            Error::Argument(_) => BsStatus::Argument,
            Error::Unsupported(_) => BsStatus::Unsupported,
            Error::Resolution(_) => BsStatus::Resolution,
            Error::OutOfDomain(_) => BsStatus::OutOfDomain,
            Error::Config(_) => BsStatus::Config,
            Error::DataIntegrity(_) => BsStatus::DataIntegrity,
            Error::Numeric(_) => BsStatus::Numeric,
            Error::Parse(_) => BsStatus::Parse,
            Error::Io(_) => BsStatus::Io,
        };
        Fail::new(status, e.to_string())
    }
}

type FfiResult<T> = Result<T, Fail>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_last_error();
            BsStatus::Ok
        }
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            BsStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        Err(Fail::new(BsStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    non_null(p, what)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::new(BsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    non_null(out, "output pointer")?;
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, need: usize, what: &str) -> FfiResult<&'a mut [f64]> {
    non_null(p, what)?;
    if len < need {
        return Err(Fail::new(
            BsStatus::BufferTooSmall,
            format!("{what} holds {len} values, {need} needed"),
        ));
    }
    Ok(slice::from_raw_parts_mut(p, need))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes). Returns the full message length in bytes,
/// excluding the terminator; 0 when no error is recorded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn bs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// 16 elements at half-wave spacing, broadside, default sector and -30 dB
/// sidelobe designs.
#[no_mangle]
pub extern "C" fn bs_synth_params_default() -> BsSynthParams {
    BsSynthParams {
        n_elements: 16,
        spacing_wl: 0.5,
        steer_deg: 90.0,
        width_u: DEFAULT_WIDTH_U,
        rolloff: DEFAULT_ROLLOFF,
        angular_scaling: true,
        sll_db: -30.0,
        n_bar: DEFAULT_N_BAR,
    }
}

/// Run one synthesis method (`"fourier"`, `"woodward-lawson"`,
/// `"schelkunoff"`, `"chebyshev"` or `"taylor"`).
///
/// # Safety
/// `method` must be a NUL-terminated string, `params` a valid pointer and
/// `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn bs_synthesize(
    method: *const c_char,
    params: *const BsSynthParams,
    out: *mut *mut BsExcitation,
) -> BsStatus {
    guard(|| {
        let method: Method = read_str(method, "method")?.parse()?;
        non_null(params, "params")?;
        let p = *params;
        let geom = ArrayGeometry::new(p.n_elements, p.spacing_wl)?;
        let shape = if p.rolloff == 0.0 {
            SectorShape::Sector
        } else {
            SectorShape::RaisedCosine { rolloff: p.rolloff }
        };
        let desired = DesiredPattern::new(p.steer_deg, p.width_u, shape, p.angular_scaling)?;
        let specs = MethodSpecs {
            chebyshev: ChebyshevSpec::new(p.sll_db)?,
            taylor: TaylorSpec::new(p.sll_db, p.n_bar)?,
            schelkunoff_nulls: None,
        };
        let exc = synthesize(method, &geom, &desired, &specs)?;
        write_out(out, BsExcitation { geom, exc })
    })
}

/// Build an excitation from amplitudes and phases in degrees.
///
/// # Safety
/// `amplitudes` and `phases_deg` must each point to `n_elements` values.
#[no_mangle]
pub unsafe extern "C" fn bs_excitation_from_polar(
    n_elements: usize,
    spacing_wl: f64,
    amplitudes: *const f64,
    phases_deg: *const f64,
    out: *mut *mut BsExcitation,
) -> BsStatus {
    guard(|| {
        non_null(amplitudes, "amplitudes")?;
        non_null(phases_deg, "phases")?;
        let geom = ArrayGeometry::new(n_elements, spacing_wl)?;
        let a = slice::from_raw_parts(amplitudes, n_elements);
        let p = slice::from_raw_parts(phases_deg, n_elements);
        let exc = Excitation::from_polar_deg(a, p)?;
        write_out(out, BsExcitation { geom, exc })
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bs_excitation_len(h: *const BsExcitation) -> usize {
    h.as_ref().map_or(0, |h| h.exc.len())
}

/// Copy amplitudes and phases (degrees, in (-180, 180]) into caller buffers
/// of at least `len` values.
///
/// # Safety
/// `h` must be a live handle; the buffers must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn bs_excitation_polar(
    h: *const BsExcitation,
    amplitudes: *mut f64,
    phases_deg: *mut f64,
    len: usize,
) -> BsStatus {
    guard(|| {
        non_null(h, "excitation")?;
        let h = &*h;
        let n = h.exc.len();
        out_slice(amplitudes, len, n, "amplitude buffer")?.copy_from_slice(&h.exc.amplitudes());
        out_slice(phases_deg, len, n, "phase buffer")?.copy_from_slice(&h.exc.phases_deg());
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_excitation_free(h: *mut BsExcitation) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Array factor on `start..=stop` degrees in steps of `step`.
///
/// # Safety
/// `exc` must be a live handle and `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn bs_pattern_compute(
    exc: *const BsExcitation,
    start_deg: f64,
    stop_deg: f64,
    step_deg: f64,
    out: *mut *mut BsPattern,
) -> BsStatus {
    guard(|| {
        non_null(exc, "excitation")?;
        let exc = &*exc;
        let grid = AngleGrid::uniform(start_deg, stop_deg, step_deg)?;
        let pattern = array_factor(&exc.geom, &exc.exc, &grid)?;
        write_out(out, BsPattern { pattern })
    })
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bs_pattern_len(p: *const BsPattern) -> usize {
    p.as_ref().map_or(0, |p| p.pattern.len())
}

/// Copy sample angles and normalized levels in dB.
///
/// # Safety
/// `p` must be a live handle; the buffers must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn bs_pattern_values(
    p: *const BsPattern,
    theta_deg: *mut f64,
    af_db: *mut f64,
    len: usize,
) -> BsStatus {
    guard(|| {
        non_null(p, "pattern")?;
        let p = &(*p).pattern;
        out_slice(theta_deg, len, p.len(), "angle buffer")?.copy_from_slice(p.theta_deg());
        out_slice(af_db, len, p.len(), "level buffer")?.copy_from_slice(p.af_db());
        Ok(())
    })
}

/// Peak direction, sidelobe level and half-power beamwidth.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bs_pattern_metrics(p: *const BsPattern, out: *mut BsMetrics) -> BsStatus {
    guard(|| {
        non_null(p, "pattern")?;
        non_null(out, "metrics")?;
        let m = pattern_metrics(&(*p).pattern)?;
        *out = BsMetrics {
            peak_deg: m.peak_deg,
            sll_db: m.sll_db.unwrap_or(f64::NAN),
            has_sll: m.sll_db.is_some(),
            hpbw_deg: m.hpbw_deg,
        };
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_pattern_free(p: *mut BsPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Load a model file written by `beamsynth train`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn bs_mlp_load(path: *const c_char, out: *mut *mut BsMlp) -> BsStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let (mlp, geom, encoding) = ModelFile::load(Path::new(path))?.into_parts()?;
        let predictor = PhasePredictor::new(mlp, geom, encoding)?;
        write_out(out, BsMlp { predictor })
    })
}

/// Network phases with Fourier amplitudes for `steer_deg` in [40, 140].
///
/// # Safety
/// `mlp` must be a live handle and `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn bs_mlp_predict(mlp: *const BsMlp, steer_deg: f64, out: *mut *mut BsExcitation) -> BsStatus {
    guard(|| {
        non_null(mlp, "network")?;
        let predictor = &(*mlp).predictor;
        let exc = predictor.predict(steer_deg)?;
        write_out(
            out,
            BsExcitation {
                geom: *predictor.geometry(),
                exc,
            },
        )
    })
}

/// # Safety
/// `mlp` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bs_mlp_free(mlp: *mut BsMlp) {
    if !mlp.is_null() {
        drop(Box::from_raw(mlp));
    }
}
