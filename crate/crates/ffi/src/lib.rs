//! C ABI for `helgason-moire`.
//!
//! Every entry point returns an [`HmStatus`] and writes results through
//! out-pointers. After a non-OK status, [`hm_last_error`] describes the
//! failure on the calling thread. Fields and spectra are opaque handles
//! released with their `_free` functions.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use helgason_moire::geometry::{busemann, geodesic_distance, BoundaryPoint, DiskPoint};
use helgason_moire::hft::{forward, inverse, PolarGrid, RadialLayout, SampledField, SpectralField, SpectralGrid};
use helgason_moire::moire::{moire_integral, moire_sum_discrete, TaperKind, TaperSpec};
use helgason_moire::waves::{helgason_wave, spherical, spherical_radial, SpectralConvention, SpectralParam};
use helgason_moire::Error;
use num_complex::Complex64;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    OutsideDisk = 3,
    NotInGroup = 4,
    UnderResolved = 5,
    SpectralSingularity = 6,
    SupportOverflow = 7,
    SpectralTruncation = 8,
    NotRadial = 9,
    GridMismatch = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HmComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HmComplex {
    fn from(z: Complex64) -> Self {
        HmComplex { re: z.re, im: z.im }
    }
}

impl From<HmComplex> for Complex64 {
    fn from(z: HmComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HmTaperKind {
    Gaussian = 0,
    Cosine = 1,
    Hard = 2,
}

impl From<HmTaperKind> for TaperKind {
    fn from(k: HmTaperKind) -> Self {
        match k {
            HmTaperKind::Gaussian => TaperKind::Gaussian,
            HmTaperKind::Cosine => TaperKind::Cosine,
            HmTaperKind::Hard => TaperKind::Hard,
        }
    }
}

/// One regularized horocyclic superposition against its target wave.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HmMoireReport {
    pub lambda: f64,
    /// Boundary direction as an angle.
    pub b0: f64,
    pub x: HmComplex,
    pub approx: HmComplex,
    pub target: HmComplex,
    pub abs_error: f64,
    pub taper_kind: HmTaperKind,
    pub taper_width: f64,
    pub quadrature_error: f64,
}

/// Samples of a field on a polar grid.
pub struct HmField {
    inner: SampledField,
}

/// Transform values on a `(λ, direction)` grid.
pub struct HmSpectrum {
    inner: SpectralField,
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Buffer { needed: usize, given: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).ok();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HmStatus {
    match e {
        Error::OutsideDisk { .. } => HmStatus::OutsideDisk,
        Error::NotInGroup { .. } => HmStatus::NotInGroup,
        Error::InvalidParameter { .. } => HmStatus::InvalidArgument,
        Error::QuadratureUnderResolved { .. } => HmStatus::UnderResolved,
        Error::SpectralSingularity { .. } => HmStatus::SpectralSingularity,
        Error::SupportOverflow { .. } => HmStatus::SupportOverflow,
        Error::SpectralTruncation { .. } => HmStatus::SpectralTruncation,
        Error::NotRadial { .. } => HmStatus::NotRadial,
        Error::GridMismatch(_) => HmStatus::GridMismatch,
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> HmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HmStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("`{name}` is null"));
            HmStatus::NullPointer
        }
        Ok(Err(Failure::Buffer { needed, given })) => {
            set_error(format!("buffer holds {given} entries, {needed} needed"));
            HmStatus::BufferTooSmall
        }
        Err(_) => {
            set_error("internal panic".into());
            HmStatus::Panic
        }
    }
}

unsafe fn put<T>(out: *mut T, name: &'static str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn get<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn copy_out<T: Copy>(src: &[T], out: *mut T, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    if len < src.len() {
        return Err(Failure::Buffer {
            needed: src.len(),
            given: len,
        });
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

fn disk(z: HmComplex) -> Result<DiskPoint, Failure> {
    Ok(DiskPoint::new(z.into())?)
}

fn grid(radial: usize, angular: usize, radius: f64, closed: bool) -> Result<PolarGrid, Failure> {
    let layout = if closed {
        RadialLayout::Closed
    } else {
        RadialLayout::Open
    };
    Ok(PolarGrid::with_layout(radial, angular, radius, layout)?)
}

fn into_handle<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `e_{λ,b}(z)` with `b = e^{i b0}`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_helgason_wave(lambda: f64, b0: f64, z: HmComplex, out: *mut HmComplex) -> HmStatus {
    guard(|| {
        let v = helgason_wave(SpectralParam::new(lambda)?, BoundaryPoint::new(b0), disk(z)?);
        put(out, "out", v.into())
    })
}

/// `φ_λ(z)` by adaptive boundary quadrature.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_spherical(lambda: f64, z: HmComplex, out: *mut HmComplex) -> HmStatus {
    guard(|| {
        let v = spherical(SpectralParam::new(lambda)?, disk(z)?)?;
        put(out, "out", v.into())
    })
}

/// `φ_λ` at geodesic distance `d` from the origin.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_spherical_radial(lambda: f64, d: f64, out: *mut f64) -> HmStatus {
    guard(|| {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Failure::Core(Error::InvalidParameter {
                name: "d",
                reason: "must be a finite non-negative distance".into(),
            }));
        }
        put(out, "out", spherical_radial(SpectralParam::new(lambda)?, d))
    })
}

/// `⟨z, b⟩` with `b = e^{i b0}`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_busemann(z: HmComplex, b0: f64, out: *mut f64) -> HmStatus {
    guard(|| put(out, "out", busemann(disk(z)?, BoundaryPoint::new(b0))))
}

/// Geodesic distance between two disk points.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_distance(z: HmComplex, w: HmComplex, out: *mut f64) -> HmStatus {
    guard(|| put(out, "out", geodesic_distance(disk(z)?, disk(w)?)))
}

/// Zero field on a polar grid of `radial × angular` nodes out to geodesic
/// `radius`. With `closed` the first ring is the origin.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_field_create(
    radial: usize,
    angular: usize,
    radius: f64,
    closed: bool,
    out: *mut *mut HmField,
) -> HmStatus {
    guard(|| {
        let g = grid(radial, angular, radius, closed)?;
        put(
            out,
            "out",
            into_handle(HmField {
                inner: SampledField::zeros(g),
            }),
        )
    })
}

/// Number of nodes, ring-major.
///
/// # Safety
/// `field` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_field_len(field: *const HmField, out: *mut usize) -> HmStatus {
    guard(|| put(out, "out", get(field, "field")?.inner.grid().len()))
}

/// Copies the node coordinates into `out[0..len)`.
///
/// # Safety
/// `field` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hm_field_nodes(field: *const HmField, out: *mut HmComplex, len: usize) -> HmStatus {
    guard(|| {
        let nodes: Vec<HmComplex> = get(field, "field")?
            .inner
            .grid()
            .nodes()
            .iter()
            .map(|z| z.z().into())
            .collect();
        copy_out(&nodes, out, len)
    })
}

/// Copies the sample values into `out[0..len)`.
///
/// # Safety
/// `field` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hm_field_values(field: *const HmField, out: *mut HmComplex, len: usize) -> HmStatus {
    guard(|| {
        let values: Vec<HmComplex> = get(field, "field")?.inner.values().iter().map(|&v| v.into()).collect();
        copy_out(&values, out, len)
    })
}

/// Replaces the sample values; `len` must equal the node count.
///
/// # Safety
/// `field` must be a live handle; `values` valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn hm_field_set_values(field: *mut HmField, values: *const HmComplex, len: usize) -> HmStatus {
    guard(|| {
        let f = field.as_mut().ok_or(Failure::Null("field"))?;
        if values.is_null() {
            return Err(Failure::Null("values"));
        }
        let data: Vec<Complex64> = std::slice::from_raw_parts(values, len)
            .iter()
            .map(|&v| v.into())
            .collect();
        f.inner = SampledField::new(*f.inner.grid(), data)?;
        Ok(())
    })
}

/// Releases a field; null is ignored.
///
/// # Safety
/// `field` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_field_free(field: *mut HmField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Forward transform on `λ = 0, step, …, lambda_max` and `directions`
/// equally spaced boundary points.
///
/// # Safety
/// `field` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_forward(
    field: *const HmField,
    lambda_max: f64,
    lambda_step: f64,
    directions: usize,
    out: *mut *mut HmSpectrum,
) -> HmStatus {
    guard(|| {
        let f = get(field, "field")?;
        let sg = SpectralGrid::half_line(lambda_max, lambda_step, directions)?;
        let spectrum = forward(&f.inner, &sg)?;
        put(out, "out", into_handle(HmSpectrum { inner: spectrum }))
    })
}

/// Number of λ values and of directions.
///
/// # Safety
/// `spectrum` must be a live handle; both outputs valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_spectrum_shape(
    spectrum: *const HmSpectrum,
    lambdas: *mut usize,
    directions: *mut usize,
) -> HmStatus {
    guard(|| {
        let g = get(spectrum, "spectrum")?.inner.grid();
        put(lambdas, "lambdas", g.lambda_count())?;
        put(directions, "directions", g.directions())
    })
}

/// Copies the values, λ-major, into `out[0..len)`.
///
/// # Safety
/// `spectrum` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hm_spectrum_values(spectrum: *const HmSpectrum, out: *mut HmComplex, len: usize) -> HmStatus {
    guard(|| {
        let values: Vec<HmComplex> = get(spectrum, "spectrum")?
            .inner
            .values()
            .iter()
            .map(|&v| v.into())
            .collect();
        copy_out(&values, out, len)
    })
}

/// Releases a spectrum; null is ignored.
///
/// # Safety
/// `spectrum` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_spectrum_free(spectrum: *mut HmSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Inverse transform onto the grid of `like`. `kappa` is the Plancherel
/// constant; pass 0 for the calibrated one.
///
/// # Safety
/// `spectrum` and `like` must be live handles; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_inverse(
    spectrum: *const HmSpectrum,
    like: *const HmField,
    kappa: f64,
    out: *mut *mut HmField,
) -> HmStatus {
    guard(|| {
        let s = get(spectrum, "spectrum")?;
        let target = *get(like, "like")?.inner.grid();
        let conv = if kappa == 0.0 {
            SpectralConvention::calibrated()
        } else {
            SpectralConvention::new(kappa)?
        };
        let f = inverse(&s.inner, &target, &conv)?;
        put(out, "out", into_handle(HmField { inner: f }))
    })
}

/// Regularized superposition of `φ_λ` along the horocycle of direction `b0`
/// through the origin, evaluated at `x`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_moire_integral(
    lambda: f64,
    b0: f64,
    x: HmComplex,
    taper_kind: HmTaperKind,
    taper_width: f64,
    out: *mut HmMoireReport,
) -> HmStatus {
    guard(|| {
        let taper = TaperSpec::new(taper_kind.into(), taper_width)?;
        let r = moire_integral(SpectralParam::new(lambda)?, BoundaryPoint::new(b0), disk(x)?, &taper)?;
        put(
            out,
            "out",
            HmMoireReport {
                lambda,
                b0,
                x,
                approx: r.approx.into(),
                target: r.target.into(),
                abs_error: r.abs_error,
                taper_kind,
                taper_width,
                quadrature_error: r.quadrature_error,
            },
        )
    })
}

/// Average of `φ_λ` centered at `n` points spaced `spacing` apart on the
/// horocycle of direction `b0` through the origin, sampled on a closed polar
/// grid.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn hm_moire_sum(
    lambda: f64,
    b0: f64,
    n: usize,
    spacing: f64,
    radial: usize,
    angular: usize,
    radius: f64,
    out: *mut *mut HmField,
) -> HmStatus {
    guard(|| {
        let g = grid(radial, angular, radius, true)?;
        let f = moire_sum_discrete(SpectralParam::new(lambda)?, BoundaryPoint::new(b0), n, spacing, &g)?;
        put(out, "out", into_handle(HmField { inner: f }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    fn c(re: f64, im: f64) -> HmComplex {
        HmComplex { re, im }
    }

    fn last_error() -> String {
        let p = hm_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn scalar_entry_points() {
        unsafe {
            let mut w = HmComplex::default();
            assert_eq!(hm_helgason_wave(2.0, 0.0, c(0.0, 0.0), &mut w), HmStatus::Ok);
            assert_eq!(w, c(1.0, 0.0));

            let mut phi = HmComplex::default();
            assert_eq!(hm_spherical(1.5, c(0.3, -0.2), &mut phi), HmStatus::Ok);
            let mut d = 0.0;
            assert_eq!(hm_distance(c(0.3, -0.2), c(0.0, 0.0), &mut d), HmStatus::Ok);
            let mut radial = 0.0;
            assert_eq!(hm_spherical_radial(1.5, d, &mut radial), HmStatus::Ok);
            assert!((phi.re - radial).abs() < 1e-9 && phi.im.abs() < 1e-9);

            let mut b = 0.0;
            assert_eq!(hm_busemann(c(0.5, 0.0), 0.0, &mut b), HmStatus::Ok);
            assert!((b - 3f64.ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn errors_set_status_and_message() {
        unsafe {
            let mut w = HmComplex::default();
            assert_eq!(hm_helgason_wave(1.0, 0.0, c(1.0, 0.0), &mut w), HmStatus::OutsideDisk);
            assert!(last_error().contains("unit disk"));
            assert_eq!(
                hm_helgason_wave(1.0, 0.0, c(0.0, 0.0), ptr::null_mut()),
                HmStatus::NullPointer
            );
            assert!(last_error().contains("out"));
            let mut report = std::mem::MaybeUninit::<HmMoireReport>::uninit();
            let status = hm_moire_integral(2.0, 0.0, c(0.0, 0.0), HmTaperKind::Gaussian, -1.0, report.as_mut_ptr());
            assert_eq!(status, HmStatus::InvalidArgument);
        }
    }

    #[test]
    fn field_round_trip_through_handles() {
        unsafe {
            let mut field = ptr::null_mut();
            assert_eq!(hm_field_create(120, 128, 4.0, false, &mut field), HmStatus::Ok);
            let mut len = 0;
            assert_eq!(hm_field_len(field, &mut len), HmStatus::Ok);
            let mut nodes = vec![HmComplex::default(); len];
            assert_eq!(hm_field_nodes(field, nodes.as_mut_ptr(), len), HmStatus::Ok);
            let values: Vec<HmComplex> = nodes
                .iter()
                .map(|&z| {
                    let d = geodesic_distance(DiskPoint::new(z.into()).unwrap(), DiskPoint::ORIGIN);
                    c((-d * d).exp(), 0.0)
                })
                .collect();
            assert_eq!(
                hm_field_set_values(field, values.as_ptr(), len - 1),
                HmStatus::GridMismatch
            );
            assert_eq!(hm_field_set_values(field, values.as_ptr(), len), HmStatus::Ok);

            let mut spectrum = ptr::null_mut();
            assert_eq!(hm_forward(field, 8.0, 0.05, 128, &mut spectrum), HmStatus::Ok);
            let (mut nl, mut nd) = (0, 0);
            assert_eq!(hm_spectrum_shape(spectrum, &mut nl, &mut nd), HmStatus::Ok);
            assert_eq!((nl, nd), (161, 128));
            let mut short = vec![HmComplex::default(); 10];
            assert_eq!(
                hm_spectrum_values(spectrum, short.as_mut_ptr(), 10),
                HmStatus::BufferTooSmall
            );

            let mut back = ptr::null_mut();
            assert_eq!(hm_inverse(spectrum, field, 0.0, &mut back), HmStatus::Ok);
            let mut rec = vec![HmComplex::default(); len];
            assert_eq!(hm_field_values(back, rec.as_mut_ptr(), len), HmStatus::Ok);
            let num: f64 = rec
                .iter()
                .zip(&values)
                .map(|(a, b)| (a.re - b.re).powi(2) + (a.im - b.im).powi(2))
                .sum();
            let den: f64 = values.iter().map(|v| v.re * v.re).sum();
            assert!((num / den).sqrt() < 2e-3, "{}", (num / den).sqrt());

            hm_field_free(back);
            hm_spectrum_free(spectrum);
            hm_field_free(field);
            hm_field_free(ptr::null_mut());
        }
    }

    #[test]
    fn moire_entry_points() {
        unsafe {
            let mut r = std::mem::MaybeUninit::<HmMoireReport>::uninit();
            let status = hm_moire_integral(2.0, 0.0, c(0.0, 0.0), HmTaperKind::Gaussian, 8.0, r.as_mut_ptr());
            assert_eq!(status, HmStatus::Ok);
            let r = r.assume_init();
            assert_eq!(r.target, c(1.0, 0.0));
            assert!(r.approx.im.abs() < 1e-12);

            let mut f = ptr::null_mut();
            assert_eq!(hm_moire_sum(2.0, 0.0, 1, 0.35, 10, 16, 1.0, &mut f), HmStatus::Ok);
            let mut v = vec![HmComplex::default(); 160];
            assert_eq!(hm_field_values(f, v.as_mut_ptr(), 160), HmStatus::Ok);
            // One center at the origin: the first ring is φ_λ(0) = 1.
            assert!((v[0].re - 1.0).abs() < 1e-9);
            hm_field_free(f);
        }
    }

    #[test]
    fn version_string() {
        let v = unsafe { CStr::from_ptr(hm_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
