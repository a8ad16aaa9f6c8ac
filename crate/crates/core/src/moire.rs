//! Superpositions of spherical functions centered along a horocycle and their
//! regularized limits.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::geometry::{busemann, geodesic_distance, nilpotent_coordinate, BoundaryPoint, DiskPoint, Horocycle};
use crate::hft::{horocycle_integral_centered, HorocycleQuadrature, PolarGrid, SampledField};
use crate::quadrature::GaussLegendre;
use crate::waves::{helgason_wave, spherical_radial, SpectralParam, RHO};

pub use crate::taper::{TaperKind, TaperSpec};

/// One regularized evaluation of the horocyclic superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoireReport {
    pub lambda: SpectralParam,
    pub x: DiskPoint,
    pub b0: BoundaryPoint,
    pub approx: Complex64,
    pub target: Complex64,
    /// `|approx − target|`.
    pub abs_error: f64,
    pub taper: TaperSpec,
    /// Spread of `approx` over the largest σ of a sweep; zero outside sweeps.
    pub oscillation_amplitude: f64,
    /// Refinement change of the horocycle quadrature, scaled by κ_H.
    pub quadrature_error: f64,
    /// Set by [`convergence_study`] when `|approx|` exceeds ten times `|target|`.
    pub divergent: bool,
}

/// Tapered integral `∫ ϑ(s − s_x) φ_λ(d(y(s), x)) ds` over the horocycle of
/// direction `b0` through the origin, where `s_x` is the N-coordinate of `x`.
pub fn tapered_superposition(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    taper: &TaperSpec,
    config: &HorocycleQuadrature,
) -> Result<crate::hft::HorocycleValue> {
    let h = Horocycle::new(b0, 0.0);
    let center = nilpotent_coordinate(x, b0);
    horocycle_integral_centered(
        |y| Complex64::new(spherical_radial(lambda, geodesic_distance(y, x)), 0.0),
        &h,
        center,
        taper,
        config,
    )
}

/// The same integral computed on the horocycle through `x`: pulling back by
/// the nilpotent element carrying the origin's horocycle onto it rescales arc
/// length by `e^{⟨x, b0⟩}`.
pub fn tapered_superposition_reduced(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    taper: &TaperSpec,
    config: &HorocycleQuadrature,
) -> Result<crate::hft::HorocycleValue> {
    let delta = busemann(x, b0);
    let jacobian = delta.exp();
    let h = Horocycle::new(b0, delta);
    let narrowed = taper.with_width(taper.width() / jacobian)?;
    let mut v = horocycle_integral_centered(
        |z| Complex64::new(spherical_radial(lambda, geodesic_distance(z, DiskPoint::ORIGIN)), 0.0),
        &h,
        0.0,
        &narrowed,
        config,
    )?;
    v.value *= jacobian;
    v.error_estimate *= jacobian;
    Ok(v)
}

/// Pointwise regularized estimator: `approx = κ_H ∫ ϑ φ^{[y]}_λ(x) dy` against
/// `target = e_{λ,b0}(x)`.
pub fn moire_integral(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    taper: &TaperSpec,
) -> Result<MoireReport> {
    moire_integral_with(lambda, b0, x, taper, &HorocycleQuadrature::default())
}

pub fn moire_integral_with(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    taper: &TaperSpec,
    config: &HorocycleQuadrature,
) -> Result<MoireReport> {
    let kappa = horocycle_normalization()?;
    let raw = tapered_superposition(lambda, b0, x, taper, config)?;
    Ok(report(
        lambda,
        b0,
        x,
        taper,
        raw.value * kappa,
        raw.error_estimate * kappa,
    ))
}

fn report(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    taper: &TaperSpec,
    approx: Complex64,
    quadrature_error: f64,
) -> MoireReport {
    let target = helgason_wave(lambda, b0, x);
    MoireReport {
        lambda,
        x,
        b0,
        approx,
        target,
        abs_error: (approx - target).norm(),
        taper: *taper,
        oscillation_amplitude: 0.0,
        quadrature_error,
        divergent: false,
    }
}

/// Smooth bump `χ(λ) = exp(−1/(1 − u²))`, `u = (2λ − λ₁ − λ₂)/(λ₂ − λ₁)`,
/// supported on `[λ₁, λ₂]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaWindow {
    lo: f64,
    hi: f64,
}

const WINDOW_PANELS: usize = 3;

impl LambdaWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi {
            Ok(LambdaWindow { lo, hi })
        } else {
            Err(invalid("window", "need 0 < λ₁ < λ₂"))
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn weight(&self, lambda: f64) -> f64 {
        let u = (2.0 * lambda - self.lo - self.hi) / (self.hi - self.lo);
        if u.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - u * u)).exp()
        }
    }

    /// Gauss–Legendre nodes and `χ`-weighted weights on the window.
    fn nodes(&self) -> Vec<(f64, f64)> {
        let rule = GaussLegendre::standard();
        let width = (self.hi - self.lo) / WINDOW_PANELS as f64;
        let mut out = Vec::new();
        for p in 0..WINDOW_PANELS {
            let a = self.lo + p as f64 * width;
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                let lambda = a + 0.5 * width * (t + 1.0);
                out.push((lambda, 0.5 * width * w * self.weight(lambda)));
            }
        }
        out
    }

    /// `∫ χ(λ) g(λ) dλ`.
    pub fn integrate<F>(&self, g: F) -> Result<Complex64>
    where
        F: Fn(f64) -> Result<Complex64> + Sync,
    {
        let terms: Result<Vec<Complex64>> = self.nodes().par_iter().map(|&(l, w)| Ok(g(l)? * w)).collect();
        Ok(terms?.iter().sum())
    }
}

/// The two sides of a λ-windowed identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakPair {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl WeakPair {
    pub fn relative_error(&self) -> f64 {
        if self.rhs.norm() == 0.0 {
            self.lhs.norm()
        } else {
            (self.lhs - self.rhs).norm() / self.rhs.norm()
        }
    }
}

fn weak_raw(window: &LambdaWindow, b0: BoundaryPoint, x: DiskPoint, taper: &TaperSpec) -> Result<Complex64> {
    let config = HorocycleQuadrature::default();
    window.integrate(|l| Ok(tapered_superposition(SpectralParam::new(l)?, b0, x, taper, &config)?.value))
}

/// `lhs = ∫ χ(λ) approx(λ) dλ`, `rhs = ∫ χ(λ) e_{λ,b0}(x) dλ`.
pub fn moire_weak(window: &LambdaWindow, b0: BoundaryPoint, x: DiskPoint, taper: &TaperSpec) -> Result<WeakPair> {
    let kappa = horocycle_normalization()?;
    let lhs = weak_raw(window, b0, x, taper)? * kappa;
    let rhs = window.integrate(|l| Ok(helgason_wave(SpectralParam::new(l)?, b0, x)))?;
    Ok(WeakPair { lhs, rhs })
}

/// Window, direction and taper width at which κ_H is fitted.
pub const NORMALIZATION_FIT: (f64, f64, f64) = (1.0, 2.0, 12.0);

/// Fits κ_H so that [`moire_weak`] is exact at `x = 0`, `b0 = 1` for the given
/// window and Gaussian taper width.
pub fn fit_horocycle_normalization(window: &LambdaWindow, sigma: f64) -> Result<f64> {
    let taper = TaperSpec::gaussian(sigma)?;
    let b0 = BoundaryPoint::new(0.0);
    let raw = weak_raw(window, b0, DiskPoint::ORIGIN, &taper)?;
    let rhs = window.integrate(|l| Ok(helgason_wave(SpectralParam::new(l)?, b0, DiskPoint::ORIGIN)))?;
    if raw.norm() == 0.0 {
        return Err(invalid("window", "superposition vanishes on the fit window"));
    }
    Ok((rhs / raw).re)
}

/// κ_H, fitted once per process at [`NORMALIZATION_FIT`].
pub fn horocycle_normalization() -> Result<f64> {
    static KAPPA: OnceLock<std::result::Result<f64, Error>> = OnceLock::new();
    KAPPA
        .get_or_init(|| {
            let (lo, hi, sigma) = NORMALIZATION_FIT;
            fit_horocycle_normalization(&LambdaWindow::new(lo, hi)?, sigma)
        })
        .clone()
}

/// Weak limit of the untapered superposition,
/// `(2/(λ tanh πλ)) e^{Δ/2} cos(λΔ)` with `Δ = ⟨x, b0⟩`.
pub fn horocycle_limit(lambda: SpectralParam, b0: BoundaryPoint, x: DiskPoint) -> Result<f64> {
    let l = lambda.value();
    if l.abs() < 1e-8 {
        return Err(Error::SpectralSingularity { lambda: l });
    }
    let delta = busemann(x, b0);
    Ok(2.0 / (l * (PI * l).tanh()) * (RHO * delta).exp() * (l * delta).cos())
}

/// λ-windowed tapered superposition without κ_H against [`horocycle_limit`].
pub fn moire_weak_limit(window: &LambdaWindow, b0: BoundaryPoint, x: DiskPoint, taper: &TaperSpec) -> Result<WeakPair> {
    let lhs = weak_raw(window, b0, x, taper)?;
    let rhs = window.integrate(|l| Ok(Complex64::new(horocycle_limit(SpectralParam::new(l)?, b0, x)?, 0.0)))?;
    Ok(WeakPair { lhs, rhs })
}

/// Pointwise estimator over increasing taper widths of one kind.
pub fn convergence_study(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    sigmas: &[f64],
    kind: TaperKind,
) -> Result<Vec<MoireReport>> {
    convergence_study_with(lambda, b0, x, sigmas, kind, &HorocycleQuadrature::default())
}

pub fn convergence_study_with(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    x: DiskPoint,
    sigmas: &[f64],
    kind: TaperKind,
    config: &HorocycleQuadrature,
) -> Result<Vec<MoireReport>> {
    if sigmas.is_empty() {
        return Err(invalid("sigmas", "need at least one taper width"));
    }
    if sigmas
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(invalid("sigmas", "must be strictly increasing"));
    }
    let mut reports: Vec<MoireReport> = sigmas
        .par_iter()
        .map(|&s| moire_integral_with(lambda, b0, x, &TaperSpec::new(kind, s)?, config))
        .collect::<Result<_>>()?;
    let tail = &reports[reports.len().saturating_sub(3)..];
    let mut spread: f64 = 0.0;
    for a in tail {
        for b in tail {
            spread = spread.max((a.approx - b.approx).norm());
        }
    }
    let divergent = reports.iter().any(|r| r.approx.norm() > 10.0 * r.target.norm());
    for r in &mut reports {
        r.oscillation_amplitude = spread;
        r.divergent = divergent;
    }
    Ok(reports)
}

/// `φ_λ` tabulated on `[0, d_max]` with four-point Lagrange interpolation.
struct RadialTable {
    step: f64,
    values: Vec<f64>,
}

impl RadialTable {
    fn new(lambda: SpectralParam, d_max: f64) -> Self {
        let step = 1.0 / 256.0;
        let n = (d_max / step).ceil() as usize + 4;
        let values = (0..n)
            .into_par_iter()
            .map(|k| spherical_radial(lambda, (k as f64 - 1.0) * step))
            .collect();
        RadialTable { step, values }
    }

    fn eval(&self, d: f64) -> f64 {
        // values[k] holds φ at (k − 1)·step; φ is even, so index 0 is φ(step)
        let t = d / self.step + 1.0;
        let k = (t.floor() as usize).clamp(1, self.values.len() - 3);
        let u = t - k as f64;
        let (p0, p1, p2, p3) = (
            self.values[k - 1],
            self.values[k],
            self.values[k + 1],
            self.values[k + 2],
        );
        -u * (u - 1.0) * (u - 2.0) / 6.0 * p0 + (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0 * p1
            - (u + 1.0) * u * (u - 2.0) / 2.0 * p2
            + (u + 1.0) * u * (u - 1.0) / 6.0 * p3
    }
}

/// Arc-length parameters `s_i = spacing·(i − (n+1)/2)`, `i = 1..=n`.
pub fn discrete_centers(n: usize, spacing: f64) -> Vec<f64> {
    (1..=n).map(|i| spacing * (i as f64 - 0.5 * (n as f64 + 1.0))).collect()
}

/// `z ↦ (1/n) Σ φ_λ(d(y(s_i), z))` with centers on the horocycle of direction
/// `b0` through the origin.
pub fn moire_sum_discrete(
    lambda: SpectralParam,
    b0: BoundaryPoint,
    n: usize,
    spacing: f64,
    grid: &PolarGrid,
) -> Result<SampledField> {
    if n == 0 {
        return Err(invalid("n", "need at least one center"));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(invalid("spacing", "must be positive"));
    }
    let h = Horocycle::new(b0, 0.0);
    let centers: Vec<DiskPoint> = discrete_centers(n, spacing).into_iter().map(|s| h.point(s)).collect();
    let reach = centers
        .iter()
        .map(|c| geodesic_distance(*c, DiskPoint::ORIGIN))
        .fold(0.0, f64::max);
    let table = RadialTable::new(lambda, grid.radius() + reach + 0.1);
    let scale = 1.0 / n as f64;
    Ok(SampledField::from_fn(*grid, |z| {
        let sum: f64 = centers.iter().map(|c| table.eval(geodesic_distance(*c, z))).sum();
        Complex64::new(sum * scale, 0.0)
    }))
}
