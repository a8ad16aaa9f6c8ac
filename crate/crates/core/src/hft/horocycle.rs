use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{PolarGrid, SampledField, SpectralGrid};
use super::transform::forward_at_directions;
use crate::error::{invalid, Error, Result};
use crate::geometry::{busemann, BoundaryPoint, DiskPoint, Horocycle};
use crate::taper::{TaperKind, TaperSpec};
use crate::waves::{helgason_wave, SpectralParam, RHO};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Refinement controls for integrals along a horocycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorocycleQuadrature {
    /// Relative change between refinements at which to stop.
    pub tolerance: f64,
    /// Largest step of the first pass.
    pub initial_step: f64,
    pub max_halvings: u32,
}

impl Default for HorocycleQuadrature {
    fn default() -> Self {
        HorocycleQuadrature {
            tolerance: 1e-8,
            initial_step: 0.25,
            max_halvings: 14,
        }
    }
}

/// A horocycle integral with its refinement error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorocycleValue {
    pub value: Complex64,
    /// Change between the last two refinements.
    pub error_estimate: f64,
    pub step: f64,
    pub evaluations: usize,
}

/// `∫ ϑ(s) f(y(s)) ds` along `h`, with `s` the arc length from the base point.
pub fn horocycle_integral<F>(f: F, h: &Horocycle, taper: &TaperSpec) -> Result<Complex64>
where
    F: Fn(DiskPoint) -> Complex64,
{
    Ok(horocycle_integral_centered(f, h, 0.0, taper, &HorocycleQuadrature::default())?.value)
}

/// `∫ ϑ(s − s₀) f(y(s)) ds` along `h`.
///
/// Trapezoid rule with step halving for the Gaussian taper, Romberg
/// extrapolation for the compactly supported ones, whose window endpoints
/// are grid nodes. Fails with [`Error::QuadratureUnderResolved`] if the
/// relative change does not fall below the tolerance.
pub fn horocycle_integral_centered<F>(
    f: F,
    h: &Horocycle,
    center: f64,
    taper: &TaperSpec,
    config: &HorocycleQuadrature,
) -> Result<HorocycleValue>
where
    F: Fn(DiskPoint) -> Complex64,
{
    let half = taper.support();
    let g = |u: f64| -> Complex64 {
        let w = taper.weight(u);
        if w == 0.0 {
            ZERO
        } else {
            f(h.point(center + u)) * w
        }
    };
    let romberg = taper.kind() != TaperKind::Gaussian;
    let intervals = ((2.0 * half / config.initial_step).ceil() as usize).max(4);
    let mut step = 2.0 * half / intervals as f64;
    let mut trap = (g(-half) + g(half)) * 0.5;
    for k in 1..intervals {
        trap += g(-half + k as f64 * step);
    }
    trap *= step;
    let mut evaluations = intervals + 1;
    let mut table = vec![trap];
    let mut count = intervals;
    for _ in 0..config.max_halvings {
        let mut mid = ZERO;
        for k in 0..count {
            mid += g(-half + (k as f64 + 0.5) * step);
        }
        evaluations += count;
        trap = trap * 0.5 + mid * (0.5 * step);
        step *= 0.5;
        count *= 2;
        let previous = *table.last().unwrap();
        let current = if romberg {
            let mut row = vec![trap];
            let mut factor = 4.0;
            for prev in &table {
                let r = *row.last().unwrap();
                row.push(r + (r - prev) / (factor - 1.0));
                factor *= 4.0;
            }
            table = row;
            *table.last().unwrap()
        } else {
            table = vec![trap];
            trap
        };
        let change = (current - previous).norm();
        if change <= config.tolerance * current.norm().max(1.0) {
            return Ok(HorocycleValue {
                value: current,
                error_estimate: change,
                step,
                evaluations,
            });
        }
    }
    let last = *table.last().unwrap();
    Err(Error::QuadratureUnderResolved {
        change: (last - table[0]).norm(),
        tolerance: config.tolerance,
    })
}

/// Gaussian taper wide enough to stand in for the untapered integral of a
/// rapidly decaying function.
pub fn wide_taper() -> TaperSpec {
    TaperSpec::gaussian(100.0).expect("positive width")
}

/// `Ψ(u) = e^{ρu} ∫_{ξ} ψ` over the horocycle of direction `b0` with Busemann
/// value `⟨x, b0⟩ − u`, for each `u`.
pub fn coarea_profile<F>(psi: F, b0: BoundaryPoint, x: DiskPoint, u: &[f64]) -> Result<Vec<Complex64>>
where
    F: Fn(DiskPoint) -> Complex64 + Sync,
{
    let level = busemann(x, b0);
    let taper = wide_taper();
    let config = HorocycleQuadrature::default();
    u.par_iter()
        .map(|&u| {
            let h = Horocycle::new(b0, level - u);
            let v = horocycle_integral_centered(&psi, &h, 0.0, &taper, &config)?;
            Ok(v.value * (RHO * u).exp())
        })
        .collect()
}

/// `(1/2π) ∫_{−Λ}^{Λ} ∫ e^{iλu} Ψ(u) du dλ` with trapezoid rules in both
/// variables; recovers `Ψ(0)` when `Ψ` is resolved by the `u`-grid and
/// band-limited to `[−Λ, Λ]`.
pub fn euclidean_inversion(u: &[f64], profile: &[Complex64], lambda_max: f64, lambda_step: f64) -> Result<Complex64> {
    if u.len() != profile.len() || u.len() < 2 {
        return Err(Error::GridMismatch("profile and u-grid lengths differ".into()));
    }
    let du = u[1] - u[0];
    if du.is_nan() || du <= 0.0 || u.windows(2).any(|w| ((w[1] - w[0]) - du).abs() > 1e-9 * du) {
        return Err(invalid("u", "must be a uniform increasing grid"));
    }
    let sg = SpectralGrid::symmetric(lambda_max, lambda_step, 1)?;
    let u_weights = crate::quadrature::trapezoid_weights(u.len(), du);
    let total: Complex64 = sg
        .lambdas()
        .iter()
        .zip(sg.lambda_weights())
        .map(|(&l, wl)| {
            let inner: Complex64 = u
                .iter()
                .zip(profile)
                .zip(&u_weights)
                .map(|((&ui, p), wu)| Complex64::from_polar(*wu, l * ui) * p)
                .sum();
            inner * wl
        })
        .sum();
    Ok(total / (2.0 * PI))
}

/// Both sides of the horocycle lemma at `(x, b0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaSides {
    /// `(1/2π) ∫ e_{λ,b0}(x) ψ̂(λ, b0) dλ`.
    pub spectral: Complex64,
    /// `∫_{ξ(b0, x)} ψ`.
    pub horocycle: Complex64,
}

impl LemmaSides {
    pub fn relative_gap(&self) -> f64 {
        (self.spectral - self.horocycle).norm() / self.horocycle.norm()
    }
}

/// Spatial and spectral resolution for [`lemma_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaResolution {
    pub grid: PolarGrid,
    pub lambda_max: f64,
    pub lambda_step: f64,
}

impl Default for LemmaResolution {
    fn default() -> Self {
        LemmaResolution {
            grid: PolarGrid::default(),
            lambda_max: 8.0,
            lambda_step: 0.05,
        }
    }
}

/// Evaluates both sides of the horocycle lemma for a test function `ψ`
/// effectively supported inside the resolution grid.
pub fn lemma_check<F>(psi: F, b0: BoundaryPoint, x: DiskPoint, resolution: &LemmaResolution) -> Result<LemmaSides>
where
    F: Fn(DiskPoint) -> Complex64 + Sync,
{
    if !(resolution.lambda_max > 0.0 && resolution.lambda_step > 0.0) {
        return Err(invalid("lambda_max", "spectral window must be positive"));
    }
    let field = SampledField::from_fn(resolution.grid, &psi);
    let fraction = field.outer_ring_fraction();
    if fraction > super::transform::SUPPORT_TOLERANCE {
        return Err(Error::SupportOverflow { fraction });
    }
    let sg = SpectralGrid::symmetric(resolution.lambda_max, resolution.lambda_step, 1)?;
    let column = &forward_at_directions(&field, &sg, &[b0])[0];
    let weights = sg.lambda_weights();
    let spectral = column
        .iter()
        .zip(&weights)
        .enumerate()
        .map(|(i, (v, w))| v * *w * helgason_wave(SpectralParam::new(sg.lambda_at(i)).unwrap(), b0, x))
        .sum::<Complex64>()
        / (2.0 * PI);
    let h = Horocycle::new(b0, busemann(x, b0));
    let horocycle = horocycle_integral(&psi, &h, &wide_taper())?;
    Ok(LemmaSides { spectral, horocycle })
}
