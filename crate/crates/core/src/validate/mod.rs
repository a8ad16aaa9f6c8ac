//! Numerical property suites shared by the `validate` subcommand and the
//! acceptance tests.

pub mod reference;

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::euclid::{bessel_wave, line_moire, plane_wave, window_points, PlanePoint};
use crate::geometry::{
    busemann, cosh_distance, geodesic_distance, iwasawa, nilpotent_flow, BoundaryPoint, DiskPoint, GroupElement,
    Horocycle,
};
use crate::hft::{
    coarea_profile, euclidean_inversion, forward, horocycle_integral, inverse, lemma_check, spherical_transform,
    wide_taper, HorocycleQuadrature, LemmaResolution, PolarGrid, SampledField, SpectralGrid,
};
use crate::metrics::{l2_distance, normalized_correlation, relative_shape_distance};
use crate::moire::{
    convergence_study, horocycle_normalization, moire_integral, moire_sum_discrete, moire_weak, moire_weak_limit,
    tapered_superposition, tapered_superposition_reduced, LambdaWindow, TaperKind, TaperSpec,
};
use crate::waves::{fit_c_function, helgason_wave, plancherel_density, spherical, SpectralConvention, SpectralParam};
use reference::{bessel_j0_series, legendre_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Hypgeo,
    Waves,
    Hft,
    Moire,
    Euclid,
    Figures,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Hypgeo,
        Suite::Waves,
        Suite::Hft,
        Suite::Moire,
        Suite::Euclid,
        Suite::Figures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hypgeo => "hypgeo",
            Suite::Waves => "waves",
            Suite::Hft => "hft",
            Suite::Moire => "moire",
            Suite::Euclid => "euclid",
            Suite::Figures => "figures",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| invalid("suite", format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported quantity that does not gate the outcome.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn gate(suite: Suite, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn info(suite: Suite, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            status: Status::Info,
            detail: detail.into(),
        }
    }

    fn error(suite: Suite, name: impl Into<String>, err: &Error) -> Self {
        Check::gate(suite, name, false, format!("error: {err}"))
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<4} {:<8} {:<44} {}",
            self.status, self.suite, self.name, self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ValidateOptions {
    /// Replaces the calibrated Plancherel constant.
    pub kappa: Option<f64>,
}

impl ValidateOptions {
    pub fn convention(&self) -> Result<SpectralConvention> {
        match self.kappa {
            Some(k) => SpectralConvention::new(k),
            None => Ok(SpectralConvention::calibrated()),
        }
    }
}

pub fn run_suite(suite: Suite, options: &ValidateOptions) -> Vec<Check> {
    match suite {
        Suite::Hypgeo => geometry_checks(),
        Suite::Waves => {
            let mut out = eigenfunction_checks();
            out.extend(spherical_checks());
            out.extend(c_function_checks());
            out
        }
        Suite::Hft => match options.convention() {
            Ok(conv) => {
                let mut out = transform_checks(&conv);
                out.extend(lemma_checks());
                out
            }
            Err(e) => vec![Check::error(Suite::Hft, "convention", &e)],
        },
        Suite::Moire => {
            let mut out = moire_weak_checks();
            out.extend(moire_property_checks());
            out.extend(moire_diagnostics());
            out
        }
        Suite::Euclid => euclid_checks(),
        Suite::Figures => figure_checks(),
    }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_2024)
}

fn random_element(rng: &mut ChaCha8Rng) -> GroupElement {
    GroupElement::rotation(rng.gen_range(0.0..TAU))
        * GroupElement::boost(rng.gen_range(-4.0..4.0))
        * GroupElement::unipotent(rng.gen_range(-3.0..3.0))
}

fn random_point(rng: &mut ChaCha8Rng, max_radius: f64) -> DiskPoint {
    let r = max_radius * rng.gen::<f64>().sqrt();
    DiskPoint::from_geodesic_polar(2.0 * r.atanh(), rng.gen_range(0.0..TAU))
}

fn lam(l: f64) -> SpectralParam {
    SpectralParam::new(l).expect("finite spectral parameter")
}

pub fn geometry_checks() -> Vec<Check> {
    let s = Suite::Hypgeo;
    let mut rng = rng();
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_element(&mut rng);
        let back = iwasawa(g).recompose();
        let scale = g.alpha.norm().max(1.0);
        worst = worst.max(((back.alpha - g.alpha).norm() + (back.beta - g.beta).norm()) / scale);
    }
    out.push(Check::gate(
        s,
        "iwasawa round trip (1000 elements)",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let g = random_element(&mut rng);
        let (z, w) = (random_point(&mut rng, 0.9), random_point(&mut rng, 0.9));
        let d = geodesic_distance(z, w);
        let gd = geodesic_distance(g.act(z), g.act(w));
        worst = worst.max((gd - d).abs() / d.max(1.0));
    }
    out.push(Check::gate(
        s,
        "distance invariance",
        worst <= 1e-11,
        format!("max err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let b = BoundaryPoint::new(rng.gen_range(0.0..TAU));
        let t = rng.gen_range(-10.0..10.0);
        let c = cosh_distance(Horocycle::new(b, 0.0).point(t), DiskPoint::ORIGIN);
        worst = worst.max((c - (1.0 + 0.5 * t * t)).abs() / (1.0 + 0.5 * t * t));
    }
    out.push(Check::gate(
        s,
        "horocycle arc-length law",
        worst <= 1e-9,
        format!("max rel err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for k in 0..16 {
        let b = BoundaryPoint::new(TAU * k as f64 / 16.0);
        let z = DiskPoint::new(b.point() * 0.5).expect("inside");
        worst = worst.max((busemann(z, b) - 3f64.ln()).abs());
    }
    out.push(Check::gate(
        s,
        "busemann radial closed form",
        worst <= 1e-12,
        format!("max err {worst:.2e}"),
    ));
    out
}

/// `((1−|z|²)²/4)` times the 5-point Euclidean Laplacian.
fn hyperbolic_laplacian(f: &dyn Fn(DiskPoint) -> Complex64, z: DiskPoint, h: f64) -> Complex64 {
    let at = |x: f64, y: f64| f(DiskPoint::from_xy(x, y).expect("stencil inside disk"));
    let (x, y) = (z.re(), z.im());
    let lap = (at(x + h, y) + at(x - h, y) + at(x, y + h) + at(x, y - h) - 4.0 * f(z)) / (h * h);
    let g = 1.0 - z.z().norm_sqr();
    lap * (g * g / 4.0)
}

pub fn eigenfunction_checks() -> Vec<Check> {
    let s = Suite::Waves;
    let h = 1e-3;
    let points = [(0.1, 0.2), (-0.35, 0.1), (0.3, -0.4), (0.05, -0.6)].map(|(x, y)| DiskPoint::from_xy(x, y).unwrap());
    let b = BoundaryPoint::new(0.8);
    let mut out = Vec::new();
    for l in [0.5, 1.0, 2.0, 4.0] {
        let mu = -(l * l + 0.25);
        let wave = |z: DiskPoint| helgason_wave(lam(l), b, z);
        let sph = |z: DiskPoint| spherical(lam(l), z).unwrap_or(Complex64::new(f64::NAN, 0.0));
        for (label, f) in [("wave", &wave as &dyn Fn(DiskPoint) -> Complex64), ("spherical", &sph)] {
            let (mut num, mut den) = (0.0, 0.0);
            for &z in &points {
                let lap = hyperbolic_laplacian(f, z, h);
                num += (lap - mu * f(z)).norm_sqr();
                den += (mu * f(z)).norm_sqr();
            }
            let err = (num / den).sqrt();
            out.push(Check::gate(
                s,
                format!("laplacian eigenvalue {label} λ={l}"),
                err <= 1e-3,
                format!("rel err {err:.2e}"),
            ));
        }
    }
    out
}

pub fn spherical_checks() -> Vec<Check> {
    let s = Suite::Waves;
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    let mut worst_at = (0.0, 0.0);
    let mut failure = None;
    let mut bound: f64 = 0.0;
    for i in 0..=16 {
        let l = 0.25 * i as f64;
        for k in 0..=20 {
            let d = 0.25 * k as f64;
            let z = DiskPoint::from_geodesic_polar(d, 0.3 * k as f64);
            match spherical(lam(l), z) {
                Ok(v) => {
                    let err = (v - legendre_integral(l, d)).norm();
                    if err > worst {
                        worst = err;
                        worst_at = (l, d);
                    }
                    bound = bound.max(v.norm());
                }
                Err(e) => failure = Some(e),
            }
        }
    }
    match failure {
        Some(e) => out.push(Check::error(s, "boundary vs radial integral", &e)),
        None => out.push(Check::gate(
            s,
            "boundary vs radial integral",
            worst <= 1e-8,
            format!("max err {worst:.2e} at λ={}, d={}", worst_at.0, worst_at.1),
        )),
    }

    let mut origin: f64 = 0.0;
    let mut weyl: f64 = 0.0;
    for l in [0.0, 0.5, 1.3, 2.0, 3.7] {
        origin = origin.max(
            (spherical(lam(l), DiskPoint::ORIGIN)
                .map(|v| (v - 1.0).norm())
                .unwrap_or(f64::NAN))
            .abs(),
        );
        for z in [(0.3, 0.1), (-0.6, 0.2), (0.1, -0.85)] {
            let z = DiskPoint::from_xy(z.0, z.1).unwrap();
            let a = spherical(lam(l), z);
            let b = spherical(lam(-l), z);
            if let (Ok(a), Ok(b)) = (a, b) {
                weyl = weyl.max((a - b).norm());
            } else {
                weyl = f64::NAN;
            }
        }
    }
    out.push(Check::gate(
        s,
        "value one at the origin",
        origin <= 1e-12,
        format!("max err {origin:.2e}"),
    ));
    out.push(Check::gate(
        s,
        "weyl symmetry",
        weyl <= 1e-12,
        format!("max err {weyl:.2e}"),
    ));
    out.push(Check::gate(
        s,
        "modulus bounded by one",
        bound <= 1.0 + 1e-12,
        format!("max |φ| {bound:.12}"),
    ));
    out
}

/// Conjugate symmetry of the extracted c-function and proportionality of
/// `|c(λ)|⁻²` to the Plancherel density on `[0.5, 4]`.
pub fn c_function_checks() -> Vec<Check> {
    let s = Suite::Waves;
    let conv = SpectralConvention::calibrated();
    let mut out = Vec::new();
    let mut conj: f64 = 0.0;
    let mut ratios = Vec::new();
    for i in 0..=14 {
        let l = 0.5 + 0.25 * i as f64;
        match (fit_c_function(lam(l)), fit_c_function(lam(-l))) {
            (Ok(p), Ok(m)) => {
                conj = conj.max((m.c_plus - p.c_plus.conj()).norm());
                ratios.push(p.c_plus.norm_sqr().recip() / plancherel_density(lam(l), &conv));
            }
            (Err(e), _) | (_, Err(e)) => {
                out.push(Check::error(s, "c-function extraction", &e));
                return out;
            }
        }
    }
    out.push(Check::gate(
        s,
        "c(−λ) = conj c(λ)",
        conj <= 1e-6,
        format!("max err {conj:.2e}"),
    ));
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r / mean - 1.0).abs()).fold(0.0, f64::max);
    out.push(Check::gate(
        s,
        "|c|⁻² ∝ κ λ tanh(πλ)",
        spread <= 1e-2,
        format!("ratio {mean:.6} (2π² = {:.6}), spread {spread:.2e}", 2.0 * PI * PI),
    ));
    out
}

fn radial_bump(scale: f64) -> impl Fn(DiskPoint) -> Complex64 + Sync + Copy {
    move |z| {
        let d = geodesic_distance(z, DiskPoint::ORIGIN);
        Complex64::new((-scale * d * d).exp(), 0.0)
    }
}

fn translated_bump() -> impl Fn(DiskPoint) -> Complex64 + Sync + Copy {
    let g = GroupElement::rotation(0.6) * GroupElement::boost(0.4);
    let center = g.act(DiskPoint::ORIGIN);
    move |z| {
        let d = geodesic_distance(z, center);
        Complex64::new((-d * d).exp(), 0.0)
    }
}

fn oscillating_bump(z: DiskPoint) -> Complex64 {
    let d = geodesic_distance(z, DiskPoint::ORIGIN);
    Complex64::new((-d * d).exp() * (3.0 * d).cos(), 0.0)
}

pub fn transform_checks(conv: &SpectralConvention) -> Vec<Check> {
    let s = Suite::Hft;
    let pg = PolarGrid::default();
    let sg = SpectralGrid::default();
    let mut out = vec![Check::info(
        s,
        "plancherel κ",
        format!("{:.8} (1/2π = {:.8})", conv.plancherel_kappa(), 0.5 / PI),
    )];
    let bumps: [(&str, &(dyn Fn(DiskPoint) -> Complex64 + Sync)); 3] = [
        ("exp(−d²) [calibration]", &radial_bump(1.0)),
        ("exp(−1.5 d²)", &radial_bump(1.5)),
        ("exp(−d(z, g·0)²)", &translated_bump()),
    ];
    for (label, f) in bumps {
        let field = SampledField::from_fn(pg, f);
        let result = forward(&field, &sg)
            .and_then(|spec| inverse(&spec, &pg, conv))
            .and_then(|back| back.relative_l2_error(&field));
        match result {
            Ok(err) => out.push(Check::gate(
                s,
                format!("round trip {label}"),
                err <= 0.02,
                format!("rel L² err {err:.2e}"),
            )),
            Err(e) => out.push(Check::error(s, format!("round trip {label}"), &e)),
        }
    }

    let lambdas = sg.lambdas();
    let weights = sg.lambda_weights();
    let radial: [(&str, &(dyn Fn(DiskPoint) -> Complex64 + Sync)); 3] = [
        ("exp(−d²)", &radial_bump(1.0)),
        ("exp(−1.5 d²)", &radial_bump(1.5)),
        ("exp(−d²) cos 3d", &oscillating_bump),
    ];
    for (label, f) in radial {
        let field = SampledField::from_fn(pg, f);
        let spatial = field.l2_norm().powi(2);
        match spherical_transform(&field, &lambdas) {
            Ok(tilde) => {
                // (1/|W|) ∫_{−Λ}^{Λ} = ∫_0^Λ for the even integrand
                let spectral: f64 = tilde
                    .iter()
                    .zip(&lambdas)
                    .zip(&weights)
                    .map(|((t, &l), w)| w * t.norm_sqr() * plancherel_density(lam(l), conv))
                    .sum();
                let gap = (spectral - spatial).abs() / spatial;
                out.push(Check::gate(
                    s,
                    format!("plancherel {label}"),
                    gap <= 0.02,
                    format!("rel gap {gap:.2e}"),
                ));
            }
            Err(e) => out.push(Check::error(s, format!("plancherel {label}"), &e)),
        }
    }
    out
}

pub fn lemma_checks() -> Vec<Check> {
    let s = Suite::Hft;
    let b0 = BoundaryPoint::new(0.0);
    let x = DiskPoint::ORIGIN;
    let res = LemmaResolution::default();
    let mut out = Vec::new();
    let tests: [(&str, &(dyn Fn(DiskPoint) -> Complex64 + Sync)); 3] = [
        ("exp(−d²)", &radial_bump(1.0)),
        ("exp(−d(z, g·0)²)", &translated_bump()),
        ("exp(−d²) cos 3d", &oscillating_bump),
    ];
    for (label, psi) in tests {
        match lemma_check(psi, b0, x, &res) {
            Ok(sides) => {
                let gap = sides.relative_gap();
                out.push(Check::gate(
                    s,
                    format!("lemma {label}"),
                    gap <= 0.01,
                    format!("lhs {:.6} rhs {:.6} gap {gap:.2e}", sides.spectral, sides.horocycle),
                ));
            }
            Err(e) => out.push(Check::error(s, format!("lemma {label}"), &e)),
        }
    }

    let psi = radial_bump(1.0);
    let u: Vec<f64> = (0..=320).map(|k| -8.0 + 0.05 * k as f64).collect();
    match coarea_profile(psi, b0, x, &u) {
        Ok(profile) => {
            let h = Horocycle::new(b0, busemann(x, b0));
            let direct = horocycle_integral(psi, &h, &wide_taper());
            let center = profile[160];
            match direct {
                Ok(direct) => {
                    let err = (center - direct).norm() / direct.norm();
                    out.push(Check::gate(
                        s,
                        "co-area profile at zero",
                        err <= 1e-6,
                        format!("rel err {err:.2e}"),
                    ));
                }
                Err(e) => out.push(Check::error(s, "co-area profile at zero", &e)),
            }
            match euclidean_inversion(&u, &profile, 16.0, 0.05) {
                Ok(v) => {
                    let err = (v - center).norm() / center.norm();
                    out.push(Check::gate(
                        s,
                        "fourier inversion of the profile",
                        err <= 0.01,
                        format!("rel err {err:.2e}"),
                    ));
                }
                Err(e) => out.push(Check::error(s, "fourier inversion of the profile", &e)),
            }
        }
        Err(e) => out.push(Check::error(s, "co-area profile", &e)),
    }
    out
}

/// Windows and points of the λ-windowed sweep.
pub const WEAK_WINDOWS: [(f64, f64); 3] = [(1.0, 2.0), (2.0, 3.0), (3.0, 4.0)];
pub const WEAK_POINTS: [(f64, f64); 3] = [(0.0, 0.0), (0.4, 0.0), (-0.25, 0.35)];
pub const WEAK_SIGMAS: (f64, f64) = (4.0, 12.0);
const WEAK_TOLERANCE: f64 = 0.03;
const SWEEP_BUDGET_SECONDS: f64 = 300.0;

/// λ-windowed estimator against the wave at `σ = 12`, with improvement over `σ = 4`.
pub fn moire_weak_checks() -> Vec<Check> {
    let s = Suite::Moire;
    let start = Instant::now();
    let b0 = BoundaryPoint::new(0.0);
    let mut out = Vec::new();
    match horocycle_normalization() {
        Ok(k) => out.push(Check::info(s, "κ_H", format!("{k:.8}"))),
        Err(e) => {
            out.push(Check::error(s, "κ_H", &e));
            return out;
        }
    }
    for (lo, hi) in WEAK_WINDOWS {
        let window = LambdaWindow::new(lo, hi).expect("valid window");
        for (px, py) in WEAK_POINTS {
            let x = DiskPoint::from_xy(px, py).expect("inside");
            let name = format!("weak [{lo},{hi}] x=({px},{py})");
            let errs: Result<Vec<f64>> = [WEAK_SIGMAS.0, WEAK_SIGMAS.1]
                .iter()
                .map(|&sigma| Ok(moire_weak(&window, b0, x, &TaperSpec::gaussian(sigma)?)?.relative_error()))
                .collect();
            match errs {
                Ok(e) => out.push(Check::gate(
                    s,
                    name,
                    e[1] <= WEAK_TOLERANCE && e[1] < e[0],
                    format!("err σ=12 {:.2e}, σ=4 {:.2e}", e[1], e[0]),
                )),
                Err(e) => out.push(Check::error(s, name, &e)),
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    out.push(Check::gate(
        s,
        "weak sweep runtime",
        elapsed <= SWEEP_BUDGET_SECONDS,
        format!("{elapsed:.1} s"),
    ));
    out
}

pub fn moire_property_checks() -> Vec<Check> {
    let s = Suite::Moire;
    let mut out = Vec::new();
    let tight = HorocycleQuadrature {
        tolerance: 1e-11,
        ..HorocycleQuadrature::default()
    };
    let taper = TaperSpec::gaussian(8.0).expect("positive width");
    let mut worst: f64 = 0.0;
    for (l, b, x) in [(1.5, 0.0, (0.4, 0.0)), (2.0, 1.1, (-0.2, 0.3)), (0.7, 4.0, (0.1, -0.5))] {
        let b0 = BoundaryPoint::new(b);
        let x = DiskPoint::from_xy(x.0, x.1).unwrap();
        match (
            tapered_superposition(lam(l), b0, x, &taper, &tight),
            tapered_superposition_reduced(lam(l), b0, x, &taper, &tight),
        ) {
            (Ok(a), Ok(r)) => worst = worst.max((a.value - r.value).norm() / a.value.norm().max(1.0)),
            (Err(e), _) | (_, Err(e)) => {
                out.push(Check::error(s, "reduction identity", &e));
                return out;
            }
        }
    }
    out.push(Check::gate(
        s,
        "reduction identity",
        worst <= 1e-8,
        format!("max rel gap {worst:.2e}"),
    ));

    let b0 = BoundaryPoint::new(0.0);
    let moved = nilpotent_flow(b0, 0.9).act(DiskPoint::ORIGIN);
    let taper12 = TaperSpec::gaussian(12.0).expect("positive width");
    match (
        moire_integral(lam(1.5), b0, DiskPoint::ORIGIN, &taper12),
        moire_integral(lam(1.5), b0, moved, &taper12),
    ) {
        (Ok(a), Ok(m)) => {
            let gap = (a.approx - m.approx).norm();
            out.push(Check::gate(
                s,
                "translation along the horocycle",
                gap <= 1e-6,
                format!("gap {gap:.2e}"),
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(Check::error(s, "translation along the horocycle", &e)),
    }

    let mut finite = true;
    let mut detail = String::new();
    for l in [0.5, 2.0, 4.0] {
        for sigma in [1.0, 16.0] {
            match moire_integral(
                lam(l),
                BoundaryPoint::new(1.0),
                DiskPoint::from_xy(0.2, 0.1).unwrap(),
                &TaperSpec::gaussian(sigma).unwrap(),
            ) {
                Ok(r) if r.approx.re.is_finite() && r.approx.im.is_finite() => {}
                Ok(_) => finite = false,
                Err(e) => {
                    finite = false;
                    detail = e.to_string();
                }
            }
        }
    }
    out.push(Check::gate(s, "finite estimates for λ ≥ 0.5, σ ≤ 16", finite, detail));
    out
}

/// Reported quantities that do not gate the outcome.
pub fn moire_diagnostics() -> Vec<Check> {
    let s = Suite::Moire;
    let b0 = BoundaryPoint::new(0.0);
    let mut out = Vec::new();
    for (lo, hi) in WEAK_WINDOWS {
        let window = LambdaWindow::new(lo, hi).expect("valid window");
        for (px, py) in WEAK_POINTS {
            let x = DiskPoint::from_xy(px, py).expect("inside");
            let name = format!("weak limit [{lo},{hi}] x=({px},{py})");
            match moire_weak_limit(&window, b0, x, &TaperSpec::gaussian(WEAK_SIGMAS.1).unwrap()) {
                Ok(p) => out.push(Check::info(s, name, format!("err σ=12 {:.2e}", p.relative_error()))),
                Err(e) => out.push(Check::info(s, name, format!("error: {e}"))),
            }
        }
    }
    match convergence_study(
        lam(1.5),
        b0,
        DiskPoint::ORIGIN,
        &[4.0, 8.0, 12.0, 16.0],
        TaperKind::Gaussian,
    ) {
        Ok(reports) => {
            let mean = reports.iter().map(|r| r.approx).sum::<Complex64>() / reports.len() as f64;
            out.push(Check::info(
                s,
                "oscillation band λ=1.5",
                format!("amplitude {:.3e}, mean {:.4}", reports[0].oscillation_amplitude, mean),
            ));
        }
        Err(e) => out.push(Check::info(s, "oscillation band λ=1.5", format!("error: {e}"))),
    }
    match convergence_study(lam(0.0), b0, DiskPoint::ORIGIN, &[4.0, 16.0, 64.0], TaperKind::Gaussian) {
        Ok(reports) => out.push(Check::info(
            s,
            "λ=0 sweep",
            format!(
                "divergent flag {}, last approx {:.3}",
                reports[0].divergent, reports[2].approx.re
            ),
        )),
        Err(e) => out.push(Check::info(s, "λ=0 sweep", format!("error: {e}"))),
    }
    out
}

/// Line-sum resemblance to the plane wave and the Bessel profile oracle.
pub fn euclid_checks() -> Vec<Check> {
    let s = Suite::Euclid;
    let lambda = 1.0;
    let spacing = lambda / 4.0;
    let points = window_points((0.0, 4.0 * lambda), (-lambda, lambda), lambda / 20.0);
    let weights = vec![1.0; points.len()];
    let target: Vec<Complex64> = points.iter().map(|q| plane_wave((TAU / lambda, 0.0), *q)).collect();
    let mut shape = Vec::new();
    let mut raw = Vec::new();
    let mut out = Vec::new();
    for n in [5, 15, 60] {
        let field: Result<Vec<Complex64>> = points.iter().map(|q| line_moire(lambda, n, spacing, *q)).collect();
        match field {
            Ok(f) => {
                shape.push(relative_shape_distance(&f, &target, &weights));
                raw.push(
                    l2_distance(&f, &target, &weights)
                        / l2_distance(&vec![Complex64::new(0.0, 0.0); f.len()], &target, &weights),
                );
            }
            Err(e) => {
                out.push(Check::error(s, "line sum", &e));
                return out;
            }
        }
    }
    out.push(Check::gate(
        s,
        "line-sum distance non-increasing in n",
        shape[1] <= shape[0] && shape[2] <= shape[1],
        format!("n=5,15,60: {:.4} {:.4} {:.4}", shape[0], shape[1], shape[2]),
    ));
    out.push(Check::info(
        s,
        "unnormalized line-sum distance",
        format!("n=5,15,60: {:.4} {:.4} {:.4}", raw[0], raw[1], raw[2]),
    ));

    let mut worst: f64 = 0.0;
    for k in 0..=1000 {
        let arg = 10.0 * k as f64 / 1000.0;
        let q = PlanePoint::new(arg / TAU, 0.0).unwrap();
        let v = bessel_wave(1.0, PlanePoint::ORIGIN, q)
            .map(|v| v.re)
            .unwrap_or(f64::NAN);
        worst = worst.max((v - bessel_j0_series(arg)).abs());
    }
    out.push(Check::gate(
        s,
        "bessel profile vs J₀ series",
        worst <= 1e-10,
        format!("max err {worst:.2e}"),
    ));
    out
}

/// Figure presets: spacing, spectral parameter and center counts.
pub const FIGURE_SPACING: f64 = 0.35;
pub const FIGURE_LAMBDA: f64 = 2.0;
pub const FIGURE_COUNTS: (usize, usize) = (5, 60);
/// Radius of the disk on which resemblance is measured.
pub const FIGURE_WINDOW: f64 = 1.5;

/// Correlation of a field with `e^{iλ⟨z, b0⟩}` over its grid.
pub fn phase_pattern_correlation(field: &SampledField, lambda: f64, b0: BoundaryPoint) -> f64 {
    let grid = field.grid();
    let target: Vec<Complex64> = (0..grid.len())
        .map(|i| Complex64::from_polar(1.0, lambda * busemann(grid.node_at(i), b0)))
        .collect();
    normalized_correlation(field.values(), &target, &field.weights())
}

pub fn figure_checks() -> Vec<Check> {
    let s = Suite::Figures;
    let b0 = BoundaryPoint::new(PI);
    let grid = PolarGrid::closed(60, 128, FIGURE_WINDOW).expect("valid grid");
    let mut rho = Vec::new();
    for n in [FIGURE_COUNTS.0, FIGURE_COUNTS.1] {
        match moire_sum_discrete(lam(FIGURE_LAMBDA), b0, n, FIGURE_SPACING, &grid) {
            Ok(f) => rho.push(phase_pattern_correlation(&f, FIGURE_LAMBDA, b0)),
            Err(e) => return vec![Check::error(s, "discrete sum", &e)],
        }
    }
    let wave = SampledField::from_fn(grid, |z| {
        helgason_wave(lam(FIGURE_LAMBDA), b0, z).unscale(helgason_wave(lam(0.0), b0, z).re)
    });
    let phase = phase_pattern_correlation(&wave, FIGURE_LAMBDA, b0);
    vec![
        Check::gate(
            s,
            "resemblance grows from 5 to 60 centers",
            rho[1] > rho[0],
            format!("correlation {:.4} → {:.4}", rho[0], rho[1]),
        ),
        Check::gate(
            s,
            "wave phase lines",
            (phase - 1.0).abs() < 1e-12,
            format!("correlation {phase:.12}"),
        ),
    ]
}
