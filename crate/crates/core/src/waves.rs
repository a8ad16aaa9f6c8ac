//! Helgason waves, elementary spherical functions and the spectral constants
//! of the hyperbolic plane.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::geometry::{busemann, BoundaryPoint, DiskPoint};
use crate::quadrature::GaussLegendre;

/// Half-sum of positive roots for curvature −1.
pub const RHO: f64 = 0.5;
pub const CURVATURE: f64 = -1.0;
/// Order of the Weyl group `{±1}` acting on `a* ≅ ℝ`.
pub const WEYL_ORDER: u32 = 2;

/// Default node count for the boundary quadrature of [`spherical`].
pub const BOUNDARY_NODES: usize = 512;
const MAX_BOUNDARY_NODES: usize = 1 << 17;
const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Spectral parameter `λ ∈ a* ≅ ℝ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpectralParam(f64);

impl SpectralParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() {
            Ok(SpectralParam(lambda))
        } else {
            Err(invalid("lambda", "must be finite"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Image under the nontrivial Weyl group element.
    pub fn reflected(self) -> Self {
        SpectralParam(-self.0)
    }
}

/// The fixed constants of the spectral theory plus the Plancherel calibration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConvention {
    plancherel_kappa: f64,
}

impl SpectralConvention {
    pub fn new(plancherel_kappa: f64) -> Result<Self> {
        if plancherel_kappa.is_finite() && plancherel_kappa > 0.0 {
            Ok(SpectralConvention { plancherel_kappa })
        } else {
            Err(invalid("plancherel_kappa", "must be positive and finite"))
        }
    }

    /// Convention with κ fixed by the transform round-trip calibration
    /// (computed once per process).
    pub fn calibrated() -> Self {
        crate::hft::calibrated_convention()
    }

    pub fn plancherel_kappa(&self) -> f64 {
        self.plancherel_kappa
    }

    pub fn rho(&self) -> f64 {
        RHO
    }

    pub fn curvature(&self) -> f64 {
        CURVATURE
    }

    pub fn weyl_order(&self) -> u32 {
        WEYL_ORDER
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.plancherel_kappa * factor)
    }
}

/// `e_{λ,b}(z) = exp((iλ + ρ)⟨z, b⟩)`.
pub fn helgason_wave(lambda: SpectralParam, b: BoundaryPoint, z: DiskPoint) -> Complex64 {
    let (log_modulus, phase) = helgason_wave_log(lambda, b, z);
    Complex64::from_polar(log_modulus.exp(), phase)
}

/// `(log |e_{λ,b}(z)|, arg e_{λ,b}(z))` without forming the exponential.
pub fn helgason_wave_log(lambda: SpectralParam, b: BoundaryPoint, z: DiskPoint) -> (f64, f64) {
    let bracket = busemann(z, b);
    (RHO * bracket, lambda.0 * bracket)
}

/// Elementary spherical function `φ_λ(z) = ∫_B e_{λ,b}(z) db` by periodic
/// trapezoid quadrature on the boundary circle.
///
/// Starts at [`BOUNDARY_NODES`] nodes and doubles until the `M` and `M/2`
/// results agree to 1e-9.
pub fn spherical(lambda: SpectralParam, z: DiskPoint) -> Result<Complex64> {
    let mut m = BOUNDARY_NODES;
    loop {
        match spherical_with_nodes(lambda, z, m) {
            Ok(v) => return Ok(v),
            Err(e) if m >= MAX_BOUNDARY_NODES => return Err(e),
            Err(_) => m *= 2,
        }
    }
}

/// Boundary quadrature with exactly `m` nodes; fails if the `m/2`-node
/// estimate differs by more than 1e-9.
pub fn spherical_with_nodes(lambda: SpectralParam, z: DiskPoint, m: usize) -> Result<Complex64> {
    let (full, half) = boundary_sums(lambda, z, m)?;
    let change = (full - half).norm();
    if change > BOUNDARY_TOLERANCE {
        return Err(Error::QuadratureUnderResolved {
            change,
            tolerance: BOUNDARY_TOLERANCE,
        });
    }
    Ok(full)
}

/// `(M-node, M/2-node)` boundary averages of `e_{λ,b}(z)`.
pub(crate) fn boundary_sums(lambda: SpectralParam, z: DiskPoint, m: usize) -> Result<(Complex64, Complex64)> {
    if m < 2 || m % 2 != 0 {
        return Err(invalid("resolution", "boundary node count must be even and at least 2"));
    }
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    for k in 0..m {
        let b = BoundaryPoint::new(TAU * k as f64 / m as f64);
        let v = helgason_wave(lambda, b, z);
        if k % 2 == 0 {
            even += v;
        } else {
            odd += v;
        }
    }
    let full = (even + odd) / m as f64;
    let half = even / (m / 2) as f64;
    Ok((full, half))
}

/// `φ_λ` as a function of the distance `d` to its center.
///
/// Evaluated through the Mehler–Dirichlet representation
/// `φ_λ(d) = (√2/π) ∫₀^d cos(λs) (cosh d − cosh s)^{-1/2} ds`
/// with `s = d − w²`, which removes the endpoint singularity, and with the
/// factor `e^{−d/2}` pulled out so nothing overflows. Negative `d` is read as `|d|`.
pub fn spherical_radial(lambda: SpectralParam, d: f64) -> f64 {
    let d = d.abs();
    let lam = lambda.0;
    if d < 1e-7 {
        return 1.0 - (lam * lam + 0.25) * d * d / 4.0;
    }
    if d > 1400.0 {
        return 0.0;
    }
    let upper = d.sqrt();
    let panels = ((lam.abs() * d) / PI).ceil() as usize + upper.ceil() as usize + 1;
    let integral = GaussLegendre::standard().integrate(0.0, upper, panels, |w| {
        let w2 = w * w;
        let a = d - 0.5 * w2;
        // 2 sinh(a) = e^{a}(1 − e^{−2a}); e^{a/2} = e^{d/2} e^{−w²/4}
        let den = (-(-2.0 * a).exp_m1() * (0.5 * w2).sinh()).sqrt();
        2.0 * w * (lam * (d - w2)).cos() * (0.25 * w2).exp() / den
    });
    SQRT_2 / PI * (-0.5 * d).exp() * integral
}

/// `Ξ = φ₀` as a function of the distance to the origin.
pub fn xi_function(d: f64) -> f64 {
    spherical_radial(SpectralParam(0.0), d)
}

/// Least-squares fit of the large-distance asymptotics
/// `φ_λ(t) e^{t/2} ≈ c₊ e^{iλt} + c₋ e^{−iλt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CFunctionFit {
    /// Estimate of `c(λ)`.
    pub c_plus: Complex64,
    /// Estimate of `c(−λ)`.
    pub c_minus: Complex64,
    pub relative_residual: f64,
}

/// Fitting window for the c-function extraction.
pub const C_FIT_WINDOW: (f64, f64) = (10.0, 14.0);
const C_FIT_SAMPLES: usize = 161;

pub fn fit_c_function(lambda: SpectralParam) -> Result<CFunctionFit> {
    fit_c_function_on(lambda, C_FIT_WINDOW.0, C_FIT_WINDOW.1)
}

pub fn fit_c_function_on(lambda: SpectralParam, t_lo: f64, t_hi: f64) -> Result<CFunctionFit> {
    let lam = lambda.0;
    if lam.abs() < 1e-8 {
        return Err(Error::SpectralSingularity { lambda: lam });
    }
    if !(t_lo > 0.0 && t_hi > t_lo) {
        return Err(invalid("window", "need 0 < t_lo < t_hi"));
    }
    let n = C_FIT_SAMPLES;
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = t_lo + (t_hi - t_lo) * k as f64 / (n - 1) as f64;
            (t, spherical_radial(lambda, t) * (0.5 * t).exp())
        })
        .collect();

    // Normal equations for the two complex coefficients.
    let (mut g11, mut g12, mut g22) = (0.0, Complex64::new(0.0, 0.0), 0.0);
    let (mut r1, mut r2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for &(t, y) in &samples {
        let u = Complex64::from_polar(1.0, lam * t);
        let v = u.conj();
        g11 += 1.0;
        g22 += 1.0;
        g12 += u.conj() * v;
        r1 += u.conj() * y;
        r2 += v.conj() * y;
    }
    let det = g11 * g22 - g12.norm_sqr();
    let c_plus = (r1 * g22 - g12 * r2) / det;
    let c_minus = (r2 * g11 - g12.conj() * r1) / det;

    let (mut res, mut norm) = (0.0, 0.0);
    for &(t, y) in &samples {
        let model = c_plus * Complex64::from_polar(1.0, lam * t) + c_minus * Complex64::from_polar(1.0, -lam * t);
        res += (y - model).norm_sqr();
        norm += y * y;
    }
    Ok(CFunctionFit {
        c_plus,
        c_minus,
        relative_residual: (res / norm).sqrt(),
    })
}

/// Harish-Chandra `c(λ)`, extracted from the asymptotics of `φ_λ`.
pub fn harish_chandra_c(lambda: SpectralParam) -> Result<Complex64> {
    Ok(fit_c_function(lambda)?.c_plus)
}

/// Plancherel density `κ λ tanh(πλ)`.
pub fn plancherel_density(lambda: SpectralParam, convention: &SpectralConvention) -> f64 {
    let lam = lambda.0;
    convention.plancherel_kappa * lam * (PI * lam).tanh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{act, geodesic_distance, GroupElement, Horocycle};
    use crate::validate::reference::legendre_integral;
    use proptest::prelude::*;

    fn lam(x: f64) -> SpectralParam {
        SpectralParam::new(x).unwrap()
    }

    fn pt(x: f64, y: f64) -> DiskPoint {
        DiskPoint::from_xy(x, y).unwrap()
    }

    /// 5-point stencil of the hyperbolic Laplacian `((1−|z|²)²/4) Δ_eucl`.
    fn hyperbolic_laplacian<F: Fn(DiskPoint) -> Complex64>(f: &F, z: DiskPoint, h: f64) -> Complex64 {
        let (x, y) = (z.re(), z.im());
        let lap = (f(pt(x + h, y)) + f(pt(x - h, y)) + f(pt(x, y + h)) + f(pt(x, y - h)) - 4.0 * f(z)) / (h * h);
        let g = 1.0 - z.z().norm_sqr();
        lap * (g * g / 4.0)
    }

    #[test]
    fn spectral_param_rejects_non_finite() {
        assert!(SpectralParam::new(f64::INFINITY).is_err());
        assert!(SpectralParam::new(-3.0).is_ok());
    }

    #[test]
    fn wave_examples() {
        let b = BoundaryPoint::new(0.7);
        assert_eq!(helgason_wave(lam(3.3), b, DiskPoint::ORIGIN), Complex64::new(1.0, 0.0));
        let w = helgason_wave(lam(2.0), BoundaryPoint::new(0.0), pt(0.5, 0.0));
        assert!((w.norm() - 3f64.sqrt()).abs() < 1e-12);
        assert!((w.arg() - 2.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn wave_is_constant_on_horocycles() {
        let h = Horocycle::new(BoundaryPoint::new(2.0), 0.35);
        let base = helgason_wave(lam(1.7), h.direction, h.point(0.0));
        for s in [-3.0, 0.0, 4.0] {
            assert!((helgason_wave(lam(1.7), h.direction, h.point(s)) - base).norm() < 1e-10);
        }
    }

    #[test]
    fn spherical_examples() {
        for l in [0.0, 1.0, 3.5] {
            let v = spherical(lam(l), DiskPoint::ORIGIN).unwrap();
            assert!((v - 1.0).norm() < 1e-15);
        }
        let z = pt(0.4, -0.3);
        let a = spherical(lam(1.3), z).unwrap();
        let b = spherical(lam(-1.3), z).unwrap();
        assert!((a - b).norm() < 1e-12);
        assert!(a.im.abs() < 1e-14);
        let r = spherical(lam(1.3), z.rotated(1.9)).unwrap();
        assert!((a - r).norm() < 1e-11);
    }

    #[test]
    fn fixed_resolution_reports_under_resolution() {
        let far = DiskPoint::from_geodesic_polar(6.0, 0.2);
        let err = spherical_with_nodes(lam(1.0), far, 64).unwrap_err();
        assert!(matches!(err, Error::QuadratureUnderResolved { .. }));
        // the adaptive entry point raises the node count instead
        assert!(spherical(lam(1.0), far).is_ok());
        assert!(spherical_with_nodes(lam(1.0), far, 63).is_err());
    }

    #[test]
    fn radial_fast_path_matches_boundary_quadrature() {
        for &l in &[0.0, 0.5, 1.0, 2.0, 4.0] {
            for &d in &[0.0, 0.01, 0.3, 1.0, 2.5, 4.0, 5.0] {
                let z = DiskPoint::from_geodesic_polar(d, 0.0);
                let a = spherical(lam(l), z).unwrap();
                let b = spherical_radial(lam(l), d);
                assert!((a.re - b).abs() < 1e-11, "λ={l} d={d}: {} vs {b}", a.re);
            }
        }
    }

    #[test]
    fn radial_fast_path_matches_legendre_integral() {
        for i in 0..=8 {
            let l = 0.5 * i as f64;
            for j in 0..=10 {
                let d = 0.5 * j as f64;
                let oracle = legendre_integral(l, d);
                assert!(oracle.im.abs() < 1e-10);
                assert!((spherical_radial(lam(l), d) - oracle.re).abs() < 1e-8, "λ={l} d={d}");
            }
        }
    }

    #[test]
    fn radial_small_distance_branch_is_continuous() {
        let l = lam(2.0);
        let below = spherical_radial(l, 0.99e-7);
        let above = spherical_radial(l, 1.01e-7);
        assert!((below - above).abs() < 1e-12);
        assert_eq!(spherical_radial(l, 0.0), 1.0);
        assert!(spherical_radial(l, 2000.0) == 0.0);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_function(0.0), 1.0);
        let mut d = 0.0;
        while d <= 20.0 {
            let xi = xi_function(d);
            assert!(xi > 0.0 && xi <= 1.0);
            assert!(xi <= 2.0 * (1.0 + d) * (-0.5 * d).exp(), "d={d}");
            d += 0.05;
        }
        let (x4, x5) = (xi_function(4.0), xi_function(5.0));
        assert!(x5 > 0.0 && x5 < x4);
    }

    #[test]
    fn eigenfunction_property() {
        let h = 1e-3;
        let points = [pt(0.1, 0.2), pt(-0.35, 0.1), pt(0.3, -0.4), pt(0.05, -0.6)];
        for l in [0.5, 1.0, 2.0, 4.0] {
            let mu = -(l * l + 0.25);
            let b = BoundaryPoint::new(0.8);
            let wave = |z: DiskPoint| helgason_wave(lam(l), b, z);
            let sph = |z: DiskPoint| spherical(lam(l), z).unwrap();
            for f in [&wave as &dyn Fn(DiskPoint) -> Complex64, &sph] {
                let (mut num, mut den) = (0.0, 0.0);
                for &z in &points {
                    let lap = hyperbolic_laplacian(&f, z, h);
                    num += (lap - mu * f(z)).norm_sqr();
                    den += (mu * f(z)).norm_sqr();
                }
                assert!((num / den).sqrt() < 1e-3, "λ={l}");
            }
        }
    }

    #[test]
    fn c_function_examples() {
        assert!(matches!(
            harish_chandra_c(lam(0.0)),
            Err(Error::SpectralSingularity { .. })
        ));
        for l in [0.5, 1.0, 2.5] {
            let c = harish_chandra_c(lam(l)).unwrap();
            let cm = harish_chandra_c(lam(-l)).unwrap();
            assert!((cm - c.conj()).norm() < 1e-6);
        }
        let fit = fit_c_function(lam(1.0)).unwrap();
        assert!(fit.relative_residual < 1e-4);
    }

    #[test]
    fn c_function_matches_plancherel_shape() {
        // |c(λ)|⁻² = π λ tanh(πλ) for this metric normalization
        let conv = SpectralConvention::new(1.0).unwrap();
        let mut ratios = Vec::new();
        let mut l = 0.5;
        while l <= 4.0 + 1e-12 {
            let c = harish_chandra_c(lam(l)).unwrap();
            let ratio = c.norm_sqr().recip() / plancherel_density(lam(l), &conv);
            assert!((ratio - PI).abs() < 1e-6 * PI, "λ={l}: {ratio}");
            ratios.push(ratio);
            l += 0.25;
        }
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min - 1.0 < 5e-3);
    }

    #[test]
    fn plancherel_density_examples() {
        let conv = SpectralConvention::new(0.2).unwrap();
        assert_eq!(plancherel_density(lam(0.0), &conv), 0.0);
        for l in [0.3, 1.0, 7.5] {
            assert_eq!(plancherel_density(lam(l), &conv), plancherel_density(lam(-l), &conv));
            assert!(plancherel_density(lam(l), &conv) > 0.0);
        }
        assert!(SpectralConvention::new(0.0).is_err());
    }

    #[test]
    fn centered_spherical_functions_are_invariant() {
        let g = GroupElement::rotation(0.3) * GroupElement::boost(0.9) * GroupElement::unipotent(-0.4);
        let (y, x) = (pt(0.2, 0.1), pt(-0.5, 0.3));
        let l = lam(1.5);
        let before = spherical_radial(l, geodesic_distance(y, x));
        let after = spherical_radial(l, geodesic_distance(act(g, y), act(g, x)));
        assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn spherical_is_lipschitz_in_lambda() {
        let d = 2.0;
        let delta = 1e-4;
        let mut l = 0.0;
        while l < 4.0 {
            let diff = (spherical_radial(lam(l + delta), d) - spherical_radial(lam(l), d)).abs();
            assert!(diff <= d * delta * 1.01);
            l += 0.1;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn spherical_is_bounded_by_one(l in -6.0..6.0f64, t in 0.0..6.0f64, a in 0.0..TAU) {
            let v = spherical(lam(l), DiskPoint::from_geodesic_polar(t, a)).unwrap();
            prop_assert!(v.norm() <= 1.0 + 1e-12);
            prop_assert!(spherical_radial(lam(l), t).abs() <= 1.0 + 1e-12);
        }

        #[test]
        fn wave_modulus_is_rho_growth(l in -6.0..6.0f64, th in 0.0..TAU, r in 0.0..0.95f64, a in 0.0..TAU) {
            let z = DiskPoint::new(Complex64::from_polar(r, a)).unwrap();
            let b = BoundaryPoint::new(th);
            let w = helgason_wave(lam(l), b, z);
            prop_assert!((w.norm() - (RHO * busemann(z, b)).exp()).abs() < 1e-12 * w.norm().max(1.0));
        }
    }
}
