//! Reference computations that share no code path with the library routines
//! they check.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::quadrature::GaussLegendre;

/// `(1/π) ∫₀^π (cosh d − sinh d cos u)^{−(1/2 + iλ)} du`.
///
/// The integrand peaks in a layer of width `~e^{−d}` at `u = 0`; the mesh is
/// graded geometrically toward that endpoint.
pub fn legendre_integral(lambda: f64, d: f64) -> Complex64 {
    if d == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let exponent = Complex64::new(-0.5, -lambda);
    let integrand = |u: f64| -> Complex64 {
        let s = (0.5 * u).sin();
        let base = (-d).exp() + 2.0 * d.sinh() * s * s;
        (exponent * base.ln()).exp()
    };
    let rule = GaussLegendre::new(24);
    let mut edges = vec![0.0];
    let mut x = 0.05 * (-d).exp();
    while x < PI {
        edges.push(x);
        x *= 2.0;
    }
    edges.push(PI);
    let mut total = Complex64::new(0.0, 0.0);
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let panels = 1 + ((b - a) * (1.0 + lambda.abs())).ceil() as usize;
        let re = rule.integrate(a, b, panels, |u| integrand(u).re);
        let im = rule.integrate(a, b, panels, |u| integrand(u).im);
        total += Complex64::new(re, im);
    }
    total / PI
}

/// `J₀(x)` from its power series `Σ (−1)^k (x/2)^{2k} / (k!)²`.
pub fn bessel_j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= -q / (k as f64 * k as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k as f64 > q.sqrt() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_known_values() {
        assert_eq!(bessel_j0_series(0.0), 1.0);
        // tabulated: J0(1) = 0.7651976865579666, J0(2.404825557695773) = 0
        assert!((bessel_j0_series(1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!(bessel_j0_series(2.404_825_557_695_773).abs() < 1e-14);
        assert!((bessel_j0_series(10.0) + 0.245_935_764_451_348_3).abs() < 1e-12);
    }

    #[test]
    fn legendre_integral_at_zero_lambda_small_distance() {
        // φ_λ(d) ≈ 1 − (λ² + 1/4) d²/4 near the center
        let d = 1e-3;
        let v = legendre_integral(0.0, d);
        assert!((v.re - (1.0 - 0.25 * d * d / 4.0)).abs() < 1e-12);
    }
}
