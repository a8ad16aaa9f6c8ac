//! Euclidean counterpart: plane waves, Bessel profiles and line sums.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(PlanePoint { x, y })
        } else {
            Err(invalid("point", "coordinates must be finite"))
        }
    }

    pub fn distance(self, other: PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// `e^{i p·q}`.
pub fn plane_wave(p: (f64, f64), q: PlanePoint) -> Complex64 {
    Complex64::from_polar(1.0, p.0 * q.x + p.1 * q.y)
}

/// `(1/2π) ∫ exp(i (2π/λ) u·(q − x0)) du` over the unit circle, which equals
/// `J₀(2π|q − x0|/λ)`.
///
/// Periodic trapezoid rule; the node count grows with the argument so the
/// truncation error stays below 1e-14.
pub fn bessel_wave(lambda: f64, x0: PlanePoint, q: PlanePoint) -> Result<Complex64> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(invalid("lambda", "must be positive"));
    }
    let arg = TAU / lambda * q.distance(x0);
    Ok(Complex64::new(angular_mean(arg), 0.0))
}

fn angular_mean(arg: f64) -> f64 {
    let m = 2 * (arg.ceil() as usize) + 40;
    // the imaginary parts cancel pairwise between u and u + π
    let sum: f64 = (0..m).map(|k| (arg * (TAU * k as f64 / m as f64).cos()).cos()).sum();
    sum / m as f64
}

/// Centers `(0, spacing·(i − (n+1)/2))`, `i = 1..=n`, on the y-axis.
pub fn line_centers(n: usize, spacing: f64) -> Vec<PlanePoint> {
    (1..=n)
        .map(|i| PlanePoint {
            x: 0.0,
            y: spacing * (i as f64 - 0.5 * (n as f64 + 1.0)),
        })
        .collect()
}

/// `(1/n) Σ bessel_wave(λ, x_i, q)` over [`line_centers`].
pub fn line_moire(lambda: f64, n: usize, spacing: f64, q: PlanePoint) -> Result<Complex64> {
    if n == 0 {
        return Err(invalid("n", "need at least one center"));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(invalid("spacing", "must be positive"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for c in line_centers(n, spacing) {
        sum += bessel_wave(lambda, c, q)?;
    }
    Ok(sum / n as f64)
}

/// Uniform sample points of `[x0, x1] × [y0, y1]` with the given spacing.
pub fn window_points(x: (f64, f64), y: (f64, f64), step: f64) -> Vec<PlanePoint> {
    let nx = ((x.1 - x.0) / step).round() as usize + 1;
    let ny = ((y.1 - y.0) / step).round() as usize + 1;
    let mut out = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        for j in 0..ny {
            out.push(PlanePoint {
                x: x.0 + i as f64 * step,
                y: y.0 + j as f64 * step,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::reference::bessel_j0_series;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> PlanePoint {
        PlanePoint::new(x, y).unwrap()
    }

    #[test]
    fn plane_wave_periods() {
        assert_eq!(plane_wave((1.3, -0.2), PlanePoint::ORIGIN), Complex64::new(1.0, 0.0));
        assert!((plane_wave((TAU, 0.0), p(1.0, 0.0)) - 1.0).norm() < 1e-15);
        assert!((plane_wave((PI, 0.0), p(1.0, 0.0)) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn bessel_wave_center_and_first_zero() {
        let x0 = p(0.3, -0.7);
        assert!((bessel_wave(1.7, x0, x0).unwrap().re - 1.0).abs() < 1e-15);
        // first zero of J₀ located by bisection on the quadrature itself
        let (mut a, mut b) = (2.0, 3.0);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if angular_mean(a) * angular_mean(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        assert!((a - 2.404_825_557_695_773).abs() < 1e-12);
        let lambda = 2.0;
        let q = p(0.3 + lambda / TAU * a, -0.7);
        assert!(bessel_wave(lambda, x0, q).unwrap().norm() < 1e-12);
        assert!(bessel_wave(0.0, x0, q).is_err());
    }

    #[test]
    fn bessel_wave_matches_series() {
        for k in 0..=200 {
            let arg = 10.0 * k as f64 / 200.0;
            let lambda = 1.0;
            let q = p(arg / TAU, 0.0);
            let v = bessel_wave(lambda, PlanePoint::ORIGIN, q).unwrap().re;
            assert!((v - bessel_j0_series(arg)).abs() < 1e-10, "{arg}");
        }
    }

    #[test]
    fn single_center_line_sum() {
        let q = p(1.2, 0.4);
        assert_eq!(
            line_moire(2.0, 1, 0.5, q).unwrap(),
            bessel_wave(2.0, PlanePoint::ORIGIN, q).unwrap()
        );
        assert!(line_moire(2.0, 0, 0.5, q).is_err());
    }

    proptest! {
        #[test]
        fn bessel_wave_is_radial(r in 0.0f64..5.0, a in 0.0f64..TAU, b in 0.0f64..TAU) {
            let u = bessel_wave(1.3, PlanePoint::ORIGIN, p(r * a.cos(), r * a.sin())).unwrap();
            let v = bessel_wave(1.3, PlanePoint::ORIGIN, p(r * b.cos(), r * b.sin())).unwrap();
            prop_assert!((u - v).norm() < 1e-12);
        }

        #[test]
        fn line_sum_is_mirror_symmetric(x in -3.0f64..3.0, y in -3.0f64..3.0, n in 1usize..12) {
            let u = line_moire(1.5, n, 0.4, p(x, y)).unwrap();
            let v = line_moire(1.5, n, 0.4, p(x, -y)).unwrap();
            prop_assert!((u - v).norm() < 1e-12);
        }
    }
}
