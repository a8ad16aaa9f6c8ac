//! Resemblance measures between sampled fields.

use num_complex::Complex64;

/// `|⟨f, g⟩| / (‖f‖ ‖g‖)` under the weighted inner product `Σ wᵢ fᵢ ḡᵢ`.
pub fn normalized_correlation(f: &[Complex64], g: &[Complex64], weights: &[f64]) -> f64 {
    assert_eq!(f.len(), g.len());
    assert_eq!(f.len(), weights.len());
    let mut inner = Complex64::new(0.0, 0.0);
    let (mut ff, mut gg) = (0.0, 0.0);
    for ((a, b), w) in f.iter().zip(g).zip(weights) {
        inner += w * a * b.conj();
        ff += w * a.norm_sqr();
        gg += w * b.norm_sqr();
    }
    if ff == 0.0 || gg == 0.0 {
        return 0.0;
    }
    inner.norm() / (ff * gg).sqrt()
}

/// Raw weighted L² distance `‖f − g‖`.
pub fn l2_distance(f: &[Complex64], g: &[Complex64], weights: &[f64]) -> f64 {
    f.iter()
        .zip(g)
        .zip(weights)
        .map(|((a, b), w)| w * (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Scale-invariant distance `min_α ‖α f − g‖ / ‖g‖ = √(1 − ρ²)`, where ρ is
/// the normalized correlation.
pub fn relative_shape_distance(f: &[Complex64], g: &[Complex64], weights: &[f64]) -> f64 {
    let rho = normalized_correlation(f, g, weights).min(1.0);
    (1.0 - rho * rho).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn correlation_is_scale_invariant() {
        let f = vec![c(1.0), c(2.0), c(-1.0)];
        let g: Vec<_> = f.iter().map(|v| v * Complex64::new(0.0, 3.0)).collect();
        let w = vec![1.0, 0.5, 2.0];
        assert!((normalized_correlation(&f, &g, &w) - 1.0).abs() < 1e-15);
        assert!(relative_shape_distance(&f, &g, &w) < 1e-7);
        assert!((l2_distance(&f, &f, &w)).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_fields() {
        let f = vec![c(1.0), c(0.0)];
        let g = vec![c(0.0), c(1.0)];
        let w = vec![1.0, 1.0];
        assert_eq!(normalized_correlation(&f, &g, &w), 0.0);
        assert_eq!(relative_shape_distance(&f, &g, &w), 1.0);
        assert!((l2_distance(&f, &g, &w) - 2f64.sqrt()).abs() < 1e-15);
    }
}
