//! Helgason Fourier transform on polar grids, horocycle integrals and the
//! horocycle lemma.

mod field;
mod horocycle;
mod transform;

use std::sync::OnceLock;

use num_complex::Complex64;

pub use field::{PolarGrid, RadialLayout, SampledField, SpectralField, SpectralGrid};
pub use horocycle::{
    coarea_profile, euclidean_inversion, horocycle_integral, horocycle_integral_centered, lemma_check, wide_taper,
    HorocycleQuadrature, HorocycleValue, LemmaResolution, LemmaSides,
};
pub use transform::{
    forward, forward_at_directions, forward_direct, inverse, inverse_direct_checked, plancherel_check,
    spherical_transform, PlancherelCheck, SUPPORT_TOLERANCE, TRUNCATION_TOLERANCE,
};

use crate::error::Result;
use crate::geometry::{geodesic_distance, DiskPoint};
use crate::waves::SpectralConvention;

/// `exp(−d(0, z)²)`, the field that fixes the Plancherel constant.
pub fn calibration_bump(z: DiskPoint) -> Complex64 {
    let d = geodesic_distance(z, DiskPoint::ORIGIN);
    Complex64::new((-d * d).exp(), 0.0)
}

/// Least-squares κ making `inverse ∘ forward` the identity on
/// [`calibration_bump`] at the given resolution.
pub fn calibrate_kappa(grid: &PolarGrid, spectral: &SpectralGrid) -> Result<f64> {
    let f0 = SampledField::from_fn(*grid, calibration_bump);
    let transformed = forward(&f0, spectral)?;
    let unit = SpectralConvention::new(1.0)?;
    let g = inverse(&transformed, grid, &unit)?;
    let w = f0.weights();
    let (mut fg, mut gg) = (0.0, 0.0);
    for ((a, b), wi) in f0.values().iter().zip(g.values()).zip(&w) {
        fg += wi * (a * b.conj()).re;
        gg += wi * b.norm_sqr();
    }
    Ok(fg / gg)
}

/// Convention calibrated on the default grids, computed once per process.
pub fn calibrated_convention() -> SpectralConvention {
    static CONVENTION: OnceLock<SpectralConvention> = OnceLock::new();
    *CONVENTION.get_or_init(|| {
        let kappa = calibrate_kappa(&PolarGrid::default(), &SpectralGrid::default())
            .expect("calibration bump fits the default grids");
        SpectralConvention::new(kappa).expect("positive calibration constant")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn calibrated_kappa_is_one_over_two_pi() {
        let kappa = calibrated_convention().plancherel_kappa();
        assert!((kappa * 2.0 * PI - 1.0).abs() < 1e-3, "{kappa}");
    }

    #[test]
    fn round_trip_off_center_bump() {
        let conv = calibrated_convention();
        let pg = PolarGrid::default();
        let z0 = DiskPoint::from_xy(0.15, 0.13).unwrap();
        let f = SampledField::from_fn(pg, |z| {
            let d = geodesic_distance(z, z0);
            Complex64::new((-d * d).exp(), 0.0)
        });
        let back = inverse(&forward(&f, &SpectralGrid::default()).unwrap(), &pg, &conv).unwrap();
        let err = back.relative_l2_error(&f).unwrap();
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn plancherel_identity() {
        let conv = calibrated_convention();
        let pg = PolarGrid::default();
        let f = SampledField::from_fn(pg, |z| {
            let d = geodesic_distance(z, DiskPoint::ORIGIN);
            Complex64::new((-1.5 * d * d).exp(), 0.0)
        });
        let check = plancherel_check(&f, &SpectralGrid::default(), &conv).unwrap();
        assert!(check.relative_gap() < 1e-3, "{check:?}");
    }
}
