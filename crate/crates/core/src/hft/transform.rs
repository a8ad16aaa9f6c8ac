use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::field::{PolarGrid, SampledField, SpectralField, SpectralGrid};
use crate::error::{Error, Result};
use crate::geometry::{busemann, BoundaryPoint, DiskPoint};
use crate::waves::{plancherel_density, spherical_radial, SpectralConvention, SpectralParam, RHO};

/// Outer-ring L¹ fraction above which a field counts as not supported in the grid.
pub const SUPPORT_TOLERANCE: f64 = 1e-6;
/// Edge-row L¹ fraction above which a spectral field counts as truncated.
pub const TRUNCATION_TOLERANCE: f64 = 1e-4;
const RADIAL_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_support(f: &SampledField) -> Result<()> {
    let fraction = f.outer_ring_fraction();
    if fraction > SUPPORT_TOLERANCE {
        Err(Error::SupportOverflow { fraction })
    } else {
        Ok(())
    }
}

/// Busemann values `⟨node(j, n), 1⟩` for one ring; even in `n`.
fn ring_busemann(grid: &PolarGrid, j: usize) -> Vec<f64> {
    let one = BoundaryPoint::new(0.0);
    (0..grid.angular()).map(|n| busemann(grid.node(j, n), one)).collect()
}

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plans(n: usize) -> Plans {
    let mut planner = FftPlanner::new();
    Plans {
        forward: planner.plan_fft_forward(n),
        inverse: planner.plan_fft_inverse(n),
    }
}

/// `f̂(λ, b) = Σ_z w(z) f(z) e_{−λ,b}(z)` over the polar grid.
///
/// Uses ring-wise circular convolution by FFT when the boundary directions
/// coincide with the grid angles, and the direct sum otherwise. Fails with
/// [`Error::SupportOverflow`] if `f` is not negligible on the outer ring.
pub fn forward(f: &SampledField, grid: &SpectralGrid) -> Result<SpectralField> {
    check_support(f)?;
    if grid.directions() == f.grid().angular() {
        Ok(forward_fft(f, grid))
    } else {
        Ok(forward_direct(f, grid))
    }
}

/// Direct-sum forward transform; `O(λ-count × directions × nodes)`.
pub fn forward_direct(f: &SampledField, grid: &SpectralGrid) -> SpectralField {
    let directions: Vec<BoundaryPoint> = (0..grid.directions()).map(|m| grid.direction_at(m)).collect();
    let columns = forward_at_directions(f, grid, &directions);
    let mut values = vec![ZERO; grid.len()];
    for (m, column) in columns.iter().enumerate() {
        for (i, v) in column.iter().enumerate() {
            values[i * grid.directions() + m] = *v;
        }
    }
    SpectralField::new(*grid, values).expect("grid-sized output")
}

/// `λ ↦ f̂(λ, b)` on the λ-nodes of `grid` for each of the given directions.
pub fn forward_at_directions(
    f: &SampledField,
    grid: &SpectralGrid,
    directions: &[BoundaryPoint],
) -> Vec<Vec<Complex64>> {
    let weights = f.weights();
    let nodes = f.grid().nodes();
    let count = grid.lambda_count();
    let (lambda0, step) = (grid.lambda_min(), grid.lambda_step());
    directions
        .par_iter()
        .map(|&b| {
            let mut column = vec![ZERO; count];
            for ((z, w), v) in nodes.iter().zip(&weights).zip(f.values()) {
                if *w == 0.0 || *v == ZERO {
                    continue;
                }
                let bz = busemann(*z, b);
                let mut term = v * (w * (RHO * bz).exp()) * Complex64::from_polar(1.0, -lambda0 * bz);
                let rotate = Complex64::from_polar(1.0, -step * bz);
                for c in column.iter_mut() {
                    *c += term;
                    term *= rotate;
                }
            }
            column
        })
        .collect()
}

fn forward_fft(f: &SampledField, grid: &SpectralGrid) -> SpectralField {
    let pg = *f.grid();
    let n = pg.angular();
    let fft = plans(n);
    let dtheta = 2.0 * PI / n as f64;
    let ring_w = pg.ring_weights();

    let mut ring_spectra: Vec<Vec<Complex64>> = (0..pg.radial())
        .map(|j| f.ring(j).iter().map(|v| v * (ring_w[j] * dtheta)).collect())
        .collect();
    for spectrum in &mut ring_spectra {
        fft.forward.process(spectrum);
    }
    let bus: Vec<Vec<f64>> = (0..pg.radial()).map(|j| ring_busemann(&pg, j)).collect();
    let active: Vec<usize> = (0..pg.radial())
        .filter(|&j| ring_w[j] != 0.0 && ring_spectra[j].iter().any(|v| *v != ZERO))
        .collect();

    let rows: Vec<Vec<Complex64>> = (0..grid.lambda_count())
        .into_par_iter()
        .map(|i| {
            let lambda = grid.lambda_at(i);
            let mut acc = vec![ZERO; n];
            let mut kernel = vec![ZERO; n];
            for &j in &active {
                for (k, b) in kernel.iter_mut().zip(&bus[j]) {
                    *k = Complex64::from_polar((RHO * b).exp(), -lambda * b);
                }
                fft.forward.process(&mut kernel);
                for ((a, s), k) in acc.iter_mut().zip(&ring_spectra[j]).zip(&kernel) {
                    *a += s * k;
                }
            }
            fft.inverse.process(&mut acc);
            let scale = 1.0 / n as f64;
            acc.iter().map(|v| v * scale).collect()
        })
        .collect();
    SpectralField::new(*grid, rows.concat()).expect("grid-sized output")
}

/// Weight of spectral node `i` in the inversion integral, Plancherel density included.
fn inversion_weights(grid: &SpectralGrid, convention: &SpectralConvention) -> Result<Vec<f64>> {
    // f = (1/|W|) ∫_{a*} ∫_B f̂ e_{λ,b} dμ; on [0, Λ] the two Weyl chambers are folded.
    let fold = if grid.starts_at_zero() {
        1.0
    } else if grid.is_symmetric() {
        0.5
    } else {
        return Err(Error::GridMismatch(
            "inversion needs a λ-grid on [0, Λ] or [−Λ, Λ]".into(),
        ));
    };
    let db = 1.0 / grid.directions() as f64;
    Ok(grid
        .lambda_weights()
        .iter()
        .enumerate()
        .map(|(i, w)| fold * w * db * plancherel_density(SpectralParam::new(grid.lambda_at(i)).unwrap(), convention))
        .collect())
}

fn check_truncation(field: &SpectralField) -> Result<()> {
    let fraction = field.edge_row_fraction();
    if fraction > TRUNCATION_TOLERANCE {
        Err(Error::SpectralTruncation { fraction })
    } else {
        Ok(())
    }
}

/// `f(z) = (1/|W|) Σ_{λ,b} w f̂(λ, b) e_{λ,b}(z) κ λ tanh(πλ)` on a polar grid.
///
/// A λ-grid on `[0, Λ]` is read as one Weyl chamber of an even spectral
/// integral. Fails with [`Error::SpectralTruncation`] if the edge rows carry
/// too much mass.
pub fn inverse(field: &SpectralField, target: &PolarGrid, convention: &SpectralConvention) -> Result<SampledField> {
    check_truncation(field)?;
    let weights = inversion_weights(field.grid(), convention)?;
    if field.grid().directions() == target.angular() {
        Ok(inverse_fft(field, target, &weights))
    } else {
        Ok(inverse_direct(field, target, &weights))
    }
}

/// Direct-sum inverse transform.
pub fn inverse_direct_checked(
    field: &SpectralField,
    target: &PolarGrid,
    convention: &SpectralConvention,
) -> Result<SampledField> {
    check_truncation(field)?;
    let weights = inversion_weights(field.grid(), convention)?;
    Ok(inverse_direct(field, target, &weights))
}

fn inverse_direct(field: &SpectralField, target: &PolarGrid, weights: &[f64]) -> SampledField {
    let sg = *field.grid();
    let directions: Vec<BoundaryPoint> = (0..sg.directions()).map(|m| sg.direction_at(m)).collect();
    let (lambda0, step) = (sg.lambda_min(), sg.lambda_step());
    SampledField::from_fn(*target, |z: DiskPoint| {
        let mut total = ZERO;
        for (m, &b) in directions.iter().enumerate() {
            let bz = busemann(z, b);
            let mut wave = Complex64::from_polar((RHO * bz).exp(), lambda0 * bz);
            let rotate = Complex64::from_polar(1.0, step * bz);
            for (i, w) in weights.iter().enumerate() {
                total += field.get(i, m) * wave * *w;
                wave *= rotate;
            }
        }
        total
    })
}

fn inverse_fft(field: &SpectralField, target: &PolarGrid, weights: &[f64]) -> SampledField {
    let sg = *field.grid();
    let n = target.angular();
    let fft = plans(n);
    let rows: Vec<Vec<Complex64>> = (0..sg.lambda_count())
        .map(|i| {
            let mut row: Vec<Complex64> = field.row(i).iter().map(|v| v * weights[i]).collect();
            fft.forward.process(&mut row);
            row
        })
        .collect();
    let (lambda0, step) = (sg.lambda_min(), sg.lambda_step());

    let rings: Vec<Vec<Complex64>> = (0..target.radial())
        .into_par_iter()
        .map(|j| {
            let bus = ring_busemann(target, j);
            let mut wave: Vec<Complex64> = bus
                .iter()
                .map(|b| Complex64::from_polar((RHO * b).exp(), lambda0 * b))
                .collect();
            let rotate: Vec<Complex64> = bus.iter().map(|b| Complex64::from_polar(1.0, step * b)).collect();
            let mut acc = vec![ZERO; n];
            let mut kernel = vec![ZERO; n];
            for row in &rows {
                kernel.copy_from_slice(&wave);
                fft.forward.process(&mut kernel);
                for ((a, r), k) in acc.iter_mut().zip(row).zip(&kernel) {
                    *a += r * k;
                }
                for (w, r) in wave.iter_mut().zip(&rotate) {
                    *w *= r;
                }
            }
            fft.inverse.process(&mut acc);
            let scale = 1.0 / n as f64;
            acc.iter().map(|v| v * scale).collect()
        })
        .collect();
    SampledField::new(*target, rings.concat()).expect("grid-sized output")
}

/// Spherical transform `f̃(λ) = ∫ f(z) φ_{−λ}(z) dz` of a K-invariant field.
///
/// Fails with [`Error::NotRadial`] if some ring deviates from its mean by more
/// than 1e-8 relative to `max |f|`.
pub fn spherical_transform(f: &SampledField, lambdas: &[f64]) -> Result<Vec<Complex64>> {
    let pg = f.grid();
    let n = pg.angular() as f64;
    let peak = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut means = Vec::with_capacity(pg.radial());
    let mut variation: f64 = 0.0;
    for j in 0..pg.radial() {
        let ring = f.ring(j);
        let mean = ring.iter().sum::<Complex64>() / n;
        for v in ring {
            variation = variation.max((v - mean).norm());
        }
        means.push(mean);
    }
    if peak > 0.0 && variation > RADIAL_TOLERANCE * peak {
        return Err(Error::NotRadial {
            variation: variation / peak,
        });
    }
    let ring_area: Vec<f64> = pg.ring_weights().iter().map(|w| w * 2.0 * PI).collect();
    lambdas
        .par_iter()
        .map(|&lambda| {
            let lambda = SpectralParam::new(lambda)?;
            Ok((0..pg.radial())
                .map(|j| means[j] * ring_area[j] * spherical_radial(lambda, pg.radius_at(j)))
                .sum())
        })
        .collect()
}

/// Both sides of the Plancherel identity `∫|f|² = (1/|W|) ∫∫ |f̂|² dμ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelCheck {
    pub spatial: f64,
    pub spectral: f64,
}

impl PlancherelCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.spatial - self.spectral).abs() / self.spatial
    }
}

pub fn plancherel_check(
    f: &SampledField,
    grid: &SpectralGrid,
    convention: &SpectralConvention,
) -> Result<PlancherelCheck> {
    let spatial = f.l2_norm().powi(2);
    let transformed = forward(f, grid)?;
    check_truncation(&transformed)?;
    let weights = inversion_weights(grid, convention)?;
    let spectral = (0..grid.lambda_count())
        .map(|i| weights[i] * transformed.row(i).iter().map(|v| v.norm_sqr()).sum::<f64>())
        .sum();
    Ok(PlancherelCheck { spatial, spectral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geodesic_distance;

    fn bump(scale: f64, center: DiskPoint) -> impl Fn(DiskPoint) -> Complex64 + Sync {
        move |z| {
            let d = geodesic_distance(z, center);
            Complex64::new((-scale * d * d).exp(), 0.0)
        }
    }

    #[test]
    fn fft_and_direct_paths_agree() {
        let pg = PolarGrid::new(40, 32, 4.0).unwrap();
        let f = SampledField::from_fn(pg, bump(1.5, DiskPoint::from_xy(0.2, 0.1).unwrap()));
        let sg = SpectralGrid::half_line(6.0, 0.25, 32).unwrap();
        let fast = forward(&f, &sg).unwrap();
        let slow = forward_direct(&f, &sg);
        let err = fast
            .values()
            .iter()
            .zip(slow.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");

        let smooth: Vec<Complex64> = (0..sg.len())
            .map(|idx| {
                let lambda = sg.lambda_at(idx / 32);
                let theta = sg.direction_at(idx % 32).theta();
                Complex64::new(1.0 + 0.3 * theta.cos(), 0.1 * theta.sin()) * (-lambda * lambda).exp()
            })
            .collect();
        let spec = SpectralField::new(sg, smooth).unwrap();
        let conv = SpectralConvention::new(0.2).unwrap();
        let back_fast = inverse(&spec, &pg, &conv).unwrap();
        let back_slow = inverse_direct_checked(&spec, &pg, &conv).unwrap();
        assert!(back_fast.relative_l2_error(&back_slow).unwrap() < 1e-10);
    }

    #[test]
    fn radial_transform_matches_boundary_transform() {
        let pg = PolarGrid::new(120, 128, 4.0).unwrap();
        let f = SampledField::from_fn(pg, bump(1.0, DiskPoint::ORIGIN));
        let sg = SpectralGrid::half_line(4.0, 0.5, 128).unwrap();
        let full = forward(&f, &sg).unwrap();
        let radial = spherical_transform(&f, &sg.lambdas()).unwrap();
        for i in 0..sg.lambda_count() {
            for m in [0, 17, 40] {
                let err = (full.get(i, m) - radial[i]).norm() / radial[0].norm();
                assert!(err < 1e-6, "λ={} m={m} err={err}", sg.lambda_at(i));
            }
        }
    }

    #[test]
    fn non_radial_field_is_rejected() {
        let pg = PolarGrid::new(20, 16, 3.0).unwrap();
        let f = SampledField::from_fn(pg, bump(1.0, DiskPoint::from_xy(0.3, 0.0).unwrap()));
        assert!(matches!(spherical_transform(&f, &[1.0]), Err(Error::NotRadial { .. })));
    }

    #[test]
    fn overflowing_support_is_rejected() {
        let pg = PolarGrid::new(20, 16, 2.0).unwrap();
        let f = SampledField::from_fn(pg, |_| Complex64::new(1.0, 0.0));
        let sg = SpectralGrid::half_line(4.0, 0.5, 16).unwrap();
        assert!(matches!(forward(&f, &sg), Err(Error::SupportOverflow { .. })));
    }

    #[test]
    fn truncated_spectrum_is_rejected() {
        let pg = PolarGrid::new(60, 32, 4.0).unwrap();
        let f = SampledField::from_fn(pg, bump(1.0, DiskPoint::ORIGIN));
        let sg = SpectralGrid::half_line(1.0, 0.25, 32).unwrap();
        let spec = forward(&f, &sg).unwrap();
        let conv = SpectralConvention::new(0.2).unwrap();
        assert!(matches!(
            inverse(&spec, &pg, &conv),
            Err(Error::SpectralTruncation { .. })
        ));
    }

    #[test]
    fn inversion_needs_a_weyl_symmetric_grid() {
        let sg = SpectralGrid::new(1.0, 0.5, 10, 8).unwrap();
        let spec = SpectralField::zeros(sg);
        let pg = PolarGrid::new(10, 8, 2.0).unwrap();
        let conv = SpectralConvention::new(0.2).unwrap();
        assert!(matches!(inverse(&spec, &pg, &conv), Err(Error::GridMismatch(_))));
    }
}
