use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{any, positive, ConfigError, RunConfig};
use super::output::{atomic_write, field_csv, pgm, polar_phase_image, polar_points, report_csv, sibling, table_csv};
use super::CliError;
use crate::euclid::{bessel_wave, line_moire, plane_wave, window_points, PlanePoint};
use crate::geometry::{busemann, geodesic_distance, BoundaryPoint, DiskPoint, Horocycle};
use crate::hft::{
    forward, inverse, lemma_check, plancherel_check, HorocycleQuadrature, LemmaResolution, PolarGrid, RadialLayout,
    SampledField, SpectralGrid,
};
use crate::metrics::{normalized_correlation, relative_shape_distance};
use crate::moire::{convergence_study_with, discrete_centers, horocycle_normalization, moire_sum_discrete};
use crate::validate::{phase_pattern_correlation, run_suite, Suite, ValidateOptions};
use crate::waves::{boundary_sums, helgason_wave, spherical, spherical_radial, SpectralConvention, SpectralParam, RHO};

/// Named parameter sets.
pub fn preset(name: &str) -> Option<Vec<(&'static str, String)>> {
    let sum = |n: usize| {
        vec![
            ("lambda", "2".to_string()),
            ("b0", PI.to_string()),
            ("n", n.to_string()),
            ("spacing", "0.35".to_string()),
            ("sigmas", "4,8,12,16".to_string()),
        ]
    };
    match name {
        "phase-lines" => Some(vec![("lambda", "2".to_string()), ("b0", "0".to_string())]),
        "sum-5" => Some(sum(5)),
        "sum-60" => Some(sum(60)),
        _ => None,
    }
}

const DEFAULT_GRID: (usize, usize) = (200, 256);
const DEFAULT_RADIUS: f64 = 4.0;

fn spectral(cfg: &mut RunConfig, default: f64) -> Result<SpectralParam, CliError> {
    let l = cfg.f64("lambda", default, any)?;
    Ok(SpectralParam::new(l)?)
}

fn direction(cfg: &mut RunConfig) -> Result<BoundaryPoint, CliError> {
    Ok(BoundaryPoint::new(cfg.f64("b0", 0.0, any)?))
}

fn disk_point(cfg: &mut RunConfig) -> Result<DiskPoint, CliError> {
    let z = cfg.complex("x", Complex64::new(0.0, 0.0))?;
    DiskPoint::new(z).map_err(|e| ConfigError::new("x", e.to_string()).into())
}

fn polar_grid(cfg: &mut RunConfig, layout: RadialLayout) -> Result<PolarGrid, CliError> {
    let (n, m) = cfg.grid("grid", DEFAULT_GRID)?;
    let radius = cfg.f64("radius", DEFAULT_RADIUS, |r| {
        if r > 0.0 && r <= 30.0 {
            Ok(())
        } else {
            Err("must lie in (0, 30]".into())
        }
    })?;
    PolarGrid::with_layout(n, m, radius, layout).map_err(|e| ConfigError::new("grid", e.to_string()).into())
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    atomic_write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn error_line(name: &str, value: f64) -> (String, String) {
    (name.to_string(), format!("{value:e}"))
}

fn echo_preset(cfg: &mut RunConfig) {
    if cfg.is_set("preset") {
        cfg.string("preset", "");
    }
}

/// Field CSV at `out` plus its phase image next to it.
fn write_polar(out: &Path, field: &SampledField, cfg: &RunConfig, errors: &[(String, String)]) -> Result<(), CliError> {
    let csv = field_csv(&polar_points(field.grid()), field.values(), &cfg.echo(), errors);
    write(out, csv.as_bytes())?;
    let (w, h, pixels) = polar_phase_image(field);
    write(&sibling(out, ".pgm"), &pgm(w, h, &pixels))
}

pub fn cmd_wave(cfg: &mut RunConfig) -> Result<(), CliError> {
    echo_preset(cfg);
    let lambda = spectral(cfg, 2.0)?;
    let b0 = direction(cfg)?;
    let grid = polar_grid(cfg, RadialLayout::Closed)?;
    let out = cfg.path("out", "wave.csv");
    let field = SampledField::from_fn(grid, |z| helgason_wave(lambda, b0, z));
    write_polar(&out, &field, cfg, &[error_line("closed_form", 0.0)])
}

pub fn cmd_spherical(cfg: &mut RunConfig) -> Result<(), CliError> {
    let lambda = spectral(cfg, 2.0)?;
    let center = disk_point(cfg)?;
    let grid = polar_grid(cfg, RadialLayout::Closed)?;
    let resolution = cfg.optional_usize("resolution", 4)?;
    let out = cfg.path("out", "spherical.csv");
    // Möbius map sending the center to the origin.
    let recenter = |z: DiskPoint| -> DiskPoint {
        let w = (z.z() - center.z()) / (Complex64::new(1.0, 0.0) - center.z().conj() * z.z());
        DiskPoint::new(w).unwrap_or(z)
    };
    let nodes = grid.nodes();
    let (values, errors) = match resolution {
        Some(m) => {
            let pairs: crate::Result<Vec<(Complex64, f64)>> = nodes
                .par_iter()
                .map(|z| boundary_sums(lambda, recenter(*z), m).map(|(full, half)| (full, (full - half).norm())))
                .collect();
            let pairs = pairs?;
            let change = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
            (
                pairs.into_iter().map(|p| p.0).collect::<Vec<_>>(),
                vec![error_line("refinement_change", change)],
            )
        }
        None => {
            let values: crate::Result<Vec<Complex64>> =
                nodes.par_iter().map(|z| spherical(lambda, recenter(*z))).collect();
            let values = values?;
            let gap = nodes
                .iter()
                .zip(&values)
                .map(|(z, v)| (v - spherical_radial(lambda, geodesic_distance(*z, center))).norm())
                .fold(0.0, f64::max);
            (values, vec![error_line("radial_gap", gap)])
        }
    };
    let field = SampledField::new(grid, values)?;
    write_polar(&out, &field, cfg, &errors)
}

pub fn cmd_moire(cfg: &mut RunConfig) -> Result<(), CliError> {
    echo_preset(cfg);
    let lambda = spectral(cfg, 2.0)?;
    let lambda_max = cfg.f64("lambda_max", 8.0, positive)?;
    if lambda.value().abs() > lambda_max {
        return Err(ConfigError::new("lambda", format!("|λ| exceeds lambda_max = {lambda_max}")).into());
    }
    let b0 = direction(cfg)?;
    let x = disk_point(cfg)?;
    let grid = polar_grid(cfg, RadialLayout::Closed)?;
    let n = cfg.usize("n", 60, 1)?;
    let spacing = cfg.f64("spacing", 0.35, positive)?;
    let taper = cfg.taper("taper", "gaussian:12")?;
    let sigmas = cfg.list_f64("sigmas", &taper.width().to_string())?;
    let mut quadrature = HorocycleQuadrature::default();
    if let Some(m) = cfg.optional_usize("resolution", 1)? {
        quadrature.initial_step = 1.0 / m as f64;
    }
    let out = cfg.path("out", "moire.csv");

    let field = moire_sum_discrete(lambda, b0, n, spacing, &grid)?;
    // Spot-check the interpolated radial profile against direct evaluation.
    let h = Horocycle::new(b0, 0.0);
    let centers: Vec<DiskPoint> = discrete_centers(n, spacing).into_iter().map(|s| h.point(s)).collect();
    let stride = (grid.len() / 64).max(1);
    let table_gap = (0..grid.len())
        .step_by(stride)
        .map(|i| {
            let z = grid.node_at(i);
            let direct: f64 = centers
                .iter()
                .map(|c| spherical_radial(lambda, geodesic_distance(*c, z)))
                .sum::<f64>()
                / n as f64;
            (field.values()[i].re - direct).abs()
        })
        .fold(0.0, f64::max);
    let correlation = phase_pattern_correlation(&field, lambda.value(), b0);

    let reports = convergence_study_with(lambda, b0, x, &sigmas, taper.kind(), &quadrature).map_err(|e| match e {
        crate::Error::InvalidParameter { .. } => CliError::Config(ConfigError::new("sigmas", e.to_string())),
        other => other.into(),
    })?;
    let kappa_h = horocycle_normalization()?;
    let last = reports.last().expect("at least one sigma");
    let quad = reports.iter().map(|r| r.quadrature_error).fold(0.0, f64::max);
    let report_errors = vec![
        error_line("kappa_h", kappa_h),
        error_line("oscillation_amplitude", last.oscillation_amplitude),
        ("divergent".to_string(), reports.iter().any(|r| r.divergent).to_string()),
        error_line("quadrature", quad),
    ];
    let echo = cfg.echo();
    write(
        &sibling(&out, ".report.csv"),
        report_csv(&reports, &echo, &report_errors).as_bytes(),
    )?;
    write_polar(
        &out,
        &field,
        cfg,
        &[
            error_line("radial_table", table_gap),
            error_line("phase_correlation", correlation),
        ],
    )
}

fn test_field(cfg: &mut RunConfig) -> Result<impl Fn(DiskPoint) -> Complex64 + Sync, CliError> {
    let kind = cfg.string("field", "bump");
    let center = disk_point(cfg)?;
    let (a, k) = match kind.as_str() {
        "bump" => (1.0, 0.0),
        "narrow-bump" => (1.5, 0.0),
        "oscillating" => (1.0, 3.0),
        other => return Err(ConfigError::new("field", format!("unknown field `{other}`")).into()),
    };
    Ok(move |z: DiskPoint| {
        let d = geodesic_distance(z, center);
        Complex64::new((-a * d * d).exp() * (k * d).cos(), 0.0)
    })
}

fn spectral_window(cfg: &mut RunConfig) -> Result<(f64, f64), CliError> {
    let lambda_max = cfg.f64("lambda_max", 8.0, positive)?;
    let step = match cfg.optional_usize("resolution", 1)? {
        Some(m) if !cfg.is_set("lambda_step") => 1.0 / m as f64,
        _ => cfg.f64("lambda_step", 0.05, positive)?,
    };
    Ok((lambda_max, step))
}

pub fn cmd_transform(cfg: &mut RunConfig) -> Result<(), CliError> {
    let psi = test_field(cfg)?;
    let grid = polar_grid(cfg, RadialLayout::Closed)?;
    let lambda_max = cfg.f64("lambda_max", 8.0, positive)?;
    let step = cfg.f64("lambda_step", 0.05, positive)?;
    let directions = cfg.usize("resolution", grid.angular(), 2)?;
    let conv = match cfg.optional_f64("kappa", positive)? {
        Some(k) => SpectralConvention::new(k)?,
        None => SpectralConvention::calibrated(),
    };
    let out = cfg.path("out", "transform.csv");

    let f = SampledField::from_fn(grid, psi);
    let spectral = SpectralGrid::half_line(lambda_max, step, directions)?;
    let transformed = forward(&f, &spectral)?;
    let back = inverse(&transformed, &grid, &conv)?;
    let round_trip = back.relative_l2_error(&f)?;
    let plancherel = plancherel_check(&f, &spectral, &conv)?.relative_gap();

    let errors = vec![
        error_line("round_trip", round_trip),
        error_line("plancherel", plancherel),
        error_line("kappa", conv.plancherel_kappa()),
    ];
    let mut rows = Vec::with_capacity(spectral.len());
    for i in 0..spectral.lambda_count() {
        for (m, v) in transformed.row(i).iter().enumerate() {
            let mut row = String::new();
            let _ = write!(
                row,
                "{},{},{},{}",
                spectral.lambda_at(i),
                spectral.direction_at(m).theta(),
                v.re,
                v.im
            );
            rows.push(row);
        }
    }
    let echo = cfg.echo();
    write(
        &sibling(&out, ".spectrum.csv"),
        table_csv("lambda,theta,re,im", &rows, &echo, &errors).as_bytes(),
    )?;
    write_polar(&out, &back, cfg, &errors)?;
    println!(
        "round trip {round_trip:.3e}, plancherel gap {plancherel:.3e}, kappa {}",
        conv.plancherel_kappa()
    );
    Ok(())
}

pub fn cmd_lemma(cfg: &mut RunConfig) -> Result<(), CliError> {
    let psi = test_field(cfg)?;
    let b0 = direction(cfg)?;
    let x = disk_point(cfg)?;
    let grid = polar_grid(cfg, RadialLayout::Open)?;
    let (lambda_max, lambda_step) = spectral_window(cfg)?;
    let out = cfg.path("out", "lemma.csv");
    let sides = lemma_check(
        psi,
        b0,
        x,
        &LemmaResolution {
            grid,
            lambda_max,
            lambda_step,
        },
    )?;
    // Off the horocycle through the origin the pairing picks up e^{2ρ⟨x, b0⟩}.
    let delta = busemann(x, b0);
    let weighted = sides.horocycle * (2.0 * RHO * delta).exp();
    let gap = (sides.spectral - weighted).norm() / weighted.norm();
    let rows = vec![
        format!("spectral,{},{}", sides.spectral.re, sides.spectral.im),
        format!("horocycle,{},{}", sides.horocycle.re, sides.horocycle.im),
        format!("horocycle_weighted,{},{}", weighted.re, weighted.im),
    ];
    let errors = [error_line("relative_gap", gap), error_line("busemann", delta)];
    write(&out, table_csv("side,re,im", &rows, &cfg.echo(), &errors).as_bytes())?;
    println!(
        "spectral {} weighted horocycle {weighted} gap {gap:.3e}",
        sides.spectral
    );
    Ok(())
}

pub fn cmd_euclid(cfg: &mut RunConfig) -> Result<(), CliError> {
    let lambda = cfg.f64("lambda", 1.0, positive)?;
    let n = cfg.usize("n", 60, 1)?;
    let spacing = cfg.f64("spacing", lambda / 4.0, positive)?;
    let per_wavelength = cfg.usize("resolution", 20, 2)?;
    let out = cfg.path("out", "euclid.csv");

    let step = lambda / per_wavelength as f64;
    let cols = 4 * per_wavelength + 1;
    let rows = 2 * per_wavelength + 1;
    let points = window_points((0.0, 4.0 * lambda), (-lambda, lambda), step);
    let values: crate::Result<Vec<Complex64>> = points.par_iter().map(|q| line_moire(lambda, n, spacing, *q)).collect();
    let values = values?;
    let target: Vec<Complex64> = points.iter().map(|q| plane_wave((TAU / lambda, 0.0), *q)).collect();
    let weights = vec![1.0; points.len()];
    let correlation = normalized_correlation(&values, &target, &weights);
    let shape = relative_shape_distance(&values, &target, &weights);
    // Angular quadrature of the Bessel profile against a reference quadrature at twice the nodes.
    let far = PlanePoint::new(4.0 * lambda, lambda)?;
    let coarse = bessel_wave(lambda, PlanePoint::ORIGIN, far)?;
    let reference: Complex64 = {
        let m = 4096;
        let k = TAU / lambda;
        (0..m)
            .map(|j| {
                let t = TAU * j as f64 / m as f64;
                Complex64::from_polar(1.0, k * (far.x * t.cos() + far.y * t.sin()))
            })
            .sum::<Complex64>()
            / m as f64
    };

    let csv = field_csv(
        &points.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>(),
        &values,
        &cfg.echo(),
        &[
            error_line("bessel_quadrature", (coarse - reference).norm()),
            error_line("plane_wave_correlation", correlation),
            error_line("shape_distance", shape),
        ],
    );
    write(&out, csv.as_bytes())?;
    let mut pixels = vec![0u8; cols * rows];
    for (p, v) in points.iter().zip(&values) {
        let col = ((p.x / step).round() as usize).min(cols - 1);
        let row = (((lambda - p.y) / step).round() as usize).min(rows - 1);
        pixels[row * cols + col] = super::output::phase_gray(*v);
    }
    write(&sibling(&out, ".pgm"), &pgm(cols, rows, &pixels))?;
    println!("correlation {correlation:.4}, shape distance {shape:.4}");
    Ok(())
}

/// Runs the selected suites, prints one line per check and returns whether
/// none failed.
pub fn cmd_validate(cfg: &mut RunConfig) -> Result<bool, CliError> {
    let suites = cfg.string("suite", "all");
    let selected: Vec<Suite> = if suites == "all" {
        Suite::ALL.to_vec()
    } else {
        suites
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<Suite>()
                    .map_err(|e| ConfigError::new("suite", e.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    let options = ValidateOptions {
        kappa: cfg.optional_f64("kappa", positive)?,
    };
    let out = if cfg.is_set("out") {
        Some(cfg.path("out", ""))
    } else {
        None
    };
    let mut text = String::new();
    let mut failed = 0;
    let mut total = 0;
    for suite in selected {
        for check in run_suite(suite, &options) {
            println!("{check}");
            let _ = writeln!(text, "{check}");
            total += 1;
            failed += usize::from(check.failed());
        }
    }
    println!("{} checks, {failed} failed", total);
    if let Some(path) = out {
        write(&path, text.as_bytes())?;
    }
    Ok(failed == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_expand() {
        let p = preset("sum-60").unwrap();
        assert!(p.contains(&("n", "60".to_string())));
        assert!(preset("nope").is_none());
    }

    #[test]
    fn lambda_bound_names_key() {
        let mut cfg = RunConfig::from_pairs(&[("lambda", "9"), ("grid", "4x8")]);
        match cmd_moire(&mut cfg) {
            Err(CliError::Config(e)) => assert_eq!(e.key, "lambda"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recentered_spherical_matches_rotation_free_profile() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("s.csv");
        let out_s = out.to_string_lossy().into_owned();
        let mut cfg = RunConfig::from_pairs(&[("x", "0.2,0.1"), ("grid", "6x8"), ("radius", "1"), ("out", &out_s)]);
        cmd_spherical(&mut cfg).unwrap();
        let text = std::fs::read_to_string(&out).unwrap();
        let gap: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("# error radial_gap="))
            .unwrap()
            .parse()
            .unwrap();
        assert!(gap < 1e-8, "{gap}");
    }
}
