use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use tempfile::NamedTempFile;

use crate::hft::{PolarGrid, RadialLayout, SampledField};
use crate::moire::MoireReport;

/// Writes through a temporary file in the target directory, then renames.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `path` with its extension replaced, e.g. `field.csv` → `field.pgm`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}{suffix}"))
}

fn footer(out: &mut String, config: &[String], errors: &[(String, String)]) {
    for line in config {
        let _ = writeln!(out, "# config {line}");
    }
    for (name, value) in errors {
        let _ = writeln!(out, "# error {name}={value}");
    }
}

/// `x,y,re,im` rows followed by `#` footer lines.
pub fn field_csv(
    points: &[(f64, f64)],
    values: &[Complex64],
    config: &[String],
    errors: &[(String, String)],
) -> String {
    let mut out = String::with_capacity(points.len() * 64);
    out.push_str("x,y,re,im\n");
    for ((x, y), v) in points.iter().zip(values) {
        let _ = writeln!(out, "{x},{y},{},{}", v.re, v.im);
    }
    footer(&mut out, config, errors);
    out
}

pub fn polar_points(grid: &PolarGrid) -> Vec<(f64, f64)> {
    grid.nodes().iter().map(|z| (z.re(), z.im())).collect()
}

pub fn report_csv(reports: &[MoireReport], config: &[String], errors: &[(String, String)]) -> String {
    let mut out = String::from("sigma,approx_re,approx_im,target_re,target_im,abs_error\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.taper.width(),
            r.approx.re,
            r.approx.im,
            r.target.re,
            r.target.im,
            r.abs_error
        );
    }
    footer(&mut out, config, errors);
    out
}

/// Generic CSV with a header line and a footer.
pub fn table_csv(header: &str, rows: &[String], config: &[String], errors: &[(String, String)]) -> String {
    let mut out = format!("{header}\n");
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    footer(&mut out, config, errors);
    out
}

/// Phase in `(−π, π]` mapped linearly onto `0..=255`.
pub fn phase_gray(v: Complex64) -> u8 {
    let mut phase = v.arg();
    if phase <= -PI {
        phase = PI;
    }
    ((phase + PI) / (2.0 * PI) * 255.0).round().clamp(0.0, 255.0) as u8
}

/// Binary 8-bit PGM.
pub fn pgm(width: usize, height: usize, pixels: &[u8]) -> Vec<u8> {
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(pixels);
    out
}

/// Square phase image of a polar field; each pixel takes its nearest node,
/// pixels outside the sampled disk are 0.
pub fn polar_phase_image(field: &SampledField) -> (usize, usize, Vec<u8>) {
    let grid = field.grid();
    let size = 2 * grid.radial() + 1;
    let c = grid.radial() as f64;
    let r_max = (0.5 * grid.radius()).tanh();
    let h = match grid.layout() {
        RadialLayout::Open => grid.radius() / grid.radial() as f64,
        RadialLayout::Closed => grid.radius() / (grid.radial() - 1) as f64,
    };
    let mut pixels = vec![0u8; size * size];
    for row in 0..size {
        for col in 0..size {
            let x = (col as f64 - c) / c * r_max;
            let y = (c - row as f64) / c * r_max;
            let r = x.hypot(y);
            if r >= r_max {
                continue;
            }
            let t = 2.0 * r.atanh();
            let j = match grid.layout() {
                RadialLayout::Open => ((t / h).round() as usize).clamp(1, grid.radial()) - 1,
                RadialLayout::Closed => ((t / h).round() as usize).min(grid.radial() - 1),
            };
            let angle = y.atan2(x).rem_euclid(2.0 * PI);
            let k = (angle / (2.0 * PI) * grid.angular() as f64).round() as usize % grid.angular();
            pixels[row * size + col] = phase_gray(field.values()[j * grid.angular() + k]);
        }
    }
    (size, size, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_mapping_endpoints() {
        assert_eq!(phase_gray(Complex64::new(-1.0, 0.0)), 255);
        assert_eq!(phase_gray(Complex64::new(-1.0, -0.0)), 255);
        assert_eq!(phase_gray(Complex64::new(-1.0, -1e-12)), 0);
        assert_eq!(phase_gray(Complex64::new(1.0, 0.0)), 128);
    }

    #[test]
    fn pgm_header() {
        let img = pgm(2, 1, &[0, 255]);
        assert_eq!(&img[..11], b"P5\n2 1\n255\n");
        assert_eq!(img.len(), 13);
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("/a/b/field.csv"), ".pgm"),
            PathBuf::from("/a/b/field.pgm")
        );
        assert_eq!(
            sibling(Path::new("f.csv"), ".report.csv"),
            PathBuf::from("f.report.csv")
        );
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.txt");
        atomic_write(&p, b"one").unwrap();
        atomic_write(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
