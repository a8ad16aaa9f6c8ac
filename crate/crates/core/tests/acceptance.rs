use helgason_moire::cli;
use helgason_moire::validate::{
    c_function_checks, eigenfunction_checks, euclid_checks, figure_checks, geometry_checks, lemma_checks,
    moire_weak_checks, spherical_checks, transform_checks, Check,
};
use helgason_moire::waves::SpectralConvention;

fn report(criterion: u32, title: &str, checks: Vec<Check>) {
    report_with(criterion, title, checks, Vec::new());
}

/// Like [`report`], with extra `(name, passed, detail)` gates.
fn report_with(criterion: u32, title: &str, checks: Vec<Check>, extra: Vec<(String, bool, String)>) {
    for c in &checks {
        println!("  {c}");
    }
    for (name, passed, detail) in &extra {
        println!(
            "  {:<4} {:<8} {name:<44} {detail}",
            if *passed { "PASS" } else { "FAIL" },
            "cli"
        );
    }
    let failed: Vec<&Check> = checks.iter().filter(|c| c.failed()).collect();
    let extra_failed: Vec<&String> = extra.iter().filter(|e| !e.1).map(|e| &e.0).collect();
    let ok = failed.is_empty() && extra_failed.is_empty();
    println!("criterion {criterion} ({title}): {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {failed:#?} {extra_failed:?}");
}

fn footer_value(text: &str, key: &str) -> Option<f64> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("# error {key}=")))
        .and_then(|v| v.parse().ok())
}

#[test]
fn criterion_1_geometry() {
    report(1, "geometry", geometry_checks());
}

#[test]
fn criterion_2_eigenfunctions() {
    report(2, "eigenfunctions", eigenfunction_checks());
}

#[test]
fn criterion_3_spherical_oracle() {
    report(3, "spherical function oracle", spherical_checks());
}

#[test]
fn criterion_4_c_function() {
    report(4, "c-function", c_function_checks());
}

#[test]
fn criterion_5_transform() {
    report(5, "transform", transform_checks(&SpectralConvention::calibrated()));
}

#[test]
fn criterion_6_lemma() {
    report(6, "horocycle lemma", lemma_checks());
}

#[test]
fn criterion_7_main_result() {
    report(7, "windowed superposition", moire_weak_checks());
}

#[test]
fn criterion_8_euclidean_oracle() {
    report(8, "euclidean oracle", euclid_checks());
}

#[test]
fn criterion_9_figures() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut extra = Vec::new();

    let wave = path("wave.csv");
    let code = cli::run(["helgason-moire", "wave", "--preset", "phase-lines", "--out", &wave]);
    let image = std::fs::read(dir.path().join("wave.pgm")).unwrap_or_default();
    extra.push((
        "phase-lines preset renders".to_string(),
        code == 0 && image.starts_with(b"P5\n401 401\n255\n"),
        format!("exit {code}, image {} bytes", image.len()),
    ));

    let mut rho = Vec::new();
    for preset in ["sum-5", "sum-60"] {
        let out = path(&format!("{preset}.csv"));
        let code = cli::run([
            "helgason-moire",
            "moire",
            "--preset",
            preset,
            "--grid",
            "60x128",
            "--radius",
            "1.5",
            "--out",
            &out,
        ]);
        let text = std::fs::read_to_string(&out).unwrap_or_default();
        let report = std::fs::read_to_string(dir.path().join(format!("{preset}.report.csv"))).unwrap_or_default();
        let c = footer_value(&text, "phase_correlation").unwrap_or(f64::NAN);
        extra.push((
            format!("{preset} preset renders"),
            code == 0 && report.lines().filter(|l| !l.starts_with('#')).count() == 5,
            format!("exit {code}, correlation {c:.4}"),
        ));
        rho.push(c);
    }
    extra.push((
        "cli resemblance grows with the center count".to_string(),
        rho[1] > rho[0],
        format!("{:.4} → {:.4}", rho[0], rho[1]),
    ));
    report_with(9, "figures", figure_checks(), extra);
}
