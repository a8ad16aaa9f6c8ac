use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helgason-moire"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

fn footer<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(&format!("# error {key}=")))
}

#[test]
fn wave_default_grid_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["wave", "--lambda", "2", "--b0", "0", "--out", "w.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("w.csv")).unwrap();
    assert!(text.starts_with("x,y,re,im\n"));
    let data = rows(&text);
    assert_eq!(data.len(), 200 * 256);
    let origin = data
        .iter()
        .find(|r| r[0] == 0.0 && r[1] == 0.0)
        .expect("origin is a node");
    assert!((origin[2] - 1.0).abs() < 1e-12 && origin[3].abs() < 1e-12);
    assert!(text.contains("# config lambda=2\n"));
    assert!(text.contains("# error closed_form="));

    let img = fs::read(dir.path().join("w.pgm")).unwrap();
    assert!(img.starts_with(b"P5\n401 401\n255\n"));
    assert_eq!(img.len(), b"P5\n401 401\n255\n".len() + 401 * 401);
}

#[test]
fn wave_phase_advances_at_rate_lambda_along_b0() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "wave", "--lambda", "3", "--b0", "0", "--grid", "20x8", "--radius", "1", "--out", "w.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let data = rows(&fs::read_to_string(dir.path().join("w.csv")).unwrap());
    // On the ray toward b0 = 1 the Busemann value is the geodesic distance t.
    for r in data.iter().filter(|r| r[1] == 0.0 && r[0] > 0.0) {
        let t = 2.0 * r[0].atanh();
        let phase = r[3].atan2(r[2]);
        let expected = (3.0 * t + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
        assert!(
            (phase - expected).abs() < 1e-9,
            "t={t} phase={phase} expected={expected}"
        );
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "moire", "--preset", "sum-5", "--grid", "16x32", "--radius", "1.5", "--out", "m.csv",
    ];
    assert!(run(&args, dir.path()).status.success());
    let first: Vec<Vec<u8>> = ["m.csv", "m.pgm", "m.report.csv"]
        .iter()
        .map(|f| fs::read(dir.path().join(f)).unwrap())
        .collect();
    assert!(run(&args, dir.path()).status.success());
    let second: Vec<Vec<u8>> = ["m.csv", "m.pgm", "m.report.csv"]
        .iter()
        .map(|f| fs::read(dir.path().join(f)).unwrap())
        .collect();
    assert_eq!(first, second);
}

#[test]
fn moire_report_has_one_row_per_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "moire", "--n", "3", "--grid", "8x16", "--radius", "1", "--sigmas", "2,4,6", "--taper", "cosine:2",
            "--out", "m.csv",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("m.report.csv")).unwrap();
    assert!(text.starts_with("sigma,approx_re,approx_im,target_re,target_im,abs_error\n"));
    let data = rows(&text);
    assert_eq!(data.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![2.0, 4.0, 6.0]);
    for r in &data {
        let err = (r[1] - r[3]).hypot(r[2] - r[4]);
        assert!((err - r[5]).abs() < 1e-12);
    }
    assert!(footer(&text, "kappa_h").is_some());
    assert!(footer(&text, "oscillation_amplitude").is_some());
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("run.cfg"),
        "lambda = 5\ngrid = 4x8\nradius=1\nout = c.csv\n",
    )
    .unwrap();
    let out = run(&["wave", "--config", "run.cfg", "--lambda", "1.5"], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert!(text.contains("# config lambda=1.5\n"));
    assert!(text.contains("# config grid=4x8\n"));
    assert_eq!(rows(&text).len(), 32);
}

#[test]
fn bad_config_exits_2_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    for (args, key) in [
        (vec!["wave", "--grid", "10"], "grid"),
        (vec!["wave", "--radius", "-1"], "radius"),
        (vec!["spherical", "--x", "1.5,0"], "x"),
        (vec!["moire", "--taper", "box:3"], "taper"),
        (vec!["moire", "--lambda", "20"], "lambda"),
        (vec!["moire", "--sigmas", "4,2", "--grid", "4x8"], "sigmas"),
    ] {
        let out = run(&args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(&format!("`{key}`")), "{args:?}: {err}");
    }
    fs::write(dir.path().join("bad.cfg"), "lamda = 2\n").unwrap();
    let out = run(&["wave", "--config", "bad.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`lamda`"));
}

#[test]
fn io_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["wave", "--grid", "4x8", "--out", "missing/dir/w.csv"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["wave", "--config", "absent.cfg"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["validate", "--suite", "hypgeo"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));

    // A Plancherel constant 10% off breaks the transform round trip.
    let out = run(&["validate", "--suite", "hft", "--kappa", "0.1751"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn transform_round_trip_footer() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["transform", "--x", "0.2,-0.1", "--out", "t.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    let err: f64 = footer(&text, "round_trip").unwrap().parse().unwrap();
    assert!(err < 1e-3, "{err}");
    let spectrum = fs::read_to_string(dir.path().join("t.spectrum.csv")).unwrap();
    assert!(spectrum.starts_with("lambda,theta,re,im\n"));
    assert_eq!(rows(&spectrum).len(), 161 * 256);
}

#[test]
fn lemma_sides_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["lemma", "--x", "0.2,0.1", "--b0", "0.7", "--out", "l.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("l.csv")).unwrap();
    let gap: f64 = footer(&text, "relative_gap").unwrap().parse().unwrap();
    assert!(gap < 1e-2, "{gap}");
}

#[test]
fn euclid_raster_and_footer() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["euclid", "--resolution", "10", "--n", "15", "--out", "e.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("e.csv")).unwrap();
    assert_eq!(rows(&text).len(), 41 * 21);
    assert!(footer(&text, "shape_distance").is_some());
    let img = fs::read(dir.path().join("e.pgm")).unwrap();
    assert!(img.starts_with(b"P5\n41 21\n255\n"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["--help"], dir.path()).status.code(), Some(0));
}
