use std::fs;
use std::path::Path;

const SYMBOLS: &[&str] = &[
    "hm_last_error",
    "hm_version",
    "hm_helgason_wave",
    "hm_spherical",
    "hm_spherical_radial",
    "hm_busemann",
    "hm_distance",
    "hm_field_create",
    "hm_field_len",
    "hm_field_nodes",
    "hm_field_values",
    "hm_field_set_values",
    "hm_field_free",
    "hm_forward",
    "hm_spectrum_shape",
    "hm_spectrum_values",
    "hm_spectrum_free",
    "hm_inverse",
    "hm_moire_integral",
    "hm_moire_sum",
];

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/helgason_moire.h");
    fs::read_to_string(path).expect("header generated by the build script")
}

#[test]
fn header_declares_every_entry_point() {
    let h = header();
    for s in SYMBOLS {
        assert!(h.contains(&format!("{s}(")), "missing {s}");
    }
}

#[test]
fn header_has_opaque_handles_and_status_codes() {
    let h = header();
    assert!(h.contains("typedef struct HmField HmField;"));
    assert!(h.contains("typedef struct HmSpectrum HmSpectrum;"));
    assert!(h.contains("HM_STATUS_OK = 0"));
    assert!(h.contains("HM_STATUS_BUFFER_TOO_SMALL = 11"));
    assert!(h.contains("typedef struct HmMoireReport"));
    assert!(h.contains("#ifndef HELGASON_MOIRE_H"));
}
