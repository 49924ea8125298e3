use std::f64::consts::PI;

use serde_json::Value;

use wedge_cot::cli::{run_with, serialize::read_csv};
use wedge_cot::geometry::{IonPosition, WedgeGeometry};
use wedge_cot::spectrum::SpectrumSettings;
use wedge_cot::sweeps::{energy_sweep, polarization_map, SweepGrid, SweepVariable};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(
        std::iter::once("wedge-cot").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn json_and_csv_carry_identical_numbers() {
    for cmd in ["spectrum", "decompose", "sweep-rho", "sweep-beta"] {
        let (c1, csv, _) = run(&[cmd, "--steps", "40", "--pol", "y"]);
        let (c2, json, _) = run(&[cmd, "--steps", "40", "--pol", "y", "--format", "json"]);
        assert_eq!((c1, c2), (0, 0), "{cmd}");
        let (prov, headers, rows) = read_csv(&csv).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        let json_rows: Vec<Vec<f64>> = serde_json::from_value(v["rows"].clone()).unwrap();
        let json_headers: Vec<String> = serde_json::from_value(v["columns"].clone()).unwrap();
        assert_eq!(rows, json_rows, "{cmd}");
        assert_eq!(headers, json_headers, "{cmd}");
        for (k, val) in prov.iter().filter(|(k, _)| k != "arg.format") {
            assert_eq!(
                v["meta"][k.as_str()],
                Value::String(val.clone()),
                "{cmd} {k}"
            );
        }
    }
}

#[test]
fn csv_records_every_argument() {
    let (code, out, _) = run(&[
        "spectrum", "--steps", "8", "--rho", "150", "--delta", "soft",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# wedge-cot v"));
    assert!(out.contains("# arg.rho=150"));
    assert!(out.contains("# arg.delta=soft"));
    assert!(out.contains("# arg.steps=8"));
    let (_, headers, rows) = read_csv(&out).unwrap();
    assert_eq!(
        headers,
        ["E_photon_eV", "sigma0_au", "sigma_osc_au", "sigma_au"]
    );
    assert_eq!(rows.len(), 8);
}

#[test]
fn input_errors_exit_with_two() {
    for (args, code) in [
        (&["spectrum", "--beta", "0"][..], "beta_guard"),
        (&["spectrum", "--beta", "pi/5"][..], "beta_guard"),
        (&["spectrum", "--e-min", "0.5"][..], "below_threshold"),
        (&["spectrum", "--n", "0"][..], "invalid_n"),
        (&["spectrum", "--bogus"][..], "usage"),
        (&["spectrum", "--n", "5", "--alpha", "pi/5"][..], "usage"),
    ] {
        let (exit, out, err) = run(args);
        assert_eq!(exit, 2, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(
            err.starts_with(&format!("error[{code}]")),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn closed_form_rejects_soft_walls_only_where_needed() {
    let (code, _, err) = run(&["spectrum", "--delta", "soft", "--steps", "4"]);
    assert_eq!(code, 0, "{err}");
    let (code, _, _) = run(&[
        "spectrum", "--alpha", "0.7", "--beta", "0.3", "--steps", "4",
    ]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&[
        "spectrum",
        "--alpha",
        "0.7",
        "--beta",
        "0.3",
        "--steps",
        "4",
        "--orbit-source",
        "numeric",
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn sweeps_are_deterministic() {
    let w = WedgeGeometry::from_n(5).unwrap();
    let ion = IonPosition::new(200.0, PI / 15.0).unwrap();
    let s = SpectrumSettings::default();
    let g = SweepGrid::new(SweepVariable::PhotonEnergy, 0.76, 1.4, 300).unwrap();
    assert_eq!(
        energy_sweep(&g, &w, &ion, &s).unwrap(),
        energy_sweep(&g, &w, &ion, &s).unwrap()
    );
    let t = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, PI, 9).unwrap();
    let p = SweepGrid::new(SweepVariable::PolarizationGrid, 0.0, 2.0 * PI, 9).unwrap();
    let a = polarization_map(&t, &p, 1.0, &w, &ion, &s).unwrap();
    assert_eq!(a, polarization_map(&t, &p, 1.0, &w, &ion, &s).unwrap());
    assert_eq!(a.rows[0][0], 0.0);
    assert_eq!(a.rows.last().unwrap()[..2], [PI, 2.0 * PI]);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("polmap.csv");
    let (code, out, _) = run(&["polmap", "--steps", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (_, file_headers, file_rows) = read_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (_, headers, rows) = read_csv(&run(&["polmap", "--steps", "5"]).1).unwrap();
    assert_eq!((file_headers, file_rows), (headers, rows));
}
