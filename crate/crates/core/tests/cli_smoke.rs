use std::process::Command;

use composite_pulses::cli::run;

fn cpulse(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cpulse").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn show_f1_in_degrees() {
    let (code, out, _) = cpulse(&["show", "f1", "--deg"]);
    assert_eq!(code, 0);
    assert!(out.contains("phases: 313.4 104.5 0.0 255.5 46.6\n"), "{out}");
    assert!(out.contains("symmetry: antisymmetric"));
}

#[test]
fn certify_single_pulse() {
    let (code, out, _) = cpulse(&["certify", "single-pi"]);
    assert_eq!(code, 0);
    assert!(out.contains("epsilon_order: 2\n"));
    assert!(out.contains("f_order: 2\n"));
}

#[test]
fn list_covers_catalog() {
    let (code, out, _) = cpulse(&["list"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 19);
    assert!(out.contains("knill"));
}

#[test]
fn coeffs_reports_order() {
    let (code, out, _) = cpulse(&["coeffs", "ore3", "--axis", "f"]);
    assert_eq!(code, 0);
    assert!(out.contains("order 4"), "{out}");
}

#[test]
fn scan_is_deterministic_and_sized() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, err) = cpulse(&[
            "scan", "knill", "--ne", "7", "--nf", "5", "--emin", "-0.3", "--fmax", "0.4", "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().count(), 7 * 5 + 1);
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn scan_gnuplot_writes_script_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("plot.gp");
    let (code, _, err) = cpulse(&[
        "scan", "sym9", "--ne", "3", "--nf", "3", "--format", "gnuplot", "--contours", "6", "--out",
        script.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&script).unwrap();
    assert!(text.contains("'plot.csv'"));
    assert!(text.contains("0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999"), "{text}");
    assert!(dir.path().join("plot.csv").exists());
}

#[test]
fn design_sym9_writes_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sym9.json");
    let (code, out, err) = cpulse(&["design", "sym9", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("phases_deg: 282.0890 339.3666 339.3666 159.3666 114.5552"), "{out}");
    let (code, out, _) = cpulse(&["certify", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("epsilon_order: 6"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(cpulse(&["show", "no-such-pulse"]).0, 2);
    assert_eq!(cpulse(&["scan", "f1", "--ne", "1", "--out", "/dev/null"]).0, 2);
    assert_eq!(cpulse(&["coeffs", "f1", "--axis", "z"]).0, 2);
    assert_eq!(cpulse(&["design", "triangle3", "--sign", "3"]).0, 2);
    assert_eq!(cpulse(&["frobnicate"]).0, 2);
}

#[test]
fn unreadable_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (code, _, err) = cpulse(&["certify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_cpulse"))
        .args(["show", "knill"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("240.0 210.0 300.0 210.0 240.0"));
}
