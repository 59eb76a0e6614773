//! End-to-end exercises of the compiled binary: exit codes, stderr
//! diagnostics, and CSV shape. Numerical content is covered by the unit and
//! acceptance suites; these tests pin the command-line contract.

use std::io::Write;
use std::process::{Command, Output};

fn optomech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_optomech"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn report_on_quiet_config_reproduces_the_bath() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{
            "cavity_length": 0.067,
            "wavelength": 1.064e-6,
            "motional_mass": 5e-11,
            "mech_freq": 6.283185307179586e5,
            "quality_factor": 1.2e7,
            "kappa_over_omega_m": 0.047,
            "reflectivity": 0.999,
            "input_power": 0.0,
            "bath_temperature": 0.4,
            "bare_detuning": 1.0e6
        }}"#
    )
    .unwrap();
    let out = optomech(&["report", "--config", f.path().to_str().unwrap(), "--delta", "1.65"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header plus one row:\n{text}");
    assert!(lines[0].starts_with("axis,x,delta_over_omega_m"));
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells.len(), lines[0].split(',').count());
    // Undriven cavity: the effective occupancy is the mechanical bath's.
    let n_eff: f64 = cells[11].parse().unwrap();
    let expected = 8.334597654537814e4;
    assert!(
        ((n_eff - expected) / expected).abs() < 1e-9,
        "n_eff = {n_eff}"
    );
    assert_eq!(*cells.last().unwrap(), "ok");
}

#[test]
fn unreadable_and_invalid_configs_exit_2_with_the_reason() {
    let out = optomech(&["report", "--config", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("/no/such/file.json"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{ "cavity_length": 0.067, "unknown_knob": 3 }}"#).unwrap();
    let out = optomech(&["report", "--config", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("unknown_knob"),
        "diagnostic names the bad field: {}",
        stderr(&out)
    );
}

#[test]
fn unknown_preset_exits_2_and_lists_the_known_ones() {
    let out = optomech(&["figure", "fig99"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("fig99") && err.contains("fig5a"), "{err}");
}

#[test]
fn malformed_sweeps_exit_2() {
    let out = optomech(&[
        "sweep", "--axis", "delta", "--start", "2.0", "--stop", "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = optomech(&[
        "sweep", "--axis", "delta", "--start", "1.6", "--stop", "2.0", "--points", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = optomech(&[
        "sweep", "--axis", "power", "--start", "0.0", "--stop", "1e-4", "--log-scale",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gnuplot_without_out_is_refused() {
    let out = optomech(&["figure", "fig2b", "--points", "3", "--gnuplot", "/tmp/x.gp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--out"));
}

#[test]
fn coupling_table_has_the_advertised_schema() {
    let out = optomech(&["coupling", "--r-c", "0.9", "--eta", "1e-5", "--max-nb", "100", "--points", "5"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r_c,eta0_eff,n_b,f_nb");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].split(',').nth(2) == Some("0"));
}

#[test]
fn figure_writes_csv_and_gnuplot_next_to_it() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig2b.csv");
    let gp = dir.path().join("fig2b.gp");
    let out = optomech(&[
        "figure", "fig2b", "--points", "4",
        "--out", csv.to_str().unwrap(),
        "--gnuplot", gp.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty(), "CSV goes to the file, not stdout");
    let data = std::fs::read_to_string(&csv).unwrap();
    assert!(data.starts_with("r_c,eta0_eff,n_b,f_nb\n"));
    let script = std::fs::read_to_string(&gp).unwrap();
    assert!(script.contains(csv.to_str().unwrap()));
    assert!(script.contains("plot"));
}

#[test]
fn validate_passes_on_the_builtin_configuration() {
    let out = optomech(&["validate", "--threads", "2"]);
    assert!(
        out.status.success(),
        "validate failed:\n{}\n{}",
        stdout(&out),
        stderr(&out)
    );
    let text = stdout(&out);
    assert!(text.contains("oracle cross-checks"));
    assert!(text.contains("consistency-ledger residuals"));
    assert!(!text.contains("FAIL"), "{text}");
}
