use std::process::Command as Process;

use clap::Parser;
use hecke_core::cli::{run, RunConfig, EXIT_CERTIFICATION, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> hecke_core::cli::RunOutcome {
    let config = RunConfig::try_parse_from(std::iter::once("hecke").chain(args.iter().copied())).unwrap();
    run(&config)
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().unwrap()
}

#[test]
fn eval_golden_word() {
    let out = cli(&["eval", "--group", "g4", "--word", "s1^2 s2^2"]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(
        out.stdout.trim(),
        "(1*u3^-1 + 1*u2^-1 + 1*u1^-1)*b9 \
         + (-1*u2^-1*u3^-1 - 1*u1^-1*u3^-1 - 1*u1^-1*u2^-1)*b13 \
         + (1*u1^-1*u2^-1*u3^-2 + 1*u1^-1*u2^-2*u3^-1 + 1*u1^-2*u2^-1*u3^-1)*b17 \
         + (-1*u1^-1*u2^-2*u3^-2 - 1*u1^-2*u2^-1*u3^-2 - 1*u1^-2*u2^-2*u3^-1)*b19 \
         + 1*u1^-2*u2^-2*u3^-2*b22"
    );
}

#[test]
fn eval_json_has_coefficients() {
    let out = cli(&["eval", "-g", "a2", "-w", "s1 s2", "-o", "json"]);
    assert_eq!(out.status, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["text"], "T_st");
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 6);
}

#[test]
fn validate_exits_zero() {
    for g in ["a2", "g4"] {
        let out = binary(&["validate", "--group", g]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    }
}

#[test]
fn report_is_deterministic() {
    let first = binary(&["report", "--group", "g4", "--seed", "7", "--output", "json"]);
    let second = binary(&["report", "--group", "g4", "--seed", "7"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["center"]["reference_comparison"]["equal_f_span"], true);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cli(&["validate", "-g", "nonexistent"]).status, EXIT_USAGE);
    assert_eq!(cli(&["eval", "-g", "a2", "-w", "s1^0"]).status, EXIT_USAGE);
    assert_eq!(cli(&["eval", "-g", "a2", "-w", "s3"]).status, EXIT_USAGE);
    assert_eq!(cli(&["eval", "-g", "a2"]).status, EXIT_USAGE);
    assert_eq!(binary(&["frobnicate", "-g", "a2"]).status.code(), Some(1));
    assert_eq!(binary(&["--help"]).status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(cli(&["validate", "-g", bad.to_str().unwrap()]).status, EXIT_USAGE);
}

#[test]
fn broken_group_file_fails_certification() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-broken-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut file: serde_json::Value = serde_json::from_str(hecke_core::hecke::builtin::G4_JSON).unwrap();
    // Flip the sign of a single entry of ρ(σ2).
    let entry = &mut file["rho"][1][2][2][1][0][1];
    assert_eq!(entry, "1");
    *entry = "-1".into();
    let path = dir.join("g4-broken.json");
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

    let out = cli(&["validate", "-g", path.to_str().unwrap()]);
    assert_eq!(out.status, EXIT_CERTIFICATION);
    assert!(out.stdout.contains("FAIL braid s1 s2 s1 = s2 s1 s2"));
}

#[test]
fn group_from_path() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../groups/a2.json");
    let out = cli(&["center", "-g", path]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.starts_with("commutant center (3 vectors)"));
}

#[test]
fn mm_check_and_dual() {
    let out = cli(&["mm-check", "-g", "g4"]);
    assert_eq!(out.status, EXIT_OK);
    assert!(out.stdout.contains("tau(x^-1 pi) = 0 for all 23 basis words"));
    let out = cli(&["dual", "-g", "a2"]);
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 6);
    assert_eq!(cli(&["gram", "-g", "g4"]).status, EXIT_OK);
    assert_eq!(cli(&["compare", "-g", "a2"]).status, EXIT_OK);
}
