use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semicircle"))
        .args(args)
        .env_remove("SEMICIRCLE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(
        stdout(&["moments", "--k", "3", "--route", "akl"]),
        "5,-22,32,-15,0\n"
    );
    assert_eq!(stdout(&["paths", "--k", "3", "--count-only"]), "5\n");
    assert_eq!(stdout(&["hermite", "--n", "0"]), "1\n");
}

#[test]
fn every_route_agrees() {
    for route in ["interp", "det", "akl", "paths"] {
        assert_eq!(
            stdout(&["moments", "--k", "2", "--route", route]),
            "2,-5,3,0\n"
        );
    }
}

#[test]
fn moments_csv_has_comparison_columns() {
    let out = stdout(&["moments", "--k", "3", "--eval-n", "4", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,route,leading,catalan,second,s_k,coefficients,eval_n,value"
    );
    // M_4(6) = 5·256 - 22·64 + 32·16 - 15·4
    assert_eq!(
        lines.next().unwrap(),
        "3,interp,5,5,-22,-22,5;-22;32;-15;0,4,324"
    );
}

#[test]
fn hermite_json_uses_decimal_strings() {
    let out = stdout(&["hermite", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"][2]["coefficient"], "-6");
    assert_eq!(v["coefficients"][4]["coefficient"], "3");
}

#[test]
fn big_integers_keep_full_precision() {
    let out = stdout(&["paths", "--k", "40", "--count-only"]);
    // C_40
    assert_eq!(out, "2622127042276492108820\n");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["moments", "--k", "3", "--route", "nope"][..],
        &["wigner-mc", "--c", "-1"],
        &["roots", "--n", "0"],
        &["hermite"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn error_record_is_json() {
    let out = run(&["akl", "--k", "2", "--l", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "usage");
}

#[test]
fn gf_check_passes_on_small_grid() {
    let out = stdout(&["gf-check", "--n-max", "20", "--grid", "4"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 80);
    assert!(rows.iter().all(|r| r.contains(",true")));
}

#[test]
fn wigner_runs_are_byte_deterministic() {
    let args = [
        "wigner-mc",
        "--n",
        "4",
        "--samples",
        "3000",
        "--seed",
        "9",
        "--hist",
        "8",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    assert_eq!(a, stdout(&threaded));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 5);
    assert_eq!(v["histogram"]["bins"].as_array().unwrap().len(), 8);
}

#[test]
fn out_writes_manifest_with_checksum() {
    let dir = std::env::temp_dir().join(format!("semicircle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.csv");
    let p = path.to_str().unwrap();
    let out = run(&["hermite", "--n", "6", "--format", "csv", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read(&path).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.join("h.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["parameters"]["subcommand"], "hermite");
    assert_eq!(manifest["parameters"]["n"], 6);
    use sha2::Digest;
    assert_eq!(manifest["sha256"], hex::encode(sha2::Sha256::digest(&body)));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn roots_csv_with_moments() {
    let out = stdout(&["roots", "--n", "2", "--moments", "2"]);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .take(2)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!(out.starts_with("j,root,scaled\n"));
    assert!((rows[0][1] + 1.0).abs() < 1e-14 && (rows[1][2] - 0.5 / 2f64.sqrt()).abs() < 1e-14);
    assert!(out.contains("\nk,empirical,semicircle\n"));
}
