use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use malmsten_core::{special_value, zero_limit, SpecialAngle};

fn malmsten(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malmsten"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn eval_half_pi_matches_printed_value() {
    let out = malmsten(&["eval", "--phi", "pi/2", "--method", "closed", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let want = special_value(SpecialAngle::PiOver2).unwrap().value;
    assert!((v["value"].as_f64().unwrap() - want).abs() <= 1e-12);
    assert_eq!(v["method"], "CLOSED");
    assert!(v["est_error"].as_f64().unwrap() >= 0.0);
    assert!(v["work"].as_u64().unwrap() >= 1);
}

#[test]
fn eval_text_output_lists_fields() {
    let out = malmsten(&["eval", "--phi", "-2*pi/3", "--method", "quad"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for field in ["phi", "method", "value", "est_error", "work"] {
        assert!(
            text.lines().any(|l| l.starts_with(field)),
            "{field} missing from {text}"
        );
    }
    assert!(text.contains("quad_exp"));
    assert!(!text.contains('\x1b'));
}

#[test]
fn eval_zero_uses_limit() {
    let out = malmsten(&["eval", "--phi", "0", "--method", "closed", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"].as_f64().unwrap(), zero_limit().value);
}

#[test]
fn domain_and_parse_errors_exit_2() {
    for args in [
        &["eval", "--phi", "pi", "--method", "quad"][..],
        &["eval", "--phi", "-pi"],
        &["eval", "--phi", "2*pi"],
        &["eval", "--phi", "sin(1)"],
        &["eval", "--phi", "1", "--method", "simpson"],
        &["eval", "--phi", "1", "--method", "quad_tan"],
        &["eval", "--phi", "0", "--method", "series"],
        &["eval", "--phi", "0", "--method", "kummer"],
        &["eval", "--phi", "1", "--tol", "-1"],
        &["verify", "--only", "nothing"],
        &["frobnicate"],
    ] {
        let out = malmsten(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).trim().is_empty(), "{args:?}");
    }
    let out = malmsten(&["eval", "--phi", "pi", "--method", "quad"]);
    assert_eq!(stderr(&out).trim().lines().count(), 1);
    assert!(stderr(&out).contains("domain"));
}

#[test]
fn unreachable_tolerance_exits_3() {
    let out = malmsten(&[
        "eval",
        "--phi",
        "1",
        "--method",
        "quad_unit",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("convergence"));
}

#[test]
fn verify_only_filters_blocks() {
    let out = malmsten(&["verify", "--only", "jn", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["blocks"], serde_json::json!(["jn"]));
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 22);
    assert!(checks
        .iter()
        .all(|c| c["name"].as_str().unwrap().starts_with("jn.")));
}

#[test]
fn verify_text_report() {
    let out = malmsten(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all checks passed"));
    assert!(!text.contains("FAIL"));

    let out = malmsten(&["verify", "--tol-closed-quad", "1e-16"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.contains("failed quad."));
    assert!(stderr(&out).contains("check(s) failed"));
}

fn read_csv(path: &Path) -> Vec<(f64, String, f64)> {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi,method,value,est_error,work"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 5);
            f[4].parse::<u64>().unwrap();
            (
                f[0].parse().unwrap(),
                f[1].to_string(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn sweep_csv_grid_and_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let out = malmsten(&[
        "sweep",
        "--from",
        "-3",
        "--to",
        "3",
        "--step",
        "0.1",
        "--methods",
        "closed,quad",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 122);

    let mut by_phi: BTreeMap<i64, BTreeMap<String, f64>> = BTreeMap::new();
    for (phi, method, value) in &rows {
        by_phi
            .entry((phi * 10.0).round() as i64)
            .or_default()
            .insert(method.clone(), *value);
    }
    assert_eq!(by_phi.len(), 61);
    for w in rows.windows(2) {
        assert!(w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 < w[1].1));
    }
    for (k, methods) in &by_phi {
        assert_eq!(methods.keys().collect::<Vec<_>>(), ["closed", "quad_exp"]);
        assert!(
            (methods["closed"] - methods["quad_exp"]).abs() <= 1e-10,
            "k={k}"
        );
        let mirror = &by_phi[&-k];
        for (m, v) in methods {
            assert!(
                (v - mirror[m]).abs() <= 1e-12 * v.abs().max(1.0),
                "k={k} {m}"
            );
        }
    }
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, format: &str, methods: &str| {
        let path = dir.path().join(name);
        let out = malmsten(&[
            "sweep",
            "--from",
            "-pi/2",
            "--to",
            "2",
            "--step",
            "0.25",
            "--methods",
            methods,
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        std::fs::read(path).unwrap()
    };
    assert_eq!(
        run("a.csv", "csv", "closed,quad_unit,series"),
        run("b.csv", "csv", "series,closed,quad_unit")
    );
    let a = run("a.json", "json", "closed,kummer");
    assert_eq!(a, run("b.json", "json", "kummer,closed"));
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 15);
    for r in records {
        assert_eq!(r["evaluations"].as_array().unwrap().len(), 2);
        assert_eq!(r["deltas"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn sweep_errors_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    for args in [
        &[
            "sweep", "--from", "-4", "--to", "3", "--step", "0.1", "--out", p,
        ][..],
        &[
            "sweep", "--from", "1", "--to", "0", "--step", "0.1", "--out", p,
        ],
        &[
            "sweep", "--from", "0", "--to", "1", "--step", "0", "--out", p,
        ],
        &[
            "sweep",
            "--from",
            "-1",
            "--to",
            "1",
            "--step",
            "0.5",
            "--methods",
            "series",
            "--out",
            p,
        ],
    ] {
        assert_eq!(malmsten(args).status.code(), Some(2), "{args:?}");
        assert!(!path.exists());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    let missing = dir.path().join("no/such/dir/out.csv");
    let out = malmsten(&[
        "sweep",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "0.5",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_rows() {
    let out = malmsten(&["table", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(
        rows.iter()
            .map(|r| r["phi"].as_str().unwrap())
            .collect::<Vec<_>>(),
        ["pi/3", "pi/2", "2*pi/3"]
    );
    for r in rows {
        assert!(r["residuals"]
            .as_array()
            .unwrap()
            .iter()
            .all(|x| x["pass"] == true));
    }
    assert!(rows[2]["two_forms"].is_object());

    let out = malmsten(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bracket form") && text.contains("ratio form"));
}
