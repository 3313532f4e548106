use std::path::PathBuf;
use std::process::{Command, Output};

use g2n_core::lefschetz::sigma_direct;
use g2n_core::{Rational, SigmaInstance};
use serde_json::Value;

fn g2n(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2n"))
        .args(args)
        .env_remove("G2N_JOBS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn rows(o: &Output) -> Vec<Value> {
    let v: Value = serde_json::from_slice(&o.stdout).expect("json output");
    v.as_array().expect("array").clone()
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn sigma_both_methods_agree() {
    let o = g2n(&["sigma", "--N", "6", "--k", "1", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let rows = rows(&o);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(row["agree"], true);
    assert_eq!(row["positive"], true);
    assert_eq!(row["passed"], true);
    let sigma: Rational = row["sigma"].as_str().unwrap().parse().unwrap();
    assert_eq!(sigma, sigma_direct(&SigmaInstance::new(6, 1).unwrap()));
    assert_eq!(row["n"], 4);
    assert_eq!(row["T"], 8);
}

#[test]
fn scan_bound_is_clean() {
    let o = g2n(&["scan-bound", "--Tmin", "3", "--Tmax", "50"]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["T_range"], serde_json::json!([3, 50]));
    assert_eq!(report["violations"], Value::Array(vec![]));
    assert_eq!(report["strictness_exceptions"], Value::Array(vec![]));
    assert_eq!(report["rows_checked"], (3..=50).sum::<u64>());
    assert_eq!(report["elapsed_ms"], 0);
    assert_eq!(report["passed"], true);
    let equality = report["equality_cases"].as_array().unwrap();
    assert!(equality.iter().all(|p| p["n"] == 0 || p["s"] == 0));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("T=4, n=3"), "{stderr}");
}

#[test]
fn scan_bound_csv_has_one_row_per_t() {
    let o = g2n(&[
        "scan-bound",
        "--Tmin",
        "3",
        "--Tmax",
        "12",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("T,points,equality_cases,strictness_exceptions,violations,passed")
    );
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 10);
    assert_eq!(body[0], "3,6,3,[],[],true");
}

#[test]
fn verify_needed_harmonic_t30() {
    let o = g2n(&["verify-needed", "--T", "30", "--sequence", "harmonic"]);
    assert_eq!(code(&o), 0);
    let rows = rows(&o);
    assert_eq!(rows.len(), 30);
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row["n"], n as u64);
        assert_eq!(row["holds"], true);
        assert_ne!(row["branch"], "uncertified");
    }
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify-grassmannian", "--Nmax", "12", "--method", "both"],
        vec!["verify-pn", "--nmax", "12"],
        vec!["verify-ortho", "--Tmin", "3", "--Tmax", "12"],
        vec![
            "verify-needed",
            "--Tmin",
            "3",
            "--Tmax",
            "15",
            "--sequence",
            "random",
            "--seed",
            "11",
        ],
    ] {
        let o = g2n(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert!(rows(&o).iter().all(|r| r["passed"] == true), "{args:?}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &["scan-bound", "--Tmin", "3", "--Tmax", "30"],
        &[
            "verify-needed",
            "--Tmin",
            "3",
            "--Tmax",
            "20",
            "--sequence",
            "random",
            "--seed",
            "5",
            "--format",
            "csv",
        ],
        &["table", "sigma", "--Nmax", "10", "--format", "csv"],
    ];
    for args in cases {
        let mut one = args.to_vec();
        one.extend(["--jobs", "1"]);
        let mut four = args.to_vec();
        four.extend(["--jobs", "4"]);
        let a = g2n(&one);
        let b = g2n(&four);
        let c = g2n(&four);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(b.stdout, c.stdout, "{args:?}");
    }
}

#[test]
fn seeds_change_random_sequences() {
    let run = |seed: &str| {
        g2n(&[
            "verify-needed",
            "--T",
            "12",
            "--sequence",
            "random",
            "--seed",
            seed,
        ])
        .stdout
    };
    assert_ne!(run("1"), run("2"));
    let o = g2n(&[
        "verify-needed",
        "--T",
        "5",
        "--sequence",
        "random",
        "--seed",
        "42",
    ]);
    assert!(rows(&o).iter().all(|r| r["sequence"] == "random:42"));
}

#[test]
fn exit_one_iff_a_row_failed() {
    let suites: [&[&str]; 5] = [
        &["sigma", "--N", "6", "--k", "1"],
        &["verify-pn", "--nmax", "5"],
        &["verify-ortho", "--T", "7"],
        &["verify-needed", "--T", "10"],
        &["scan-bound", "--Tmin", "3", "--Tmax", "10"],
    ];
    for args in suites {
        for fault in [false, true] {
            let mut full = args.to_vec();
            if fault {
                full.push("--inject-fault");
            }
            let o = g2n(&full);
            let v: Value = serde_json::from_slice(&o.stdout).unwrap();
            let failed = match v.as_array() {
                Some(rows) => rows.iter().filter(|r| r["passed"] == false).count(),
                None => usize::from(v["passed"] == false),
            };
            assert_eq!(failed, usize::from(fault), "{full:?}");
            assert_eq!(code(&o), if failed > 0 { 1 } else { 0 }, "{full:?}");
        }
    }
    let o = g2n(&[
        "scan-bound",
        "--Tmax",
        "8",
        "--format",
        "csv",
        "--inject-fault",
    ]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with(",false")).count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 8] = [
        &[],
        &["frobnicate"],
        &["sigma", "--k", "1"],
        &["sigma", "--N", "4", "--k", "3"],
        &["scan-bound", "--Tmin", "2"],
        &["verify-ortho", "--Tmin", "9", "--Tmax", "4"],
        &["verify-pn", "--format", "xml"],
        &["verify-needed", "--T", "10", "--Tmin", "4"],
    ];
    for args in cases {
        let o = g2n(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn jobs_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_g2n"))
        .args(["verify-pn", "--nmax", "3"])
        .env("G2N_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    let good = Command::new(env!("CARGO_BIN_EXE_g2n"))
        .args(["verify-pn", "--nmax", "3"])
        .env("G2N_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&good), 0);
}

#[test]
fn sequence_files() {
    let values: Vec<String> = (1..=9).map(|k| g2n_core::harmonic(k).to_string()).collect();
    let good = tmp_file(
        "harmonic9.txt",
        &format!("# H_1..H_9\n{}\n", values.join(", ")),
    );
    let from_file = g2n(&[
        "verify-needed",
        "--T",
        "10",
        "--sequence",
        good.to_str().unwrap(),
    ]);
    let builtin = g2n(&["verify-needed", "--T", "10", "--sequence", "harmonic"]);
    assert_eq!(code(&from_file), 0);
    let strip = |o: &Output| -> Vec<Value> {
        rows(o)
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("sequence");
                r
            })
            .collect()
    };
    assert_eq!(strip(&from_file), strip(&builtin));
    assert_eq!(rows(&from_file)[0]["sequence"], "file");

    let short = tmp_file("short.txt", "1 3/2 11/6");
    assert_eq!(
        code(&g2n(&[
            "verify-needed",
            "--T",
            "10",
            "--sequence",
            short.to_str().unwrap()
        ])),
        2
    );

    let garbage = tmp_file("garbage.txt", "1 3/2 eleven");
    let o = g2n(&[
        "verify-needed",
        "--T",
        "4",
        "--sequence",
        garbage.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("eleven"));

    let missing = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("does-not-exist.txt");
    assert_eq!(
        code(&g2n(&[
            "verify-needed",
            "--T",
            "4",
            "--sequence",
            missing.to_str().unwrap()
        ])),
        2
    );

    let bumpy = tmp_file("bumpy.txt", "1 1.1 3 3.5 5 5.2");
    assert_eq!(
        code(&g2n(&[
            "verify-needed",
            "--T",
            "7",
            "--sequence",
            bumpy.to_str().unwrap()
        ])),
        2
    );
    let o = g2n(&[
        "verify-needed",
        "--T",
        "7",
        "--sequence",
        bumpy.to_str().unwrap(),
        "--exploratory",
    ]);
    assert!(matches!(code(&o), 0 | 1));
    assert!(rows(&o).iter().all(|r| r["branch"] == "exploratory"));
}

#[test]
fn racah_csv_is_sorted_with_approx_column() {
    let o = g2n(&[
        "table", "racah", "--Tmin", "3", "--Tmax", "4", "--format", "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,n,s,value,value_approx"));
    let keys: Vec<(u32, u32, u32)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(keys.len(), 9 + 16);
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(text.contains("\n3,1,1,1/2,0.500000000000\n"));
}

#[test]
fn sigma_table_sorted_and_empty_case() {
    let o = g2n(&["table", "sigma", "--Nmax", "5"]);
    let keys: Vec<(u64, u64)> = rows(&o)
        .iter()
        .map(|r| (r["N"].as_u64().unwrap(), r["k"].as_u64().unwrap()))
        .collect();
    assert_eq!(keys.len(), SigmaInstance::all_up_to(5).len());
    assert!(keys.windows(2).all(|w| w[0] < w[1]));

    let empty = g2n(&["table", "sigma", "--Nmax", "0", "--format", "csv"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(
        String::from_utf8(empty.stdout).unwrap(),
        "N,k,n,T,sigma,sigma_approx\n"
    );
    let empty_json = g2n(&["table", "sigma", "--Nmax", "0"]);
    assert_eq!(String::from_utf8(empty_json.stdout).unwrap(), "[]\n");
}
