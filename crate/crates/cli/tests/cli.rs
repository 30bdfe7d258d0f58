use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use riesz_cli::row::COLUMNS;

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn help_and_bad_arguments() {
    assert_eq!(code(&riesz(&["--help"])), 0);
    assert_eq!(code(&riesz(&["run", "--bogus"])), 1);
    assert_eq!(code(&riesz(&[])), 1);
}

#[test]
fn invalid_configs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.conf", "experiment = dimscan\ncolour = red\n"),
        ("no-experiment.conf", "K = 3\n"),
        ("bad-k.conf", "experiment = dimscan\nK = 1\n"),
        ("bad-g0.conf", "experiment = dimscan\nK = 4\ng0 = 2\n"),
        (
            "hermite-p.conf",
            "experiment = dimscan\nsetting = hermite\np = 3\n",
        ),
        ("bad-line.conf", "experiment = dimscan\njust words\n"),
    ];
    for (name, text) in cases {
        let path = write(dir.path(), name, text);
        let out = riesz(&["run", &path]);
        assert_eq!(
            code(&out),
            1,
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error:"),
            "{name}"
        );
        assert!(out.stdout.is_empty(), "{name} wrote rows");
    }
    assert_eq!(code(&riesz(&["run", "/nonexistent/file.conf"])), 1);
}

#[test]
fn memory_cap_is_enforced_before_running() {
    let out = riesz(&[
        "run",
        "--set",
        "experiment=dimscan",
        "--set",
        "K=8",
        "--set",
        "d=7",
        "--mem-cap",
        "1000000",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
    let out = riesz(&[
        "run",
        "--set",
        "experiment=dimscan",
        "--set",
        "K=8",
        "--set",
        "d=2",
        "--mem-cap",
        "100",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn successful_run_writes_csv_to_stdout() {
    let out = riesz(&[
        "run",
        "--set",
        "experiment=dimscan",
        "--set",
        "K=3",
        "--set",
        "d=1..2",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1 + 2);
    assert!(rows.iter().all(|r| r.contains(",ok,")));
}

#[test]
fn failed_rows_exit_2_and_are_still_written() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = riesz(&[
        "run",
        "--set",
        "experiment=dimscan",
        "--set",
        "K=4",
        "--set",
        "d=2",
        "--set",
        "p=3",
        "--set",
        "maxiter=1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("not-converged"));
}

#[test]
fn seed_and_jobs_do_not_change_results_beyond_runtime() {
    let base = [
        "run",
        "--set",
        "experiment=contraction",
        "--set",
        "K=3",
        "--set",
        "d=1..3",
        "--set",
        "p=1.5,3",
    ];
    let strip = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(riesz_cli::row::RUNTIME_COLUMN);
                f.join(",")
            })
            .collect()
    };
    let a = strip(riesz(&[&base[..], &["--jobs", "1"]].concat()));
    let b = strip(riesz(&[&base[..], &["--jobs", "3"]].concat()));
    let c = strip(riesz(&[&base[..], &["--seed", "7"]].concat()));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("run.csv");
    let wit = dir.path().join("witness");
    let conf = write(
        dir.path(),
        "run.conf",
        "seed = 11\nsamples = 4\n[scan]\nexperiment = dimscan\nK = 3\nd = 1..2\np = 4/3, 2, inf\nrestarts = 2\n\
         [heat]\nexperiment = contraction\nK = 3\nd = 2\np = 1.5\n\
         [herm]\nexperiment = hermite-check\nsetting = hermite\nN = 4\nd = 2\np = 3\n",
    );
    let out = riesz(&[
        "run",
        &conf,
        "--out",
        csv.to_str().unwrap(),
        "--witness-dir",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = riesz(&[
        "verify",
        csv.to_str().unwrap(),
        "--witness-dir",
        wit.to_str().unwrap(),
    ]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains("0 failed"));

    // change one stored value: the digest no longer matches
    let first = wit.join("row-00000.json");
    let json = fs::read_to_string(&first).unwrap();
    let mut rec: serde_json::Value = serde_json::from_str(&json).unwrap();
    rec["witness"][0][0] = serde_json::json!(0.123);
    fs::write(&first, rec.to_string()).unwrap();
    let out = riesz(&[
        "verify",
        csv.to_str().unwrap(),
        "--witness-dir",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL row 0"));

    // a CSV with the wrong header is a schema error
    let bad = write(dir.path(), "bad.csv", "a,b\n1,2\n");
    assert_eq!(
        code(&riesz(&[
            "verify",
            &bad,
            "--witness-dir",
            wit.to_str().unwrap()
        ])),
        1
    );
}

#[test]
fn plot_matches_golden_script() {
    let out = riesz(&["plot", golden("dimscan.csv").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let expected = fs::read_to_string(golden("dimscan_plot.py")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn plot_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let header = COLUMNS.join(",");
    let empty = write(dir.path(), "empty.csv", &format!("{header}\n"));
    let script = String::from_utf8(riesz(&["plot", &empty]).stdout).unwrap();
    assert!(script.contains("\nDATA = {}\n"));

    let golden_rows = fs::read_to_string(golden("dimscan.csv")).unwrap();
    let single = write(
        dir.path(),
        "one.csv",
        &format!("{header}\n{}\n", golden_rows.lines().nth(2).unwrap()),
    );
    let out_path = dir.path().join("one.py");
    assert_eq!(
        code(&riesz(&[
            "plot",
            &single,
            "--out",
            out_path.to_str().unwrap()
        ])),
        0
    );
    let script = fs::read_to_string(out_path).unwrap();
    let data: Vec<&str> = script
        .lines()
        .filter(|l| l.starts_with("        (") && l.ends_with("),"))
        .collect();
    assert_eq!(
        data,
        ["        (1, 1.4142135623730956e0, 1.4142135623730956e0),"]
    );
}

#[test]
fn selftest_passes() {
    let out = riesz(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(code(&out), 0, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
