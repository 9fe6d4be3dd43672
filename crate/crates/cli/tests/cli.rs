use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn balanced(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balanced"))
        .args(args)
        .env_remove("BALANCED_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = balanced(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_reproduces_the_worked_example() {
    assert_eq!(stdout(&["count", "--n", "8", "--t", "0.7", "--u", "0.59"]), "50\n");
    assert_eq!(
        stdout(&["count", "--n", "8", "--t", "7/10", "--u", "59/100", "--method", "oracle"]),
        "50\n"
    );
}

#[test]
fn methods_print_identical_integers() {
    for (n, t, u) in [("9", "1/3", "0.5"), ("12", "1", "1"), ("7", "0.25", "1")] {
        let counts: Vec<String> = ["theorem", "fast", "oracle"]
            .iter()
            .map(|m| stdout(&["count", "--n", n, "--t", t, "--u", u, "--method", m]))
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "{n} {t} {u}: {counts:?}");
    }
    assert_eq!(
        stdout(&["count", "--n", "4", "--t", "1", "--u", "1", "--method", "classic"]),
        "14\n"
    );
}

#[test]
fn invalid_requests_exit_nonzero() {
    for args in [
        &["count", "--n", "17", "--method", "oracle"][..],
        &["count", "--n", "5", "--t", "0.5", "--method", "classic"],
        &["count", "--n", "5", "--t", "0"],
        &["count", "--n", "5", "--t", "abc"],
        &["count", "--n", "0"],
        &["scan", "--t", "1"],
        &["partition", "--m", "0"],
    ] {
        assert!(!balanced(args).status.success(), "{args:?} should fail");
    }
}

#[test]
fn verify_passes_every_identity() {
    let out = stdout(&["verify", "--n-max", "10"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn scan_writes_the_count_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    stdout(&[
        "scan",
        "--n-max",
        "8",
        "--t",
        "0.7",
        "--u",
        "0.59",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,A,B,main_term,error"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let a: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    assert_eq!(a, ["1", "2", "4", "4", "7", "8", "10", "13"]);
    assert_eq!(rows[7][2], "50");

    let json = dir.path().join("scan.json");
    stdout(&[
        "scan",
        "--n-max",
        "8",
        "--t",
        "0.7",
        "--u",
        "0.59",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(value["rows"][7]["B"], 50);
}

fn run_with_workers(workers: &str, args: &[&str], out: &Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_balanced"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("BALANCED_WORKERS", workers)
        .status()
        .unwrap();
    assert!(status.success());
    fs::read(out).unwrap()
}

#[test]
fn outputs_are_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let jobs: [&[&str]; 6] = [
        &["scan", "--n-max", "60", "--t", "1/2", "--u", "1/3"],
        &["franel", "--m-max", "30"],
        &["expsum", "--m-max", "200"],
        &["gcdsum", "--k-max", "6"],
        &["errors", "--n-max", "300"],
        &["partition", "--m", "8", "--t", "0.7", "--u", "0.59"],
    ];
    for (i, job) in jobs.iter().enumerate() {
        let one = run_with_workers("1", job, &dir.path().join(format!("{i}-1")));
        let four = run_with_workers("4", job, &dir.path().join(format!("{i}-4")));
        let again = run_with_workers("4", job, &dir.path().join(format!("{i}-4b")));
        assert!(!one.is_empty());
        assert_eq!(one, four, "{job:?}");
        assert_eq!(four, again, "{job:?}");
    }
}

#[test]
fn diagnostic_csvs_have_their_schemas() {
    let header = |args: &[&str]| stdout(args).lines().next().unwrap().to_string();
    assert_eq!(header(&["farey", "--m", "5"]), "index,numerator,denominator");
    assert_eq!(
        header(&["franel", "--m-max", "3"]),
        "m,franel_exact_num,franel_exact_den,franel_float"
    );
    assert_eq!(header(&["expsum", "--m-max", "3"]), "m,sum_re,sum_im,mertens");
    assert_eq!(header(&["errors", "--n-max", "3"]), "n,exact,main,error,normalized");
    assert_eq!(header(&["gcdsum", "--k-max", "2"]), "n,exact,main,error,normalized");

    let farey = stdout(&["farey", "--m", "5"]);
    assert_eq!(farey.lines().count(), 1 + 10);
    let franel = stdout(&["franel", "--m-max", "2"]);
    assert_eq!(
        franel.lines().nth(1).unwrap().split(',').take(3).collect::<Vec<_>>(),
        ["1", "1", "3"]
    );
    assert_eq!(
        franel.lines().nth(2).unwrap().split(',').take(3).collect::<Vec<_>>(),
        ["2", "1", "3"]
    );
}

#[test]
fn partition_renders_the_example_figure() {
    let svg = stdout(&["partition", "--m", "8", "--t", "0.7", "--u", "0.59"]);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"dot\"").count(), 13);
}

#[test]
fn system_dumps_exact_constraints() {
    let value: serde_json::Value = serde_json::from_str(&stdout(&["system", "--word", "10", "--branch", "1"])).unwrap();
    assert_eq!(value["word"], "10");
    assert_eq!(value["constraints"].as_array().unwrap().len(), 10);
    assert!(!balanced(&["system", "--word", "102", "--branch", "0"]).status.success());
    assert!(!balanced(&["system", "--word", "10", "--branch", "2"]).status.success());
}
