use std::process::{Command, Output};

fn bisphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisphere"))
        .args(args)
        .env_remove("BISPHERE_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(text: &str) -> Vec<serde_json::Value> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| serde_json::from_str(l).expect("record line is JSON"))
        .collect()
}

#[test]
fn catalog_lists_stable_ids() {
    let o = bisphere(&["list-checks", "--json"]);
    assert!(o.status.success());
    let entries = records(&stdout(&o));
    assert!(entries.len() >= 20);
    let tag_of = |id: &str| {
        entries
            .iter()
            .find(|e| e["id"] == id)
            .map(|e| e["tag"].as_str().unwrap().to_string())
            .unwrap_or_else(|| panic!("{id} missing"))
    };
    assert!(tag_of("bi-relation").starts_with("{Q_A, Q_B}"));
    assert!(tag_of("ck-kernel").starts_with("CK series"));
    let table = stdout(&bisphere(&["list-checks"]));
    assert_eq!(table.lines().count(), entries.len());
}

#[test]
fn passing_run_exits_zero() {
    let o = bisphere(&["run", "--n", "3", "--mu", "1/2,1/3,1/4", "--suites", "bannai-ito", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    let recs = records(&text);
    assert_eq!(recs.iter().filter(|r| r["check"] == "bi-relation").count(), 49);
    assert!(recs.iter().all(|r| r["status"] == "pass"));
    assert!(text.lines().last().unwrap().starts_with("# ALL PASS"));
}

#[test]
fn record_fields_in_documented_order() {
    let o = bisphere(&["run", "--n", "2", "--suites", "osp", "--max-degree", "2", "--mu", "1,0"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let keys = ["\"check\"", "\"tag\"", "\"suite\"", "\"params\"", "\"status\"", "\"elapsed_us\""];
    let pos: Vec<usize> = keys.iter().map(|k| first.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{first}");
    assert!(first.contains("\"suite\":\"selftest\""));
}

#[test]
fn quoted_eigenvalue_failure_exits_one() {
    let o = bisphere(&["run", "--n", "2", "--mu", "0,0", "--suites", "eigen"]);
    assert_eq!(o.status.code(), Some(1));
    let recs = records(&stdout(&o));
    let quoted: Vec<_> = recs.iter().filter(|r| r["check"] == "eigen-hamiltonian").collect();
    assert!(!quoted.is_empty() && quoted.iter().all(|r| r["status"] == "fail"));
    // m = 2 at mu = 0: (m + 1)(m - 1) = 3
    let m2 = quoted.iter().find(|r| r["params"]["m"] == "2").unwrap();
    assert_eq!(m2["detail"], "eigenvalue = 3/1");
    assert!(recs
        .iter()
        .filter(|r| r["check"] == "eigen-hamiltonian-derived" || r["check"] == "eigen-scasimir")
        .all(|r| r["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["run", "--n", "1"],
        vec!["run", "--n", "2", "--mu", "1,-1"],
        vec!["run", "--n", "3", "--mu", "1,1"],
        vec!["run", "--suites", "nope"],
        vec!["run", "--max-degree", "0"],
        vec!["run", "--mu", "1/0,1,1"],
        vec!["run", "--reflection-prefix", "sideways"],
        vec!["frobnicate"],
    ] {
        let o = bisphere(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let args = ["run", "--n", "3", "--suites", "ck,fischer,ladder", "--seed", "7", "--no-timing"];
    let a = bisphere(&args);
    let b = bisphere(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = bisphere(&["run", "--n", "3", "--suites", "ck,fischer,ladder", "--seed", "8", "--no-timing"]);
    assert_ne!(a.stdout, c.stdout);

    // timed runs agree once elapsed_us is dropped
    let strip = |o: &Output| {
        records(&stdout(o))
            .into_iter()
            .map(|mut r| {
                r.as_object_mut().unwrap().remove("elapsed_us");
                r
            })
            .collect::<Vec<_>>()
    };
    let t1 = bisphere(&args[..args.len() - 1]);
    assert_eq!(strip(&t1), strip(&a));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("bisphere-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let o = bisphere(&[
        "run",
        "--n",
        "2",
        "--suites",
        "identities23",
        "--no-timing",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
    assert!(stdout(&o).contains("\"suite\":\"ladder\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bisphere"))
        .args(["run", "--n", "2", "--suites", "norms", "--mu", "1/2,0"])
        .env("BISPHERE_PRECISION", "30")
        .output()
        .unwrap();
    assert!(o.status.success());
    let recs = records(&stdout(&o));
    let norm = recs.iter().find(|r| r["check"] == "norm-unit").unwrap();
    assert_eq!(norm["params"]["precision_digits"], "30");
}

#[test]
fn strict_as_printed_changes_the_outcome() {
    let o = bisphere(&["run", "--n", "3", "--suites", "norms", "--mu", "1/2,1/3,1/4", "--strict-as-printed"]);
    assert_eq!(o.status.code(), Some(1));
    let ok = bisphere(&["run", "--n", "3", "--suites", "norms", "--mu", "1/2,1/3,1/4"]);
    assert_eq!(ok.status.code(), Some(0));
}
