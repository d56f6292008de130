use std::fs;
use std::process::{Command, Output};

fn mdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdim"))
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
fn md_reports_value_and_witness() {
    // Bg is the 3-path.
    let out = mdim(&["md", "--graph6", "Bg"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "md=1 witness=[0]\n");
}

#[test]
fn md_reports_infinity_with_certificate() {
    // Cs is the 4-star: a leaf triple has no resolving set.
    let out = mdim(&["md", "--graph6", "Cs"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "md=INF certificate=TWIN_CLASS\n");
}

#[test]
fn md_json_round_trips() {
    let out = mdim(&["md", "--graph6", "Bg", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["md"]["value"], 1);
    assert_eq!(v["md"]["witness"], serde_json::json!([0]));
}

#[test]
fn md_accepts_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("star.txt");
    fs::write(&file, "4 3\n0 1\n0 2\n0 3\n").unwrap();
    let out = mdim(&["md", "--edgelist", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "md=INF certificate=TWIN_CLASS\n");
}

#[test]
fn usage_errors_exit_one() {
    // Unknown flag.
    let out = mdim(&["md", "--graph6", "Bg", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing required input.
    let out = mdim(&["md"]);
    assert_eq!(out.status.code(), Some(1));
    // Both inputs at once.
    let out = mdim(&["md", "--graph6", "Bg", "--edgelist", "x.txt"]);
    assert_eq!(out.status.code(), Some(1));
    // Inverted census range.
    let out = mdim(&["census", "--min", "8", "--max", "6"]);
    assert_eq!(out.status.code(), Some(1));
    // --help is not an error.
    let out = mdim(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let out = mdim(&["md", "--graph6", "B"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));

    let out = mdim(&["md", "--edgelist", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));

    // Disconnected graph: two isolated edges.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("disc.txt");
    fs::write(&file, "4 2\n0 1\n2 3\n").unwrap();
    let out = mdim(&["md", "--edgelist", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // characterize rejects non-trees.
    let out = mdim(&["characterize", "--graph6", "Bw"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_refusals_exit_three() {
    let out = mdim(&["census", "--max", "15"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("15"));

    // A 21-vertex path trips the md guard; --force-large lifts it and the
    // path shortcut answers instantly.
    let path21 = path_graph6(21);
    let out = mdim(&["md", "--graph6", &path21]);
    assert_eq!(out.status.code(), Some(3));
    let out = mdim(&["md", "--graph6", &path21, "--force-large"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "md=1 witness=[0]\n");
}

/// graph6 for the path 0-1-...-(n-1), built by hand to keep the test
/// independent of the library encoder.
fn path_graph6(n: usize) -> String {
    let mut bits = Vec::new();
    for v in 1..n {
        for u in 0..v {
            bits.push(u + 1 == v);
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut val = 0u8;
        for &b in chunk {
            val = val << 1 | u8::from(b);
        }
        s.push((val + 63) as char);
    }
    s
}

#[test]
fn census_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let jsonl = dir.path().join("t.jsonl");
    let out = mdim(&[
        "census",
        "--min",
        "6",
        "--max",
        "6",
        "--out-csv",
        csv.to_str().unwrap(),
        "--out-jsonl",
        jsonl.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        fs::read_to_string(&csv).unwrap(),
        "n,total,md_inf,md_1,md_3,md_4,md_5\n6,6,2,1,3,0,0\n"
    );
    let jsonl_text = fs::read_to_string(&jsonl).unwrap();
    assert_eq!(jsonl_text.lines().count(), 6);
    for line in jsonl_text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], 6);
        assert!(v["graph6"].is_string());
    }
    // The human summary carries the same tallies.
    let text = stdout(&out);
    assert!(text.contains("6       6       2       1       3"), "got:\n{text}");
}

#[test]
fn census_cache_reuses_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let run = || {
        mdim(&[
            "census",
            "--min",
            "5",
            "--max",
            "6",
            "--cache",
            cache.to_str().unwrap(),
            "--json",
        ])
    };
    let cold = run();
    assert!(cold.status.success());
    let cold_v: serde_json::Value = serde_json::from_str(&stdout(&cold)).unwrap();
    assert_eq!(cold_v["cache_hits"], 0);
    assert_eq!(cold_v["computed"], 9);

    let warm = run();
    let warm_v: serde_json::Value = serde_json::from_str(&stdout(&warm)).unwrap();
    assert_eq!(warm_v["computed"], 0);
    assert_eq!(warm_v["cache_hits"], 9);
    assert_eq!(cold_v["rows"], warm_v["rows"]);
}

#[test]
fn characterize_classifies_trees() {
    // 7-path: caterpillar, finite.
    let out = mdim(&["characterize", "--graph6", &path_graph6(7)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("caterpillar=yes"));
    assert!(text.contains("prediction=FINITE"));

    // 4-star under an adversarial labeling (center last): still INFINITE.
    let out = mdim(&["characterize", "--graph6", "CF", "--strict"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("prediction=INFINITE"), "got:\n{text}");
    assert!(text.contains("agreement=no"), "got:\n{text}");

    // Deep spider (three legs of 3): neither caterpillar nor lobster.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("spider.txt");
    fs::write(
        &file,
        "10 9\n0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n",
    )
    .unwrap();
    let out = mdim(&["characterize", "--edgelist", file.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["caterpillar"], false);
    assert_eq!(v["lobster"], false);
    assert_eq!(v["prediction"], serde_json::Value::Null);
}

#[test]
fn construct_builds_verified_sets() {
    // 5-vertex broom: center 0, leaves 1-2, tail 0-3-4.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broom.txt");
    fs::write(&file, "5 4\n0 1\n0 2\n0 3\n3 4\n").unwrap();
    let out = mdim(&["construct", "--edgelist", file.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["source"], "odd-diameter");
    assert_eq!(v["size"], 3);

    // Unresolvable input is an error, not a set.
    let out = mdim(&["construct", "--graph6", "Cs"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sweep_passes() {
    let out = mdim(&["verify", "--max", "8"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("overall: PASS"), "got:\n{text}");
    assert!(!text.contains("FAIL"), "got:\n{text}");
}
