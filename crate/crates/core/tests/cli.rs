use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conflict-lens"))
        .current_dir(dir)
        .env_remove("CONFLICT_LENS_CONFIG")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = cli(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn generate_mine_detect_evaluate() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "generate", "--preset", "mixed", "--days", "15", "--seed", "4", "--out", "data",
        ],
    );
    ok(dir, &["mine", "data/events.log", "--out", "habits.json"]);
    ok(dir, &["detect", "habits.json", "--out", "reports.json"]);
    let tsv = ok(
        dir,
        &[
            "evaluate",
            "reports.json",
            "data/truth.json",
            "--format",
            "tsv",
        ],
    );
    assert!(
        tsv.lines()
            .any(|l| l.starts_with("overall\t24\t") && l.ends_with("1.000000")),
        "{tsv}"
    );
    let json: serde_json::Value =
        serde_json::from_str(&ok(dir, &["evaluate", "reports.json", "data/truth.json"])).unwrap();
    assert_eq!(json["accuracy"], 1.0);
}

#[test]
fn outputs_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    ok(dir, &["generate", "--preset", "probable", "--out", "a"]);
    ok(dir, &["generate", "--preset", "probable", "--out", "b"]);
    assert_eq!(
        fs::read(dir.join("a/events.log")).unwrap(),
        fs::read(dir.join("b/events.log")).unwrap()
    );
    let first = ok(dir, &["mine", "a/events.log"]);
    assert_eq!(first, ok(dir, &["mine", "b/events.log"]));
    fs::write(dir.join("h.json"), &first).unwrap();
    assert_eq!(
        ok(dir, &["detect", "h.json", "--mu", "0.5"]),
        ok(dir, &["detect", "h.json", "--mu", "0.5"])
    );
}

#[test]
fn config_file_and_flag_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "generate", "--preset", "pruning", "--days", "10", "--out", "data",
        ],
    );
    ok(dir, &["mine", "data/events.log", "--out", "h.json"]);
    fs::write(dir.join("cfg.toml"), "detect.mu = 0.6\n").unwrap();
    let pruned = |text: &str| text.lines().filter(|l| l.ends_with("\tpruned")).count();
    let from_config = ok(
        dir,
        &[
            "detect", "h.json", "--config", "cfg.toml", "--format", "tsv",
        ],
    );
    assert_eq!(pruned(&from_config), 10);
    let overridden = ok(
        dir,
        &[
            "detect", "h.json", "--config", "cfg.toml", "--mu", "0", "--format", "tsv",
        ],
    );
    assert_eq!(pruned(&overridden), 0);

    let out = Command::new(env!("CARGO_BIN_EXE_conflict-lens"))
        .current_dir(dir)
        .env("CONFLICT_LENS_CONFIG", "cfg.toml")
        .args(["detect", "h.json", "--format", "tsv"])
        .output()
        .unwrap();
    assert_eq!(pruned(&String::from_utf8(out.stdout).unwrap()), 10);
}

#[test]
fn errors_exit_nonzero_with_diagnostic() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(
        dir.join("bad.json"),
        r#"{"schema_version": "9", "habits": []}"#,
    )
    .unwrap();
    let cases: [&[&str]; 4] = [
        &["detect", "bad.json"],
        &["detect", "missing.json"],
        &["sweep", "bad.json", "bad.json"],
        &["mine", "nothing.log"],
    ];
    for args in cases {
        let out = cli(dir, args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error: "),
            "{args:?}"
        );
    }
    fs::write(
        dir.join("empty.json"),
        r#"{"schema_version": "1", "habits": []}"#,
    )
    .unwrap();
    let out = cli(dir, &["detect", "empty.json", "--mu", "1.01"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1.01"));
}

#[test]
fn ingest_reports_repairs_and_normalises() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(
        dir.join("raw.log"),
        "2011-06-15 08:00:00 TV ON Fox R1\n\
         garbage line\n\
         2011-06-15 09:00:00 TV OFF R1\n\
         2011-06-15 09:10:00 TV OFF R1\n",
    )
    .unwrap();
    let out = cli(
        dir,
        &["ingest", "raw.log", "--sensor-location", "TV=living"],
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2: malformed"), "{stderr}");
    assert!(stderr.contains("line 4: repaired"), "{stderr}");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "2011-06-15 08:00:00 TV@living ON value=Fox R1\n2011-06-15 09:00:00 TV@living OFF R1\n"
    );
}

#[test]
fn sweep_and_scale_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "generate", "--preset", "pruning", "--days", "10", "--out", "data",
        ],
    );
    ok(dir, &["mine", "data/events.log", "--out", "h.json"]);
    let sweep = ok(
        dir,
        &[
            "sweep",
            "h.json",
            "data/truth.json",
            "--mus",
            "0,0.6",
            "--format",
            "tsv",
        ],
    );
    let lines: Vec<&str> = sweep.lines().collect();
    assert_eq!(lines[0], "mu\tstrong\ttau\tweak\tnone\taccuracy");
    assert!(lines[1].starts_with("0\t1.000000\t-"));
    assert!(lines[2].starts_with("0.6\t0.500000\t-"));
    let scale = ok(
        dir,
        &[
            "scale",
            "--preset",
            "household",
            "--residents",
            "1,2,3,4",
            "--format",
            "tsv",
        ],
    );
    assert_eq!(
        scale,
        "residents\tgroups\tconflicts\n1\t0\t0\n2\t1\t1\n3\t3\t3\n4\t4\t4\n"
    );
}
