use std::fs;
use std::process::{Command, Output};

use quotlab::count::Checkpoint;
use quotlab::formats::RepJson;
use quotlab_core::enumerate::{count_stable_commuting_range, CountParams};
use quotlab_core::{punctual_point, Field};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotlab"))
        .args(args)
        .env_remove("QUOTLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn single(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut recs = records(&out);
    assert_eq!(recs.len(), 1);
    recs.pop().unwrap()
}

#[test]
fn punctual_point_is_singular() {
    let v = single(&[
        "tangent", "--m", "2", "--n", "2", "--r", "2", "--point", "punctual",
    ]);
    assert_eq!(v["tangent_dim"], 8);
    assert_eq!(v["reference_dim"], 6);
    assert_eq!(v["verdict"], "Singular");
    assert_eq!(v["seed"], 0);
    assert_eq!(v["version"], quotlab::VERSION);
    assert!(v["timestamp"].is_u64());
}

#[test]
fn etale_and_empty_points() {
    let v = single(&[
        "tangent", "--m", "3", "--n", "1", "--r", "2", "--point", "etale",
    ]);
    assert_eq!(v["tangent_dim"], 4);
    assert_eq!(v["verdict"], "Smooth");
    let v = single(&["tangent", "--m", "2", "--n", "0", "--r", "1"]);
    assert_eq!(v["tangent_dim"], 0);
}

#[test]
fn tangent_reads_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.jsonl");
    let p = punctual_point(Field::Prime(3), 2, 3).unwrap();
    fs::write(
        &path,
        serde_json::to_string(&RepJson::from(&p)).unwrap() + "\n",
    )
    .unwrap();
    let v = single(&["tangent", "--input", path.to_str().unwrap()]);
    assert_eq!(v["tangent_dim"], 18);
    assert_eq!(v["field"], "Fp:3");
    assert_eq!(v["source"], "input");
}

#[test]
fn expected_dimension_above_tangent_is_a_violation() {
    let out = run(&[
        "tangent",
        "--m",
        "2",
        "--n",
        "2",
        "--r",
        "2",
        "--point",
        "punctual",
        "--expected-dim",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn adhm_dimensions_and_samples() {
    let v = single(&["adhm", "--n", "3", "--r", "2", "--dims"]);
    assert_eq!(
        (
            v["framed_dim"].clone(),
            v["quot_dim"].clone(),
            v["codim"].clone()
        ),
        (12.into(), 9.into(), 3.into())
    );
    let out = run(&[
        "adhm",
        "--n",
        "2",
        "--r",
        "2",
        "--samples",
        "6",
        "--field",
        "Fp:7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for v in records(&out) {
        assert_eq!(v["moment_jacobian_rank"], 4);
        assert_eq!(v["framed_tangent_dim"], 8);
    }
}

#[test]
fn count_two_loop_single_point() {
    let v = single(&["count", "--m", "2", "--n", "1", "--r", "2", "--q", "2"]);
    assert_eq!(v["orbit_count"], 12);
    assert_eq!(v["gauge_group_order"], 1);
}

#[test]
fn count_budget_from_environment_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_quotlab"))
        .args(["count", "--m", "2", "--n", "1", "--r", "2", "--q", "2"])
        .env("QUOTLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(
        run(&["count", "--m", "2", "--n", "1", "--r", "2", "--q", "2", "--budget", "16"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["count", "--m", "2", "--n", "1", "--r", "2", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn count_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hilb.ckpt");
    let params = CountParams::new(2, 2, 1, 3).unwrap();
    let cut = 20_000;
    let partial = count_stable_commuting_range(&params, 0..cut).unwrap();
    let saved = Checkpoint {
        m: 2,
        n: 2,
        r: 1,
        q: 3,
        next_index: cut,
        points: partial,
    };
    fs::write(&path, saved.encode()).unwrap();

    let v = single(&[
        "count",
        "--m",
        "2",
        "--n",
        "2",
        "--r",
        "1",
        "--q",
        "3",
        "--checkpoint",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["orbit_count"], 81 + 27);
    let done = Checkpoint::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(done.next_index, 3u128.pow(10));

    let other = run(&[
        "count",
        "--m",
        "2",
        "--n",
        "1",
        "--r",
        "1",
        "--q",
        "3",
        "--checkpoint",
        path.to_str().unwrap(),
    ]);
    assert_eq!(other.status.code(), Some(2));
}

#[test]
fn slope_example() {
    let v = single(&[
        "slope", "--c1H", "0", "--eps", "1", "--delta1", "1", "--rank", "2",
    ]);
    assert_eq!(v["slope"], "-1/2");
    let v = single(&[
        "slope", "--c1H", "-3", "--eps", "0", "--delta1", "1", "--rank", "3/2",
    ]);
    assert_eq!(v["slope"], "-2");
    assert_eq!(
        run(&["slope", "--c1H", "0", "--eps", "1", "--delta1", "1", "--rank", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["slope", "--c1H", "x", "--eps", "1", "--delta1", "1", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["slope", "--c1H", "0", "--eps", "2", "--delta1", "1", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn critcheck_finds_no_failures() {
    let out = run(&[
        "critcheck",
        "--samples",
        "100",
        "--field",
        "Fp:7",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 101);
    let summary = recs.last().unwrap();
    assert_eq!(summary["record"], "summary");
    assert_eq!(summary["samples"], 100);
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["seed"], 3);
    assert!(recs[..100]
        .iter()
        .all(|v| v["grad_is_zero"] == true && v["kernels_equal"] == true));

    let out = run(&["critcheck", "--samples", "10", "--n", "1", "--field", "Q"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out)[..10].iter().all(|v| v["n"] == 1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["critcheck", "--field", "Fp:8"][..],
        &["critcheck", "--field", "GF7"],
        &["critcheck", "--m", "2"],
        &[
            "tangent", "--m", "2", "--n", "3", "--r", "2", "--point", "punctual",
        ],
        &["tangent", "--m", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn embed_checks_hold() {
    let out = run(&[
        "embed",
        "--n",
        "3",
        "--r",
        "2",
        "--samples",
        "8",
        "--field",
        "Fp:5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for v in records(&out) {
        for key in ["moment_is_zero", "stable", "j_is_zero", "round_trip"] {
            assert_eq!(v[key], true);
        }
        assert!(v["excess"].as_i64().unwrap() >= 0);
        assert_eq!(v["datum"]["j"]["entries"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn same_seed_gives_identical_bytes() {
    for cmd in [
        &[
            "tangent",
            "--m",
            "3",
            "--n",
            "3",
            "--r",
            "2",
            "--samples",
            "20",
            "--field",
            "Fp:7",
        ][..],
        &["critcheck", "--samples", "30"],
        &["adhm", "--n", "2", "--r", "3", "--samples", "10"],
        &["embed", "--n", "2", "--r", "2", "--samples", "10"],
    ] {
        let mut args = cmd.to_vec();
        args.extend(["--seed", "42", "--no-timestamp"]);
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("timestamp"));
        args.pop();
        args.pop();
        args.push("43");
        args.push("--no-timestamp");
        assert_ne!(run(&args).stdout, a.stdout, "{cmd:?} ignores the seed");
    }
}

#[test]
fn csv_output_and_file_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = run(&[
        "tangent",
        "--m",
        "2",
        "--n",
        "2",
        "--r",
        "1",
        "--samples",
        "3",
        "--format",
        "csv",
        "--no-timestamp",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("command,version,seed,task,source,m,n,r,field,"));
    assert!(lines[1..].iter().all(|l| l.starts_with("tangent,quotlab ")));
}
