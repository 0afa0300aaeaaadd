mod common;

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aswtower"));
    cmd.args(args);
    if let Some(dir) = cwd {
        cmd.current_dir(dir);
    }
    cmd.output().unwrap()
}

fn spec(name: &str) -> String {
    common::tower_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classnum_level_one() {
    let o = run(&["classnum", "--spec", &spec("x3_p2"), "--n-min", "1", "--n-max", "1", "--no-cache"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,vp_class_number\n1,0\n");
}

#[test]
fn csv_headers() {
    for (cmd, header) in [("prank", "n,p_rank"), ("genus", "n,genus"), ("slopes", "n,slope_numerator,slope_denominator,multiplicity")] {
        let o = run(&[cmd, "--spec", &spec("x3_plus_inv_x_p2"), "--n-max", "2", "--no-cache"], None);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert_eq!(stdout(&o).lines().next(), Some(header));
    }
    let o = run(&["genus", "--spec", &spec("x3_p2"), "--no-cache"], None);
    assert_eq!(stdout(&o), "n,genus\n1,1\n2,6\n3,28\n4,120\n");
}

#[test]
fn oracle_reports_match() {
    let o = run(&["oracle", "--spec", &spec("x3_p2"), "--no-cache"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "P(K_1,s) = 1+2s^2 (match)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", "--spec", &spec("invalid_x2_p2")], None).status.code(), Some(2));
    assert_eq!(run(&["validate", "--spec", &spec("x3_p2")], None).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"p\": 4, \"d\": 1, \"coords\": [[\"x\"]]}").unwrap();
    assert_eq!(run(&["validate", "--spec", bad.to_str().unwrap()], None).status.code(), Some(2));
    let o = run(&["zeta", "--spec", &spec("x3_p2"), "--n-max", "9", "--no-cache"], None);
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn fit_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    std::fs::write(&csv, "n,genus\n1,1\n2,6\n3,28\n").unwrap();
    let o = run(&["fit", "--input", csv.to_str().unwrap(), "--p", "2", "--x-deg", "2", "--y-deg", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["fit"]["formula"], "1/2*x^2 - 1/2*x");
    assert_eq!(v["fit"]["onset"], 1);
}

#[test]
fn cache_roundtrip_corruption_and_disable() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let args = |out: &str| {
        vec!["zeta".to_string(), "--spec".into(), spec("x3_plus_inv_x_p2"), "--n-max".into(), "3".into(), "--cache-dir".into(), c.into(), "--out".into(), out.into()]
    };
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run_args = |v: Vec<String>| run(&v.iter().map(|s| s.as_str()).collect::<Vec<_>>(), None);
    assert_eq!(run_args(args(a.to_str().unwrap())).status.code(), Some(0));
    assert_eq!(run_args(args(b.to_str().unwrap())).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let level = walk(&cache).into_iter().find(|p| p.ends_with("level_1.json")).unwrap();
    let mut bytes = std::fs::read(&level).unwrap();
    let i = bytes.iter().position(|&c| c == b'"').unwrap();
    bytes[i] = b'#';
    std::fs::write(&level, bytes).unwrap();
    let o = run_args(args(b.to_str().unwrap()));
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let empty = tempfile::tempdir().unwrap();
    let o = run(&["classnum", "--spec", &spec("x3_p2"), "--n-max", "2", "--no-cache"], Some(empty.path()));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(empty.path()).unwrap().count(), 0);
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    for cmd in ["zeta", "lfun", "slopes"] {
        let one = run(&[cmd, "--spec", &spec("d2_x3_inv_x_p2"), "--n-max", "3", "--threads", "1", "--no-cache"], None);
        let four = run(&[cmd, "--spec", &spec("d2_x3_inv_x_p2"), "--n-max", "3", "--threads", "4", "--no-cache"], None);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout, "{cmd}");
    }
}

#[test]
fn report_passes_on_bundled_towers() {
    for name in ["x3_p2", "x3_plus_x_p2", "x3_plus_inv_x_p2", "x2_p3", "d2_x3_inv_x_p2", "constant_x3_p2"] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("r.json");
        let o = run(&["report", "--spec", &spec(name), "--no-cache", "--out", out.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("all consistency checks passed"));
        let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
        assert_eq!(v["schema_version"], 1);
    }
}

#[test]
fn tadic_command_passes_checks() {
    let o = run(&["tadic", "--spec", &spec("x3_p2"), "--no-cache"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["congruence"]["passed"], true);
    assert_eq!(v["specializations"].as_array().unwrap().len(), 3);
}
