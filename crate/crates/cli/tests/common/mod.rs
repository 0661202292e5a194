#![allow(dead_code)]

use std::path::{Path, PathBuf};

use alg_cli::{run_with_env, Record, RunOutput};

pub fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

pub fn alg(args: &[&str]) -> RunOutput {
    let mut v = vec!["alg"];
    v.extend_from_slice(args);
    run_with_env(v, None)
}

pub fn alg_env(args: &[&str], env: Option<&str>) -> RunOutput {
    let mut v = vec!["alg"];
    v.extend_from_slice(args);
    run_with_env(v, env.map(String::from))
}

/// Run in line mode and parse every record.
pub fn records(args: &[&str]) -> (i32, Vec<Record>) {
    let mut v = args.to_vec();
    v.extend_from_slice(&["--format", "lines"]);
    let out = alg(&v);
    assert!(out.code != 2, "{args:?}: {}", out.stderr);
    let recs = out
        .stdout
        .lines()
        .map(|l| Record::parse_line(l).unwrap_or_else(|| panic!("unparsable record `{l}`")))
        .collect();
    (out.code, recs)
}

pub fn write_temp(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}
