use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn seqmeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqmeter"))
        .args(args)
        .env_remove("SEQMETER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_seq(dir: &Path, name: &str, bits: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, format!("{bits}\n")).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_msequence_text_format() {
    let o = seqmeter(&[
        "gen",
        "msequence",
        "--ell",
        "3",
        "--taps",
        "0x3",
        "--state",
        "0x1",
        "--periods",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "period=7\n1001011\n");
}

#[test]
fn gen_to_file_roundtrips_through_lc() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gold.txt");
    let p = path.to_str().unwrap();
    let o = seqmeter(&["gen", "gold", "--ell", "5", "-o", p]);
    assert!(o.status.success());
    let o = seqmeter(&["--json", "--quiet", "lc", p]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["L"], 10);
}

#[test]
fn json_output_carries_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_seq(dir.path(), "s", "00010011010111100010011010111100");
    let o = seqmeter(&["--json", "--quiet", "--seed", "9", "corr", &f, "--k", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = &v["manifest"];
    assert_eq!(m["seed"], 9);
    assert_eq!(m["budget"], 1_000_000_000u64);
    assert_eq!(m["command"][0], "--json");
    assert_eq!(v["result"]["k"], 2);
    assert_eq!(v["result"]["value"], 17);
    assert_eq!(v["result"]["classification"], "half-peak");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(seqmeter(&["lc"]).status.code(), Some(2));
    assert_eq!(
        seqmeter(&["lc", "/definitely/not/here"]).status.code(),
        Some(2)
    );
    assert_eq!(
        seqmeter(&["gen", "msequence", "--ell", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        seqmeter(&["--json", "--csv", "bounds", "table2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_seq(dir.path(), "s", "0110100110010110");
    let o = seqmeter(&["--budget", "5", "corr", &f, "--k", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_seqmeter"))
        .args(["corr", &f, "--k", "3"])
        .env("SEQMETER_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn table1_csv() {
    let o = seqmeter(&["--csv", "--quiet", "bounds", "table1", "--ell-max", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,ell,T,L,t,published,matches"));
    assert!(text.contains("gold,5,31,10,7,7,true"));
    assert!(text.contains("large-kasami,6,63,15,7,9,false"));
}

#[test]
fn peaks_certificate_is_verified() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m.txt");
    let p = f.to_str().unwrap();
    assert!(seqmeter(&["gen", "msequence", "--ell", "5", "-o", p])
        .status
        .success());
    let o = seqmeter(&["--json", "--quiet", "peaks", p]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["certificate"]["k"], 3);
    assert_eq!(v["result"]["certificate"]["verified"], true);
}

#[test]
fn empty_corpus_is_vacuous_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = seqmeter(&[
        "--json",
        "--quiet",
        "verify",
        "all",
        "--corpus",
        dir.path().to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let corpus = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "corpus")
        .expect("corpus check present");
    assert_eq!(corpus["passed"], true);
    assert_eq!(corpus["detail"], "0 sequences: vacuous pass");
}

#[test]
fn output_does_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_seq(dir.path(), "s", "110100100011011101011000101101");
    let run = |jobs: &str| {
        let o = seqmeter(&["--json", "--quiet", "--jobs", jobs, "corr", &f, "--k", "4"]);
        assert!(o.status.success());
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["manifest"]["jobs"] = Value::Null;
        v["manifest"]["command"] = Value::Null;
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seqmeter"))
        .args(["--json", "--quiet", "moc", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"0011001100110011\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["M"], 2);
}
