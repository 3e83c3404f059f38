use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn p7c4(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_p7c4"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn p7c4");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn generated(family: &str, params: &[&str]) -> String {
    let mut args = vec!["generate", "--family", family];
    for p in params {
        args.extend(["--param", p]);
    }
    let out = p7c4(&args, "");
    assert!(out.status.success());
    json_lines(&out)[0]["input"].as_str().unwrap().to_string()
}

#[test]
fn petersen_is_gem_free_and_three_colorable() {
    let p = generated("petersen", &[]);
    let out = p7c4(&["classify", "--class", "gem"], &p);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["command"], "classify");
    assert_eq!(v["input"], p.as_str());
    assert_eq!(v["result"]["free"], true);

    let out = p7c4(&["color", "--class", "diamond"], &p);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["colors_used"], 3);
    assert_eq!(r["bound"], 3);
}

#[test]
fn non_member_is_refused_with_witness() {
    let f = generated("f", &[]);
    let out = p7c4(&["color", "--class", "gem"], &f);
    assert_eq!(out.status.code(), Some(2));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["refused"], true);
    assert_eq!(r["witness"]["pattern"], "P7");
}

#[test]
fn exhaustive_verification_reports_no_violations() {
    let out = p7c4(&["verify", "--theorem", "T3", "--exhaustive", "7"], "");
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["violated"], 0);
    assert_eq!(r["total"], 1252);
    assert!(r["verified"].as_u64().unwrap() > 0);
}

#[test]
fn necessity_example_counts_as_vacuous() {
    let out = p7c4(&["verify", "--theorem", "T1", "--family", "g1", "--param", "t=2"], "");
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["vacuous"], 1);
    assert_eq!(r["violated"], 0);
}

#[test]
fn corpus_skips_unreadable_lines() {
    let dir = std::env::temp_dir().join(format!("p7c4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.g6");
    let c5 = generated("cycle", &["k=5"]);
    std::fs::write(&path, format!("{c5}\n!!\n\n{}\n", generated("petersen", &[]))).unwrap();
    let out = p7c4(&["verify", "--theorem", "C1", "--corpus", path.to_str().unwrap()], "");
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["total"], 2);
    assert_eq!(r["verified"], 2);
    assert_eq!(r["skipped"].as_array().unwrap().len(), 1);
}

#[test]
fn failed_hole_property_exits_one() {
    let g5 = generated("g5", &[]);
    let out = p7c4(&["analyze-hole", "--mode", "gem"], &g5);
    assert_eq!(out.status.code(), Some(1));
    let r = &json_lines(&out)[0]["result"];
    let failing: Vec<&str> = r["analyses"][0]["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["holds"] == false)
        .map(|p| p["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["M9"]);

    let c7 = generated("cycle", &["k=7"]);
    let out = p7c4(&["analyze-hole", "--mode", "diamond", "--all-holes"], &c7);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["result"]["holes"], 1);
}

#[test]
fn edge_list_input_and_one_object_per_graph6_line() {
    let out = p7c4(&["oracle-check"], "# path\n3 2\n0 1\n1 2\n");
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0]["result"];
    assert_eq!(r["chi"], 2);
    assert_eq!(r["omega"], 2);

    let two = format!("{}\n{}\n", generated("complete", &["k=4"]), generated("cycle", &["k=6"]));
    let out = p7c4(&["decompose"], &two);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["result"]["peel"]["ell"], 4);
    assert!(lines[1]["result"]["bisimplicial"].is_object());
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(p7c4(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(p7c4(&["classify"], "not graph6 !").status.code(), Some(2));
    assert_eq!(p7c4(&["classify"], "").status.code(), Some(2));
    assert_eq!(p7c4(&["verify", "--theorem", "T9"], "").status.code(), Some(2));
    assert_eq!(p7c4(&["verify", "--theorem", "T1", "--exhaustive", "9"], "").status.code(), Some(2));
    assert_eq!(p7c4(&["generate", "--family", "g1", "--param", "t=1"], "").status.code(), Some(2));
}
