use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wicks_core::diagram::parse_gauss;
use wicks_core::word::parse_word;

const PRISM: &str = "1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n1 4\n2 5\n3 6\n";

fn wicks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wicks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("wicks-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn genus_of_torus_word() {
    let out = wicks(&["--json", "genus", "a b c A B C"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["genus"], 1);
    assert_eq!(v["gamma_vertices"], 2);
}

#[test]
fn genus_methods_agree() {
    let out = wicks(&["genus", "--method", "all", "1 2 -1 -2 3 4 -3 -4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("genus 2"));
}

#[test]
fn iso_exit_codes() {
    assert_eq!(wicks(&["iso", "a b c A B C", "b c a B C A"]).status.code(), Some(0));
    assert_eq!(wicks(&["iso", "a b A B c d C D", "a b c d A B C D"]).status.code(), Some(1));
    assert_eq!(wicks(&["iso", "a b A B"]).status.code(), Some(2));
}

#[test]
fn trefoil_diagram() {
    let out = wicks(&["--json", "diagram", "O1 U2 O3 U1 O2 U3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["c"].as_u64(), v["s"].as_u64(), v["genus"].as_u64()), (Some(3), Some(2), Some(1)));
    assert_eq!(v["alternating"], true);
    assert_eq!(v["reduced"], true);
}

#[test]
fn chord_realizability() {
    assert_eq!(wicks(&["diagram", "--chords", "1 2 1 3 2 3"]).status.code(), Some(1));
    assert_eq!(
        wicks(&["diagram", "--chords", "--realizable", "exact", "1 2 3 1 2 3"]).status.code(),
        Some(0)
    );
}

#[test]
fn validate_exit_codes() {
    assert_eq!(wicks(&["validate", "a b A B"]).status.code(), Some(0));
    assert_eq!(wicks(&["validate", "a a"]).status.code(), Some(1));
    assert_eq!(wicks(&["validate", "a ? A"]).status.code(), Some(2));
}

#[test]
fn batch_with_malformed_line() {
    let file = scratch("batch.txt", "# words\na b c A B C\n\nO1\n1 2 -1 -2\n");
    let out = wicks(&["--file", file.to_str().unwrap(), "genus"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("genus 1"));
    assert!(lines[1].starts_with("line 4: error"));
    assert!(lines[2].starts_with("genus 1"));
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("3 instances: 2 positive, 0 negative, 1 errors"));
}

#[test]
fn parallel_output_matches_serial() {
    let words: String = (2..=41)
        .map(|k| {
            let ups: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
            let downs: Vec<String> = (1..=k).map(|i| format!("-{i}")).collect();
            format!("{} {}\n", ups.join(" "), downs.join(" "))
        })
        .collect();
    let file = scratch("parallel.txt", &words);
    let path = file.to_str().unwrap();
    let serial = wicks(&["--json", "--file", path, "genus"]);
    let parallel = wicks(&["--json", "--parallel", "--file", path, "genus"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(stdout(&serial).lines().count(), 40);
}

#[test]
fn json_round_trips() {
    let out = wicks(&["--json", "word-from-gauss", "O1 U2 O3 U1 O2 U3"]);
    let v = json(&out);
    let word = parse_word(v["word"].as_str().unwrap()).unwrap();
    assert_eq!(word, parse_word("1 2 3 -1 -2 -3").unwrap());
    let gauss = parse_gauss(v["gauss"].as_str().unwrap()).unwrap();
    assert_eq!(gauss, parse_gauss("O1 U2 O3 U1 O2 U3").unwrap());

    let out = wicks(&["--json", "--format", "alpha", "validate", "1 2 -1 -2"]);
    let v = json(&out);
    assert_eq!(parse_word(v["word"].as_str().unwrap()).unwrap(), parse_word("a b A B").unwrap());
}

#[test]
fn prism_graph_and_standard_knot() {
    let file = scratch("prism.txt", PRISM);
    let path = file.to_str().unwrap();
    let out = wicks(&["--json", "graph", path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["planar"], true);
    assert_eq!(v["three_connected"], true);

    let out = wicks(&["--json", "standard-knot", path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["crossings"], 12);
    let gauss = parse_gauss(v["gauss"].as_str().unwrap()).unwrap();
    assert_eq!(gauss.crossing_count(), 12);
}

#[test]
fn non_planar_graph_is_rejected_by_standard_knot() {
    let file = scratch("k33.txt", "1 4\n1 5\n1 6\n2 4\n2 5\n2 6\n3 4\n3 5\n3 6\n");
    let out = wicks(&["standard-knot", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_rejected() {
    assert_eq!(wicks(&["genus", "--no-such-flag", "a b A B"]).status.code(), Some(2));
}
