//! End-to-end tests against the compiled binary: exit codes, output shapes,
//! and the documented format contracts.

use std::io::Write;
use std::process::{Command, Output};

fn holey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn holey_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holey"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn count_all_holes_csv_contract() {
    let out = holey(&[
        "count",
        "--rows",
        "3",
        "--cols",
        "3",
        "--all-holes",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
row,col,count,v2,odd_part
1,1,4,2,1
1,3,4,2,1
2,2,2,1,1
3,1,4,2,1
3,3,4,2,1
total,,18,1,9
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn count_single_hole_and_perfect() {
    let out = holey(&["count", "--rows", "3", "--cols", "3", "--hole", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count = 2"));

    let out = holey(&["count", "--rows", "2", "--cols", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count = 2"));
}

#[test]
fn count_json_shape() {
    let out = holey(&[
        "count", "--rows", "3", "--cols", "3", "--hole", "2,2", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], "2");
    assert_eq!(value["v2"], 1);
    assert_eq!(value["odd_part"], "1");
    assert_eq!(value["hole"]["row"], 2);

    let out = holey(&[
        "count",
        "--rows",
        "5",
        "--cols",
        "5",
        "--all-holes",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["total"]["count"], "2180");
    assert_eq!(value["holes"].as_array().unwrap().len(), 13);
}

#[test]
fn count_usage_errors_exit_two() {
    // odd area without a hole flag
    let out = holey(&["count", "--rows", "3", "--cols", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--hole"));

    // mutually exclusive flags (clap conflict)
    let out = holey(&[
        "count",
        "--rows",
        "3",
        "--cols",
        "3",
        "--hole",
        "1,1",
        "--all-holes",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // invalid dimensions
    let out = holey(&["count", "--rows", "0", "--cols", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed hole
    let out = holey(&["count", "--rows", "3", "--cols", "3", "--hole", "x"]);
    assert_eq!(out.status.code(), Some(2));

    // out-of-bounds hole
    let out = holey(&["count", "--rows", "3", "--cols", "3", "--hole", "9,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn profile_guard_names_the_limit_and_env_overrides() {
    let out = holey(&["count", "--rows", "31", "--cols", "31", "--hole", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("profile width"));
    assert!(stderr(&out).contains("HOLEY_MAX_PROFILE"));

    // lowering the guard via the environment rejects a grid the default allows
    let out = holey_env(
        &["count", "--rows", "11", "--cols", "11", "--hole", "1,1"],
        "HOLEY_MAX_PROFILE",
        "10",
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("profile width 11"));
}

#[test]
fn verify_pass_and_report_only_exit_zero() {
    let out = holey(&["verify", "--claim", "holey-twos", "--k-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass"));

    let out = holey(&[
        "verify",
        "--claim",
        "rectangle-parity",
        "--r-max",
        "7",
        "--c-max",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = holey(&[
        "verify",
        "--claim",
        "kong-mod8",
        "--k-max",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["verdict"], "report-only");
    assert_eq!(value["claim"], "kong-mod8");
    assert!(value["instances"]
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i["ok"] == true));
    assert!(value["seconds"].is_number());
}

#[test]
fn verify_all_claims_run() {
    for claim in [
        "holey-twos",
        "main",
        "kong-mod8",
        "axis-reduction",
        "diagonal-reduction",
        "tenner",
        "temperley-boundary",
    ] {
        let out = holey(&["verify", "--claim", claim, "--k-max", "2"]);
        assert_eq!(out.status.code(), Some(0), "claim {claim}");
    }
    let out = holey(&["verify", "--claim", "barkley-liu", "--max-dim", "6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certificate_modes() {
    let out = holey(&["certificate", "--rows", "3", "--cols", "3", "--mode", "a"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1,2\n2,1\n2,3\n3,2\nverified\n");

    let out = holey(&[
        "certificate",
        "--rows",
        "5",
        "--cols",
        "17",
        "--mode",
        "b",
        "--f",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("row,col"));
    assert_eq!(
        text.lines()
            .filter(|l| l.contains(',') && !l.starts_with("row") && !l.starts_with("verdict"))
            .count(),
        24
    );
    assert!(text.trim_end().ends_with("verdict,verified"));

    // no certificate exists for an odd count
    let out = holey(&[
        "certificate",
        "--rows",
        "1",
        "--cols",
        "5",
        "--mode",
        "search",
        "--hole",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "none\n");

    // search finds one when the count is even
    let out = holey(&[
        "certificate",
        "--rows",
        "3",
        "--cols",
        "3",
        "--mode",
        "search",
        "--hole",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("verified\n"));

    // precondition violations are usage errors
    let out = holey(&["certificate", "--rows", "5", "--cols", "5", "--mode", "a"]);
    assert_eq!(out.status.code(), Some(2));
    let out = holey(&["certificate", "--rows", "5", "--cols", "5", "--mode", "b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn web_from_matching_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("holey-cli-test-1x5.matching");
    let mut file = std::fs::File::create(&path).unwrap();
    write!(file, "hole: 1,1\n1,2-1,3\n1,4-1,5\n").unwrap();
    drop(file);

    let out = holey(&[
        "web",
        "--rows",
        "1",
        "--cols",
        "5",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("hole: 1,1"));
    assert!(text.contains("1,3->1,1"));
    assert!(text.contains("1,5->1,3"));
    assert!(text.contains("cycles: 0"));

    // a --hole that contradicts the file header is rejected
    let out = holey(&[
        "web",
        "--rows",
        "1",
        "--cols",
        "5",
        "--hole",
        "1,3",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("expected hole"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn web_enumerate_census() {
    let out = holey(&[
        "web",
        "--rows",
        "3",
        "--cols",
        "3",
        "--hole",
        "2,2",
        "--enumerate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("matchings: 2"));
    assert!(text.contains("pairs: 1"));
    assert!(text.contains("trees: 0"));

    let out = holey(&[
        "web",
        "--rows",
        "3",
        "--cols",
        "3",
        "--hole",
        "1,1",
        "--enumerate",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["matchings"], 4);
    assert_eq!(value["pairs"].as_array().unwrap().len(), 0);
    assert_eq!(value["trees"].as_array().unwrap().len(), 4);

    // enumerate requires a hole
    let out = holey(&["web", "--rows", "3", "--cols", "3", "--enumerate"]);
    assert_eq!(out.status.code(), Some(2));

    // missing input file
    let out = holey(&["web", "--rows", "3", "--cols", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_mod4_csv_contract() {
    let out = holey(&["scan-mod4", "--rows", "3", "--cols", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row,col,count,mod4,class");
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"2,2,2,2,even"));
    assert!(lines.contains(&"1,1,4,0,odd"));
}

#[test]
fn sequence_csv() {
    let out = holey(&["sequence", "--k-max", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
k,a,v2,c_k,c_k_mod8
0,1,0,1,1
1,18,1,9,1
2,2180,2,545,1
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn jobs_flag_does_not_change_output() {
    let serial = holey(&[
        "count",
        "--rows",
        "7",
        "--cols",
        "7",
        "--all-holes",
        "--format",
        "csv",
    ]);
    let parallel = holey(&[
        "count",
        "--rows",
        "7",
        "--cols",
        "7",
        "--all-holes",
        "--format",
        "csv",
        "--jobs",
        "4",
    ]);
    assert_eq!(stdout(&serial), stdout(&parallel));
    let scan_serial = holey(&["scan-mod4", "--rows", "7", "--cols", "5", "--format", "csv"]);
    let scan_parallel = holey(&[
        "scan-mod4",
        "--rows",
        "7",
        "--cols",
        "5",
        "--format",
        "csv",
        "--jobs",
        "3",
    ]);
    assert_eq!(stdout(&scan_serial), stdout(&scan_parallel));
}
