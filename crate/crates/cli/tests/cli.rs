use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multisym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_files(cmd: &str, files: &[&str], flags: &[&str]) -> Output {
    let paths: Vec<String> = files
        .iter()
        .map(|f| fixture(f).to_string_lossy().into_owned())
        .collect();
    let mut args = vec![cmd];
    args.extend(paths.iter().map(String::as_str));
    args.extend(flags);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

#[test]
fn product_matches_golden_json() {
    let o = run_files("product", &["e11_ab.json", "e2_c.json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("e11_ab_times_e2_c.golden.json"));
    let o = run_files(
        "product",
        &["e11_ab.json", "e2_c.json"],
        &["--text"],
    );
    assert_eq!(stdout(&o).trim(), "e_{(1,1)}((1,0,1),(0,1,1))");
}

#[test]
fn product_with_identity_is_canonical_input() {
    let x = run_files("product", &["e11_ab.json", "one_n2_m3.json"], &[]);
    let y = run_files("product", &["one_n2_m3.json", "e11_ab.json"], &[]);
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(stdout(&x), stdout(&y));
    let back = run_files(
        "product",
        &["e11_ab.json", "one_n2_m3.json"],
        &["--text"],
    );
    assert_eq!(stdout(&back).trim(), "e_{(1,1)}((1,0,0),(0,1,0))");
}

#[test]
fn ambient_mismatch_exits_2() {
    let o = run_files("product", &["e11_ab.json", "e2_c_n3.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn unreadable_input_exits_3() {
    let o = run(&["expand", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run_files("expand", &["e11_ab_times_e2_c.golden.json", "e21_ab.json"], &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn rewrite_reproduces_three_term_example() {
    let o = run_files("rewrite", &["e21_ab.json"], &["--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "E[2;(1,0)]*E[1;(0,1)] - E[1;(1,0)]*E[1;(1,1)] + E[1;(2,1)]"
    );
    let o = run_files("rewrite", &["e21_ab.json"], &[]);
    assert_eq!(stdout(&o), golden("e21_ab_rewrite.golden.json"));
}

#[test]
fn rewrite_zero_and_check() {
    let o = run_files("rewrite", &["zero.json"], &["--text"]);
    assert_eq!(stdout(&o).trim(), "0");
    for f in [
        "e21_ab.json",
        "zero.json",
        "mixed_q.json",
        "inf_f2.json",
        "e11_ab_times_e2_c.golden.json",
    ] {
        let o = run_files("rewrite", &[f], &["--check", "--text"]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(stdout(&o).ends_with("check: PASS\n"), "{f}");
    }
}

#[test]
fn expand_example() {
    let o = run_files("expand", &["e21_ab.json"], &["--text"]);
    assert_eq!(
        stdout(&o).trim(),
        "x1(1)*x1(2)*x2(3) + x1(1)*x1(3)*x2(2) + x1(2)*x1(3)*x2(1)"
    );
}

#[test]
fn relations_single_verified() {
    let o = run(&["relations", "--n", "1", "--m", "2", "--max-degree", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relations"].as_array().unwrap().len(), 1);
    assert_eq!(
        v["relations"][0]["poly"]["text"],
        "E[1;(0,1)]*E[1;(1,0)] - E[1;(1,1)]"
    );
    let manifest = &v["manifest"][0];
    assert_eq!(manifest["multidegree"], serde_json::json!([1, 1]));
    assert_eq!(manifest["count"], 1);
    assert_eq!(manifest["verified"], true);
}

#[test]
fn relations_empty_below_weight() {
    let o = run(&["relations", "--n", "3", "--m", "1", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["relations"].as_array().unwrap().is_empty());
}

#[test]
fn bad_arguments_exit_3() {
    for args in [
        &[
            "relations",
            "--n",
            "1",
            "--max-degree",
            "1,1",
            "--ring",
            "R",
        ][..],
        &["relations", "--n", "1", "--max-degree", "1,x"],
        &["relations", "--n", "1", "--m", "3", "--max-degree", "1,1"],
        &[
            "verify",
            "--n",
            "2",
            "--m",
            "2",
            "--max-total-degree",
            "4",
            "--ring",
            "Zmod:4",
        ],
        &["bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(3), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_at_small_bounds() {
    for ring in ["Z", "Zmod:2"] {
        let o = run(&[
            "verify",
            "--n",
            "2",
            "--m",
            "2",
            "--max-total-degree",
            "4",
            "--ring",
            ring,
        ]);
        assert_eq!(o.status.code(), Some(0), "{ring}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let props = v.as_array().unwrap();
        assert_eq!(props.len(), 4);
        assert!(props
            .iter()
            .all(|p| p["passed"] == true && p["cases"].as_u64() > Some(0)));
    }
}

#[test]
fn verify_refuses_large_n() {
    let o = run(&["verify", "--n", "5", "--m", "2", "--max-total-degree", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n <= 4"));
}

#[test]
fn basis_counts_match_listing() {
    let o = run(&["basis", "--n", "2", "--m", "2", "--max-total-degree", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v.as_array().unwrap() {
        assert_eq!(
            c["count"].as_u64().unwrap() as usize,
            c["elements"].as_array().unwrap().len()
        );
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&[
        "relations",
        "--n",
        "2",
        "--max-degree",
        "2,2",
        "--ring",
        "Q",
    ]);
    let b = run(&[
        "relations",
        "--n",
        "2",
        "--max-degree",
        "2,2",
        "--ring",
        "Q",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
