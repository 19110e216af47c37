use std::fs;
use std::path::{Path, PathBuf};

use mahler_cli::{run_command, EXIT_CHECK, EXIT_INPUT, EXIT_OK};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mahler").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn square(dir: &Path) -> PathBuf {
    write(
        dir,
        "square.json",
        r#"{"vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}"#,
    )
}

fn hexagon(dir: &Path) -> PathBuf {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    write(
        dir,
        "hexagon.json",
        &format!(
            r#"{{"vertices": [[{h}, {h}], [0, 1], [-{h}, {h}], [-{h}, -{h}], [0, -1], [{h}, -{h}]]}}"#
        ),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn vp_of_the_square_in_exact_mode() {
    let dir = TempDir::new().unwrap();
    let sq = square(dir.path());
    let r = run(&["vp", s(&sq), "--exact"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), "V=4 V*=2 P=8");
    let r = run(&["vp", s(&sq)]);
    assert_eq!(r.stdout.trim(), "V=4 V*=2 P=8");
}

#[test]
fn float_output_has_twelve_significant_digits() {
    let dir = TempDir::new().unwrap();
    let r = run(&["vp", s(&hexagon(dir.path()))]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.trim().ends_with("P=8.82842712475"), "{}", r.stdout);
}

#[test]
fn exact_polar_prints_fractions() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "rect.json",
        r#"{"vertices": [["2", "1/3"], ["-2", "1/3"], ["-2", "-1/3"], ["2", "-1/3"]]}"#,
    );
    let r = run(&["polar", s(&p)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(
        r.stdout.contains(r#""1/2""#) && r.stdout.contains(r#""3""#),
        "{}",
        r.stdout
    );
    let r = run(&["vp", s(&p)]);
    assert_eq!(r.stdout.trim(), "V=8/3 V*=3 P=8");
}

#[test]
fn reduce_writes_a_trace() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("out");
    let r = run(&[
        "reduce",
        s(&hexagon(dir.path())),
        "--trace",
        s(&trace),
        "--svg",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(
        r.stdout.contains("products: 8.82842712475 8\n"),
        "{}",
        r.stdout
    );
    assert!(trace.join("certificate.json").exists());
    let frames = fs::read_dir(&trace)
        .unwrap()
        .filter(|e| {
            let name = e.as_ref().unwrap().file_name();
            let name = name.to_str().unwrap().to_owned();
            name.starts_with("frame_") && name.ends_with(".json")
        })
        .count();
    assert_eq!(frames, 2);
    assert!(trace.join("frame_001.svg").exists());

    let cert = trace.join("certificate.json");
    let r = run(&["verify", "--certificate", s(&cert)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
}

#[test]
fn tampered_certificate_fails_the_check() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("out");
    run(&["reduce", s(&hexagon(dir.path())), "--trace", s(&trace)]);
    let path = trace.join("certificate.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    doc["steps"][0]["product_after"] = serde_json::json!(9.5);
    fs::write(&path, doc.to_string()).unwrap();
    let r = run(&["verify", "--certificate", s(&path)]);
    assert_eq!(r.code, EXIT_CHECK, "{}", r.stderr);
}

#[test]
fn corpus_verify_passes() {
    let r = run(&["verify", "--count", "100", "--pairs", "5", "--seed", "7"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let summary: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert!(summary["min_product"].as_f64().unwrap() >= 8.0 - 1e-6);
    assert!(summary["failures"].as_array().unwrap().is_empty());
}

#[test]
fn corpus_summaries_are_reproducible() {
    let args = [
        "verify",
        "--count",
        "50",
        "--pairs",
        "3",
        "--max-pairs",
        "12",
        "--seed",
        "9",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn approx_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("disk.csv");
    let r = run(&[
        "approx",
        "--body",
        "disk",
        "--m",
        "8,16,32",
        "--out",
        s(&csv),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("m,hausdorff_proxy,product,radial_gap,bound_rhs")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn approx_rejects_unknown_bodies_and_bad_lists() {
    assert_eq!(
        run(&["approx", "--body", "blob", "--m", "8"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        run(&["approx", "--body", "disk", "--m", "16,8"]).code,
        EXIT_INPUT
    );
}

#[test]
fn hausdorff_square_to_diamond() {
    let dir = TempDir::new().unwrap();
    let d = write(
        dir.path(),
        "diamond.json",
        r#"{"vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}"#,
    );
    let r = run(&["hausdorff", s(&square(dir.path())), s(&d)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    // support functions differ most along the diagonals: √2 - 1/√2
    let v: f64 = r.stdout.trim().parse().unwrap();
    assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
}

#[test]
fn lemma33_table() {
    let r = run(&["lemma33", "--x0", "0.6", "--grid", "25"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout.lines().filter(|l| !l.starts_with('#')).count(), 26);
    assert_eq!(run(&["lemma33", "--x0", "1.5"]).code, EXIT_INPUT);
}

#[test]
fn render_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let sq = square(dir.path());
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    assert_eq!(run(&["render", s(&sq), s(&a), "--polar"]).code, EXIT_OK);
    assert_eq!(run(&["render", s(&sq), s(&b), "--polar"]).code, EXIT_OK);
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("<path").count(), 2);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["vp", "/nonexistent.json"]).code, EXIT_INPUT);
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"vertices": [[1, 0], [0.1, 0.1], [0, 1], [-1, 0], [-0.1, -0.1], [0, -1]]}"#,
    );
    let r = run(&["vp", s(&bad)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("error:"));
    let odd = write(
        dir.path(),
        "odd.json",
        r#"{"vertices": [[1, 0], [0, 1], [-1, 0]]}"#,
    );
    assert_eq!(run(&["polar", s(&odd)]).code, EXIT_INPUT);
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(run(&["verify", "--count", "0"]).code, EXIT_INPUT);
}

#[test]
fn help_exits_cleanly() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("reduce"));
}
