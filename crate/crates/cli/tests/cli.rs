use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn duursma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duursma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn corpus_file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name].iter().collect();
    path.to_string_lossy().into_owned()
}

#[test]
fn eisenstein_closed_plain() {
    let out = duursma(&["eisenstein", "--ell", "8", "--method", "closed", "--format", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x0^8 + 14 x0^4 x1^4 + x1^8\n");
}

#[test]
fn eisenstein_average_zero() {
    let out = duursma(&["eisenstein", "--ell", "6", "--method", "average"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ZERO\n");
}

#[test]
fn eisenstein_methods_agree() {
    for format in ["plain", "latex", "json"] {
        let a = duursma(&["eisenstein", "--ell", "12", "--method", "average", "--format", format]);
        let b = duursma(&["eisenstein", "--ell", "12", "--method", "closed", "--format", format]);
        let strip = |s: String| s.replace("\"average\"", "").replace("\"closed\"", "");
        assert_eq!(strip(stdout(&a)), strip(stdout(&b)), "{format}");
    }
}

#[test]
fn eisenstein_closed_rejects_bad_degree() {
    assert_eq!(duursma(&["eisenstein", "--ell", "6", "--method", "closed"]).status.code(), Some(2));
    assert_eq!(duursma(&["eisenstein", "--ell", "0"]).status.code(), Some(2));
}

#[test]
fn zeta_examples() {
    let closed = duursma(&["zeta", "--ell", "8", "--method", "closed"]);
    assert_eq!(stdout(&closed), "1/5 + 2/5 T + 2/5 T^2\n");
    let hamming = corpus_file("hamming8.json");
    let linsys = duursma(&["zeta", "--input", &hamming, "--q", "2", "--method", "linsys"]);
    assert_eq!(stdout(&linsys), stdout(&closed));
    let expanded = duursma(&["zeta", "--ell", "12", "--method", "expanded", "--format", "latex"]);
    assert_eq!(
        stdout(&expanded),
        "-\\frac{1}{15}-\\frac{2 T}{15}-\\frac{2 T^2}{15}+\\frac{4 T^4}{15}+\\frac{8 T^5}{15}+\\frac{8 T^6}{15}\n"
    );
}

#[test]
fn zeta_json_report() {
    let out = duursma(&["zeta", "--ell", "8", "--format", "json", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1/5", "2/5", "2/5"]));
    assert_eq!(v["rha"]["structural"], true);
    assert_eq!(v["interlace_with_next"], true);
    assert_eq!(v["valuations"]["5"], -1);
}

#[test]
fn zeta_usage_errors() {
    let hamming = corpus_file("hamming8.json");
    // closed form needs a degree
    assert_eq!(duursma(&["zeta", "--input", &hamming, "--method", "closed"]).status.code(), Some(2));
    // --ell and --input are exclusive
    assert_eq!(duursma(&["zeta", "--ell", "8", "--input", &hamming]).status.code(), Some(2));
    assert_eq!(duursma(&["zeta"]).status.code(), Some(2));
    assert_eq!(duursma(&["zeta", "--ell", "8", "--q", "1"]).status.code(), Some(2));
    assert_eq!(duursma(&["zeta", "--ell", "8", "--q", "x"]).status.code(), Some(2));
}

#[test]
fn zeta_rational_q_from_input() {
    let golay = corpus_file("golay24.json");
    let out = duursma(&["zeta", "--input", &golay, "--q", "3/2", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn table_outputs() {
    let zeta = duursma(&["table", "--which", "zeta", "--format", "latex"]);
    let text = stdout(&zeta);
    assert!(text.contains("$8$ & $\\frac{1}{5}+\\frac{2 T}{5}+\\frac{2 T^2}{5}$\\\\\\hline\n"));
    assert!(text.contains(
        "$12$ & $-\\frac{1}{15}-\\frac{2 T}{15}-\\frac{2 T^2}{15}+\\frac{4 T^4}{15}+\\frac{8 T^5}{15}+\\frac{8 T^6}{15}$\\\\\n"
    ));
    let eis = duursma(&["table", "--which", "eisenstein", "--format", "plain"]);
    let text = stdout(&eis);
    assert!(text.starts_with(" 8 | x0^8 + 14 x0^4 x1^4 + x1^8\n12 | x0^12 - 33 x0^8 x1^4 - 33 x0^4 x1^8 + x1^12\n"));
    assert!(text.contains("x_2^8"));
    let latex = stdout(&duursma(&["table", "--which", "eisenstein"]));
    assert!(latex.contains("$8$ & $x_0^8+14 x_0^4 x_1^4+x_1^8$"));
    assert_eq!(duursma(&["table", "--which", "lattice"]).status.code(), Some(2));
}

#[test]
fn subcommands_json() {
    for args in [
        &["rha", "--ell", "16", "--format", "json"][..],
        &["interlace", "--ell", "12", "--format", "json"],
        &["pintegral", "--p", "11", "--format", "json"],
        &["theta", "--ell", "8", "--order", "20", "--format", "json"],
    ] {
        let out = duursma(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&out.stdout).expect("json output");
    }
}

#[test]
fn rha_fails_off_circle() {
    let hamming = corpus_file("hamming8.json");
    let out = duursma(&["rha", "--input", &hamming, "--q", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pintegral_exclusion_and_usage() {
    let out = duursma(&["pintegral", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("EXPECTED-EXCLUSION"));
    assert_eq!(duursma(&["pintegral", "--p", "9"]).status.code(), Some(2));
}

#[test]
fn theta_e8_prefix() {
    let out = duursma(&["theta", "--ell", "8", "--order", "12"]);
    assert!(stdout(&out).starts_with("1 + 240 u^4 + 2160 u^8 + 6720 u^12 + O(u^13)\n"));
}

#[test]
fn verify_small_with_exclusions() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = duursma(&[
        "verify",
        "--max-ell",
        "16",
        "--max-prime",
        "5",
        "--theta-order",
        "20",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["overall"], true);
    let excluded: Vec<_> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "EXPECTED-EXCLUSION")
        .map(|e| (e["check"].as_str().unwrap().to_owned(), e["parameters"]["p"].as_u64().unwrap()))
        .collect();
    assert_eq!(
        excluded,
        vec![
            ("zeta_p_integral".to_owned(), 5),
            ("enumerator_p_integral".to_owned(), 3),
            ("lemma_unit".to_owned(), 5)
        ]
    );
}

#[test]
fn verify_corrupted_corpus() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(corpus_file("phi_8.json"), dir.path().join("phi_8.json")).unwrap();
    fs::write(dir.path().join("broken.json"), "{\"degree\": 4, \"coefficients\": [\"1\", \"x\"]}").unwrap();
    let report = dir.path().join("report.json");
    let out = duursma(&[
        "verify",
        "--max-ell",
        "12",
        "--max-prime",
        "7",
        "--theta-order",
        "10",
        "--corpus",
        dir.path().to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = fs::read_to_string(&report).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["overall"], false);
    let bad = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["parameters"]["file"] == "broken.json")
        .unwrap();
    assert_eq!(bad["status"], "FAIL");
    assert!(bad["witness"]["error"].as_str().unwrap().starts_with("schema error"));
}

#[test]
fn verify_missing_corpus_dir() {
    let out = duursma(&["verify", "--corpus", "/nonexistent/corpus"]);
    assert_eq!(out.status.code(), Some(2));
}
