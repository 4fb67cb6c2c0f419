use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(file: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sorpfix"))
        .arg("--input")
        .arg(file)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn loops_greatest_closed() {
    let out = run(&data("loops_tropical.json"), &["--fixpoint", "greatest", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["solution"], json!({"Xa": "inf", "Xb": "20", "Xc": "0"}));
    assert_eq!(doc["method"], "closed");
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"solution":{"Xa":"inf","Xb":"20","Xc":"0"},"method":"closed"}"#
    );
}

#[test]
fn loops_least_closed() {
    let out = run(&data("loops_tropical.json"), &["--fixpoint", "least", "--method", "closed"]);
    assert_eq!(json_of(&out)["solution"], json!({"Xa": "inf", "Xb": "inf", "Xc": "inf"}));
}

#[test]
fn loops_greatest_kleene_does_not_converge() {
    let out = run(
        &data("loops_tropical.json"),
        &["--fixpoint", "greatest", "--method", "kleene", "--max-steps", "50"],
    );
    assert_eq!(out.status.code(), Some(3));
    let doc = json_of(&out);
    assert_eq!(doc["solution"], json!({"Xa": "50", "Xb": "20", "Xc": "0"}));
    assert_eq!(doc["steps"], 50);
    assert_eq!(doc["converged"], false);
}

#[test]
fn loops_least_kleene_converges() {
    let out = run(
        &data("loops_tropical.json"),
        &["--fixpoint", "least", "--method", "kleene", "--max-steps", "5"],
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["solution"], json!({"Xa": "inf", "Xb": "inf", "Xc": "inf"}));
    assert_eq!(doc["converged"], true);
}

#[test]
fn symbolic_matches_closed_byte_for_byte() {
    for file in ["loops_tropical.json", "logic_sorp.json", "reach_minmax.json"] {
        for fixpoint in ["least", "greatest"] {
            let solution = |method| {
                let doc = json_of(&run(&data(file), &["--fixpoint", fixpoint, "--method", method]));
                serde_json::to_string(&doc["solution"]).unwrap()
            };
            assert_eq!(solution("closed"), solution("symbolic"), "{file} {fixpoint}");
        }
    }
}

#[test]
fn logic_system_over_polynomials() {
    let out = run(&data("logic_sorp.json"), &["--fixpoint", "greatest", "--method", "symbolic"]);
    let x = "a^inf*b^inf";
    assert_eq!(json_of(&out)["solution"], json!({"X1": x, "X2": x, "X3": x}));
}

#[test]
fn verify_with_brute_force() {
    for (fixpoint, expected) in [("least", json!({"X": "low", "Y": "low"})), ("greatest", json!({"X": "mid", "Y": "mid"}))] {
        let out = run(&data("reach_minmax.json"), &["--fixpoint", fixpoint, "--method", "closed", "--verify"]);
        assert_eq!(out.status.code(), Some(0));
        let doc = json_of(&out);
        assert_eq!(doc["solution"], expected);
        assert_eq!(doc["verified"], true);
        assert_eq!(doc["verdicts"], json!({"brute_force": true}));
    }
}

#[test]
fn verify_with_derivation_trees() {
    for fixpoint in ["least", "greatest"] {
        let out = run(&data("loops_tropical.json"), &["--fixpoint", fixpoint, "--method", "symbolic", "--verify"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json_of(&out)["verdicts"], json!({"fixed_point": true, "derivation_trees": true}));
    }
}

#[test]
fn unconverged_kleene_reports_no_verdict() {
    let out = run(
        &data("loops_tropical.json"),
        &["--fixpoint", "greatest", "--method", "kleene", "--max-steps", "3", "--verify"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(json_of(&out).get("verified").is_none());
}

#[test]
fn infinite_exponents_only_for_symbolic() {
    let file = data("star_viterbi.json");
    let out = run(&file, &["--fixpoint", "greatest", "--method", "symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["solution"], json!({"X": "1/3"}));

    let out = run(&file, &["--fixpoint", "greatest", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("equations.X[0]: exponent of \"X\" is inf"));

    let out = run(&file, &["--fixpoint", "greatest", "--method", "symbolic", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_coefficient_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("loops_tropical.json")).unwrap().replace(r#""20""#, r#""inf""#);
    let file = dir.path().join("bad.json");
    std::fs::write(&file, text).unwrap();
    let out = run(&file, &["--fixpoint", "greatest", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("equations.Xb[1]: coefficient is the semiring zero"), "{stderr}");
    assert!(out.stdout.is_empty());
}

#[test]
fn syntax_error_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{\n  \"semiring\": \"tropical\",\n  \"indeterminates\": [,]\n}").unwrap();
    let out = run(&file, &["--fixpoint", "least", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn empty_system() {
    let out = run(&data("empty.json"), &["--fixpoint", "least", "--method", "closed", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["solution"], json!({}));
    assert_eq!(doc["verified"], true);
}

#[test]
fn flag_combinations() {
    let file = data("loops_tropical.json");
    for args in [
        &["--fixpoint", "least", "--method", "kleene"][..],
        &["--fixpoint", "least", "--method", "closed", "--max-steps", "4"][..],
        &["--fixpoint", "lowest", "--method", "closed"][..],
        &["--method", "closed"][..],
    ] {
        assert_eq!(run(&file, args).status.code(), Some(2), "{args:?}");
    }
    let missing = data("does-not-exist.json");
    assert_eq!(run(&missing, &["--fixpoint", "least", "--method", "closed"]).status.code(), Some(2));
}

#[test]
fn text_output() {
    let out = run(
        &data("loops_tropical.json"),
        &["--fixpoint", "greatest", "--method", "closed", "--output", "text", "--verify"],
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "Xa = inf\nXb = 20\nXc = 0\nmethod: closed\nverified: true\n  fixed_point: ok\n  derivation_trees: ok\n"
    );
}
