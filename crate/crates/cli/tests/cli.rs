use std::process::{Command, Output};

fn qlam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlam")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qbinom_prints_canonical_literal() {
    let o = qlam(&["qbinom", "--n", "4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + q + 2*q^2 + q^3 + q^4\n");
    assert_eq!(stdout(&qlam(&["qbinom", "--n", "3", "--k", "0"])), "1\n");
}

#[test]
fn qbinom_out_of_range_is_usage_error() {
    assert_eq!(qlam(&["qbinom", "--n", "2", "--k", "3"]).status.code(), Some(2));
    assert_eq!(qlam(&["qbinom", "--n", "two", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn verify_lambda_passes() {
    let o = qlam(&["verify", "--suite", "lambda", "--max-k", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = v[0]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true && !c["anchor"].as_str().unwrap().is_empty()));
}

#[test]
fn verify_cartier_lists_weights() {
    let o = qlam(&["verify", "--suite", "cartier", "--p", "2", "--max-weight", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("H^1(12) rank 1"), "{text}");
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(qlam(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qlam(&["verify", "--suite", "cartier", "--p", "5"]).status.code(), Some(2));
}

#[test]
fn cohomology_at_q_one() {
    let o = qlam(&["cohomology", "--vars", "1", "--max-weight", "5", "--coeff", "Z-q1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let h1: Vec<(String, Vec<String>)> = rows
        .iter()
        .filter(|r| r["degree"] == 1)
        .map(|r| {
            let w = r["weight"][0].as_str().unwrap().to_string();
            let d = r["divisors"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
            (w, d)
        })
        .collect();
    for (w, d) in &h1 {
        let n: u32 = w.parse().unwrap();
        let want: Vec<String> = if n >= 2 { vec![n.to_string()] } else { vec![] };
        assert_eq!(d, &want, "weight {n}");
    }
    assert_eq!(h1.len(), 6);
    let h0_weight0 = rows.iter().find(|r| r["degree"] == 0 && r["weight"][0] == "0").unwrap();
    assert_eq!(h0_weight0["divisors"], serde_json::json!(["0"]));
}

#[test]
fn cohomology_over_f3() {
    let o = qlam(&["cohomology", "--vars", "1", "--max-weight", "3", "--coeff", "Fq", "--p", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("weight,degree,divisors,coeff_ring\n"));
    assert!(text.contains("2,1,1 + q,Fq(p=3)"), "{text}");
    assert!(text.contains("3,1,1 + q + q^2,Fq(p=3)"), "{text}");
}

#[test]
fn unsupported_coefficients_are_usage_errors() {
    assert_eq!(qlam(&["cohomology", "--coeff", "Zzeta", "--p", "5"]).status.code(), Some(2));
    assert_eq!(qlam(&["cohomology", "--coeff", "Zp"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_file_output_matches() {
    let dir = std::env::temp_dir().join(format!("qlam-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lattice.json");
    let args = ["lattice", "--p", "2", "--depth", "2", "--max-weight", "3"];
    let a = qlam(&args);
    let b = qlam(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(qlam(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reduce_modulo_truncation() {
    let o = qlam(&["reduce", "q^5 + 4*x1", "--trunc", "2^2,(q-1)^2"]);
    assert_eq!(stdout(&o), "q\n");
}
