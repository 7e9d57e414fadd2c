use std::process::Command;

use cyclozeta::cli::run;

fn ok(args: &[&str]) -> String {
    let mut full = vec!["cyclozeta"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn fails(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["cyclozeta"];
    full.extend_from_slice(args);
    let out = run(full);
    assert_ne!(out.code, 0, "{args:?} unexpectedly succeeded");
    (out.code, out.stdout, out.stderr)
}

#[test]
fn balpha_example_text() {
    let out = ok(&["balpha", "--q", "2", "--f", "u^2+u+1", "--n", "1..6"]);
    assert_eq!(
        out,
        "B^alpha_1 = 1\nB^alpha_2 = 1\nB^alpha_3 = (T^4+T+1)\nB^alpha_4 = 1\n\
         B^alpha_5 = (T^4+T^3+1)(T^4+T^3+T^2+T+1)\nB^alpha_6 = (T^4+T+1)^2\n"
    );
}

#[test]
fn factor_over_f3_and_f4() {
    assert_eq!(ok(&["factor", "--q", "3", "T^6+T^4+T^2+1"]), "(T^2+1)(T^2+T+2)(T^2+2T+2)\n");
    assert_eq!(ok(&["factor", "--q", "4", "T^2+T+1"]), "(T+y)(T+y+1)\n");
    assert_eq!(ok(&["factor", "--p", "2", "--field-modulus", "y^2+y+1", "T^2+T+1"]), "(T+y)(T+y+1)\n");
}

#[test]
fn bn_and_zetabar() {
    assert_eq!(ok(&["bn", "--q", "3", "--n", "5"]), "B_5(u) = 1 + (2T^3+T)*u\nB_5 = 2T^3+T+1\n");
    assert_eq!(
        ok(&["zetabar", "--q", "3", "--m", "T^2+1"]),
        "Zbar^(minus)_{T^2+1}(u) = u^2+1\nZbar^(plus)_{T^2+1}(u) = 1\n"
    );
}

#[test]
fn criterion_json_shape() {
    let out = ok(&["criterion", "--q", "3", "--f", "u^2+1", "--m", "T^2+1", "--part", "minus", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let r = &v[0];
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["q", "field_modulus", "f", "m", "part", "verdict", "witness_n", "reduced_zeta", "elapsed_ms"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(r["verdict"], true);
    assert_eq!(r["witness_n"], 5);
    assert_eq!(r["reduced_zeta"], serde_json::json!([1, 0, 1]));
    assert_eq!(r["elapsed_ms"], serde_json::Value::Null);
}

#[test]
fn timing_fills_elapsed() {
    let out = ok(&["criterion", "--q", "3", "--f", "u^2+1", "--m", "T^2+1", "--part", "minus", "--json", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v[0]["elapsed_ms"].is_u64());
}

#[test]
fn survey_output_is_identical_across_worker_counts() {
    let base = ["survey", "--q", "3", "--f", "u^2+1", "--dmax", "2", "--json"];
    let one = ok(&[&base[..], &["--jobs", "1"]].concat());
    let four = ok(&[&base[..], &["--jobs", "4"]].concat());
    let default = ok(&base);
    assert_eq!(one, four);
    assert_eq!(one, default);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&one).unwrap();
    let hits: Vec<&str> = rows.iter().filter(|r| r["verdict"] == true).map(|r| r["m"].as_str().unwrap()).collect();
    assert_eq!(hits, ["T^2+1", "T^2+T+2", "T^2+2T+2"]);
}

#[test]
fn survey_text_table() {
    let out = ok(&["survey", "--q", "2", "--f", "u^2+u+1", "--dmax", "3", "--part", "plus"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("m "));
    assert!(lines[1..].iter().all(|l| l.contains(" false ")));
}

#[test]
fn search_reports_modulus_and_witness() {
    let out = ok(&["search", "--q", "2", "--f", "u^2+u+1", "--d", "2", "--part", "plus", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["m"], "T^4+T^3+1");
    assert_eq!(v["b"], 5);
    assert_eq!(v["report"]["verdict"], true);
    let text = ok(&["search", "--q", "2", "--f", "u^2+u+1", "--d", "2", "--part", "plus"]);
    assert!(text.ends_with("m = T^4+T^3+1, b = 5\n"));
}

#[test]
fn verify_paper_passes() {
    let out = ok(&["verify-paper"]);
    assert!(out.ends_with("all golden checks pass\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn validation_errors_exit_2() {
    let (code, _, err) = fails(&["bn", "--q", "6", "--n", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("prime power"));
    let (code, _, _) = fails(&["balpha", "--q", "2", "--f", "u^2+1", "--n", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = fails(&["factor", "--p", "2", "--field-modulus", "y^2+1", "T"]);
    assert_eq!(code, 2);
    let (code, _, _) = fails(&["search", "--q", "2", "--f", "u^2+u+1", "--d", "2", "--part", "minus"]);
    assert_eq!(code, 2);
    let (code, _, _) = fails(&["bn", "--q", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = fails(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn capacity_errors_exit_3_with_json_body() {
    let (code, out, _) = fails(&["zetabar", "--q", "2", "--m", "T^4+T+1", "--cap", "10", "--json"]);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["exit_code"], 3);
    let (code, _, err) = fails(&["search", "--q", "5", "--f", "u^2+2", "--d", "2", "--part", "minus"]);
    assert_eq!(code, 3);
    assert!(err.contains("T^10+2T^6+T^2+2"));
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_cyclozeta");
    let good = Command::new(bin).args(["factor", "--q", "2", "T^8+T^2+1"]).output().unwrap();
    assert!(good.status.success());
    assert_eq!(String::from_utf8(good.stdout).unwrap(), "(T^4+T+1)^2\n");
    let bad = Command::new(bin).args(["bn", "--q", "6", "--n", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
