use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["ffcount"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ffcount::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "ffcount/1");
    v
}

#[test]
fn count_i_example() {
    let v = json(&["count-i", "--q", "3", "--n", "5", "--t1", "0", "--t2", "0", "--method", "closed"]);
    assert_eq!(v["value"], 4);
    let b = json(&["count-i", "--q", "3", "--n", "5", "--method", "brute"]);
    assert_eq!(b["value"], 4);
}

#[test]
fn lpoly_of_c1_by_every_method() {
    for m in ["brute", "closed", "corollary"] {
        let v = json(&["lpoly", "--q", "3", "--curve", "c1", "--method", m]);
        assert_eq!(v["lpoly"], serde_json::json!([1, 6, 18, 36, 54, 54, 27]), "{m}");
        assert_eq!(v["genus"], 3);
        assert_eq!(v["class"], "supersingular");
    }
}

#[test]
fn classify_named_and_raw() {
    assert_eq!(json(&["classify", "--q", "3", "--curve", "c2", "--method", "brute"])["supersingular"], false);
    let v = json(&["classify", "--q", "3", "--coeffs", "1,0,3"]);
    assert_eq!(v["supersingular"], true);
    assert_eq!(v["weil"]["pass"], true);
    // c_2 must be q c_0
    let (code, _, _) = run(&["classify", "--q", "3", "--coeffs", "1,6,9"]);
    assert_eq!(code, 1);
}

#[test]
fn curve_counts_agree_across_methods() {
    for n in ["1", "2", "5", "6"] {
        let a = json(&["curve", "--q", "3", "--n", n, "--method", "brute"]);
        let b = json(&["curve", "--q", "3", "--n", n, "--method", "closed"]);
        let c = json(&["curve", "--q", "3", "--n", n, "--method", "corollary"]);
        assert_eq!(a["count"], b["count"]);
        assert_eq!(a["count"], c["count"]);
    }
    assert_eq!(json(&["curve", "--q", "3", "--n", "1"])["count"], 10);
}

#[test]
fn qform_profile() {
    let v = json(&["qform", "--q", "3", "--n", "6"]);
    assert_eq!(v["w"], 2);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["case"], "2p");
    let b = json(&["qform", "--q", "3", "--n", "6", "--method", "brute"]);
    assert_eq!(v["N"], b["N"]);
    let c = json(&["qform", "--q", "5", "--n", "3", "--value", "2"]);
    let d = json(&["qform", "--q", "5", "--n", "3", "--value", "2", "--method", "brute"]);
    assert_eq!(c["count"], d["count"]);
}

#[test]
fn count_f_targets() {
    let a = json(&["count-f", "--q", "3", "--n", "6"]);
    assert_eq!(a["value"], 99);
    let b = json(&["count-f", "--q", "5", "--n", "4", "--t1", "2", "--t2", "3", "--method", "brute"]);
    let c = json(&["count-f", "--q", "5", "--n", "4", "--t1", "2", "--t2", "3", "--method", "closed"]);
    assert_eq!(b["value"], c["value"]);
    let t = json(&["count-f", "--q", "3", "--n", "6", "--t3", "0", "--method", "brute"]);
    assert_eq!(t["value"], 33);
    assert_eq!(json(&["count-f", "--q", "3", "--n", "6", "--t3", "0"])["value"], 33);
}

#[test]
fn field_and_trace() {
    let f = json(&["field", "--q", "3", "--n", "2"]);
    assert_eq!(f["spec"]["relModulus"], serde_json::json!([1, 0, 1]));
    let t = json(&["trace", "--q", "3", "--n", "2", "--elem", "0,1"]);
    assert_eq!((t["t1"].as_u64(), t["t2"].as_u64()), (Some(0), Some(1)));
    assert_eq!(t["index"], 3);
}

#[test]
fn field_spec_override() {
    let spec = r#"{"base":{"p":3,"r":1,"modulus":[0,1]},"n":2,"relModulus":[2,2,1]}"#;
    let f = json(&["field", "--field-spec", spec]);
    assert_eq!(f["spec"]["relModulus"], serde_json::json!([2, 2, 1]));
    let a = json(&["count-f", "--q", "3", "--n", "2", "--t1", "1", "--method", "brute", "--field-spec", spec]);
    let b = json(&["count-f", "--q", "3", "--n", "2", "--t1", "1", "--method", "brute"]);
    assert_eq!(a["value"], b["value"]);
    let (code, _, err) = run(&["field", "--q", "5", "--field-spec", spec]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = run(&["field", "--field-spec", r#"{"base":{"p":3,"r":1,"modulus":[0,1]},"n":2,"relModulus":[2,0,1]}"#]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    let (code, _, err) = run(&["count-f", "--q", "3", "--n", "2", "--bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("Usage"), "{err}");
    assert_eq!(run(&["nosuch"]).0, 1);
    assert_eq!(run(&["count-i", "--q", "6", "--n", "3"]).0, 1);
    let (code, _, err) = run(&["count-f", "--q", "3", "--n", "12", "--method", "brute", "--budget", "1000"]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn output_is_byte_identical() {
    let args = ["lpoly", "--q", "5", "--curve", "c1", "--method", "corollary"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn table_format_and_out_file() {
    let (code, out, _) = run(&["count-i", "--q", "3", "--n", "6", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("value") && l.ends_with("15")), "{out}");
    let path = std::env::temp_dir().join(format!("ffcount-out-{}.json", std::process::id()));
    let (code, out, _) = run(&["count-i", "--q", "3", "--n", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["value"], 15);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_small_grid() {
    let (code, out, err) = run(&["verify", "--grid", "q=3", "--budget", "20000", "--samples", "300"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "ffcount/1");
    assert_eq!(v["pass"], true);
    assert!(v.get("timing").is_none());
    let errata = v["errata"].as_array().unwrap();
    assert!(errata.iter().any(|e| e["formula"] == "excess"));
    assert!(errata.iter().any(|e| e["formula"] == "corollary" && e["inputs"]["q"] == 9));
}

#[test]
fn binary_reads_budget_from_environment() {
    let bin = env!("CARGO_BIN_EXE_ffcount");
    let out = Command::new(bin)
        .args(["count-f", "--q", "3", "--n", "9", "--method", "brute"])
        .env("FFCOUNT_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["count-f", "--q", "3", "--n", "9", "--method", "brute"])
        .env("FFCOUNT_BUDGET", "100000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 2187);
}
