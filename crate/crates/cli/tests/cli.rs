use std::process::Command;

use serde_json::Value;

fn linrank(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_linrank"))
        .args(args)
        .env_remove(linrank_cli::BUDGET_ENV)
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn json(args: &[&str]) -> (Value, i32) {
    let (body, code) = linrank(args);
    (serde_json::from_str(&body).expect("output is JSON"), code)
}

#[test]
fn frobenius_is_bijective_on_f8() {
    let (v, code) = json(&["rank", "--field", "p=2 s=1 n=3", "--poly", "f=[0,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["mu"], 0);
    assert_eq!(v["rank"], 3);
}

#[test]
fn x_plus_frobenius_has_kernel_f2() {
    let (v, _) = json(&["rank", "--field", "p=2 s=1 n=3", "--poly", "f=[1,1]", "--verify", "brute"]);
    assert_eq!((v["mu"].as_u64(), v["rank"].as_u64()), (Some(1), Some(2)));
    assert_eq!(v["det_chain"], serde_json::json!(["0", "1"]));
    assert_eq!(v["verify"]["agrees"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(linrank(&["rank", "--poly", "f=[1]"]).1, 2);
    assert_eq!(linrank(&["rank", "--field", "p=2 s=1 n=3", "--poly", "f=[1,"]).1, 2);
    assert_eq!(linrank(&["rank", "--field", "p=2 s=1 n=3", "--poly", "f=[9]"]).1, 1);
    assert_eq!(linrank(&["bogus"]).1, 2);
    assert_eq!(linrank(&["--help"]).1, 0);
    let (v, code) = json(&["field", "--field", "p=4 s=1 n=1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotPrime");
}

#[test]
fn parse_errors_carry_location() {
    let (v, code) = json(&["field", "--field", "p=2 t=1 n=3"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "ParseError");
    assert_eq!(v["error"]["position"], 4);
    assert_eq!(v["error"]["token"], "t=1");
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["weights", "--field", "p=3 s=1 n=3", "--poly", "f=[4,1,7]"],
        vec!["mrd-search", "--q", "2", "--threads", "3"],
        vec!["selftest", "--seed", "9"],
        vec!["dickson-chain", "--field", "p=2 s=1 n=5", "--poly", "f=[3,1,4,1,5] stride=2", "--pretty"],
    ];
    for args in runs {
        let first = linrank(&args);
        assert_eq!(first, linrank(&args), "{args:?}");
    }
}

#[test]
fn element_encodings_round_trip() {
    let (field, _) = json(&["field", "--field", "p=3 s=1 n=2"]);
    let order = field["order"].as_u64().unwrap();
    let (v, _) = json(&["kernel", "--field", "p=3 s=1 n=2", "--poly", "f=[2,1]", "--elements"]);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len() as u64, 3u64.pow(v["dim"].as_u64().unwrap() as u32));
    for e in elements {
        let value: u64 = e.as_str().unwrap().parse().unwrap();
        assert!(value < order);
        let spec = format!("f=[{value}]");
        // every reported element is accepted back as a coefficient
        assert_eq!(linrank(&["kernel", "--field", "p=3 s=1 n=2", "--poly", &spec]).1, 0);
    }
}

#[test]
fn subres_chain_pair_and_padded() {
    let (v, _) = json(&["subres-chain", "--field", "p=2 s=1 n=2", "--poly", "f=[1,1]", "--poly", "g=[1,0,1]"]);
    assert_eq!(v["mu"], 1);
    assert_eq!(v["sizes"], serde_json::json!([3, 1]));
    let (v, _) = json(&["subres-chain", "--field", "p=2 s=1 n=3", "--poly", "f=[1,1,1]"]);
    assert_eq!(v["mu"], 2);
    assert_eq!(v["sizes"], serde_json::json!([5, 3, 1]));
}

#[test]
fn scattered_reports_witness() {
    let (v, _) = json(&["scattered", "--field", "p=2 s=1 n=4", "--poly", "f=[0,1]"]);
    assert_eq!(v["scattered"], true);
    assert_eq!(v["direction_count"], 15);
    assert!(v["witness"].is_null());
    let (v, _) = json(&["scattered", "--field", "p=2 s=1 n=4", "--poly", "f=[0,0,1]"]);
    assert_eq!(v["scattered"], false);
    assert_eq!(v["direction_count"], 5);
    assert!(v["witness"]["weight"].as_u64().unwrap() >= 2);
}

#[test]
fn mrd_search_hits_have_rank_at_most_five() {
    let (v, code) = json(&["mrd-search", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["searched"], 511);
    assert!(v["count"].as_u64().unwrap() > 0);
    for hit in v["hits"].as_array().unwrap() {
        assert!(hit["rank"].as_u64().unwrap() <= 5);
        assert_eq!(hit["rank"], hit["brute_rank"]);
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("linrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let (stdout, code) = linrank(&["field", "--field", "p=2 s=1 n=2", "--output", path.to_str().unwrap()]);
    assert_eq!((stdout.as_str(), code), ("", 0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 1]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_linrank"))
        .args(["weights", "--field", "p=2 s=1 n=4", "--poly", "f=[0,1]"])
        .env(linrank_cli::BUDGET_ENV, "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("SizeBudgetExceeded"));
}

#[test]
fn verify_never_disagrees() {
    for seed in 0..40u64 {
        let coeffs: Vec<String> = (0..4).map(|i| ((seed * 7 + i * 13) % 16).to_string()).collect();
        let spec = format!("f=[{}]", coeffs.join(","));
        let (v, code) = json(&["rank", "--field", "p=2 s=1 n=4", "--poly", &spec, "--verify", "brute"]);
        assert_eq!(code, 0, "{spec}");
        assert_eq!(v["verify"]["agrees"], true);
    }
}
