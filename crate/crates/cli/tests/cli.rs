use std::path::Path;
use std::process::{Command, Output};

use reflection_harmonics::factorisation::FactorisationReport;
use reflection_harmonics::weyl::CountingReport;
use serde_json::{json, Value};

fn rharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rharm")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = rharm(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn int(n: i64) -> Value {
    json!({"order": 1, "coeffs": [n.to_string()]})
}

/// Indices of reflections whose eigenvalue or hyperplane satisfies `keep`.
fn reflections_where(group: &Value, keep: impl Fn(&Value, &Value) -> bool) -> String {
    let hyperplanes = group["hyperplanes"].as_array().unwrap();
    group["reflections"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| keep(r, &hyperplanes[r["hyperplane"].as_u64().unwrap() as usize]))
        .map(|r| r["index"].to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn cyclic_group_summary() {
    let g = ok_json(&["group", "--catalog", "cyclic:6"]);
    assert_eq!(g["order"], 6);
    assert_eq!(g["degrees"], json!([6]));
    assert_eq!(g["pi"], json!({"space": "S(V*)", "vars": 1, "terms": [{"exp": [5], "coeff": int(1)}]}));
    assert_eq!(g["poincare"], json!([1, 1, 1, 1, 1, 1]));
}

#[test]
fn b2_group_summary() {
    let g = ok_json(&["group", "--catalog", "weyl:B:2"]);
    assert_eq!(g["order"], 8);
    assert_eq!(g["degrees"], json!([2, 4]));
    assert_eq!(g["num_reflections"], 4);
}

#[test]
fn text_format() {
    let out = rharm(&["group", "--catalog", "weyl:B:2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Pi = X^3Y - XY^3"), "{text}");
    assert!(text.contains("degrees 2, 4"));
}

#[test]
fn generators_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("swap.json");
    let m = json!({"generators": [[[int(0), int(1)], [int(1), int(0)]]]});
    std::fs::write(&path, m.to_string()).unwrap();
    let g = ok_json(&["group", "--generators", path.to_str().unwrap()]);
    assert_eq!(g["name"], "swap");
    assert_eq!(g["order"], 2);
    assert_eq!(g["degrees"], json!([1, 2]));

    let path = dir.path().join("named.json");
    std::fs::write(&path, r#"{"catalog": "gmpn:3:1:2"}"#).unwrap();
    assert_eq!(ok_json(&["group", "--generators", path.to_str().unwrap()])["order"], 18);
}

#[test]
fn non_reflection_group_has_no_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rot.json");
    let m = json!({"generators": [[[int(0), int(-1)], [int(1), int(0)]]]});
    std::fs::write(&path, m.to_string()).unwrap();
    let g = ok_json(&["group", "--generators", path.to_str().unwrap()]);
    assert_eq!(g["order"], 4);
    assert_eq!(g["degrees"], Value::Null);
    let out = rharm(&["harmonics", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(rharm(&["group", "--catalog", "weyl:E:8"]).status.code(), Some(1));
    assert_eq!(rharm(&["group"]).status.code(), Some(1));
    assert_eq!(rharm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rharm(&["group", "--generators", "/nonexistent/file.json"]).status.code(), Some(1));
    let out = rharm(&["factorise", "--catalog", "weyl:B:2", "--subgroup-reflections", "17"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(rharm(&["count", "C2:nonsense"]).status.code(), Some(1));
    assert_eq!(rharm(&["--help"]).status.code(), Some(0));
}

#[test]
fn caps_exit_two() {
    assert_eq!(rharm(&["group", "--catalog", "weyl:B:4", "--max-order", "50"]).status.code(), Some(2));
    assert_eq!(rharm(&["harmonics", "--catalog", "weyl:B:3", "--max-degree", "5"]).status.code(), Some(2));
}

#[test]
fn harmonics_both_methods_agree() {
    let a = ok_json(&["harmonics", "--catalog", "gmpn:3:1:2", "--method", "perp"]);
    let b = ok_json(&["harmonics", "--catalog", "gmpn:3:1:2", "--method", "derivative"]);
    assert_eq!(a["basis"], b["basis"]);
    assert_eq!(a["poincare"], json!([1, 2, 3, 3, 3, 3, 2, 1]));
}

#[test]
fn factorise_b2_over_sign_changes() {
    let g = ok_json(&["group", "--catalog", "weyl:B:2"]);
    let axes = reflections_where(&g, |_, h| h["linear_form"]["terms"].as_array().unwrap().len() == 1);
    let out = rharm(&["factorise", "--catalog", "weyl:B:2", "--subgroup-reflections", &axes]);
    assert_eq!(out.status.code(), Some(0));
    let report: FactorisationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.bijective && report.poincare_equal);
    assert_eq!(serde_json::to_value(&report.poincare_lhs).unwrap(), json!([1, 2, 2, 2, 1]));
    assert_eq!(serde_json::to_value(&report.fixed_poincare).unwrap(), json!([1, 0, 1]));
}

#[test]
fn factorise_mu12_over_mu4() {
    let g = ok_json(&["group", "--catalog", "cyclic:12"]);
    let zeta4 = json!({"order": 12, "coeffs": ["0", "0", "0", "1"]});
    let refl = reflections_where(&g, |r, _| r["eigenvalue"] == zeta4);
    let out = rharm(&["factorise", "--catalog", "cyclic:12", "--subgroup-reflections", &refl]);
    assert_eq!(out.status.code(), Some(0));
    let report: FactorisationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.bijective);
    assert_eq!(report.fixed_dim, 3);
}

#[test]
fn factorise_whole_group() {
    let all: Vec<String> = (0..4).map(|i| i.to_string()).collect();
    let v = ok_json(&["factorise", "--catalog", "weyl:B:2", "--subgroup-reflections", &all.join(",")]);
    assert_eq!(v["bijective"], true);
    assert_eq!(v["fixed_poincare"], json!([1]));
}

#[test]
fn fake_degrees_with_subgroup() {
    let v = ok_json(&["fake-degrees", "--catalog", "weyl:B:2", "--subgroup-reflections", "0"]);
    assert_eq!(v["table"]["degrees"].as_array().unwrap().len(), 5);
    assert_eq!(v["fixed_points"]["agree"], true);
    assert_eq!(v["fixed_points"]["fixed_space"], json!([1, 1, 1, 1]));
}

#[test]
fn count_presets() {
    let v = ok_json(&["count", "C2:long-A1A1"]);
    assert_eq!(v, json!({"N": 4, "Nprime": 2, "C_order": 2, "polynomial": [0, 0, 0, 0, 1]}));
    assert_eq!(ok_json(&["count", "C2:full"])["polynomial"], json!([1]));
    let v = ok_json(&["count", "C3:A1C2"]);
    assert_eq!((v["N"].as_u64(), v["Nprime"].as_u64()), (Some(9), Some(5)));
    let total: i64 = v["polynomial"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).sum();
    assert_eq!(total, 3);
}

#[test]
fn count_from_file_and_twist() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("sub.json");
    std::fs::write(&sub, r#"{"datum": "C2", "seeds": [[2, 0], [0, 2]]}"#).unwrap();
    let split = ok_json(&["count", sub.to_str().unwrap()]);
    let twist = dir.path().join("twist.json");
    std::fs::write(&twist, json!({"F0": [[int(1), int(0)], [int(0), int(1)]]}).to_string()).unwrap();
    let twisted = ok_json(&["count", sub.to_str().unwrap(), "--twist", twist.to_str().unwrap()]);
    assert_eq!(twisted["polynomial"], split["polynomial"]);
    assert_eq!(twisted["twist"]["f_classes"].as_array().unwrap().len(), 2);
    let report: CountingReport = serde_json::from_value(twisted).unwrap();
    assert_eq!(report.c_order, 2);

    std::fs::write(&twist, json!({"F0": [[int(1), int(1)], [int(0), int(1)]]}).to_string()).unwrap();
    let out = rharm(&["count", sub.to_str().unwrap(), "--twist", twist.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = rharm(&["fake-degrees", "--catalog", "gmpn:4:2:2", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    let v: Value = serde_json::from_slice(&read(&a)).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["table"]["degrees"], json!([1, 1, 1, 1, 1, 1, 1, 1, 2, 2]));
}
