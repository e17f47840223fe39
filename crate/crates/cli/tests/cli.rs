use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_implodekit"))
        .args(args)
        .env_remove("IMPLODEKIT_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn su3_strata() {
    let out = run(&["strata", "--group", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["group"], "SU(3)");
    let strata = v["strata"].as_array().unwrap();
    assert_eq!(strata.len(), 4);
    let mut dims: Vec<u64> = strata.iter().map(|s| s["real_dim"].as_u64().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, vec![0, 6, 6, 10]);
    let singular: Vec<&Value> = strata
        .iter()
        .filter(|s| s["smoothness"]["class"] == "singular")
        .collect();
    assert_eq!(singular.len(), 1);
    assert_eq!(singular[0]["face"]["vanishing"], serde_json::json!([0, 1]));
}

#[test]
fn geometry_suite_passes() {
    let out = run(&[
        "verify", "--suite", "geometry", "--group", "A1", "--seed", "42", "--count", "200",
        "--tolerance", "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["seed"], 42);
        assert_eq!(c["count"], 200);
        assert_eq!(c["pass"], true, "{c}");
    }
}

#[test]
fn tensor_of_standard_and_dual() {
    let out = run(&["quantize", "--tensor", "1,0 x 0,1", "--group", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["decomposition"],
        serde_json::json!([{"weight": [0, 0], "mult": 1}, {"weight": [1, 1], "mult": 1}])
    );
    let text = run(&["quantize", "--tensor", "1,0 x 0,1", "--group", "A2", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&text.stdout).trim(), "{(0,0):1,(1,1):1}");
}

#[test]
fn verify_reports_are_byte_identical() {
    for suite in ["geometry", "contact", "embedding", "quadric", "hilbert"] {
        let args = ["verify", "--suite", suite, "--group", "A2", "--seed", "7", "--count", "30"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{suite}");
        assert_eq!(a.stdout, b.stdout, "{suite}");
    }
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_implodekit"))
        .args(["verify", "--suite", "quadric", "--group", "A2", "--count", "5"])
        .env("IMPLODEKIT_SEED", "1234")
        .output()
        .unwrap();
    assert_eq!(json(&out)["checks"][0]["seed"], 1234);
}

#[test]
fn failing_check_exits_one_and_still_reports() {
    let out = run(&["verify", "--suite", "geometry", "--group", "A2", "--count", "20", "--tolerance", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["strata", "--group", "Q7"],
        vec!["strata", "--group", "/nonexistent/datum.json"],
        vec!["verify", "--suite", "geometry", "--group", "B2"],
        vec!["verify", "--suite", "nope", "--group", "A2"],
        vec!["verify", "--suite", "geometry", "--group", "A2", "--count", "0"],
        vec!["verify", "--suite", "geometry", "--group", "A2", "--tolerance", "-1"],
        vec!["quantize", "--tensor", "1,0 x -1,0", "--group", "A2"],
        vec!["quantize", "--tensor", "1 x 1", "--group", "A2"],
        vec!["cut-polytope", "--group", "A1", "--points", "0;1", "--lambda0", "-1"],
        vec!["no-such-command"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("implodekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("strata.json");
    let out = run(&["strata", "--group", "A1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["strata"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn custom_datum_file() {
    let dir = std::env::temp_dir().join(format!("implodekit-datum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("so3.json");
    std::fs::write(
        &path,
        r#"{"name": "my SO(3)", "cartan": [[2]], "coroot_coords": [[1]], "weight_coords": [[1]], "central_rank": 0}"#,
    )
    .unwrap();
    let out = run(&["smooth-locus", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["group"], "my SO(3)");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn so3_and_u2() {
    let v = json(&run(&["smooth-locus", "--group", "SO3"]));
    let vertex = &v["faces"][1];
    assert_eq!(vertex["face"]["vanishing"], serde_json::json!([0]));
    assert_eq!(vertex["smoothness"], serde_json::json!({"class": "orbifold-only", "value": 2}));
    let u2 = json(&run(&["strata", "--group", "U2"]));
    let mut dims: Vec<u64> = u2["strata"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["real_dim"].as_u64().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![2, 6]);
}

#[test]
fn implosion_equivalence() {
    // diag(i, -i, 1) lies in [K_λ, K_λ] exactly when the first simple root vanishes
    let h = r#"[[[0,1],[0,0],[0,0]],[[0,0],[0,-1],[0,0]],[[0,0],[0,0],[1,0]]]"#;
    let same = json(&run(&["equivalent", "--group", "A2", "--lambda", "0,1", "--k1", "identity", "--k2", h]));
    assert_eq!(same["equivalent"], true);
    let apart = json(&run(&["equivalent", "--group", "A2", "--lambda", "1,1", "--k1", "identity", "--k2", h]));
    assert_eq!(apart["equivalent"], false);
    let not_unitary = r#"[[[2,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]"#;
    let bad = run(&["equivalent", "--group", "A2", "--lambda", "0,1", "--k1", "identity", "--k2", not_unitary]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn implode_quantize_matches_lr() {
    let v = json(&run(&["implode-quantize", "--group", "A2", "--orbits", "1,1; 2,0"]));
    assert_eq!(v["lr_agrees"], true);
    let total: i64 = v["n_invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["mult"].as_i64().unwrap())
        .sum();
    assert_eq!(total, 4);
}

#[test]
fn cut_and_embed_and_faces() {
    let cut = json(&run(&["cut-polytope", "--group", "A1", "--points", "0;1;2;3", "--lambda0", "1"]));
    assert_eq!(cut["points"], serde_json::json!([["1"], ["2"], ["3"]]));
    let wall = json(&run(&[
        "cut-polytope", "--group", "A2", "--points", "1,0; 1,1/2; 2,0", "--lambda0", "1,0", "--face", "1",
    ]));
    assert_eq!(wall["points"], serde_json::json!([["1", "0"], ["2", "0"]]));

    let e = json(&run(&["embed", "--group", "A1", "--lambda", "2"]));
    let norm = e["norm"].as_f64().unwrap();
    assert!((norm * norm - 2.0 / std::f64::consts::PI).abs() < 1e-11);

    let f = json(&run(&["faces", "--group", "A2"]));
    assert_eq!(f["faces"].as_array().unwrap().len(), 4);
    let d = json(&run(&["describe-group", "--group", "G2"]));
    assert_eq!(d["weyl_group_order"], 12);
    assert_eq!(d["dim"], 14);
}
