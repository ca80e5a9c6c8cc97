use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trisym")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trisym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_exit_codes() {
    for (f, code) in [
        ("sphere3.lts.json", 0),
        ("u2.sla.json", 0),
        ("so3.la.json", 0),
        ("u2_o2.pair.json", 0),
        ("broken.lts.json", 1),
        ("broken.sla.json", 1),
        ("broken-jacobi.la.json", 1),
    ] {
        let out = run(&["check", &fixture(f)]);
        assert_eq!(out.status.code(), Some(code), "{f}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["ok"], code == 0);
    }
    let broken = json(&run(&["check", &fixture("broken.lts.json")]));
    assert!(broken["axioms"]["witness"]["indices"].is_array());
}

#[test]
fn input_errors_exit_with_2() {
    let garbage = scratch("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(run(&["check", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    let bad_index = scratch("bad-index.json");
    std::fs::write(
        &bad_index,
        r#"{"kind": "lts", "name": "x", "mode": "rational", "dim": 1, "bracket": [[0, 0, 0, 5, "1"]]}"#,
    )
    .unwrap();
    assert_eq!(run(&["check", bad_index.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["period"]).status.code(), Some(2));
    assert_eq!(run(&["embed", &fixture("u2_o2.pair.json")]).status.code(), Some(2));
}

#[test]
fn embed_reports_and_writes_the_algebra() {
    let out_path = scratch("s3.sla.json");
    let out = run(&["embed", &fixture("sphere3.lts.json"), "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["h_dim"], 3);
    assert_eq!(r["s_dim"], 6);
    assert_eq!(r["m_block_roundtrip"], true);
    assert_eq!(run(&["check", out_path.to_str().unwrap()]).status.code(), Some(0));

    let r = json(&run(&["embed", &fixture("abelian3.lts.json")]));
    assert_eq!(r["h_dim"], 0);
    assert_eq!(r["s_dim"], 3);
    let r = json(&run(&["embed", &fixture("u2-minus.lts.json")]));
    assert_eq!(r["center"]["coincides_with_embedded_center"], true);
    assert_eq!(r["center"]["report"], "center of S(m) coincides with z(m)");
    assert_eq!(run(&["embed", &fixture("broken.lts.json")]).status.code(), Some(1));
}

#[test]
fn period_examples() {
    let r = json(&run(&["period", &fixture("u2_o2.pair.json"), "--tmax", "10"]));
    assert!((r["generator"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-8);
    assert_eq!(r["verdict"], "discrete");
    assert!(r["lattice"]["caveat"].is_string());
    let r = json(&run(&["period", &fixture("u2_plus.pair.json"), "--tmax", "10"]));
    assert!((r["generator"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-8);
    let r = json(&run(&["period", "--subgroup", "1,1.41421356237", "--epsilon", "1e-6"]));
    assert_eq!(r["verdict"], "non_discrete_witness");
    let r = json(&run(&["period", "--subgroup", "1/2,1/3", "--exact"]));
    assert_eq!(r["verdict"], "discrete");
    assert_eq!(r["discreteness"]["lattice_basis"][0][0], "1/6");
    let r = json(&run(&["period", &fixture("gl2_o2.pair.json")]));
    assert_eq!(r["verdict"], "inconclusive");
    // a direction outside the center
    let out = run(&["period", &fixture("u2_o2.pair.json"), "--direction", "0,1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn center_quotient_product() {
    let r = json(&run(&["center", &fixture("u3-minus.lts.json")]));
    assert_eq!(r["center"]["dim"], 1);
    let out = run(&["center", &fixture("u2-minus.lts.json"), "--grid", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["grid"]["center_dim"], 2);
    let r = json(&run(&["center", &fixture("u2.sla.json")]));
    assert_eq!(r["lie_center"]["dim"], 1);

    // u(2)₋ in the basis i00, i11, s01: the center is spanned by (1, 1, 0)
    let out = run(&["quotient", &fixture("u2-minus.lts.json"), "--ideal", "1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["quotient_dim"], 2);
    let out = run(&["quotient", &fixture("sphere3.lts.json"), "--ideal", "1,0,0"]);
    assert_eq!(out.status.code(), Some(1));

    let prod = scratch("prod.lts.json");
    let out = run(&["product", &fixture("sphere2.lts.json"), &fixture("u2-minus.lts.json"), "--out", prod.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["center_dims"], serde_json::json!([0, 1, 1]));
    assert_eq!(run(&["check", prod.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn pair_commands_and_text_output() {
    let r = json(&run(&["pair-exp", &fixture("u2_o2.pair.json"), "--x", "0,1,1,0", "--t", "3.141592653589793"]));
    assert_eq!(r["is_base_point"], true);
    let out = run(&["geodesic", &fixture("so3_so2.pair.json"), "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["translation_residual"].as_f64().unwrap() < 1e-8);
    let out = run(&["--text", "geodesic", &fixture("u2_o2.pair.json"), "--velocity", "0,1,-1,0.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: geodesic\nok: true\n"), "{text}");
    // same seed, same report
    let a = run(&["geodesic", &fixture("u2_o2.pair.json")]).stdout;
    let b = run(&["geodesic", &fixture("u2_o2.pair.json"), "--seed", "42"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn demos() {
    let out = run(&["quotient-demo"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"], "non_discrete_witness");
    assert_eq!(r["rational_control"]["verdict"], "discrete");
    assert_eq!(r["zero_ideal_control"]["verdict"], "discrete");
    let out = run(&["loop-demo"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["grids"].as_array().unwrap().len(), 3);
}
