use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spancalc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn scratch(name: &str, contents: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spancalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents.to_string()).unwrap();
    p
}

#[test]
fn enumerate_examples() {
    let v = json_out(&run(&["enumerate", "sigma", "3"]));
    assert_eq!((v["count"].as_u64(), v["flagged"].as_u64()), (Some(10), Some(7)));
    let v = json_out(&run(&["enumerate", "theta", "0"]));
    assert_eq!(v["count"], 1);
    let v = json_out(&run(&["enumerate", "nerve", "2"]));
    let c = &v["counts"];
    assert_eq!([&c["(0,0)"], &c["(1,0)"], &c["(2,0)"], &c["(1,1)"]], [3, 4, 1, 1]);
    assert_eq!(v["simplices"]["(1,1)"].as_array().unwrap().len(), 1);
}

#[test]
fn enumerate_matches_golden_tables() {
    for (args, file) in [
        (["enumerate", "nerve", "2"], "nerve_2.csv"),
        (["enumerate", "sigma", "3"], "sigma_3.csv"),
        (["enumerate", "theta", "2"], "theta_2.csv"),
        (["enumerate", "path", "3"], "path_3.csv"),
    ] {
        let mut a = args.to_vec();
        a.extend(["--format", "csv"]);
        assert_eq!(stdout(&run(&a)), golden(file), "{file}");
    }
}

#[test]
fn enumerate_rejects_large_levels() {
    let o = run(&["enumerate", "nerve", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["enumerate", "sigma", "4", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "bound_exceeded");
}

#[test]
fn compose_matrix_example() {
    let o = run_stdin(&["compose", "-"], r#"{"first": [[2],[3]], "second": [[1,4]]}"#);
    let v = json_out(&o);
    assert_eq!(v["dims"], json!([[2, 8], [3, 12]]));
    assert_eq!(v["witness"]["triple_intersection"].as_array().unwrap().len(), 4);
}

#[test]
fn compose_two_files() {
    let a = scratch("a.json", &json!([[1, 0], [2, 1]]));
    let b = scratch("b.json", &json!([[3], [1]]));
    let v = json_out(&run(&["compose", a.to_str().unwrap(), b.to_str().unwrap()]));
    assert_eq!(v["dims"], json!([[3], [7]]));
}

#[test]
fn compose_with_identity_span_echoes_the_input() {
    let s = json!({ "feet": [["x0", "x1"], ["y0"]], "apex": ["a", "b", "c"], "left_map": ["x0", "x1", "x1"], "right_map": ["y0", "y0", "y0"] });
    let id = json!({ "feet": [["y0"], ["y0"]], "apex": ["y0"], "left_map": ["y0"], "right_map": ["y0"] });
    let v =
        json_out(&run_stdin(&["compose", "--kind", "spans", "-"], &json!({ "first": s, "second": id }).to_string()));
    let result = &v["result"];
    assert_eq!(result["feet"], s["feet"]);
    assert_eq!(result["left_map"], s["left_map"]);
    let unit = v["witness"]["right_unit"].as_array().unwrap();
    let originals: Vec<&Value> = unit.iter().map(|p| &p[1]).collect();
    assert_eq!(originals, [&json!("a"), &json!("b"), &json!("c")]);
}

#[test]
fn compose_horizontal_over_points() {
    let v =
        json_out(&run_stdin(&["compose", "--kind", "horizontal", "-"], r#"{"first": [[2, 1]], "second": [[3], [5]]}"#));
    // composed apexes are products, payloads multiply pointwise
    let dims: Vec<usize> = v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize))
        .collect();
    let mut nonzero: Vec<usize> = dims.into_iter().filter(|&d| d > 0).collect();
    nonzero.sort();
    assert_eq!(nonzero, [3, 5, 6, 10]);
}

#[test]
fn compose_errors() {
    let o = run_stdin(&["compose", "-"], "{not json");
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    let o = run_stdin(&["compose", "-"], r#"{"first": [[1, 2]], "second": [[1, 2]]}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["compose", "--kind", "spans", "-"], r#"{"first": 3}"#);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_reproducible() {
    let a = run(&["verify", "all", "--seed", "7"]);
    let b = run(&["verify", "all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_crw_with_n() {
    let v = json_out(&run(&["verify", "crw", "--n", "3"]));
    let props = v["properties"].as_array().unwrap();
    assert!(props.iter().all(|p| p["passed"] == true));
    assert!(props.iter().any(|p| p["property"] == "critical_locus_cohomology"));
}

#[test]
fn verify_rejects_bad_input() {
    assert_eq!(run(&["verify", "lattices"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nerve", "--bound", "9"]).status.code(), Some(2));
}

#[test]
fn crw_intro_b_cohomology() {
    let o = run(&["crw", "intro", "--n", "2", "--format", "csv"]);
    assert!(o.status.success());
    let rows: Vec<Vec<usize>> =
        stdout(&o).lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    let even: Vec<usize> = rows.iter().map(|r| r[1]).collect();
    assert_eq!(&even[..3], [1, 1, 0]);
    assert!(rows.iter().all(|r| r[2] == 0));
    let v = json_out(&run(&["crw", "intro", "--n", "3"]));
    assert_eq!(v["report"]["a_d_squared_zero"], true);
    assert_eq!(v["report"]["a_d_dtheta"], "1/4*x^3");
}

#[test]
fn crw_intersect_point_with_itself() {
    let input =
        json!({ "generators": [{ "name": "x", "parity": "even", "weight": 1 }], "first": ["x"], "second": ["x"] });
    let v = json_out(&run_stdin(&["crw", "intersect", "-"], &input.to_string()));
    let names: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["x", "ε"]);
    assert_eq!(v["generators"][1]["parity"], "odd");
    // the result feeds straight back into `crw cohomology`
    let o = run_stdin(&["crw", "cohomology", "-", "--bound", "2"], &v.to_string());
    assert_eq!(stdout(&o), "weight,even_dim,odd_dim\n0,1,0\n1,0,1\n2,0,0\n");
}

#[test]
fn crw_rejects_inhomogeneous_equations_with_a_hint() {
    let input = json!({
        "generators": [{ "name": "x", "parity": "even", "weight": 1 }, { "name": "y", "parity": "even", "weight": 1 }],
        "first": ["y - x^2"],
        "second": ["y"],
    });
    let o = run_stdin(&["crw", "intersect", "-"], &input.to_string());
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "not_homogeneous");
    assert!(err["error"]["message"].as_str().unwrap().contains("x=1, y=2"));
}

#[test]
fn crw_cohomology_with_zero_differential_echoes_dimensions() {
    let input = json!({
        "generators": [{ "name": "x", "parity": "even", "weight": 1 }, { "name": "e", "parity": "odd", "weight": 2 }],
    });
    let o = run_stdin(&["crw", "cohomology", "-", "--bound", "3"], &input.to_string());
    assert_eq!(stdout(&o), "weight,even_dim,odd_dim\n0,1,0\n1,1,0\n2,1,1\n3,1,1\n");
    let bad = json!({ "generators": [{ "name": "x", "parity": "even", "weight": 1 }], "differential": { "z": "x" } });
    assert_eq!(run_stdin(&["crw", "cohomology", "-"], &bad.to_string()).status.code(), Some(2));
}

#[test]
fn rationals_are_strings() {
    let input =
        json!({ "generators": [{ "name": "x", "parity": "even", "weight": 1 }], "first": [], "second": ["2/3*x"] });
    let o = run_stdin(&["crw", "intersect", "-"], &input.to_string());
    let v = json_out(&o);
    assert_eq!(v["differential"]["ε"], "2/3*x");
}

#[test]
fn out_flag_and_root_variable() {
    let dir = std::env::temp_dir().join(format!("spancalc-root-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("m.json"), r#"{"first": [[1]], "second": [[4]]}"#).unwrap();
    let out = dir.join("result.json");
    let o =
        bin().args(["compose", "m.json", "--out", out.to_str().unwrap()]).env("SPANCALC_ROOT", &dir).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["dims"], json!([[4]]));
}
