use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffheights")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data(&format!("golden/{name}"))).unwrap()
}

#[test]
fn height_matches_golden_file() {
    let out = run(&["height", &data("e3.json"), &data("p.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("e3_height.json"));
}

#[test]
fn height_by_every_method_and_oracle() {
    for m in ["closed_form", "multiply_in", "intersection_correction"] {
        let (code, v) = json(&["height", &data("em3.json"), &data("em3_points.json"), "--method", m]);
        assert_eq!(code, 0);
        assert_eq!(v[0]["hhat"], "1/2", "{m}");
        assert_eq!(v[1]["hhat"], "1/8", "{m}");
    }
    let (_, v) = json(&["height", &data("e3.json"), &data("p.json"), "--oracle", "4"]);
    let oracle: Vec<&str> = v["oracle"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(oracle, vec!["1/2"; 5]);
}

#[test]
fn local_heights_agree() {
    let (code, v) = json(&["local-heights", &data("em3.json"), &data("em3_points.json")]);
    assert_eq!(code, 0);
    let row = &v[0]["rows"][0];
    assert_eq!(row["type"], "I3*");
    assert_eq!(row["component"], "alpha");
    assert_eq!(row["values"].as_array().unwrap().len(), 3);
    assert_eq!(v[1]["rows"][0]["component"], "beta");
    assert_eq!(v[1]["rows"][0]["values"][2]["lambda"], "-1/8");
}

#[test]
fn analyze_text_is_stable() {
    let out = run(&["analyze", &data("e3.json")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("e3_analyze.txt"));
    let (code, v) = json(&["analyze", &data("isotrivial.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["minimal_discriminant_degree"], 12);
    assert_eq!(v["curve"]["isotrivial"], true);
}

#[test]
fn output_is_byte_identical_across_runs_and_seeds() {
    let args = ["analyze", &data("legendre_sextic.json"), "--json"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "12345"]);
    assert_eq!(run(&seeded).stdout, a);
}

#[test]
fn fiber_table_i3_star() {
    let out = run(&["fiber-table", "--type", "IStar", "--M", "3", "--json"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("fiber_i3star.json"));
    let (_, v) = json(&["fiber-table", "--type", "IStar", "--M", "3"]);
    assert_eq!(v["det"], "-4");
    let (_, v) = json(&["fiber-table", "--type", "I", "--M", "5"]);
    assert_eq!(v["det"], "5");
    let (code, _) = json(&["fiber-table", "--type", "I", "--M", "0"]);
    assert_eq!(code, 0);
}

#[test]
fn inequality_stated_and_refined() {
    let (code, v) = json(&["inequality", "--alpha", "1", "--beta", "1", "--e", "2,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], false);
    assert_eq!(v["refined_holds"], true);
    assert_eq!(v["lhs_cubed"], "27");
    assert_eq!(v["refined_rhs_cubed"], "27");
}

#[test]
fn lehmer_check_reports() {
    let (code, v) = json(&["lehmer-check", &data("e3.json"), &data("e3_points.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], "1/378000");
    assert_eq!(v["points"][2]["excluded"], true);
    let (code, v) = json(&["lehmer-check", &data("legendre.json"), &data("legendre_torsion.json")]);
    assert_eq!(code, 0);
    assert!(v["points"].as_array().unwrap().iter().all(|p| p["excluded"] == true));
    let (code, v) = json(&["lehmer-check", &data("isotrivial_split.json"), &data("empty.json"), "--isotrivial"]);
    assert_eq!(code, 0);
    assert_eq!(v["split"], true);
}

#[test]
fn optimizer_reports_are_marked_approximate() {
    let (code, v) = json(&["optimize-constant", "--grid", "200", "--J", "1", "--D", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["approx"], true);
    assert!(v["value"].as_f64().unwrap() > 9.5e-5);
}

#[test]
fn count_small_rank_two() {
    let (code, v) = json(&[
        "count-small",
        &data("legendre_sextic.json"),
        &data("legendre_sextic_gens.json"),
        "--B",
        "1",
        "--torsion",
        &data("legendre_sextic_torsion.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 84);
    assert_eq!(v["gram"][0][0], "5/36");
    let (code, v) = json(&[
        "count-small",
        &data("legendre_sextic.json"),
        &data("legendre_sextic_gens.json"),
        "--delta",
        "1/10",
        "--eps",
        "1/10",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["within_bound"], true);
    assert_eq!(v["theorem2"]["approx"], true);
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["analyze".to_string(), data("singular.json")],
        vec!["analyze".to_string(), data("malformed.json")],
        vec!["analyze".to_string(), data("no-such-file.json")],
        vec!["lehmer-check".to_string(), data("isotrivial.json"), data("empty.json")],
        vec!["height".to_string(), data("e3.json"), data("p.json"), "--method".into(), "nope".into()],
        vec!["height".to_string(), data("e1.json"), data("p.json")],
        vec!["fiber-table".to_string(), "--type".into(), "V".into()],
        vec!["inequality".to_string(), "--alpha".into(), "1".into(), "--beta".into(), "1".into(), "--e".into(), "1,2".into()],
        vec!["count-small".to_string(), data("e3.json"), data("p.json")],
        vec!["bogus".to_string()],
    ] {
        let out = run(&args.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
