use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfcut")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = run(&all);
    (serde_json::from_str(&stdout(&out)).unwrap(), out.status.code().unwrap())
}

#[test]
fn counts_cuts_of_the_punctured_square() {
    let out = run(&["cuts", "--count", &data("d4p1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "4");
}

#[test]
fn annulus_homology() {
    let out = run(&["homology", "--degree", "1", &data("annulus11.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "H_1: rank 1, torsion none");
    for complex in ["reduced", "unreduced", "cw"] {
        let (v, _) = machine(&["homology", "--complex", complex, &data("annulus11.json")]);
        assert_eq!(v["rank"], 1);
    }
}

#[test]
fn non_cut_grading_is_an_input_error() {
    let out = run(&["gldim", &data("d4p1_not_a_cut.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an admissible cut"));
}

#[test]
fn gldim_report() {
    let (v, code) = machine(&["gldim", &data("d4p1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["gldim_le_2"], true);
    assert_eq!(v["arcs"].as_array().unwrap().len(), 4);
    assert_eq!(v["arcs"][0]["shape"], "Simple");
}

#[test]
fn torus_without_cuts_is_negative() {
    let (v, code) = machine(&["cuts", &data("torus_without_cuts.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["count"], 0);
    assert_eq!(v["cut_exists"], false);
}

#[test]
fn compare_verdicts() {
    let (v, code) = machine(&["compare", &data("d4p1.json"), &data("d4p1_second_cut.json"), "--flips", "r1,r1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "equivalent");
    let (v, code) = machine(&["compare", &data("annulus21_first.json"), &data("annulus21_second.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "inequivalent-under-certificate");
    assert_eq!(v["class"], serde_json::json!([1]));
    let out = run(&["compare", &data("d4p1.json"), &data("annulus11.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flip_round_trip_through_documents() {
    let out = run(&["flip", &data("d4p1.json"), "--arc", "r1"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("surfcut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let flipped = dir.join("flipped.json");
    std::fs::write(&flipped, out.stdout).unwrap();
    let (v, code) = machine(&["validate", flipped.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["degree_one"], true);
    // a graded flip of a cut need not be a cut, and compare requires cuts
    let (_, code) = machine(&["compare", &data("d4p1.json"), flipped.to_str().unwrap(), "--flips", "r1"]);
    assert_eq!(code, 2);
    let out = run(&["flip", flipped.to_str().unwrap(), "--arc", "r1"]);
    let back = dir.join("back.json");
    std::fs::write(&back, out.stdout).unwrap();
    // flipping back gives an equivalent grading, not the same one
    let (v, code) = machine(&["isomorphic", &data("d4p1.json"), back.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["isomorphism"]["r1"], "r1");
}

#[test]
fn invariant_reads_the_document_curve() {
    let (v, code) = machine(&["invariant", &data("annulus11.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 0);
}

#[test]
fn isomorphism_certificate_from_search() {
    let (v, code) = machine(&["isomorphic", &data("d4p1.json"), &data("d4p1_second_cut.json")]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("surfcut-cli-iso-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("iso.json");
    std::fs::write(&cert, v["isomorphism"].to_string()).unwrap();
    let (v, code) = machine(&[
        "compare",
        &data("d4p1.json"),
        &data("d4p1_second_cut.json"),
        "--isomorphism",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "equivalent");
    let (_, code) = machine(&["--max-vertices", "2", "isomorphic", &data("d4p1.json"), &data("d4p1.json")]);
    assert_eq!(code, 2);
}

#[test]
fn construct_and_random_produce_valid_documents() {
    let dir = std::env::temp_dir().join(format!("surfcut-cli-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&["construct", "--boundary", "2", "--punctures", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.join("pair.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let (v, code) = machine(&["gldim", path.to_str().unwrap()]);
    assert_eq!((code, v["gldim_le_2"].clone()), (0, serde_json::json!(true)));
    let a =
        run(&["--seed", "7", "random", "--genus", "1", "--boundary", "1", "--punctures", "1", "--min-valency", "3"]);
    let b =
        run(&["--seed", "7", "random", "--genus", "1", "--boundary", "1", "--punctures", "1", "--min-valency", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = run(&["construct", "--boundary", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["validate", "/nonexistent/doc.json"]);
    assert_eq!(out.status.code(), Some(2));
}
