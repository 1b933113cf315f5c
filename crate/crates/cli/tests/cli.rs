//! End-to-end binary tests: exit codes, JSON shapes, and byte determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powergraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn psi_value_and_exit_codes() {
    let out = run(&["psi", "60"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["psi"], 37);
    assert_eq!(v["closed_form"], 37);
    assert_eq!(v["agree"], true);

    let out = run(&["psi", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["psi"], 1);

    // Zero is outside the domain.
    let out = run(&["psi", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn psi_table_rows() {
    let out = run(&["psi", "--table", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 100);
    assert!(rows.as_array().unwrap().iter().all(|r| r["agree"] == true));
}

#[test]
fn omega_and_chi_headline_values() {
    let out = run(&["omega", "--named", "symmetric", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["omega"], 5);

    let out = run(&["chi", "--named", "cyclic", "60"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["chi"], 37);
}

#[test]
fn group_inspection() {
    let out = run(&["group", "--named", "cyclic", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["order"], 1);
    assert_eq!(v["exponent"], 1);

    let out = run(&["group", "--named", "symmetric", "5", "--inspect"]);
    let v = stdout_json(&out);
    assert_eq!(v["exponent"], 60);
    assert_eq!(v["full_exponent"], false);
    assert!(v["order_histogram"].is_array());
}

#[test]
fn malformed_inputs_exit_two() {
    let out = run(&["group", "--named", "cyclic", "abc"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["group", "--named", "nosuchgroup"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("powergraph-badspec");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["group", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flags and unknown formats are clap parse errors, also 2.
    let out = run(&["export", "--named", "cyclic", "3", "--format", "gml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_caps_exit_three() {
    let out = run(&["group", "--named", "cyclic", "2000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn five_cycle_fixture_yields_witness_and_exit_one() {
    let dir = std::env::temp_dir().join("powergraph-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c5.json");
    std::fs::write(&path, r#"{"vertices":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#).unwrap();
    let out = run(&["verify-berge", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["certified"], false);
    assert_eq!(v["report"]["witness"]["kind"], "odd-hole");
    assert_eq!(v["report"]["witness"]["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn berge_certification_of_groups() {
    let out = run(&["verify-berge", "--named", "cyclic", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["report"]["certified"], true);

    let out = run(&["verify-berge", "--named", "symmetric", "4", "--max-cycle", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["certified"], true);
    assert_eq!(v["report"]["max_cycle_length"], 10);
    assert_eq!(v["report"]["exhaustive"], false);
}

#[test]
fn color_verify_and_out_file() {
    let out = run(&["color", "--named", "cyclic", "12", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["coloring"]["palette_size"], 9);
    assert_eq!(v["verification"]["verified"], true);
    assert_eq!(v["verification"]["oracle_chromatic"], 9);

    let dir = std::env::temp_dir().join("powergraph-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coloring.json");
    let out = run(&["color", "--named", "quaternion8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["palette_size"], 4);
}

#[test]
fn export_shapes() {
    let out = run(&["export", "--named", "cyclic", "3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 -- 1") && text.contains("1 -- 2") && text.contains("0 -- 2"));

    let out = run(&["export", "--named", "symmetric", "3", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["vertex_count"], 6);
    assert_eq!(v["directed_edges"].as_array().unwrap().len(), 7);

    let out = run(&["export", "--named", "cyclic", "1", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("label") && !text.contains("--"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["color", "--named", "dihedral", "12"],
        vec!["omega", "--named", "symmetric", "4"],
        vec!["export", "--named", "cyclic", "24", "--format", "json"],
        vec!["verify-berge", "--named", "quaternion8"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "stdout differs for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn spec_file_roundtrip() {
    let dir = std::env::temp_dir().join("powergraph-fixtures");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klein.json");
    std::fs::write(
        &path,
        r#"{"kind":"cayley","identity":0,"table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}"#,
    )
    .unwrap();
    let out = run(&["group", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["order"], 4);
    assert_eq!(v["exponent"], 2);
    assert_eq!(v["full_exponent"], true);
}
