use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
}

fn dgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgl"))
        .args(args)
        .current_dir(root())
        .env_remove("DGL_FIELD")
        .output()
        .expect("dgl runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgl-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_passes_on_truncated_cubic() {
    let out = dgl(&["--json", "check", "quivers/trunc3.quiver", "--trials", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let laws = v["laws"].as_array().unwrap();
    assert!(laws.iter().any(|l| l["law"] == "mu_associativity"));
    assert!(laws.iter().any(|l| l["law"] == "psi_sign_rule" && l["trials"] == 30));
    let keys: Vec<(String, String)> = laws
        .iter()
        .map(|l| (l["suite"].as_str().unwrap().into(), l["law"].as_str().unwrap().into()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "laws are listed in canonical order");
    assert!(v.get("replay").is_none());
}

#[test]
fn tampered_lambda_fails_on_associativity() {
    let out = dgl(&["--json", "radical-quiver", "quivers/trunc4.quiver"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = json(&out);
    for l in v["lambda"].as_array_mut().unwrap() {
        if l["beta"] == "x^2" && l["alpha"] == "x" {
            l["coeff"] = Value::String("2".into());
        }
    }
    let path = scratch("tampered.json", &v.to_string());
    let out = dgl(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  radical/mu_associativity"), "{text}");
    assert!(text.contains("replay: dgl check"), "{text}");
}

#[test]
fn radical_json_round_trips_through_check() {
    let out = dgl(&["--json", "radical-quiver", "quivers/nonlocal.quiver"]);
    let path = scratch("nonlocal.json", &stdout(&out));
    let again = dgl(&["--json", "radical-quiver", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), stdout(&again));
    let out = dgl(&["check", path.to_str().unwrap(), "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn empty_quiver_passes() {
    let path = scratch("empty.quiver", "");
    let out = dgl(&["check", path.to_str().unwrap(), "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn hereditary_input_has_empty_presentation() {
    let out = dgl(&["--json", "leavitt", "quivers/a2.quiver"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["generators"].as_array().unwrap().len(), 0);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 0);
    let out = dgl(&["oracle", "quivers/a2.quiver", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn leavitt_presentation_of_truncated_cubic() {
    let v = json(&dgl(&["--json", "leavitt", "quivers/trunc3.quiver"]));
    let diff = |name: &str| -> String {
        v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .find(|g| g["name"] == name)
            .map(|g| g["differential"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(diff("x"), "x* x^2");
    assert_eq!(diff("x^2*"), "x* x*");
    assert_eq!(diff("x*"), "0");
    assert_eq!(diff("x^2"), "0");
    let rsz = json(&dgl(&["--json", "leavitt", "quivers/rsz-cycle.quiver"]));
    for g in rsz["generators"].as_array().unwrap() {
        assert_eq!(g["differential"], "0");
    }
}

#[test]
fn element_commands() {
    let run = |args: &[&str]| {
        let out = dgl(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        stdout(&out).trim().to_string()
    };
    assert_eq!(run(&["diff", "quivers/trunc3.quiver", "x^2*"]), "x* x*");
    assert_eq!(run(&["mul", "quivers/trunc3.quiver", "x", "x*"]), "1");
    assert_eq!(run(&["mul", "quivers/trunc3.quiver", "x", "x^2*"]), "0");
    assert_eq!(run(&["normal-form", "quivers/trunc3.quiver", "x* x + x^2* x^2"]), "1");
    assert_eq!(run(&["normal-form", "quivers/trunc3.quiver", "-x*"]), "-x*");
    // In the Cohn algebra the second Cuntz–Krieger relation does not hold.
    assert_eq!(
        run(&["normal-form", "--algebra", "cohn", "quivers/trunc3.quiver", "x* x"]),
        "x* x"
    );
    let v = json(&dgl(&["--json", "diff", "quivers/trunc3.quiver", "x"]));
    assert_eq!(v["result"], "x* x^2");
    assert_eq!(v["degree"], 0);
}

#[test]
fn cohomology_table() {
    let v = json(&dgl(&[
        "--json",
        "cohomology",
        "quivers/trunc3.quiver",
        "--degrees",
        "-3:3",
    ]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for (row, d) in rows.iter().zip(-3..) {
        assert_eq!(row["degree"], d);
        assert_eq!(row["dimension"], 1);
        assert_eq!(row["stabilized"], true);
    }
    let text = stdout(&dgl(&["cohomology", "quivers/trunc2.quiver", "--degrees", "-4:4"]));
    assert_eq!(text.lines().filter(|l| l.contains("stable from")).count(), 9, "{text}");
    let text = stdout(&dgl(&[
        "cohomology",
        "quivers/trunc3.quiver",
        "--degrees",
        "-3:-3",
        "--max-level",
        "2",
        "--window",
        "2",
    ]));
    assert!(text.contains("unstable"), "{text}");
    let v = json(&dgl(&[
        "--json",
        "cohomology",
        "quivers/trunc3.quiver",
        "--algebra",
        "tensor",
    ]));
    let dims: Vec<i64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dimension"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, [1, 1, 1, 1]);
}

#[test]
fn oracle_mutation_fails_with_replay() {
    let out = dgl(&[
        "--json",
        "oracle",
        "quivers/trunc3.quiver",
        "--trials",
        "40",
        "--mutate",
        "flip-compose",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["mutation"], "flip-compose");
    let replay = v["replay"].as_str().unwrap();
    assert!(
        replay.starts_with("dgl --json oracle quivers/trunc3.quiver"),
        "{replay}"
    );
    let failed = v["laws"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["law"] == "psi_sign_rule")
        .unwrap();
    assert!(failed["counterexample"].as_str().unwrap().starts_with("minimal:"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(dgl(&["check", "quivers/missing.quiver"]).status.code(), Some(2));
    let bad = scratch("bad.quiver", "vertex 1\narrow x: 1 -> 2\n");
    assert_eq!(dgl(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let not_admissible = scratch("free.quiver", "vertex 1\narrow x: 1 -> 1\n");
    assert_eq!(
        dgl(&["leavitt", not_admissible.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(dgl(&["diff", "quivers/trunc3.quiver", "q"]).status.code(), Some(2));
    assert_eq!(
        dgl(&["oracle", "quivers/trunc3.quiver", "--mutate", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dgl(&["cohomology", "quivers/trunc3.quiver", "--degrees", "3:1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dgl(&["check", "quivers/trunc3.quiver", "--trials", "0"]).status.code(),
        Some(2)
    );
    let out = dgl(&["--json", "--field", "F4", "leavitt", "quivers/a2.quiver"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("prime"));
}

#[test]
fn default_field_comes_from_the_environment() {
    let path = scratch("nofield.quiver", "vertex 1\narrow x: 1 -> 1\nrelation: x*x*x\n");
    let out = Command::new(env!("CARGO_BIN_EXE_dgl"))
        .args(["--json", "radical-quiver", path.to_str().unwrap()])
        .env("DGL_FIELD", "Fp 5")
        .output()
        .unwrap();
    assert_eq!(json(&out)["field"], "Fp 5");
    let declared = dgl(&["--json", "--field", "Fp 5", "radical-quiver", "quivers/trunc3.quiver"]);
    assert_eq!(json(&declared)["field"], "Q", "a `field:` line wins");
}
