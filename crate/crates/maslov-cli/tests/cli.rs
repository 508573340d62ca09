//! The binary's exit codes and JSON output. Human-readable text is never
//! inspected here.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn maslov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maslov"))
        .args(args)
        .env_remove("MASLOV_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sat_verdicts_map_to_exit_codes() {
    let d = TempDir::new().unwrap();
    let serial = write(&d, "serial.fo", "forall x. exists y. R(x,y)");
    let o = maslov(&["sat", s(&serial), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["model_size"], 1);
    assert_eq!(v["game"]["eloisa_wins"], true);

    let contradiction = write(&d, "contra.fo", "forall x. (P(x) & ~P(x))");
    let o = maslov(&["sat", s(&contradiction), "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json_of(&o)["verdict"], "unsat");
}

#[test]
fn tiny_budget_gives_unknown() {
    let d = TempDir::new().unwrap();
    let o = maslov(&["gen-phin", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let phi3 = write(&d, "phi3.fo", &String::from_utf8(o.stdout).unwrap());
    let o = maslov(&["sat", s(&phi3), "--budget", "10", "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json_of(&o)["verdict"], "unknown");
}

#[test]
fn input_errors_exit_with_three() {
    let d = TempDir::new().unwrap();
    let broken = write(&d, "broken.fo", "forall x. (P(x) &");
    assert_eq!(code(&maslov(&["sat", s(&broken)])), 3);
    assert_eq!(code(&maslov(&["classify", "/nonexistent/file.fo"])), 3);
    assert_eq!(code(&maslov(&["frobnicate"])), 3);
    assert_eq!(code(&maslov(&["demo", "--only", "11"])), 3);
    let serial = write(&d, "serial.fo", "forall x. exists y. R(x,y)");
    assert_eq!(code(&maslov(&["sat", s(&serial), "--max-size", "0"])), 3);
    // Transitivity lies outside every supported class unless forced.
    let trans = write(&d, "trans.fo", "forall x y z. (R(x,y) & R(y,z) -> R(x,z))");
    assert_eq!(code(&maslov(&["sat", s(&trans)])), 3);
    assert_eq!(code(&maslov(&["sat", s(&trans), "--force"])), 0);
}

#[test]
fn classify_reports_grade() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "m.fo", "forall x. exists y. forall z. (R(x,y) & (P(z) | Q(y)))");
    let o = maslov(&["classify", s(&f), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["classification"]["grade"], 1);
    assert!(v["classes"].as_array().unwrap().contains(&Value::from("K")));
}

#[test]
fn check_reads_structure_json() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.fo", "forall x. exists y. R(x,y)");
    let loop_ = write(&d, "a.json", r#"{"unnamed": 1, "relations": {"R": [[1, 1]]}}"#);
    let empty = write(&d, "b.json", r#"{"unnamed": 1, "relations": {}}"#);
    assert_eq!(code(&maslov(&["check", s(&f), "--structure", s(&loop_)])), 0);
    assert_eq!(code(&maslov(&["check", s(&f), "--structure", s(&empty)])), 1);
}

#[test]
fn solve_game_reduces_the_type_set() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.fo", "rel Q/1; forall x. exists y. R(x,y)");
    let a = write(
        &d,
        "a.json",
        r#"{"unnamed": 2, "relations": {"Q": [[1]], "R": [[1,1],[1,2],[2,1],[2,2]]}}"#,
    );
    let o = maslov(&["solve-game", "--formula", s(&f), "--beta", s(&a), "--reduce", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["one_types"], 2);
    assert_eq!(v["reduced"]["one_types"], 1);
    assert_eq!(v["reduced"]["eloisa_wins"], true);

    let bad = write(&d, "bad.fo", "rel Q/1; forall x. exists y. (R(x,y) & ~R(x,y))");
    assert_eq!(code(&maslov(&["solve-game", "--formula", s(&bad), "--beta", s(&a)])), 1);
}

#[test]
fn build_model_is_reproducible_and_seed_env_wins() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "f.fo", "forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y)) & R(x,y))");
    let run = |seed: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_maslov"));
        c.args(["build-model", "--formula", s(&f), "--json", "--seed", seed]);
        match env {
            Some(e) => c.env("MASLOV_SEED", e),
            None => c.env_remove("MASLOV_SEED"),
        };
        c.output().unwrap()
    };
    let first = run("3", None);
    assert_eq!(code(&first), 0);
    assert_eq!(json_of(&first)["model_check"], true);
    assert_eq!(first.stdout, run("3", None).stdout);
    assert_eq!(run("0", Some("3")).stdout, first.stdout);
}

#[test]
fn grid_construction_from_the_command_line() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "g.fo", "forall x. exists z1. exists z2. (R(x,z1) & R(z1,z2) & ~R(z2,x) & (P(z1) | P(z2)))");
    let o = maslov(&["build-model", "--formula", s(&f), "--grid", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["model_check"], true);
}

#[test]
fn tournament_subcommands() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&maslov(&["tournament", "paley", "--prime", "67", "--k", "2"])), 0);
    assert_eq!(code(&maslov(&["tournament", "paley", "--prime", "63"])), 3);
    let o = maslov(&["tournament", "sample", "--json"]);
    assert_eq!(code(&o), 0);
    let t = write(&d, "t.json", &json_of(&o)["tournament"].to_string());
    assert_eq!(code(&maslov(&["tournament", "verify", s(&t)])), 0);
    let o = maslov(&["tournament", "paley", "--prime", "7", "--emit", "--json"]);
    let seven = write(&d, "p7.json", &json_of(&o)["tournament"].to_string());
    // Seven vertices dominate every pair but not every triple.
    assert_eq!(code(&maslov(&["tournament", "verify", s(&seven), "--ell", "2"])), 0);
    assert_eq!(code(&maslov(&["tournament", "verify", s(&seven), "--ell", "3"])), 1);
}

#[test]
fn generated_and_translated_text_parses_back() {
    let d = TempDir::new().unwrap();
    let model = d.path().join("m.json");
    let o = maslov(&["gen-phin", "--n", "3", "--model", s(&model)]);
    assert_eq!(code(&o), 0);
    let phi3 = write(&d, "phi3.fo", &String::from_utf8(o.stdout).unwrap());
    let c = json_of(&maslov(&["classify", s(&phi3), "--json"]));
    assert_eq!(c["classification"]["grade"], 5);
    assert_eq!(code(&maslov(&["check", s(&phi3), "--structure", s(&model)])), 0);

    let lost = write(&d, "lost.fo", maslov_fragments::examples::LOST_PROOF);
    let o = maslov(&["translate", "fauf", s(&lost)]);
    assert_eq!(code(&o), 0);
    let tr = write(&d, "tr.fo", &String::from_utf8(o.stdout).unwrap());
    let c = json_of(&maslov(&["classify", s(&tr), "--json"]));
    assert!(c["classes"].as_array().unwrap().contains(&Value::from("DK")), "{c}");

    let consts = write(&d, "c.fo", "const a b c; R(a,b) & ~R(b,c) & forall x. (R(x,a) -> P(x))");
    let v = json_of(&maslov(&["translate", "constants", s(&consts), "--json"]));
    let parts = v["partitions"].as_array().unwrap();
    assert_eq!(parts.len(), 5);
    assert!(parts.iter().all(|p| p["size"] == v["original_size"]));
}

#[test]
fn demo_table_and_fault_injection() {
    let o = maslov(&["demo", "--only", "1,2,7", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    assert_eq!(o.stdout, maslov(&["demo", "--only", "1,2,7", "--json"]).stdout);

    let o = maslov(&["demo", "--only", "1,3", "--paley-prime", "63", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_eq!(v["failed"], serde_json::json!([3]));
}
