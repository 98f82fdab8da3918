//! End-to-end tests driving the compiled binary: documented example
//! invocations, exit codes, report schema, and byte-determinism of the
//! JSON output across runs and thread counts.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cathedra"))
}

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("corpus");
    p.push(name);
    p.to_str().expect("utf-8 path").to_string()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf-8 stderr")
}

#[test]
fn checking_the_divisor_corpus_file_succeeds() {
    let out = bin().args(["check", &corpus("div12.cat")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("[ok] check"));
}

#[test]
fn the_closure_adjoint_task_reports_the_closure_of_a_point() {
    let out = bin()
        .args(["task", &corpus("sierpinski.cat")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("F({1}) = {1,2}"),
        "stdout: {}",
        stdout(&out)
    );
}

#[test]
fn the_product_of_four_and_six_in_the_divisor_lattice_is_two() {
    let out = bin()
        .args(["limit", "--shape", "product", "--in", "Div12", "4", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("vertex \"2\""),
        "stdout: {}",
        stdout(&out)
    );
}

#[test]
fn the_json_report_follows_the_versioned_schema() {
    let out = bin()
        .args(["task", &corpus("div12.cat"), "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "1");
    let tasks = doc["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 2);
    for t in tasks {
        assert!(t["id"].is_string());
        assert!(t["status"].is_string());
        assert!(t["witness"].is_object());
        assert!(t["millis"].is_u64());
    }
    assert_eq!(tasks[0]["witness"]["vertex"], "2");
    assert_eq!(tasks[1]["witness"]["vertex"], "12");
}

/// The JSON report with `millis` zeroed out.
fn normalized(raw: &str) -> String {
    let mut doc: serde_json::Value = serde_json::from_str(raw).unwrap();
    for t in doc["tasks"].as_array_mut().unwrap() {
        t["millis"] = serde_json::json!(0);
    }
    serde_json::to_string(&doc).unwrap()
}

#[test]
fn json_reports_are_identical_across_runs_and_thread_counts() {
    let file = corpus("div12.cat");
    let run = |threads: &str| -> String {
        let out = bin()
            .args(["task", &file, "--json", "--threads", threads])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        normalized(stdout(&out))
    };
    let first = run("1");
    assert_eq!(first, run("1"), "reruns must agree byte for byte");
    assert_eq!(first, run("4"), "thread count must not change the report");
    assert_eq!(first, run("13"), "thread count must not change the report");
}

#[test]
fn usage_errors_exit_one() {
    let out = bin().args(["check", "no-such-file.cat"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a readable file"));

    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args(["limit", "--shape", "coproduct", "--in", "Div12", "4", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cathedra colimit"));

    let out = bin()
        .args(["limit", "--shape", "product", "--in", "NoSuchCategory", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn validation_failures_exit_two() {
    let mut f = tempfile::Builder::new()
        .suffix(".cat")
        .tempfile()
        .unwrap();
    writeln!(f, "category Broken {{ objects a; arrow f: a -> zz; }}").unwrap();
    let path = f.path().to_str().unwrap().to_string();

    let out = bin().args(["check", &path]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("[error]"));
    assert!(stdout(&out).contains("zz"));
}

#[test]
fn a_limit_that_does_not_exist_reports_not_found_and_exits_two() {
    let out = bin()
        .args(["limit", "--shape", "product", "--in", "Discrete2", "0", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("[not-found]"));
}

#[test]
fn adjoint_subcommand_synthesizes_the_closure_functor() {
    let out = bin()
        .args(["adjoint", &corpus("sierpinski.cat"), "Incl", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    let witness = &doc["tasks"][0]["witness"];
    assert_eq!(witness["left"]["on"]["{1}"], "{1,2}");
    assert_eq!(witness["left"]["on"]["{}"], "{}");
}

#[test]
fn yoneda_and_density_run_on_a_declared_presheaf() {
    let mut f = tempfile::Builder::new()
        .suffix(".cat")
        .tempfile()
        .unwrap();
    writeln!(
        f,
        "category Two {{ objects a, b; arrow f: a -> b }}\n\
         presheaf X on Two {{ at a = {{ p, q }}; at b = {{ r }}; via f : r -> p; }}"
    )
    .unwrap();
    let path = f.path().to_str().unwrap().to_string();

    let out = bin().args(["yoneda", &path, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["tasks"][0]["witness"]["counts"]["a"], 2);
    assert_eq!(doc["tasks"][0]["witness"]["counts"]["b"], 1);

    let out = bin().args(["density", &path, "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["tasks"][0]["witness"]["elements"], 3);
}

#[test]
fn classifier_reports_sieve_counts_per_object() {
    let out = bin().args(["classifier", "Two", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    assert_eq!(doc["tasks"][0]["witness"]["omega"]["a"], 2);
    assert_eq!(doc["tasks"][0]["witness"]["omega"]["b"], 3);
}

#[test]
fn report_combines_checks_and_tasks_for_many_files() {
    let out = bin()
        .args(["report", &corpus("div12.cat"), &corpus("sierpinski.cat")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(stdout(&out)).unwrap();
    let ids: Vec<&str> = doc["tasks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 5);
    assert!(ids[0].starts_with("check"));
    assert_eq!(ids[1], "t1: limit of D");
    assert_eq!(ids[2], "t2: colimit of D");
    assert!(ids[3].starts_with("check"));
    assert_eq!(ids[4], "t1: left-adjoint of Incl");
}

#[test]
fn caps_flags_and_environment_overrides_are_honoured() {
    // A cap far too small for the divisor lattice: validation fails.
    let out = bin()
        .args(["check", &corpus("div12.cat"), "--max-morphisms", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));

    let out = bin()
        .args(["check", &corpus("div12.cat")])
        .env("CATHEDRA_MAX_MORPHISMS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stdout: {}", stdout(&out));

    // The flag beats the environment.
    let out = bin()
        .args(["check", &corpus("div12.cat"), "--max-morphisms", "512"])
        .env("CATHEDRA_MAX_MORPHISMS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stdout: {}", stdout(&out));
}
