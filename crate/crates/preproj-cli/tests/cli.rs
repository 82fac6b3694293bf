use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_preproj")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn first_line(args: &[&str]) -> String {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    out.lines().next().unwrap_or_default().to_string()
}

#[test]
fn roots_commands() {
    assert_eq!(first_line(&["roots", "verify-coxeter"]), "Phi^6 = I: ok");
    assert_eq!(first_line(&["roots", "count", "--base"]), "240");
    for l in ["0", "inf", "1", "1/2", "-1"] {
        assert_eq!(first_line(&["roots", "schur-per-slope", "--lambda", l]), "39");
    }
    assert!(first_line(&["roots", "classify", "1,1,1,2,1,1,1,0,0,0"]).starts_with("slope inf rank 1 ql 1"));
}

#[test]
fn shuffle_and_multiseg_commands() {
    assert_eq!(first_line(&["shuffle", "minor", "--rows", "1", "--cols", "3", "-n", "4"]), "w[2,1]");
    assert_eq!(first_line(&["shuffle", "flag", "--module", "ex5.json", "--word", "2,1,2,1"]), "3");
    assert_eq!(first_line(&["multiseg", "max", "1,2,3,1,2"]), "[1,5]+[2,3]+[3,3]+[5,5]");
    assert_eq!(first_line(&["multiseg", "psi", "--file", "e5.json"]), "[1,2]+[2,4]+[3,3]+[4,4]+2[5,5]");
    assert_eq!(first_line(&["multiseg", "degree", "[1,1]", "-n", "3"]), "1,0,0");
    let expand = first_line(&["shuffle", "expand", "--module", "m31_fixture.json"]);
    assert_eq!(expand.matches("w[").count(), 18);
}

#[test]
fn graph_commands() {
    assert_eq!(first_line(&["graph", "build", "-n", "4", "--check-fixture"]), "36 vertices, 330 edges: match");
    assert_eq!(first_line(&["graph", "cliques", "-n", "3"]), "14 cliques, size 3");
    let dir = std::env::temp_dir().join(format!("preproj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("a5.dot");
    let (code, _) = run(&["graph", "a5", "--slope", "0", "--max-ql", "5", "--format", "dot", "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("graph C {"));
    // 39 Schur roots of slope 0 plus C1..C5.
    assert_eq!(dot.matches("[label=").count(), 44);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_output_echoes_seed() {
    let (code, out) = run(&["--seed", "7", "--format", "json", "roots", "count", "--base"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["result"]["count"], 240);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["graph", "build", "-n", "9"]).0, 2);
    assert_eq!(run(&["roots", "class", "--lambda", "0", "--ql", "6", "--rank", "6"]).0, 2);
    assert_eq!(run(&["shuffle", "minor", "--rows", "3", "--cols", "1", "-n", "4"]).0, 2);
    assert_eq!(run(&["--seed", "0", "roots", "verify-coxeter"]).0, 2);
}
