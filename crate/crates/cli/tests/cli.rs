use std::path::PathBuf;
use std::process::{Command, Output};
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self { dir: tempfile::tempdir().expect("temp dir") }
    }

    fn file(&self, name: &str, body: &str) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, body).expect("write fixture");
        path.display().to_string()
    }
}

fn invlim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invlim")).args(args).output().expect("run invlim")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8")
}

const TWOS: &str = r#"{"type":"O","period":[[2,0,0]]}"#;
const FOURS: &str = r#"{"type":"O","period":[[4,0,0]]}"#;
const SIXES: &str = r#"{"type":"O","period":[[2,0,0],[3,0,0]]}"#;

#[test]
fn invariants_of_a_uhf_algebra() {
    let ws = Workspace::new();
    let out = invlim(&["invariants", &ws.file("a.json", TWOS)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["density_type"], "D3");
    assert_eq!(v["delta"], "1");
    assert_eq!(v["pi_s"]["infinite"], serde_json::json!([2]));
}

#[test]
fn classify_exit_codes() {
    let ws = Workspace::new();
    let (a, b, c) = (ws.file("a.json", TWOS), ws.file("b.json", FOURS), ws.file("c.json", SIXES));
    let yes = invlim(&["classify", &a, &b]);
    assert_eq!(code(&yes), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&yes)).unwrap();
    assert_eq!(v["isomorphic"], true);
    let no = invlim(&["classify", &a, &c]);
    assert_eq!(code(&no), 1);
}

#[test]
fn pair_document_and_intertype() {
    let ws = Workspace::new();
    let doc = ws.file(
        "pair.json",
        r#"{"algebras":[{"type":"A","period":[[1,1,0]]},{"type":"O","period":[[2,0,0]]}]}"#,
    );
    assert_eq!(code(&invlim(&["classify", &doc])), 0);
    let doc = ws.file(
        "pair3.json",
        r#"{"algebras":[{"type":"A","period":[[1,1,0]]},{"type":"O","period":[[3,0,0]]}]}"#,
    );
    assert_eq!(code(&invlim(&["classify", &doc])), 1);
}

#[test]
fn opaque_sigma_is_undetermined_unless_declared_equal() {
    let ws = Workspace::new();
    let p = ws.file(
        "p.json",
        r#"{"profile":{"type":"A","density_type":"D3","symmetry_type":"S4","delta":"1",
            "sigma":{"opaque":"x"},"pi_s":{"finite":{},"infinite":[2]},"pi_c":{"finite":{},"infinite":[2]}}}"#,
    );
    assert_eq!(code(&invlim(&["classify", &p, &p])), 3);
    assert_eq!(code(&invlim(&["classify", &p, &p, "--sigma-equal"])), 0);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let ws = Workspace::new();
    let out = invlim(&["invariants", &ws.file("bad.json", "{\n  \"type\": \"O\",\n  \"period\": [\n")]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("bad.json:4:"), "{}", stderr(&out));
    let out = invlim(&["invariants", &ws.file("field.json", r#"{"type":"O","period":[[2,0,0]],"extra":1}"#)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("extra"), "{}", stderr(&out));
    let out = invlim(&["invariants", &ws.file("zero.json", r#"{"type":"O","period":[[0,0,1]]}"#)]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&invlim(&["classify", &ws.file("one.json", TWOS)])), 2);
    assert_eq!(code(&invlim(&["invariants", "/nonexistent/input.json"])), 2);
}

#[test]
fn intertwine_verifies_and_replays() {
    let ws = Workspace::new();
    let (a, b) = (ws.file("a.json", TWOS), ws.file("b.json", FOURS));
    let out = invlim(&["intertwine", &a, &b, "--depth", "2", "--verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("composition identities hold"));
    assert!(stderr(&out).contains("matrix replay over Q"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["depth"], 2);
    assert_eq!(v["down_maps"].as_array().unwrap().len(), 2);
}

#[test]
fn intertwine_across_types() {
    let ws = Workspace::new();
    let a = ws.file("a.json", r#"{"type":"A","period":[[1,1,0]]}"#);
    let out = invlim(&["intertwine", &a, &ws.file("o.json", TWOS), "--verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("bridges and composition identities hold"));
}

#[test]
fn intertwine_refuses_non_isomorphic_pairs() {
    let ws = Workspace::new();
    let out = invlim(&["intertwine", &ws.file("a.json", TWOS), &ws.file("c.json", SIXES)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("NotIsomorphic"));
}

#[test]
fn bratteli_dot_and_json() {
    let ws = Workspace::new();
    let spec = ws.file("s.json", TWOS);
    let out = invlim(&["bratteli", &spec, "--levels", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "digraph bratteli {\n  rankdir=LR;\n  L1V1 [label=\"1\"];\n  L2V1 [label=\"2\"];\n  L3V1 [label=\"4\"];\n  \
         L1V1 -> L2V1 [label=\"2\"];\n  L2V1 -> L3V1 [label=\"2\"];\n}\n"
    );
    let out = invlim(&["bratteli", &spec, "--levels", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shape"], "S-unital");
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
}

#[test]
fn k0_presentation_of_a_nonunital_pair() {
    let ws = Workspace::new();
    let spec = ws.file("a.json", r#"{"type":"A","period":[[2,1,1]]}"#);
    let out = invlim(&["k0", &spec, "--levels", "1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shape"], "A-nonunital");
    assert_eq!(v["matrices"][0], serde_json::json!([[2, 1, 1], [1, 2, 1], [0, 0, 1]]));
    assert_eq!(v["order_units"][1], serde_json::json!([4, 4, 1]));
}

#[test]
fn selftest_runs_small_suites() {
    let out = invlim(&["selftest", "--max-degree", "8", "--seed", "0xbeef"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("seed: 0xbeef, max degree: 8"));
    assert!(!text.contains("FAILED"));
    assert_eq!(code(&invlim(&["selftest", "--seed", "not-hex"])), 2);
}
