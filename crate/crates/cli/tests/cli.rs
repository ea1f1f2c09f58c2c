use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_git-stab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn omega_on_the_nonstable_halphen_pencil() {
    let f = fixture("halphen-index3-nonstable.txt");
    let o = run(&["omega", "--system", &f, "--lambda", "1,0,-1", "--order", "y,x,z"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("omega = 18"), "{s}");
    assert!(s.contains("A_lambda = 3"), "{s}");
    assert!(s.contains("ratio = 6/1"), "{s}");
    assert!(s.contains("threshold = 6"), "{s}");
    assert!(s.contains("minor oracle agrees"), "{s}");
}

#[test]
fn verdict_requires_an_order() {
    let o = run(&["verdict", "--system", "x^3", "y^3", "--lambda", "1,0,-1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["verdict", "--system", "x^3", "y^3", "--lambda", "1,0,-1", "--order", "x,y,z"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unstable"));
}

#[test]
fn net_row_one() {
    let o = run(&["net", &fixture("net-row1.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("class: worse_than_nodal"), "{s}");
    assert!(s.contains("verdict: unstable"), "{s}");
    assert!(!s.contains("MISMATCH"), "{s}");
}

#[test]
fn presumed_verdicts_exit_two() {
    let o = run(&["pencil", &fixture("cubic-generic.txt")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("overall: presumed_stable"));
}

#[test]
fn halphen_semistable_case() {
    let o = run(&["--format", "json", "halphen", &fixture("halphen-index3-nonstable.txt"), "--fibers", "II*"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["verdict"], "strictly_semistable");
    assert_eq!(v["result"]["bridges"]["lct_bound"], "1/6");
}

#[test]
fn json_wrapper() {
    let o = run(&["--format", "json", "--seed", "3", "lct-bound", "y^2*z-x^3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "git-stab/1");
    assert_eq!(v["command"], "lct-bound");
    assert_eq!(v["seed"], 3);
}

#[test]
fn destabilizer_certificate_reverifies() {
    let f = fixture("cubic-tangent-double-line.txt");
    let o = run(&["--format", "json", "destabilize", "--system", &f]);
    assert_eq!(o.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("git-stab-cert-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let v = run(&["verdict", "--system", &f, "--certificate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("certificate verified"));
}

#[test]
fn rejected_certificate_exits_one() {
    let path = std::env::temp_dir().join(format!("git-stab-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"lambda":[1,0,-1],"coordinates":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#).unwrap();
    let v = run(&["verdict", "--system", "x^3+y^3+z^3", "--certificate", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("certificate REJECTED"));
}

#[test]
fn selftest_is_deterministic() {
    let a = run(&["--format", "json", "--seed", "11", "selftest"]);
    let b = run(&["--format", "json", "--seed", "11", "selftest"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["result"]["passed"], true);
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(run(&["pencil", "x^3", "y^2"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
}
