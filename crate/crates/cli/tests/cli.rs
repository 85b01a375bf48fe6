use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn pexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pexp"))
        .args(args)
        .current_dir(dir())
        .output()
        .unwrap()
}

fn pexp_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pexp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let out = pexp(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let expected = std::fs::read_to_string(dir().join("golden").join(name)).unwrap();
    assert_eq!(stdout(&out), expected, "golden file {name}");
}

#[test]
fn golden_reports() {
    golden("decide_lca_expansive.txt", &["decide", "fixtures/lca_expansive.json"]);
    golden("decide_lca_mod4.txt", &["decide", "fixtures/lca_mod4.json"]);
    golden("embed_additive.txt", &["embed", "fixtures/additive.json"]);
    golden("invariants_shift.txt", &["invariants", "fixtures/shift.json"]);
    golden("decide_additive.json", &["decide", "--format", "structured", "fixtures/additive.json"]);
    golden("crosscheck_shift.json", &["crosscheck", "--format", "structured", "fixtures/shift.json"]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for cmd in ["decide", "charpoly", "invariants", "oracle", "crosscheck"] {
        for fixture in ["lca_expansive", "shift", "additive"] {
            let path = format!("fixtures/{fixture}.json");
            for format in ["text", "structured"] {
                let args = [cmd, "--format", format, "--budget-lhat", "4", path.as_str()];
                assert_eq!(pexp(&args).stdout, pexp(&args).stdout, "{cmd} {fixture} {format}");
            }
        }
    }
}

#[test]
fn reads_job_from_stdin() {
    let job = std::fs::read_to_string(dir().join("fixtures/lca_expansive.json")).unwrap();
    let from_stdin = pexp_stdin(&["decide"], &job);
    let from_dash = pexp_stdin(&["decide", "-"], &job);
    let from_file = pexp(&["decide", "fixtures/lca_expansive.json"]);
    assert_eq!(from_stdin.status.code(), Some(0));
    assert_eq!(from_stdin.stdout, from_file.stdout);
    assert_eq!(from_dash.stdout, from_file.stdout);
}

#[test]
fn flags_override_budgets() {
    let out = pexp(&["oracle", "--budget-lhat", "1", "fixtures/lca_expansive.json"]);
    let text = stdout(&out);
    assert!(text.contains("lhat_max = 1"));
    assert!(text.contains("inconclusive (windows checked up to lhat = 1)"));
    let out = pexp(&["oracle", "fixtures/lca_expansive.json"]);
    assert!(stdout(&out).contains("verified expansive (lhat = 2)"));
    let out = pexp(&["crosscheck", "--budget-width", "2", "--budget-steps", "3", "fixtures/shift.json"]);
    assert!(stdout(&out).contains("witness (bounded search): side right, 3 steps"));
}

#[test]
fn crosscheck_exit_codes() {
    for f in ["lca_expansive", "shift", "additive", "lca_mod4"] {
        let out = pexp(&["crosscheck", "--budget-lhat", "3", &format!("fixtures/{f}.json")]);
        assert_eq!(out.status.code(), Some(0), "{f}");
        assert!(stdout(&out).contains("consistent: true"));
    }
}

#[test]
fn errors_exit_with_one() {
    let cases: &[(&[&str], &str)] = &[
        (&["decide"], r#"{"kind":"lca","modulus":2,"n":2,"matrix":[["0","1"],["1","0","1"]]}"#),
        (&["decide"], "{\"kind\": \"lca\",\n  \"modulus\": \"two\"}"),
        (&["decide"], r#"{"kind":"additive","group":[4,2],"radius":0,"rules":{"0":[[0,1],[1,0]]}}"#),
        (&["decide"], r#"{"kind":"lca","modulus":1,"n":1,"matrix":[["1"]]}"#),
        (&["embed"], r#"{"kind":"lca","modulus":2,"n":1,"matrix":[["1"]]}"#),
        (&["decide", "--budget-lhat", "0"], r#"{"kind":"lca","modulus":2,"n":1,"matrix":[["1"]]}"#),
        (&["frobnicate"], "{}"),
    ];
    for (args, input) in cases {
        let out = pexp_stdin(args, input);
        assert_eq!(out.status.code(), Some(1), "{args:?} {input}");
        assert!(!out.stderr.is_empty());
    }
    let out = pexp(&["decide", "fixtures/does_not_exist.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn error_messages_locate_problems() {
    let out = pexp_stdin(&["decide"], "{\"kind\": \"lca\",\n  \"modulus\": \"two\"}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = pexp_stdin(
        &["decide"],
        r#"{"kind":"additive","group":[4,2],"radius":0,"rules":{"0":[[0,1],[1,0]]}}"#,
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry (1, 2)"));
}
