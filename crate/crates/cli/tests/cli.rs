//! End-to-end runs of the `goodpair` binary.

use std::path::PathBuf;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_goodpair")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scratch(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const K3: &str = "vertices a b c\narc a b\narc b a\narc b c\narc c b\narc a c\narc c a\n";

#[test]
fn single_arc_is_the_first_exception() {
    let doc = scratch("fig1a.gp", "vertices u v\narc u v\nroots u v\n");
    let r = run(&["decide", &doc]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.starts_with("NO figure-1(a)"), "{}", r.stdout);
}

#[test]
fn complete_digraph_has_a_pair() {
    let doc = scratch("k3.gp", K3);
    let r = run(&["decide", &doc, "--u", "a", "--v", "a"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("YES\nroots a a\n"));
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("out ")).count(), 2);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("in ")).count(), 2);
}

#[test]
fn table1e_is_refuted() {
    let r = run(&["gen", "--family", "table1e", "--t", "2"]);
    assert_eq!(r.code, 0);
    let doc = scratch("t1e.gp", &r.stdout);
    let d = run(&["decide", &doc]);
    assert_eq!(d.code, 1);
    assert!(d.stdout.starts_with("NO "), "{}", d.stdout);
}

#[test]
fn decide_output_verifies() {
    for (i, family) in ["kind-a", "kind-b", "random-composition"].iter().enumerate() {
        let g = run(&["gen", "--family", family, "--order", "2", "--seed", "3"]);
        assert_eq!(g.code, 0, "{}", g.stderr);
        let doc = scratch(&format!("gen{i}.gp"), &g.stdout);
        let d = run(&["decide", &doc]);
        if d.code == 0 {
            let pair = scratch(&format!("pair{i}.txt"), &d.stdout);
            let v = run(&["verify", &doc, &pair]);
            assert_eq!((v.code, v.stdout.as_str()), (0, "VALID\n"));
        } else {
            assert_eq!(d.code, 1, "{}", d.stderr);
        }
    }
}

#[test]
fn verify_reports_defects_by_name() {
    let doc = scratch("k3v.gp", K3);
    let dropped = scratch("dropped.txt", "roots a c\nout a b\nin a c\nin b c\n");
    let r = run(&["verify", &doc, &dropped]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("not spanning"), "{}", r.stdout);
    let shared = scratch("shared.txt", "roots a c\nout a b\nout b c\nin a b\nin b c\n");
    let r = run(&["verify", &doc, &shared]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("a->b"), "{}", r.stdout);
}

#[test]
fn table1b_by_order() {
    let r = run(&["gen", "--family", "table1b", "--n", "5"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("part H1 {\n  vertices v1 v2 v3\n}"), "{}", r.stdout);
    assert_eq!(r.stdout.matches("part ").count(), 3);
}

#[test]
fn crosscheck_small_semicomplete() {
    let r = run(&["crosscheck", "--exhaustive-semicomplete", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().last().unwrap().contains("mismatches=0"));
    let refused = run(&["crosscheck", "--exhaustive-semicomplete", "7"]);
    assert_eq!(refused.code, 2);
    assert!(refused.stderr.contains("refused"));
}

#[test]
fn oracle_agrees_on_separation_instance() {
    let g = run(&["gen", "--family", "separation"]);
    let doc = scratch("sep.gp", &g.stdout);
    let o = run(&["oracle", &doc, "--max-vertices", "12"]);
    assert_eq!(o.code, 1, "{}", o.stderr);
    assert!(o.stdout.starts_with("NO"));
    assert_eq!(run(&["decide", &doc]).code, 1);
    assert_eq!(run(&["oracle", &doc, "--max-vertices", "4"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["crosscheck", "--random-compositions", "5", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let g = ["gen", "--family", "kind-b", "--order", "3", "--seed", "5"];
    assert_eq!(run(&g).stdout, run(&g).stdout);
}

#[test]
fn generated_documents_round_trip() {
    let g = run(&["gen", "--family", "kind-a", "--order", "2", "--seed", "1"]);
    let doc = scratch("rt.gp", &g.stdout);
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join("rt2.gp");
    let w = run(&["gen", "--family", "kind-a", "--order", "2", "--seed", "1", "--out", &out.display().to_string()]);
    assert_eq!((w.code, w.stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), g.stdout);
    assert_eq!(run(&["decide", &doc]).stdout, run(&["decide", &out.display().to_string()]).stdout);
}

#[test]
fn malformed_input_is_an_error() {
    let doc = scratch("bad.gp", "vertices a b\narc a z\n");
    let r = run(&["decide", &doc, "--u", "a", "--v", "b"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("z"), "{}", r.stderr);
    let r = run(&["decide", &scratch("noroots.gp", K3)]);
    assert_eq!(r.code, 2);
}
