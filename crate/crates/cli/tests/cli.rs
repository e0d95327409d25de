use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn cwkit(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

const C5: &str = "n 5\ne a b\ne b c\ne c d\ne d e\ne e a\n";

#[test]
fn generated_c7_decomposes_through_a_pipe() {
    let g = cwkit(&["gen", "cycle", "7"], None);
    assert!(g.status.success());
    let d = cwkit(&["decompose", "-"], Some(&stdout(&g)));
    assert_eq!(d.status.code(), Some(0));
    let out = stdout(&d);
    assert!(out.contains("CASE long-odd-cycle"), "{out}");
    assert!(out.contains("VERIFIED yes"));
}

#[test]
fn triangle_exits_two_with_witness() {
    let d = cwkit(&["decompose", "-"], Some("n 3\ne a b\ne b c\ne c a\n"));
    assert_eq!(d.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&d.stderr).contains("triangle a b c"));
    let c = cwkit(&["check", "-"], Some("n 3\ne a b\ne b c\ne c a\n"));
    assert_eq!(c.status.code(), Some(2));
    assert!(stdout(&c).starts_with("NOT-IN-CLASS triangle"));
}

#[test]
fn check_reports_s122() {
    let s122 = "n 6\ne u x\ne u y1\ne y1 y2\ne u z1\ne z1 z2\n";
    let c = cwkit(&["check", "-"], Some(s122));
    assert_eq!(c.status.code(), Some(2));
    assert!(stdout(&c).starts_with("NOT-IN-CLASS S(1,2,2) u"));
    assert_eq!(cwkit(&["check", "-"], Some(C5)).status.code(), Some(0));
}

#[test]
fn malformed_input_exits_64() {
    assert_eq!(cwkit(&["check", "-"], Some("n 3\ne a b\n")).status.code(), Some(64));
    assert_eq!(cwkit(&["check", "/nonexistent/file"], None).status.code(), Some(64));
    assert_eq!(cwkit(&["width", "-"], Some("u(v(1,a)")).status.code(), Some(64));
    assert_eq!(cwkit(&["gen", "cycle", "x"], None).status.code(), Some(64));
}

#[test]
fn expression_round_trip_through_files() {
    let graph = corpus().join("graphs/c5-45-3.graph");
    let graph = graph.to_str().unwrap();
    let expr = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c5-45-3.expr");
    let expr = expr.to_str().unwrap();
    let d = cwkit(&["decompose", graph, "--out", expr, "--verified"], None);
    assert_eq!(d.status.code(), Some(0), "{}", String::from_utf8_lossy(&d.stderr));
    assert!(stdout(&d).contains("CASE C5-case"));
    assert_eq!(cwkit(&["verify", graph, expr], None).status.code(), Some(0));
    let w: usize = stdout(&cwkit(&["width", expr], None)).trim().parse().unwrap();
    assert!(w <= 45);
    let other = tmp("c5.graph", C5);
    let v = cwkit(&["verify", &other, expr], None);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("DIFFERENT"));
}

#[test]
fn mwis_paths_agree() {
    let graph = corpus().join("graphs/c5-8-4.graph");
    let graph = graph.to_str().unwrap();
    let weights = tmp("c5-8-4.weights", "w v1 7\nw v3 2\n# others default to 1\n");
    let a = stdout(&cwkit(&["mwis", graph, &weights], None));
    let b = stdout(&cwkit(&["mwis", graph, &weights, "--via", "brute"], None));
    let weight = |s: &str| s.lines().next().unwrap().to_string();
    assert!(a.starts_with("WEIGHT "), "{a}");
    assert_eq!(weight(&a), weight(&b));
    let bad = tmp("bad.weights", "w nobody 3\n");
    assert_eq!(cwkit(&["mwis", graph, &bad], None).status.code(), Some(64));
}

#[test]
fn oracle_answers_with_certificate() {
    let p4 = tmp("p4.graph", "n 4\ne a b\ne b c\ne c d\n");
    let cert = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("p4.expr");
    let cert = cert.to_str().unwrap();
    let yes = cwkit(&["oracle", "cwle", &p4, "3", "--cert", cert], None);
    assert_eq!(stdout(&yes).trim(), "yes");
    assert_eq!(cwkit(&["verify", &p4, cert], None).status.code(), Some(0));
    assert_eq!(stdout(&cwkit(&["oracle", "cwle", &p4, "2"], None)).trim(), "no");
}

#[test]
fn gen_is_deterministic_and_reports_manifest_lines() {
    let a = cwkit(&["gen", "c5", "20", "--seed", "3"], None);
    let b = cwkit(&["gen", "c5", "20", "--seed", "3"], None);
    assert_eq!(a.stdout, b.stdout);
    let m = stdout(&cwkit(&["gen", "c5", "20", "--seed", "3", "--manifest"], None));
    let toks: Vec<&str> = m.split_whitespace().collect();
    assert_eq!(&toks[..4], ["GEN", "c5", "20", "3"]);
    assert_eq!(toks[4].len(), 64);
}

#[test]
fn unsupported_bipartite_exits_three() {
    let path: String = std::iter::once("n 9\n".to_string()).chain((0..8).map(|i| format!("e p{i} p{}\n", i + 1))).collect();
    let d = cwkit(&["decompose", "-"], Some(&path));
    assert_eq!(d.status.code(), Some(3));
    assert!(stdout(&d).contains("CASE bipartite-unsupported"));
}

#[test]
fn report_lists_relations_and_flags_non_prime_input() {
    let r = cwkit(&["report", "-"], Some(C5));
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).lines().any(|l| l.starts_with("REL ") && l.contains(" PASS")));
    let twins = "n 7\ne a b\ne b c\ne c d\ne d e\ne e a\ne x a\ne y a\n";
    assert_eq!(cwkit(&["report", "-"], Some(twins)).status.code(), Some(4));
}

#[test]
fn bench_on_committed_corpus() {
    let manifest = corpus().join("manifest.txt");
    let b = cwkit(&["bench", manifest.to_str().unwrap()], None);
    assert_eq!(b.status.code(), Some(0), "{}", stdout(&b));
    let out = stdout(&b);
    let last = out.lines().last().unwrap();
    let k: usize = last.strip_prefix("MAXWIDTH ").unwrap().parse().unwrap();
    assert!(k <= 45);
    assert!(!out.contains("HASH-MISMATCH") && !out.contains("ERROR"));
}
