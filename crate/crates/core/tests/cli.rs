use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use girthlab::report::{Payload, Report};

fn girthlab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_girthlab"))
        .args(args)
        .env_remove("GIRTHLAB_THREADS")
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

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FIVE_CYCLE: &str = "# directed 5-cycle\nn 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn constants_table() {
    let o = girthlab(&["constants", "--m", "3..8"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("m\talpha\t"));
    assert!(lines[1].starts_with("3\t0.3542486889\t"));
    assert!(lines[6].contains("\t0.18068\t"));
}

#[test]
fn constants_json_single_row() {
    let o = girthlab(&["constants", "--m", "3", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.version, "1");
    assert_eq!(report.command, "constants");
    match report.payload {
        Payload::Constants(rows) => {
            assert_eq!(rows.len(), 1);
            assert_eq!(rows[0].m, 3);
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn m_below_three_is_rejected() {
    let o = girthlab(&["constants", "--m", "2"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m must be ≥ 3"), "{}", stderr(&o));
    let o = girthlab(&["certify", "--theorem", "1", "--m", "2"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_exit_codes() {
    let o = girthlab(&["certify", "--theorem", "2", "--m", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict\tcertified"));

    let o = girthlab(
        &["certify", "--theorem", "2", "--m", "3", "--alpha", "0.34"],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict\tfailed"));

    let o = girthlab(&["certify", "--theorem", "1", "--m", "12"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict\tcertified"));

    let o = girthlab(&["certify", "--theorem", "2", "--m", "9"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = girthlab(&["certify", "--theorem", "3", "--m", "4"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = girthlab(
        &["certify", "--theorem", "1", "--m", "4", "--alpha", "0.3"],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_pipes_into_girth() {
    let g = girthlab(
        &["gen", "circulant", "--n", "9", "--offsets", "1,2,3,4"],
        None,
    );
    assert_eq!(g.status.code(), Some(0));
    let text = stdout(&g);
    assert!(text.starts_with("n 9\n0 1\n0 2\n"));
    let o = girthlab(&["girth", "-"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("girth\t3\ncycle\t"));

    let o = girthlab(&["girth", "-"], Some("n 3\n0 1\n1 2\n"));
    assert_eq!(stdout(&o), "girth\t-\n");
}

#[test]
fn gen_kinds_and_json_mirror() {
    for args in [
        vec!["gen", "outregular", "--n", "11", "--r", "4", "--seed", "3"],
        vec![
            "gen",
            "mfree",
            "--n",
            "10",
            "--m",
            "4",
            "--density",
            "0.6",
            "--seed",
            "3",
        ],
        vec!["gen", "tournament", "--n", "5"],
    ] {
        let a = girthlab(&args, None);
        let b = girthlab(&args, None);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
        girthlab::graph::parse_edge_list(&stdout(&a)).unwrap();
    }
    let o = girthlab(&["gen", "tournament", "--n", "3", "--json"], None);
    let d = girthlab::graph::from_json(&stdout(&o)).unwrap();
    assert_eq!(d.edge_count(), 3);
    let o = girthlab(&["gen", "outregular", "--n", "6", "--r", "3"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = girthlab(&["gen", "circulant", "--n", "8", "--offsets", "4"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fas_with_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "five_cycle.txt", FIVE_CYCLE);
    let o = girthlab(&["fas", &path, "--m", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("beta\t1\n"));
    assert!(text.contains("exact\ttrue\n"));
    assert!(text.contains("fact1\tholds\n"));
    assert!(text.contains("lemma2\tholds\n"));

    let o = girthlab(&["fas", &path, "--m", "5"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("length 5"));
}

#[test]
fn audit_table_and_strict() {
    let g = girthlab(&["gen", "circulant", "--n", "7", "--offsets", "1,2"], None);
    let graph = stdout(&g);
    let o = girthlab(
        &["audit", "lemma1", "-", "--m", "3", "--alpha", "0.35425"],
        Some(&graph),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# lemma1\nsubject\tlhs\trhs\tslack\tholds\n"));
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 14);
    let violated = text.contains("verdict\tviolated");
    let strict = girthlab(
        &[
            "audit", "lemma1", "-", "--m", "3", "--alpha", "0.35425", "--strict",
        ],
        Some(&graph),
    );
    assert_eq!(strict.status.code(), Some(if violated { 1 } else { 0 }));

    let o = girthlab(
        &["audit", "lemma45", "-", "--m", "3", "--json"],
        Some(&graph),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(matches!(
        Report::from_json(&stdout(&o)).unwrap().payload,
        Payload::AuditPair(_)
    ));

    // girth 3: not 3-free
    let o = girthlab(
        &["audit", "lemma6", "-", "--m", "3"],
        Some("n 3\n0 1\n1 2\n2 0\n"),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn find_cycle_and_stats() {
    let g = girthlab(
        &["gen", "circulant", "--n", "12", "--offsets", "1,2,3,4,5"],
        None,
    );
    let graph = stdout(&g);
    let o = girthlab(&["find-cycle", "-", "--m", "3"], Some(&graph));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("length\t3\n"));
    assert!(stdout(&o).contains("bfs_girth\t3\n"));

    let o = girthlab(&["find-cycle", "-", "--m", "3"], Some(FIVE_CYCLE));
    assert_eq!(o.status.code(), Some(1));

    let o = girthlab(&["stats", "-", "--detail"], Some(FIVE_CYCLE));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("transitive_triangles\t0\n"));
    assert!(text.contains("tau\t0.0000000000\n"));
    assert!(text.contains("u\tv\tp\tq\tt\tf\n0\t1\t1\t1\t0\t0\n"));
}

#[test]
fn parse_errors_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n 4\n0 1\n1 1\n");
    let o = girthlab(&["girth", &bad], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = girthlab(&["girth", "/nonexistent/graph.txt"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = girthlab(&["stats"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let g = girthlab(
        &["gen", "outregular", "--n", "30", "--r", "9", "--seed", "5"],
        None,
    );
    let path = write(dir.path(), "g.txt", &stdout(&g));
    let one = girthlab(&["stats", &path, "--json", "--threads", "1"], None);
    let four = girthlab(&["stats", &path, "--json", "--threads", "4"], None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let report = Report::from_json(&stdout(&one)).unwrap();
    assert_eq!(report.inputs.files.len(), 1);
    assert_eq!(report.inputs.files[0].sha256.len(), 64);

    let env = Command::new(env!("CARGO_BIN_EXE_girthlab"))
        .args([
            "certify",
            "--theorem",
            "2",
            "--m",
            "5",
            "--json",
            "--grid",
            "20000",
        ])
        .env("GIRTHLAB_THREADS", "2")
        .output()
        .unwrap();
    let plain = girthlab(
        &[
            "certify",
            "--theorem",
            "2",
            "--m",
            "5",
            "--json",
            "--grid",
            "20000",
        ],
        None,
    );
    assert_eq!(env.stdout, plain.stdout);
}
