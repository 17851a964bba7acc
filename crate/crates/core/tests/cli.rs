use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use b0vpg::family::family_member;
use b0vpg::io::{parse_representation, write_graph, CertificateFile};
use b0vpg::Graph;
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_b0vpg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, write_graph(g, None)).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn n5() -> Graph {
    family_member(0)
}

fn wheel4() -> Graph {
    let mut g = Graph::cycle(4);
    let hub = g.add_vertex();
    for v in 0..4 {
        g.add_edge(hub, v).unwrap();
    }
    g
}

#[test]
fn recognize_rejects_n5_with_full_certificate() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "n5.graph", &n5());
    let out = dir.path().join("cert.json");
    let o = bin(&["recognize", s(&input), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let cert: CertificateFile = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        cert,
        CertificateFile::Reject {
            family_k: 0,
            vertices: (1..=10).collect()
        }
    );
}

#[test]
fn recognize_accepts_path_and_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "p5.graph", &Graph::path(5));
    let rep = dir.path().join("rep.json");
    let o = bin(&["recognize", s(&input), "--out", s(&rep), "--ascii"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let ascii = String::from_utf8(o.stdout).unwrap();
    assert!(ascii.contains("1: "), "{ascii}");
    let file = parse_representation(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(file.paths.len(), 5);
    let o = bin(&["verify", s(&input), s(&rep)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn recognize_writes_json_to_stdout_without_out() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k3.graph", &Graph::complete(3));
    let o = bin(&["recognize", s(&input)]);
    assert_eq!(o.status.code(), Some(0));
    let file = parse_representation(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(file.to_representation(3).is_ok());
}

#[test]
fn recognize_four_cycle_is_not_a_block_graph() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.graph", &Graph::cycle(4));
    let o = bin(&["recognize", s(&input)]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "not_block_graph");
    assert_eq!(v["block"].as_array().unwrap().len(), 4);
}

#[test]
fn recognize_seed_and_start_block_do_not_change_the_verdict() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "f1.graph", &family_member(1));
    for extra in [
        &[][..],
        &["--seed", "9"],
        &["--start-block", "5"],
        &["--start-block", "999"],
    ] {
        let mut args = vec!["recognize", s(&input)];
        args.extend_from_slice(extra);
        assert_eq!(bin(&args).status.code(), Some(1), "{extra:?}");
    }
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "p 3 1\ne 1 5\n").unwrap();
    let o = bin(&["recognize", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1, "{msg}");
    assert!(msg.contains("line 2"), "{msg}");
    assert_eq!(
        bin(&["recognize", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["family"]).status.code(), Some(2));
}

#[test]
fn verify_reports_mismatches() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "k3.graph", &Graph::complete(3));
    let good = dir.path().join("good.json");
    fs::write(
        &good,
        r#"{"grid":{"rows":1,"cols":1},"paths":[
            {"v":1,"dir":"H","line":0,"lo":0,"hi":0},
            {"v":2,"dir":"H","line":0,"lo":0,"hi":0},
            {"v":3,"dir":"V","line":0,"lo":0,"hi":0}]}"#,
    )
    .unwrap();
    assert_eq!(bin(&["verify", s(&input), s(&good)]).status.code(), Some(0));

    let broken = dir.path().join("broken.json");
    fs::write(
        &broken,
        r#"{"grid":{"rows":2,"cols":2},"paths":[
            {"v":1,"dir":"H","line":0,"lo":0,"hi":1},
            {"v":2,"dir":"H","line":1,"lo":0,"hi":1},
            {"v":3,"dir":"V","line":0,"lo":0,"hi":1}]}"#,
    )
    .unwrap();
    let o = bin(&["verify", s(&input), s(&broken)]);
    assert_eq!(o.status.code(), Some(1));
    let msg = String::from_utf8(o.stderr).unwrap();
    assert!(msg.contains("mismatch 1 2"), "{msg}");

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{").unwrap();
    assert_eq!(
        bin(&["verify", s(&input), s(&garbage)]).status.code(),
        Some(2)
    );
}

#[test]
fn family_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k0");
    assert_eq!(
        bin(&["family", "--k", "0", "--out", s(&out)]).status.code(),
        Some(0)
    );
    let files: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files, vec!["f10_0.graph"]);
    let g = b0vpg::io::parse_graph(&fs::read_to_string(out.join("f10_0.graph")).unwrap()).unwrap();
    assert_eq!(g.n(), 10);

    let out = dir.path().join("k1");
    assert_eq!(
        bin(&["family", "--k", "1", "--out", s(&out)]).status.code(),
        Some(0)
    );
    let files: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files, vec!["f19_0.graph"]);
}

#[test]
fn family_check_table() {
    let dir = TempDir::new().unwrap();
    let o = bin(&[
        "family",
        "--max-vertices",
        "28",
        "--check",
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let table = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<&str>> = table
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][..4], ["0", "10", "6", "5"]);
    assert_eq!(rows[1], ["1", "19", "12", "10", "ok", "yes"]);
    assert_eq!(rows[2], ["2", "28", "18", "15", "ok", "yes"]);
}

#[test]
fn oracle_commands() {
    let dir = TempDir::new().unwrap();
    for (name, g, code) in [
        ("k4", Graph::complete(4), 0),
        ("k7", Graph::complete(7), 0),
        ("w4", wheel4(), 1),
        ("p8", Graph::path(8), 2),
    ] {
        let input = write(&dir, name, &g);
        let o = bin(&["oracle", s(&input)]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        if code == 2 {
            let msg = String::from_utf8(o.stderr).unwrap();
            assert!(msg.contains("recognize"), "{msg}");
        }
    }
}
