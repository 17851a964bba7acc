use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use b0vpg::family::family_member;
use b0vpg::io::write_graph;
use b0vpg_ffi::*;

fn parse(text: &str) -> *mut B0vpgGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { b0vpg_graph_parse(c.as_ptr(), &mut g) },
        B0vpgStatus::Ok
    );
    g
}

fn recognize(g: *const B0vpgGraph) -> *mut B0vpgResult {
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { b0vpg_recognize(g, 0, 0, -1, &mut r) },
        B0vpgStatus::Ok
    );
    r
}

fn last_error() -> String {
    let p = b0vpg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn accept_paths() {
    let g = b0vpg_graph_new(3);
    unsafe {
        assert_eq!(b0vpg_graph_add_edge(g, 0, 1), B0vpgStatus::Ok);
        assert_eq!(b0vpg_graph_add_edge(g, 1, 2), B0vpgStatus::Ok);
        assert_eq!(b0vpg_graph_vertex_count(g), 3);
    }
    let r = recognize(g);
    unsafe {
        assert_eq!(b0vpg_result_verdict(r), B0vpgVerdict::Accept);
        assert_eq!(b0vpg_result_path_count(r), 3);
        let mut paths = [B0vpgPath::default(); 3];
        for (i, p) in paths.iter_mut().enumerate() {
            assert_eq!(b0vpg_result_path(r, i, p), B0vpgStatus::Ok);
            assert_eq!(p.vertex, i);
        }
        let meets = |a: &B0vpgPath, b: &B0vpgPath| {
            let rect = |p: &B0vpgPath| {
                if p.horizontal == 1 {
                    (p.lo, p.hi, p.line, p.line)
                } else {
                    (p.line, p.line, p.lo, p.hi)
                }
            };
            let (a, b) = (rect(a), rect(b));
            a.0.max(b.0) <= a.1.min(b.1) && a.2.max(b.2) <= a.3.min(b.3)
        };
        assert!(meets(&paths[0], &paths[1]) && meets(&paths[1], &paths[2]));
        assert!(!meets(&paths[0], &paths[2]));

        let mut p = B0vpgPath::default();
        assert_eq!(
            b0vpg_result_path(r, 3, &mut p),
            B0vpgStatus::InvalidArgument
        );
        let (mut k, mut len) = (0, 0);
        assert_eq!(
            b0vpg_result_certificate(r, &mut k, ptr::null_mut(), 0, &mut len),
            B0vpgStatus::WrongVerdict
        );
        let json = b0vpg_result_to_json(r);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"paths\""));
        b0vpg_string_free(json);
        b0vpg_result_free(r);
        b0vpg_graph_free(g);
    }
}

#[test]
fn reject_certificate() {
    let g = parse(&write_graph(&family_member(0), None));
    let r = recognize(g);
    unsafe {
        assert_eq!(b0vpg_result_verdict(r), B0vpgVerdict::Reject);
        assert_eq!(b0vpg_result_path_count(r), 0);
        let (mut k, mut len) = (99, 0);
        let mut small = [0usize; 4];
        assert_eq!(
            b0vpg_result_certificate(r, &mut k, small.as_mut_ptr(), small.len(), &mut len),
            B0vpgStatus::BufferTooSmall
        );
        assert_eq!(len, 10);
        let mut buf = vec![0usize; len];
        assert_eq!(
            b0vpg_result_certificate(r, &mut k, buf.as_mut_ptr(), buf.len(), &mut len),
            B0vpgStatus::Ok
        );
        assert_eq!(k, 0);
        assert_eq!(buf, (0..10).collect::<Vec<_>>());
        let json = b0vpg_result_to_json(r);
        assert!(CStr::from_ptr(json)
            .to_str()
            .unwrap()
            .contains("\"reject\""));
        b0vpg_string_free(json);
        b0vpg_result_free(r);
        b0vpg_graph_free(g);
    }
}

#[test]
fn seeded_recognition_agrees() {
    let g = parse(&write_graph(&family_member(1), None));
    for (use_seed, seed, start) in [(0, 0, -1), (1, 5, 0), (1, 77, 3), (0, 0, 1000)] {
        let mut r = ptr::null_mut();
        unsafe {
            assert_eq!(
                b0vpg_recognize(g, use_seed, seed, start, &mut r),
                B0vpgStatus::Ok
            );
            assert_eq!(b0vpg_result_verdict(r), B0vpgVerdict::Reject);
            b0vpg_result_free(r);
        }
    }
    unsafe { b0vpg_graph_free(g) };
}

#[test]
fn not_block_graph() {
    let g = parse("p 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    let r = recognize(g);
    unsafe {
        assert_eq!(b0vpg_result_verdict(r), B0vpgVerdict::NotBlockGraph);
        let json = b0vpg_result_to_json(r);
        assert!(CStr::from_ptr(json)
            .to_str()
            .unwrap()
            .contains("not_block_graph"));
        b0vpg_string_free(json);
        b0vpg_result_free(r);
        b0vpg_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new("p 2 1\ne 1 3\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(b0vpg_graph_parse(bad.as_ptr(), &mut g), B0vpgStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("line 2"), "{}", last_error());

        assert_eq!(
            b0vpg_graph_parse(ptr::null(), &mut g),
            B0vpgStatus::NullPointer
        );
        assert_eq!(
            b0vpg_graph_add_edge(ptr::null_mut(), 0, 1),
            B0vpgStatus::NullPointer
        );

        let g = b0vpg_graph_new(2);
        assert_eq!(b0vpg_graph_add_edge(g, 0, 0), B0vpgStatus::InvalidArgument);
        assert_eq!(b0vpg_graph_add_edge(g, 0, 5), B0vpgStatus::InvalidArgument);
        assert!(last_error().contains('5'));
        let mut r = ptr::null_mut();
        assert_eq!(
            b0vpg_recognize(g, 0, 0, -1, ptr::null_mut()),
            B0vpgStatus::NullPointer
        );
        assert_eq!(
            b0vpg_recognize(ptr::null(), 0, 0, -1, &mut r),
            B0vpgStatus::NullPointer
        );
        assert!(b0vpg_result_to_json(ptr::null()).is_null());
        b0vpg_graph_free(g);
        b0vpg_graph_free(ptr::null_mut());
        b0vpg_result_free(ptr::null_mut());
        b0vpg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/b0vpg.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "b0vpg_graph_new",
        "b0vpg_graph_parse",
        "b0vpg_recognize",
        "b0vpg_result_certificate",
        "b0vpg_result_to_json",
        "b0vpg_last_error",
        "typedef struct B0vpgGraph B0vpgGraph",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // Syntax-check the header with a C compiler when one is installed.
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping header compile check");
        return;
    };
    assert!(status.success());
}
