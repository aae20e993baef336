use std::path::PathBuf;
use std::process::Command;

use persinet::corpus::{corpus_load, document, ENTRIES};
use persinet::dot::emit_dot;
use persinet::format::{parse_lts, parse_net, parse_pattern, print_lts, print_net, print_pattern};
use persinet_core::lts::build_rg;
use persinet_core::patterns::builtin_pattern;

#[test]
fn corpus_documents_round_trip() {
    for name in ENTRIES {
        let e = corpus_load(name).unwrap();
        let back = parse_net(&print_net(&e.net)).unwrap();
        assert_eq!(print_net(&back), print_net(&e.net), "{name}");
        if e.net.sum_tags().is_none() {
            assert_eq!(back, e.net, "{name}");
        }
        if let Some(l) = &e.lts {
            assert_eq!(parse_lts(&print_lts(l)).unwrap(), *l, "{name}");
        }
    }
    for file in ["ts1.lts", "ts2.lts", "ts9.lts"] {
        let l = parse_lts(document(file).unwrap()).unwrap();
        assert_eq!(parse_lts(&print_lts(&l)).unwrap(), l, "{file}");
    }
    for p in ["nonpers", "nonDC"] {
        let p = builtin_pattern(p).unwrap();
        assert_eq!(parse_pattern(&print_pattern(&p)).unwrap(), p);
    }
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn fig1_dot_matches_golden_file() {
    let net = corpus_load("fig1_basic").unwrap().net;
    let (g, _) = build_rg(&net, 100).unwrap();
    let dot = emit_dot(&g, None);
    assert_eq!(dot, emit_dot(&build_rg(&net, 100).unwrap().0, None));
    assert_eq!(dot.matches("[label=").count(), 18);
    assert_eq!(dot, std::fs::read_to_string(golden("fig1_basic.dot")).unwrap());
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_persinet")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn exit_codes() {
    let (code, out, _) = cli(&["persistence", "fig1_basic"]);
    assert_eq!((code, out.lines().next()), (0, Some("persistent no")));

    let (code, _, err) = cli(&["classify", "no_such_entry"]);
    assert_eq!(code, 2, "{err}");

    let dir = std::env::temp_dir().join(format!("persinet-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.net");
    std::fs::write(&bad, "net bad\nplace p\ntrans t\narc p -> t 0\n").unwrap();
    let (code, _, err) = cli(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");

    let unbounded = dir.join("grow.net");
    std::fs::write(&unbounded, "net grow\nplace p init 1\ntrans t\narc p -> t\narc t -> p 2\n").unwrap();
    let (code, _, _) = cli(&["--max-states", "20", "persistence", unbounded.to_str().unwrap()]);
    assert_eq!(code, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_persinet"))
        .args(["persistence", unbounded.to_str().unwrap()])
        .env("PERSINET_MAX_STATES", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let (code, _, _) = cli(&["fairness", "fig6_unfair", "--lasso", " ; "]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_dump_has_versioned_header() {
    let (code, out, _) = cli(&["--json", "rg", "fig1_basic"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["format"], persinet::cli::DUMP_FORMAT);
    assert_eq!(v["result"]["states"], 8);
    assert_eq!(v["result"]["edges"], 10);
}

#[test]
fn explore_prints_replayable_nets() {
    let (code, out, _) = cli(&["explore", "--seeds", "919..920", "--theorem", "DC-main"]);
    assert_eq!(code, 0);
    let net: String = out
        .lines()
        .skip_while(|l| !l.starts_with("violation rand"))
        .skip(1)
        .take_while(|l| l.starts_with("    "))
        .map(|l| format!("{}\n", l.trim()))
        .collect();
    let n = parse_net(&net).unwrap();
    assert_eq!(n.name(), "rand919");
}
