use std::path::{Path, PathBuf};
use std::process::Command;

use glink::cli::{run, CONVENTION_VERSION};

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn glink(args: &[&str]) -> (i32, String) {
    let mut full = vec!["glink", "--no-cache"];
    full.extend_from_slice(args);
    let o = run(full);
    (o.code, o.stdout)
}

#[test]
fn invariant_examples() {
    assert_eq!(glink(&["invariant", &corpus("unknot.braid"), "--rank", "3"]), (0, "q^2 + 1 + q^-2\n".into()));
    let (code, out) = glink(&["invariant", &corpus("trefoil+.braid"), "--rank", "2", "--gauge", "sl"]);
    assert_eq!(code, 0);
    assert!(out.contains("/2)"), "{out}");
    let (_, json) = glink(&["invariant", &corpus("trefoil+.braid"), "--rank", "2", "--gauge", "sl", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["terms"].as_object().unwrap().keys().all(|k| k.ends_with("/2")));
}

#[test]
fn custom_gauge_matches_sl() {
    let sl = glink(&["invariant", &corpus("hopf+.braid"), "--rank", "2", "--gauge", "sl"]);
    let custom = glink(&["invariant", &corpus("hopf+.braid"), "--rank", "2", "--gauge", "custom", "--c=-q^(1/2)"]);
    assert_eq!(sl, custom);
    assert_eq!(glink(&["invariant", &corpus("hopf+.braid"), "--gauge", "custom"]).0, 2);
}

#[test]
fn homology_examples() {
    assert_eq!(glink(&["homology", &corpus("unknot.braid"), "--format", "json"]), (0, "{\"(0,-1)\":1,\"(0,1)\":1}\n".into()));
    assert_eq!(glink(&["homology", &corpus("hopf+.pd")]), glink(&["homology", &corpus("hopf+.braid")]));
    let (_, lee) = glink(&["homology", &corpus("hopf+.braid"), "--deform", "P=X^2-1", "--format", "json"]);
    assert_eq!(lee, "{\"0\":2,\"2\":2}\n");
    assert_eq!(glink(&["homology", &corpus("hopf+.braid"), "--deform", "X^2", "--sigma", "1"]).0, 2);
}

#[test]
fn split_example() {
    let (code, out) = glink(&["split", &corpus("hopf+.braid"), "--sigma", "1,-1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let m = v.as_object().unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.values().all(|x| x["total"] == 1));
}

#[test]
fn verify_examples() {
    let (code, out) = glink(&["verify", "--all", "--rank", "2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), glink::verify::SUITES.len());
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert_eq!(glink(&["verify", "hecke", "-n", "4"]).0, 0);
    assert_eq!(glink(&["verify", "moy", "--rank", "5"]).0, 0);
    let (code, out) = glink(&["verify", "functoriality", &corpus("trefoil+.braid"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["cases"], 3);
    assert_eq!(glink(&["verify", "bogus"]).0, 2);
    assert_eq!(glink(&["verify"]).0, 2);
}

#[test]
fn dot_action() {
    let (code, out) = glink(&["dot", &corpus("unknot.braid"), "--at", "1", "--format", "json"]);
    assert_eq!(code, 0);
    // X on span{1, X}: 1 -> X, X -> 0
    assert_eq!(out, "{\"0\":[[\"0\",\"0\"],[\"1\",\"0\"]]}\n");
    assert_eq!(glink(&["dot", &corpus("unknot.braid"), "--at", "9"]).0, 2);
}

#[test]
fn input_errors() {
    assert_eq!(glink(&["invariant", "does-not-exist.braid"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.braid");
    std::fs::write(&bad, "strands=2; s5").unwrap();
    assert_eq!(glink(&["invariant", bad.to_str().unwrap()]).0, 2);
    let colored = dir.path().join("colored.braid");
    std::fs::write(&colored, "strands=2; colors=2,2; s1 s1").unwrap();
    assert_eq!(glink(&["invariant", colored.to_str().unwrap(), "--rank", "3"]).0, 0);
    assert_eq!(glink(&["homology", colored.to_str().unwrap()]).0, 3);
    assert_eq!(glink(&["frobnicate"]).0, 2);
    assert_eq!(glink(&["--help"]).0, 0);
}

#[test]
fn convert_round_trip() {
    for f in ["trefoil+", "figure-eight", "t3-3"] {
        let (code, pd) = glink(&["convert", &corpus(&format!("{f}.braid"))]);
        assert_eq!(code, 0);
        assert_eq!(pd, std::fs::read_to_string(corpus(&format!("{f}.pd"))).unwrap());
    }
}

#[test]
fn corpus_files_match_table() {
    for (name, braid) in glink::corpus::CORPUS {
        let file = std::fs::read_to_string(corpus(&format!("{name}.braid"))).unwrap();
        assert_eq!(file.trim(), *braid);
        let d = glink::corpus::diagram(name).unwrap();
        assert_eq!(std::fs::read_to_string(corpus(&format!("{name}.pd"))).unwrap(), d.to_pd_json());
    }
}

fn cache_run(dir: &Path, args: &[&str]) -> (i32, String) {
    let mut full = vec!["glink".to_string(), "--cache-dir".into(), dir.to_string_lossy().into_owned()];
    full.extend(args.iter().map(|s| s.to_string()));
    let o = run(full);
    (o.code, o.stdout)
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", &corpus("trefoil+.braid")];
    let miss = cache_run(dir.path(), &args);
    let files: Vec<PathBuf> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let hit = cache_run(dir.path(), &args);
    assert_eq!(miss, hit);
    assert_eq!(miss, glink(&args));
    // entries are looked up, not recomputed: a planted value is returned verbatim
    std::fs::write(&files[0], "planted\n").unwrap();
    assert_eq!(cache_run(dir.path(), &args).1, "planted\n");
    assert!(!CONVENTION_VERSION.is_empty());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_glink");
    let ok = Command::new(bin).args(["--no-cache", "invariant", &corpus("unknot.braid"), "--rank", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "q^2 + 1 + q^-2\n");
    let missing = Command::new(bin).args(["invariant", "nope.braid"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
}
