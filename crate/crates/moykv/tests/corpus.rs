//! Properties of the shipped diagram corpus.

use std::path::PathBuf;

use moykv::diagram::{parse_diagrams, SliceDiagram};
use moykv::moy_bracket::MoyEngine;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("corpus")
}

fn corpus() -> Vec<SliceDiagram> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "moy"))
        .collect();
    files.sort();
    files
        .iter()
        .flat_map(|p| parse_diagrams(&std::fs::read_to_string(p).unwrap()).unwrap())
        .collect()
}

#[test]
fn brackets_have_integer_exponents() {
    let engine = MoyEngine::new();
    let mut checked = 0;
    for d in corpus().iter().filter(|d| d.kind.is_oriented()) {
        for n in 1..=5 {
            let v = engine.knotted(d, n).unwrap();
            assert!(v.has_integer_exponents(), "{} at N={n}: {v}", d.name);
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn strict_corpus_run_passes() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let dir = corpus_dir();
    let code = moykv::cli::run(["moykv", "corpus", "--strict", dir.to_str().unwrap()], &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let cases = report["reports"].as_array().unwrap();
    assert!(cases.len() > 300);
    assert!(cases.iter().all(|c| c["status"] == "pass"));
}
