//! Replays the checked-in fuzz seed corpora on stable so the parsers'
//! round-trip assertions run in every test pass.

use std::path::{Path, PathBuf};

use subsquare::catalog;
use subsquare::format::{parse_any, parse_json, parse_text, to_json, to_text};
use subsquare::transform::canonical_form;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let bytes = std::fs::read(&path).unwrap();
            (path, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn text_seeds() {
    let mut parsed = 0;
    for (_, bytes) in seeds("parse_text") {
        if let Ok(sq) = parse_text(std::str::from_utf8(&bytes).unwrap()) {
            assert_eq!(parse_text(&to_text(&sq)).unwrap(), sq);
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn json_seeds() {
    let mut parsed = 0;
    for (_, bytes) in seeds("parse_json") {
        if let Ok(sq) = parse_json(std::str::from_utf8(&bytes).unwrap()) {
            assert_eq!(parse_json(&to_json(&sq)).unwrap(), sq);
            parsed += 1;
        }
    }
    assert!(parsed >= 2);
}

#[test]
fn any_seeds() {
    for (path, bytes) in seeds("parse_any") {
        let sq = parse_any(std::str::from_utf8(&bytes).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let canon = canonical_form(&sq);
        assert_eq!(canonical_form(&canon), canon);
    }
}

#[test]
fn catalog_seeds() {
    for (path, bytes) in seeds("catalog_parse") {
        let loaded = catalog::parse(&bytes, &path).unwrap();
        assert_eq!(loaded.stats.total as usize, loaded.records.len());
        let truncated = path.ends_with("truncated_tail");
        assert_eq!(loaded.warnings, usize::from(truncated));
    }
}
