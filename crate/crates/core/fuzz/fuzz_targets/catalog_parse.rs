#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use subsquare::catalog;

fuzz_target!(|data: &[u8]| {
    if let Ok(loaded) = catalog::parse(data, Path::new("fuzz.jsonl")) {
        assert_eq!(loaded.stats.total as usize, loaded.records.len());
        assert!(loaded.warnings <= 1);
    }
});
