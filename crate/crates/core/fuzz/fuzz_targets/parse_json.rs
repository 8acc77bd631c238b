#![no_main]

use libfuzzer_sys::fuzz_target;
use subsquare::format::{parse_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sq) = parse_json(text) {
        assert_eq!(parse_json(&to_json(&sq)).unwrap(), sq);
    }
});
