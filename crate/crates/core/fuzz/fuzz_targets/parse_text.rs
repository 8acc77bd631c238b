#![no_main]

use libfuzzer_sys::fuzz_target;
use subsquare::format::{parse_text, to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sq) = parse_text(text) {
        let printed = to_text(&sq);
        assert_eq!(parse_text(&printed).unwrap(), sq);
        let _ = subsquare::verify(&sq);
    }
});
