#![no_main]

use libfuzzer_sys::fuzz_target;
use subsquare::format::parse_any;
use subsquare::transform::canonical_form;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sq) = parse_any(text) {
        let canon = canonical_form(&sq);
        assert_eq!(canonical_form(&canon), canon);
    }
});
