#![no_main]

use e6core::signcalc::Assignment;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = Assignment::parse_csv(text) {
        assert_eq!(a.negative_mask() >> 30, 0);
    }
});
