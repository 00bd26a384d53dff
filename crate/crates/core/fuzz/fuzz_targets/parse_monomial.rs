#![no_main]

use e6core::signcalc::SignMonomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = SignMonomial::parse(text) {
        assert_eq!(SignMonomial::parse(&m.to_string()), Ok(m));
    }
});
