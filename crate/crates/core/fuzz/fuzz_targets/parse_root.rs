#![no_main]

use e6core::rootsys::build_e6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let sys = build_e6();
    if let Ok(r) = sys.parse_root(text) {
        assert_eq!(sys.parse_root(&sys.root(r).to_string()), Ok(r));
    }
});
