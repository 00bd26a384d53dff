#![no_main]

use e6core::tablesio::parse_formula_cell;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_formula_cell(text);
    }
});
