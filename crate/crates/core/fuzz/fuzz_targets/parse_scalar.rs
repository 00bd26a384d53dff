#![no_main]

use e6core::field::{Field, FieldSpec, PrimeField, Rationals};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = text.parse::<FieldSpec>();
    let _ = Rationals.parse(text);
    let _ = PrimeField::new(101).unwrap().parse(text);
});
