#![no_main]

use e6core::constants::{derive_constants, evaluate_table, ExtraspecialChoice};
use e6core::field::{PrimeField, Rationals};
use e6core::rootsys::build_e6;
use e6core::signcalc::Assignment;
use e6core::unipotent::{parse_word, Collector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_word(text, &Rationals);
    let f = PrimeField::new(7).unwrap();
    let Ok(w) = parse_word(text, &f) else { return };
    if w.len() > 16 {
        return;
    }
    let sys = build_e6();
    let sym = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
    let table = evaluate_table(&sym, &Assignment::all_positive());
    let col = Collector::new(&sys, &table, f).unwrap();
    if let Ok(x) = col.collect(&w) {
        assert!(col.multiply(&x, &col.invert(&x)).is_identity(&f));
    }
});
