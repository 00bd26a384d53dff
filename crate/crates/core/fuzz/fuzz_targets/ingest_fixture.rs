#![no_main]

use e6core::tablesio::{emit_records, ingest_str};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = ingest_str(text) {
        let again = ingest_str(&emit_records(&f.records)).expect("emitted fixture re-ingests");
        assert_eq!(again.records.len(), f.records.len());
    }
});
