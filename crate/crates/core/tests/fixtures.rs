use std::path::Path;

use e6core::tablesio::{verify_dir, Engine};

#[test]
fn every_fixture_matches() {
    let engine = Engine::new().unwrap();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let report = verify_dir(&engine, &dir, None).unwrap();
    for d in &report.diffs {
        print!("{d}");
    }
    assert!(report.coverage_complete(), "unreferenced: {:?}", report.unreferenced);
    assert!(report.passed());
}
