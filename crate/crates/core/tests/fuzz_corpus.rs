//! Replays the checked-in fuzz corpus through the parsers and runs the same
//! invariants on arbitrary strings.

use std::path::PathBuf;

use proptest::prelude::*;

use e6core::field::{Field, FieldSpec, PrimeField, Rationals};
use e6core::rootgraph::parse_labels;
use e6core::rootsys::build_e6;
use e6core::signcalc::{Assignment, SignMonomial};
use e6core::tablesio::{emit_records, ingest_str, parse_formula_cell};
use e6core::unipotent::parse_word;

fn check(target: &str, text: &str) {
    match target {
        "parse_monomial" => {
            if let Ok(m) = SignMonomial::parse(text) {
                assert_eq!(SignMonomial::parse(&m.to_string()), Ok(m));
            }
        }
        "parse_assignment" => {
            if let Ok(a) = Assignment::parse_csv(text) {
                assert_eq!(a.negative_mask() >> 30, 0);
            }
        }
        "ingest_fixture" => {
            if let Ok(f) = ingest_str(text) {
                let again = ingest_str(&emit_records(&f.records)).expect("emitted fixture re-ingests");
                assert_eq!(again.records.len(), f.records.len());
            }
        }
        "parse_word" => {
            let _ = parse_word(text, &Rationals);
            let _ = parse_word(text, &PrimeField::new(7).unwrap());
        }
        "parse_formula_cell" => {
            let _ = parse_formula_cell(text);
        }
        "parse_root" => {
            let sys = build_e6();
            if let Ok(r) = sys.parse_root(text) {
                assert_eq!(sys.parse_root(&sys.root(r).to_string()), Ok(r));
            }
        }
        "parse_scalar" => {
            let _ = text.parse::<FieldSpec>();
            let _ = Rationals.parse(text);
            let _ = PrimeField::new(101).unwrap().parse(text);
        }
        "parse_labels" => {
            let _ = parse_labels(text);
        }
        other => panic!("no check for target {other}"),
    }
}

const TARGETS: [&str; 8] = [
    "parse_monomial",
    "parse_assignment",
    "ingest_fixture",
    "parse_word",
    "parse_formula_cell",
    "parse_root",
    "parse_scalar",
    "parse_labels",
];

#[test]
fn corpus_seeds_replay() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus");
    for target in TARGETS {
        let mut seeds = 0;
        for e in std::fs::read_dir(root.join(target)).unwrap() {
            let text = std::fs::read_to_string(e.unwrap().path()).unwrap();
            check(target, &text);
            seeds += 1;
        }
        assert!(seeds > 0, "{target} has no seeds");
    }
}

#[test]
fn seeds_that_should_parse() {
    let sys = build_e6();
    assert!(sys.parse_root("a+2b+2c+3d+2e+f").is_ok());
    assert!(SignMonomial::parse("-a1*a0*g6*d3").is_ok());
    assert!(parse_formula_cell("x-22(-a3*b7)").is_ok());
    assert_eq!(parse_labels("b,c,d,e,f").unwrap().len(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn arbitrary_text_never_panics(target in 0usize..TARGETS.len(), text in "\\PC{0,40}") {
        check(TARGETS[target], &text);
    }

    #[test]
    fn near_valid_text_never_panics(
        target in 0usize..TARGETS.len(),
        text in "[-+*/,:?()xqfp0-9a-g \\n]{0,40}",
    ) {
        check(TARGETS[target], &text);
    }

    #[test]
    fn near_valid_fixtures_never_panic(body in "(T[0-9]{1,2}|GPP|SMX),-?[0-9]{1,2},-?[0-9a-z]{1,6},[-a-z0-9*()x?]{0,8},(n=[0-9]{3})?(;?paper-typo)?") {
        check("ingest_fixture", &format!("table,row,col,value,note\n{body}\n"));
    }
}
