//! Fixture ingestion, table generation and cell-level diffs.
//!
//! Fixtures are CSV files with the header `table,row,col,value,note`. Rows
//! and columns are signed root indices (T1 uses field names as its
//! column key). A note containing `paper-typo` marks a cell whose source
//! value is known to be wrong; such cells are reported but never fail a diff.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::commutator::{generate_all, CommutatorError, FormulaCase, FormulaSet, ListKind};
use crate::constants::{
    derive_constants, evaluate_table, special_pairs, ConstantTable, ConstantsError, ExtraspecialChoice,
};
use crate::rootgraph::{build_graph, parse_labels, EdgeRule, GraphError, GraphSign, IntMatrix};
use crate::rootsys::{build_e6, RootId, RootSystem};
use crate::signcalc::{Assignment, SignMonomial, SignVar};

#[derive(Debug, Error)]
pub enum TablesError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Commutator(#[from] CommutatorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Every table with a fixture: the twelve numbered tables and the six
/// formula lists (general/special × positive, negative, mixed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    Gpp,
    Gnn,
    Gmx,
    Spp,
    Snn,
    Smx,
}

impl TableId {
    pub const ALL: [TableId; 18] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
        TableId::T8,
        TableId::T9,
        TableId::T10,
        TableId::T11,
        TableId::T12,
        TableId::Gpp,
        TableId::Gnn,
        TableId::Gmx,
        TableId::Spp,
        TableId::Snn,
        TableId::Smx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
            TableId::T7 => "T7",
            TableId::T8 => "T8",
            TableId::T9 => "T9",
            TableId::T10 => "T10",
            TableId::T11 => "T11",
            TableId::T12 => "T12",
            TableId::Gpp => "GPP",
            TableId::Gnn => "GNN",
            TableId::Gmx => "GMX",
            TableId::Spp => "SPP",
            TableId::Snn => "SNN",
            TableId::Smx => "SMX",
        }
    }

    fn kind(self, col: &str) -> ValueKind {
        match self {
            TableId::T1 => match col {
                "name" => ValueKind::RootName,
                "tuple" => ValueKind::Tuple,
                _ => ValueKind::Int,
            },
            TableId::T2 => ValueKind::Var,
            TableId::T3 | TableId::T4 => ValueKind::Monomial,
            TableId::T5 | TableId::T6 => ValueKind::Sign,
            TableId::T7 | TableId::T8 | TableId::T9 | TableId::T10 | TableId::T11 | TableId::T12 => {
                ValueKind::Int
            }
            _ => ValueKind::Formula,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown table {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ValueKind {
    RootName,
    Tuple,
    Int,
    Sign,
    Var,
    Monomial,
    Formula,
}

/// Canonical form of a cell value, used for comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Canon {
    Root([i32; 6]),
    Text(String),
    Int(i64),
    Var(SignVar),
    Mono(SignMonomial),
    Formula(Option<i32>, SignMonomial),
}

/// Reads `x<target>(<monomial>)`, where the target is a signed root index or
/// `?` for a printed subscript that is not a root.
pub fn parse_formula_cell(text: &str) -> Result<(Option<i32>, SignMonomial), String> {
    let bad = || format!("bad formula cell {text:?}");
    let body = text.trim().strip_prefix('x').ok_or_else(bad)?;
    let open = body.find('(').ok_or_else(bad)?;
    let inner = body[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let target = match &body[..open] {
        "?" => None,
        t => Some(t.parse::<i32>().map_err(|_| bad())?),
    };
    if let Some(t) = target {
        RootId::new(t).map_err(|e| e.to_string())?;
    }
    let mono = inner.parse::<SignMonomial>().map_err(|e| e.to_string())?;
    Ok((target, mono))
}

fn canon(kind: ValueKind, text: &str, sys: &RootSystem) -> Result<Canon, String> {
    let t = text.trim();
    match kind {
        ValueKind::RootName => {
            let id = sys.parse_root(t).map_err(|e| e.to_string())?;
            Ok(Canon::Root(sys.root(id).coeffs()))
        }
        ValueKind::Tuple => {
            if t.len() == 6 && t.bytes().all(|b| b.is_ascii_digit()) {
                Ok(Canon::Text(t.to_string()))
            } else {
                Err(format!("bad tuple {t:?}"))
            }
        }
        ValueKind::Int => t.parse().map(Canon::Int).map_err(|_| format!("bad integer {t:?}")),
        ValueKind::Sign => match t {
            "1" => Ok(Canon::Int(1)),
            "-1" => Ok(Canon::Int(-1)),
            _ => Err(format!("bad sign {t:?}")),
        },
        ValueKind::Var => t.parse().map(Canon::Var).map_err(|e: crate::signcalc::ParseError| e.to_string()),
        ValueKind::Monomial => t.parse().map(Canon::Mono).map_err(|e: crate::signcalc::ParseError| e.to_string()),
        ValueKind::Formula => parse_formula_cell(t).map(|(a, b)| Canon::Formula(a, b)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub table: TableId,
    pub row: String,
    pub col: String,
    pub value: String,
    pub note: String,
    /// 1-based line in the source file; 0 for generated records.
    pub line: u64,
}

impl Record {
    pub fn is_flagged_typo(&self) -> bool {
        self.note.split(';').any(|n| n.trim() == "paper-typo")
    }

    /// The list or cross-reference number from an `n=NNN` note.
    pub fn number(&self) -> Option<u32> {
        self.note
            .split(';')
            .find_map(|n| n.trim().strip_prefix("n="))
            .and_then(|n| n.parse().ok())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fixture {
    pub table: Option<TableId>,
    pub records: Vec<Record>,
}

fn check_key(table: TableId, key: &str, is_col: bool) -> Result<(), String> {
    if table == TableId::T1 && is_col {
        return match key {
            "name" | "tuple" | "height" => Ok(()),
            _ => Err(format!("unknown T1 field {key:?}")),
        };
    }
    let i: i32 = key.trim().parse().map_err(|_| format!("bad root index {key:?}"))?;
    RootId::new(i).map(|_| ()).map_err(|e| e.to_string())
}

/// Parses fixture CSV text. All records must belong to one table; values
/// must parse for that table unless the cell is flagged as a typo.
pub fn ingest_str(text: &str) -> Result<Fixture, TablesError> {
    let sys = build_e6();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let expected = ["table", "row", "col", "value", "note"];
    if !headers.is_empty() {
        let names: Vec<&str> = headers.iter().collect();
        if names.len() < 4 || names.len() > 5 || names[..] != expected[..names.len()] {
            return Err(TablesError::Parse {
                line: 1,
                message: format!("header must be `table,row,col,value[,note]`, got {names:?}"),
            });
        }
    }
    let mut fixture = Fixture::default();
    for result in reader.records() {
        let rec = result?;
        let line = rec.position().map_or(0, |p| p.line());
        let err = |message: String| TablesError::Parse { line, message };
        if rec.len() < 4 || rec.len() > 5 {
            return Err(err(format!("expected 4 or 5 fields, got {}", rec.len())));
        }
        let table: TableId = rec[0].parse().map_err(err)?;
        match fixture.table {
            None => fixture.table = Some(table),
            Some(t) if t != table => return Err(err(format!("table {table} mixed into a {t} fixture"))),
            _ => {}
        }
        let record = Record {
            table,
            row: rec[1].trim().to_string(),
            col: rec[2].trim().to_string(),
            value: rec[3].trim().to_string(),
            note: rec.get(4).unwrap_or("").trim().to_string(),
            line,
        };
        check_key(table, &record.row, false).map_err(err)?;
        check_key(table, &record.col, true).map_err(err)?;
        let kind = table.kind(&record.col);
        if let Err(e) = canon(kind, &record.value, &sys) {
            if !record.is_flagged_typo() {
                return Err(err(e));
            }
        }
        fixture.records.push(record);
    }
    Ok(fixture)
}

pub fn ingest(path: &Path) -> Result<Fixture, TablesError> {
    ingest_str(&std::fs::read_to_string(path)?)
}

/// Writes records in the fixture schema. Output is LF-terminated and
/// byte-deterministic.
pub fn emit_records(records: &[Record]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["table", "row", "col", "value", "note"])
        .expect("writing to memory");
    for r in records {
        w.write_record([r.table.name(), &r.row, &r.col, &r.value, &r.note])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// The derived objects every table is generated from.
pub struct Engine {
    pub sys: RootSystem,
    pub choice: ExtraspecialChoice,
    pub symbolic: ConstantTable,
    pub numeric: ConstantTable,
    pub general: FormulaSet,
    pub special: FormulaSet,
}

impl Engine {
    /// E6 with the standard parameter labelling; the special case uses the
    /// all-positive assignment.
    pub fn new() -> Result<Self, TablesError> {
        Self::with_assignment(&Assignment::all_positive())
    }

    pub fn with_assignment(a: &Assignment) -> Result<Self, TablesError> {
        let sys = build_e6();
        let choice = ExtraspecialChoice::standard(&sys)?;
        let symbolic = derive_constants(&choice.seeds(), &sys)?;
        let numeric = evaluate_table(&symbolic, a);
        let general = generate_all(FormulaCase::General, &symbolic, &sys)?;
        let special = generate_all(FormulaCase::Special, &numeric, &sys)?;
        Ok(Engine { sys, choice, symbolic, numeric, general, special })
    }

    fn graph_matrix(&self, sign: GraphSign, labels: &str, paths: bool) -> Result<IntMatrix, TablesError> {
        let g = build_graph(sign, &parse_labels(labels)?, EdgeRule::Ascending, &self.numeric, &self.sys)?;
        Ok(if paths { g.path_counts()? } else { g.k_numbers()? })
    }

    /// Generated records for one table, in a deterministic order.
    pub fn generate(&self, table: TableId) -> Result<Vec<Record>, TablesError> {
        let mk = |row: String, col: String, value: String, note: String| Record {
            table,
            row,
            col,
            value,
            note,
            line: 0,
        };
        let mut out = Vec::new();
        let mono = |m: Option<SignMonomial>| m.expect("entry exists for root sums").to_string();
        match table {
            TableId::T1 => {
                for r in RootId::positives() {
                    let root = self.sys.root(r);
                    let k = r.index().to_string();
                    out.push(mk(k.clone(), "name".into(), root.to_string(), String::new()));
                    out.push(mk(k.clone(), "tuple".into(), root.tuple_string(), String::new()));
                    out.push(mk(k, "height".into(), root.height().to_string(), String::new()));
                }
            }
            TableId::T2 => {
                for e in self.choice.entries() {
                    out.push(mk(e.first.to_string(), e.second.to_string(), e.var.to_string(), String::new()));
                }
            }
            TableId::T3 => {
                for t in RootId::positives() {
                    if self.sys.height(t) < 2 {
                        continue;
                    }
                    for &(r, s) in &special_pairs(t, &self.sys)?[1..] {
                        out.push(mk(r.to_string(), s.to_string(), mono(self.symbolic.get(r, s)), String::new()));
                    }
                }
            }
            TableId::T4 => {
                for p in RootId::positives() {
                    for q in RootId::positives() {
                        if self.sys.sum_root(p, -q).is_some_and(|w| !w.is_positive()) {
                            out.push(mk(p.to_string(), (-q).to_string(), mono(self.symbolic.get(p, -q)), String::new()));
                        }
                    }
                }
            }
            TableId::T5 | TableId::T6 => {
                let sign = if table == TableId::T5 { 1 } else { -1 };
                for p in RootId::positives() {
                    for q in RootId::positives() {
                        let q = if sign == 1 { q } else { -q };
                        if self.sys.sum_root(p, q).is_some() {
                            out.push(mk(p.to_string(), q.to_string(), mono(self.numeric.get(p, q)), String::new()));
                        }
                    }
                }
            }
            TableId::T7 | TableId::T8 | TableId::T9 | TableId::T10 | TableId::T11 | TableId::T12 => {
                let (sign, labels, paths) = match table {
                    TableId::T7 => (GraphSign::Neg, "a,b,c,d,e,f", true),
                    TableId::T8 => (GraphSign::Neg, "a,b,c,d,e,f", false),
                    TableId::T9 => (GraphSign::Pos, "a,b,c,d,e,f", false),
                    TableId::T10 => (GraphSign::Neg, "b,c,d,e,f", true),
                    TableId::T11 => (GraphSign::Neg, "b,c,d,e,f", false),
                    _ => (GraphSign::Pos, "b,c,d,e,f", false),
                };
                let m = self.graph_matrix(sign, labels, paths)?;
                for i in 0..36 {
                    for j in 0..36 {
                        out.push(mk(
                            sign.root(i).to_string(),
                            sign.root(j).to_string(),
                            m.at(i, j).to_string(),
                            String::new(),
                        ));
                    }
                }
            }
            _ => {
                let (set, kind) = match table {
                    TableId::Gpp => (&self.general, ListKind::PosPos),
                    TableId::Gnn => (&self.general, ListKind::NegNeg),
                    TableId::Gmx => (&self.general, ListKind::Mixed),
                    TableId::Spp => (&self.special, ListKind::PosPos),
                    TableId::Snn => (&self.special, ListKind::NegNeg),
                    _ => (&self.special, ListKind::Mixed),
                };
                for nr in set.list(kind) {
                    let (target, coeff) = nr.rule.simple_term().expect("listed pairs have one term");
                    out.push(mk(
                        nr.rule.s.to_string(),
                        nr.rule.r.to_string(),
                        format!("x{target}({coeff})"),
                        format!("n={:03}", nr.no),
                    ));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffClass {
    Match,
    Mismatch,
    TypoSkipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub row: String,
    pub col: String,
    /// The fixture value; `None` when only the generator has the cell.
    pub expected: Option<String>,
    /// The generated value; `None` when only the fixture has the cell.
    pub actual: Option<String>,
    pub class: DiffClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub table: TableId,
    pub entries: Vec<DiffEntry>,
    /// Number of fixture records consumed by this diff.
    pub consumed: usize,
}

impl DiffReport {
    pub fn count(&self, class: DiffClass) -> usize {
        self.entries.iter().filter(|e| e.class == class).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DiffEntry> {
        self.entries.iter().filter(|e| e.class == DiffClass::Mismatch)
    }

    pub fn passed(&self) -> bool {
        self.count(DiffClass::Mismatch) == 0
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} ({} match, {} mismatch, {} flagged typo skipped)",
            self.table,
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(DiffClass::Match),
            self.count(DiffClass::Mismatch),
            self.count(DiffClass::TypoSkipped)
        )?;
        for e in self.mismatches() {
            writeln!(
                f,
                "  ({}, {}): fixture {} vs generated {}",
                e.row,
                e.col,
                e.expected.as_deref().unwrap_or("<absent>"),
                e.actual.as_deref().unwrap_or("<absent>")
            )?;
        }
        Ok(())
    }
}

/// Cell-by-cell comparison. Cells present on only one side are mismatches
/// unless the fixture flags them as typos.
pub fn diff(fixture: &Fixture, generated: &[Record], sys: &RootSystem) -> DiffReport {
    let table = fixture
        .table
        .or_else(|| generated.first().map(|r| r.table))
        .unwrap_or(TableId::T1);
    let gen: HashMap<(&str, &str), &Record> =
        generated.iter().map(|r| ((r.row.as_str(), r.col.as_str()), r)).collect();
    let mut seen: BTreeMap<(&str, &str), ()> = BTreeMap::new();
    let mut entries = Vec::new();
    for rec in &fixture.records {
        let key = (rec.row.as_str(), rec.col.as_str());
        seen.insert(key, ());
        let actual = gen.get(&key).map(|g| g.value.clone());
        let kind = table.kind(&rec.col);
        let same = match &actual {
            Some(a) => match (canon(kind, &rec.value, sys), canon(kind, a, sys)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            },
            None => rec.value.is_empty(),
        };
        let class = if rec.is_flagged_typo() {
            DiffClass::TypoSkipped
        } else if same {
            DiffClass::Match
        } else {
            DiffClass::Mismatch
        };
        entries.push(DiffEntry {
            row: rec.row.clone(),
            col: rec.col.clone(),
            expected: (!rec.value.is_empty()).then(|| rec.value.clone()),
            actual,
            class,
        });
    }
    for g in generated {
        if !seen.contains_key(&(g.row.as_str(), g.col.as_str())) {
            entries.push(DiffEntry {
                row: g.row.clone(),
                col: g.col.clone(),
                expected: None,
                actual: Some(g.value.clone()),
                class: DiffClass::Mismatch,
            });
        }
    }
    DiffReport {
        table,
        entries,
        consumed: fixture.records.len(),
    }
}

/// Result of diffing a whole fixture directory.
#[derive(Debug)]
pub struct VerifyReport {
    pub diffs: Vec<DiffReport>,
    pub total_records: usize,
    /// Fixture files holding a table that another file already covered.
    pub unreferenced: Vec<String>,
}

impl VerifyReport {
    pub fn coverage_complete(&self) -> bool {
        self.unreferenced.is_empty() && self.diffs.iter().map(|d| d.consumed).sum::<usize>() == self.total_records
    }

    pub fn passed(&self) -> bool {
        self.coverage_complete() && self.diffs.iter().all(DiffReport::passed)
    }
}

/// Diffs every `*.csv` fixture in `dir` against the engine. With `only`,
/// fixtures of other tables are skipped. A second file for the same table is
/// reported as unreferenced.
pub fn verify_dir(engine: &Engine, dir: &Path, only: Option<&[TableId]>) -> Result<VerifyReport, TablesError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    paths.sort();
    let mut report = VerifyReport { diffs: Vec::new(), total_records: 0, unreferenced: Vec::new() };
    for path in paths {
        let fixture = ingest(&path)?;
        if fixture.table.is_some_and(|t| only.is_some_and(|o| !o.contains(&t))) {
            continue;
        }
        report.total_records += fixture.records.len();
        let Some(table) = fixture.table else { continue };
        if report.diffs.iter().any(|d| d.table == table) {
            report.unreferenced.push(path.display().to_string());
            continue;
        }
        report.diffs.push(diff(&fixture, &engine.generate(table)?, &engine.sys));
    }
    report.diffs.sort_by_key(|d| d.table);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cells() {
        assert_eq!(parse_formula_cell("x-3(-a1)").unwrap(), (Some(-3), "-a1".parse().unwrap()));
        assert_eq!(parse_formula_cell("x?(1)").unwrap().0, None);
        assert!(parse_formula_cell("x40(1)").is_err());
        assert!(parse_formula_cell("y3(1)").is_err());
        assert!(parse_formula_cell("x3(1").is_err());
    }

    #[test]
    fn ingest_examples() {
        assert_eq!(ingest_str("").unwrap(), Fixture::default());
        let f = ingest_str("table,row,col,value,note\nT3,3,4,a12*b1,n=004\n");
        assert!(f.is_err(), "a12 is not a variable");
        let f = ingest_str("table,row,col,value,note\nT3,3,4,a1*a2*b1,n=004\n").unwrap();
        assert_eq!(f.records[0].number(), Some(4));
        let err = ingest_str("table,row,col,value,note\nT5,1,2,1,\nT5,1,2,2,\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3"), "{err}");
        assert!(ingest_str("table,row,col,value,note\nT5,1,2,,paper-typo\n").is_ok());
        assert!(ingest_str("table,row,col,value,note\nT5,1,2,1,\nT6,1,-3,1,\n").is_err());
        assert!(ingest_str("a,b\nT5,1,2\n").is_err());
        assert!(ingest_str("table,row,col,value,note\nT7,-1,-99,0,\n").is_err());
    }

    #[test]
    fn roundtrip_and_mutation() {
        let engine = Engine::new().unwrap();
        for t in [TableId::T1, TableId::T4, TableId::T8, TableId::Gmx] {
            let gen = engine.generate(t).unwrap();
            let text = emit_records(&gen);
            let back = ingest_str(&text).unwrap();
            let strip = |rs: &[Record]| rs.iter().map(|r| (r.row.clone(), r.col.clone(), r.value.clone(), r.note.clone())).collect::<Vec<_>>();
            assert_eq!(strip(&back.records), strip(&gen));
            let report = diff(&back, &gen, &engine.sys);
            assert!(report.passed());

            let mut bad = back.clone();
            let v = &mut bad.records[5].value;
            *v = match v.parse::<i64>() {
                Ok(n) => (n + 1).to_string(),
                Err(_) if v.starts_with('-') => v[1..].to_string(),
                Err(_) => format!("-{v}"),
            };
            let report = diff(&bad, &gen, &engine.sys);
            assert_eq!(report.count(DiffClass::Mismatch), 1, "{t}");
        }
    }

    #[test]
    fn table_one_generated() {
        let engine = Engine::new().unwrap();
        let t1 = engine.generate(TableId::T1).unwrap();
        assert_eq!(t1.len(), 108);
        assert_eq!(t1[0].value, "a");
        assert_eq!(t1[107].value, "11");
    }
}
