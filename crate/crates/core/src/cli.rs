//! Command-line front end for the `e6` binary.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::commutator::{generate_all, FormulaCase, ListKind};
use crate::constants::{check_relations, derive_constants, evaluate_table, ConstantTable, ExtraspecialChoice};
use crate::field::{Field, FieldSpec, Rationals};
use crate::liealg::{adjoint_check, build_algebra};
use crate::rootgraph::{build_graph, export, parse_labels, EdgeRule, GraphArtifact, GraphSign};
use crate::rootsys::{build_e6, format_half, RootId, RootSystem};
use crate::signcalc::Assignment;
use crate::tablesio::{verify_dir, Engine, TableId};
use crate::unipotent::{parse_word, Collector};

#[derive(Parser, Debug)]
#[command(name = "e6", version, about = "Structure constants, commutator formulas and root graphs for E6")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Part {
    PosPos,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    General,
    Special,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum List {
    Pospos,
    Negneg,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Neg,
    Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots with their coefficient tuples and heights.
    Roots {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Add the coordinates in R^8.
        #[arg(long)]
        coords: bool,
    },
    /// Structure constants N_{r,s}.
    Constants {
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "pos-pos")]
        part: Part,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Diff the constant tables against a fixture directory.
    VerifyConstants {
        #[arg(long)]
        fixtures: PathBuf,
    },
    /// Commutator formula lists.
    Formulas {
        #[arg(long, value_enum, default_value = "general")]
        case: Case,
        /// Sign assignment (`var,value` lines); special case only.
        #[arg(long)]
        signs: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "pospos")]
        list: List,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Jacobi identity on every basis triple of the Lie algebra.
    VerifyJacobi {
        #[arg(long)]
        signs: Option<PathBuf>,
    },
    /// Random group commutators in the adjoint representation.
    VerifyAdjoint {
        #[arg(long, default_value = "fp:101")]
        field: FieldSpec,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        signs: Option<PathBuf>,
    },
    /// Collect a word of positive root elements into canonical form.
    Collect {
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        /// `positive` or a sign assignment file.
        #[arg(long, default_value = "positive")]
        signs: String,
        /// Word file with `root_index scalar` lines; stdin when absent.
        input: Option<PathBuf>,
    },
    /// Root graphs and their path and K matrices.
    Graph {
        #[arg(long, value_enum)]
        sign: Sign,
        #[arg(long, default_value = "a,b,c,d,e,f")]
        labels: String,
        #[arg(long)]
        emit: GraphArtifact,
        /// Defaults to `dot` for `--emit dot`, else `csv`.
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        signs: Option<PathBuf>,
    },
    /// Diff every fixture table and run the relation and Jacobi suites.
    Verify {
        #[arg(long)]
        fixtures: PathBuf,
        #[arg(long, value_delimiter = ',')]
        tables: Option<Vec<TableId>>,
    },
}

/// Header plus rows, rendered as CSV or a Markdown table.
struct Sheet {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Sheet {
    fn new(header: &[&'static str]) -> Self {
        Sheet { header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Md => {
                let mut out = format!("| {} |\n", self.header.join(" | "));
                out += &format!("|{}\n", "---|".repeat(self.header.len()));
                for r in &self.rows {
                    out += &format!("| {} |\n", r.join(" | "));
                }
                Ok(out)
            }
        }
    }
}

fn load_assignment(path: Option<&Path>) -> Result<Assignment> {
    match path {
        None => Ok(Assignment::all_positive()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Assignment::parse_csv(&text).with_context(|| format!("in {}", p.display()))
        }
    }
}

fn numeric_table(sys: &RootSystem, a: &Assignment) -> Result<ConstantTable> {
    let sym = derive_constants(&ExtraspecialChoice::standard(sys)?.seeds(), sys)?;
    Ok(evaluate_table(&sym, a))
}

fn roots(format: Format, coords: bool) -> Result<String> {
    let sys = build_e6();
    let mut sheet = Sheet::new(if coords {
        &["index", "tuple", "height", "coords"]
    } else {
        &["index", "tuple", "height"]
    });
    for r in RootId::positives() {
        let root = sys.root(r);
        let mut row = vec![r.to_string(), root.tuple_string(), root.height().to_string()];
        if coords {
            let c: Vec<String> = sys.doubled_coords(r).iter().map(|&d| format_half(d)).collect();
            row.push(c.join(" "));
        }
        sheet.push(row);
    }
    sheet.render(format)
}

fn constants(mode: Mode, part: Part, format: Format) -> Result<String> {
    let sys = build_e6();
    let sym = derive_constants(&ExtraspecialChoice::standard(&sys)?.seeds(), &sys)?;
    let table = match mode {
        Mode::Symbolic => sym,
        Mode::Positive => evaluate_table(&sym, &Assignment::all_positive()),
    };
    let mut sheet = Sheet::new(&["r_index", "s_index", "value"]);
    for r in RootId::positives() {
        for q in RootId::positives() {
            let s = if part == Part::PosPos { q } else { -q };
            if let Some(v) = table.get(r, s) {
                sheet.push(vec![r.to_string(), s.to_string(), v.to_string()]);
            }
        }
    }
    sheet.render(format)
}

fn formulas(case: Case, signs: Option<&Path>, list: List, format: Format) -> Result<String> {
    let sys = build_e6();
    let sym = derive_constants(&ExtraspecialChoice::standard(&sys)?.seeds(), &sys)?;
    let set = match case {
        Case::General => {
            if signs.is_some() {
                bail!("--signs only applies to --case special");
            }
            generate_all(FormulaCase::General, &sym, &sys)?
        }
        Case::Special => generate_all(FormulaCase::Special, &evaluate_table(&sym, &load_assignment(signs)?), &sys)?,
    };
    let kind = match list {
        List::Pospos => ListKind::PosPos,
        List::Negneg => ListKind::NegNeg,
        List::Mixed => ListKind::Mixed,
    };
    let mut sheet = Sheet::new(&["no", "s_index", "r_index", "target_index", "coeff"]);
    for n in set.list(kind) {
        for t in &n.rule.terms {
            sheet.push(vec![
                format!("{:03}", n.no),
                n.rule.s.to_string(),
                n.rule.r.to_string(),
                t.target.to_string(),
                t.coeff.to_string(),
            ]);
        }
    }
    sheet.render(format)
}

fn verify_jacobi(signs: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    let sys = build_e6();
    let alg = build_algebra(&numeric_table(&sys, &load_assignment(signs)?)?, &sys)?;
    let report = alg.jacobi_scan();
    writeln!(
        out,
        "jacobi: {} ({} triples, {} violations)",
        pass(report.passed()),
        report.checked,
        report.violations.len()
    )?;
    for [i, j, k] in &report.violations {
        writeln!(out, "  triple ({i}, {j}, {k})")?;
    }
    Ok(report.passed())
}

fn run_adjoint<F: Field>(f: &F, samples: usize, seed: u64, signs: Option<&Path>, out: &mut dyn Write) -> Result<bool> {
    let sys = build_e6();
    let table = numeric_table(&sys, &load_assignment(signs)?)?;
    let alg = build_algebra(&table, &sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = adjoint_check(&alg, &table, &sys, f, samples, &mut rng)?;
    writeln!(
        out,
        "adjoint: {} ({} samples, {} with a root sum, {} failures)",
        pass(report.passed()),
        report.samples,
        report.with_sum,
        report.failures.len()
    )?;
    for (s, r) in &report.failures {
        writeln!(out, "  pair ({s}, {r})")?;
    }
    Ok(report.passed())
}

fn run_collect<F: Field>(f: F, signs: &str, text: &str) -> Result<String> {
    let a = if signs == "positive" {
        Assignment::all_positive()
    } else {
        load_assignment(Some(Path::new(signs)))?
    };
    let sys = build_e6();
    let table = numeric_table(&sys, &a)?;
    let col = Collector::new(&sys, &table, f.clone())?;
    let w = parse_word(text, &f)?;
    let canon = col.collect(&w)?;
    let mut out = String::new();
    for l in canon.to_word(&f).letters {
        out += &format!("{} {}\n", l.root, l.param);
    }
    Ok(out)
}

fn graph(
    sign: Sign,
    labels: &str,
    emit: GraphArtifact,
    format: Option<GraphFormat>,
    signs: Option<&Path>,
) -> Result<String> {
    let sys = build_e6();
    let table = numeric_table(&sys, &load_assignment(signs)?)?;
    let sign = match sign {
        Sign::Neg => GraphSign::Neg,
        Sign::Pos => GraphSign::Pos,
    };
    let g = build_graph(sign, &parse_labels(labels)?, EdgeRule::Ascending, &table, &sys)?;
    let format = match format {
        Some(GraphFormat::Csv) => "csv",
        Some(GraphFormat::Dot) => "dot",
        None if emit == GraphArtifact::Dot => "dot",
        None => "csv",
    };
    Ok(export(&g, emit, format, &sys)?)
}

fn verify(fixtures: &Path, tables: Option<&[TableId]>, constants_only: bool, out: &mut dyn Write) -> Result<bool> {
    let engine = Engine::new()?;
    let report = verify_dir(&engine, fixtures, tables)?;
    for d in &report.diffs {
        write!(out, "{d}")?;
    }
    for p in &report.unreferenced {
        writeln!(out, "unreferenced fixture: {p}")?;
    }
    let consumed: usize = report.diffs.iter().map(|d| d.consumed).sum();
    writeln!(
        out,
        "coverage: {} ({consumed} of {} records)",
        pass(report.coverage_complete()),
        report.total_records
    )?;
    let mut ok = report.passed();
    if !constants_only {
        let rel = check_relations(&engine.symbolic, &engine.sys);
        writeln!(out, "relations: {} ({} violations)", pass(rel.passed()), rel.violations.len())?;
        for v in &rel.violations {
            let roots: Vec<String> = v.roots.iter().map(|r| r.to_string()).collect();
            writeln!(out, "  {} on ({})", v.relation, roots.join(", "))?;
        }
        ok &= rel.passed();
        ok &= verify_jacobi(None, out)?;
    }
    writeln!(out, "overall: {}", pass(ok))?;
    Ok(ok)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs one command. `Ok(false)` means a verification failed.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<bool> {
    let text = match cli.command {
        Command::Roots { format, coords } => roots(format, coords)?,
        Command::Constants { mode, part, format } => constants(mode, part, format)?,
        Command::VerifyConstants { fixtures } => {
            let only = [TableId::T3, TableId::T4, TableId::T5, TableId::T6];
            return verify(&fixtures, Some(&only), true, out);
        }
        Command::Formulas { case, signs, list, format } => formulas(case, signs.as_deref(), list, format)?,
        Command::VerifyJacobi { signs } => return verify_jacobi(signs.as_deref(), out),
        Command::VerifyAdjoint { field, samples, seed, signs } => {
            return match field {
                FieldSpec::Rationals => run_adjoint(&Rationals, samples, seed, signs.as_deref(), out),
                FieldSpec::Prime(p) => run_adjoint(&p, samples, seed, signs.as_deref(), out),
            }
        }
        Command::Collect { field, signs, input } => {
            let mut word = String::new();
            match input {
                Some(p) => word = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?,
                None => {
                    stdin.read_to_string(&mut word)?;
                }
            }
            match field {
                FieldSpec::Rationals => run_collect(Rationals, &signs, &word)?,
                FieldSpec::Prime(p) => run_collect(p, &signs, &word)?,
            }
        }
        Command::Graph { sign, labels, emit, format, signs } => graph(sign, &labels, emit, format, signs.as_deref())?,
        Command::Verify { fixtures, tables } => return verify(&fixtures, tables.as_deref(), false, out),
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}
