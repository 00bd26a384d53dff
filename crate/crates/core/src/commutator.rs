//! Chevalley commutator constants and the formula lists.
//!
//! `[x_s(u), x_r(t)] = ∏ x_{ir+js}(C_{ij,rs} (-t)^i u^j)`, the product taken
//! over `i, j > 0` with `ir + js` a root. In a simply-laced system only
//! `(i, j) = (1, 1)` occurs, giving `x_{r+s}(N_{s,r} t u)`.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::constants::{ConstantTable, TableMode};
use crate::rootsys::{RootId, RootSystem, RANK};
use crate::signcalc::SignMonomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommutatorError {
    #[error("root string breaks: {i}·{r} + {s} is not reachable through roots")]
    StringBreak { r: RootId, s: RootId, i: u32 },
    #[error("no constant stored for ({0},{1})")]
    MissingEntry(RootId, RootId),
    #[error("C_({i},{j}) is not one of the supported shapes")]
    UnsupportedShape { i: u32, j: u32 },
    #[error("[x_r, x_-r] leaves the unipotent setting ({0} = -{1})")]
    OppositeRoots(RootId, RootId),
    #[error("{case} formulas need a {expected:?} table")]
    WrongMode { case: FormulaCase, expected: TableMode },
}

/// `scale · monomial`, where the monomial's own sign is folded into `scale`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaledMonomial {
    scale: Rational64,
    mono: SignMonomial,
}

impl ScaledMonomial {
    pub fn new(scale: Rational64, mono: SignMonomial) -> Self {
        let scale = if mono.is_negative() { -scale } else { scale };
        ScaledMonomial {
            scale,
            mono: SignMonomial::from_parts(false, mono.parity()),
        }
    }

    pub fn scale(&self) -> Rational64 {
        self.scale
    }

    /// Positive monomial part.
    pub fn monomial(&self) -> SignMonomial {
        self.mono
    }

    /// The value as a signed monomial when the scale is `±1`.
    pub fn as_monomial(&self) -> Option<SignMonomial> {
        if self.scale == Rational64::one() {
            Some(self.mono)
        } else if self.scale == -Rational64::one() {
            Some(-self.mono)
        } else {
            None
        }
    }

    pub fn times(self, k: Rational64) -> Self {
        ScaledMonomial {
            scale: self.scale * k,
            mono: self.mono,
        }
    }
}

impl From<SignMonomial> for ScaledMonomial {
    fn from(m: SignMonomial) -> Self {
        ScaledMonomial::new(Rational64::one(), m)
    }
}

impl std::ops::Mul for ScaledMonomial {
    type Output = ScaledMonomial;
    fn mul(self, o: ScaledMonomial) -> ScaledMonomial {
        ScaledMonomial {
            scale: self.scale * o.scale,
            mono: self.mono * o.mono,
        }
    }
}

impl fmt::Display for ScaledMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.as_monomial() {
            return write!(f, "{m}");
        }
        if self.scale.is_zero() {
            return f.write_str("0");
        }
        if self.mono.is_constant() {
            write!(f, "{}", self.scale)
        } else {
            write!(f, "{}*{}", self.scale, self.mono)
        }
    }
}

fn entry(table: &ConstantTable, r: RootId, s: RootId) -> Result<SignMonomial, CommutatorError> {
    table.get(r, s).ok_or(CommutatorError::MissingEntry(r, s))
}

fn factorial(i: u32) -> i64 {
    (1..=i64::from(i)).product()
}

/// `M_{r,s,i} = N_{r,s} N_{r,r+s} ⋯ N_{r,(i-1)r+s} / i!`.
pub fn m_const(
    r: RootId,
    s: RootId,
    i: u32,
    table: &ConstantTable,
    sys: &RootSystem,
) -> Result<ScaledMonomial, CommutatorError> {
    let mut prod = SignMonomial::ONE;
    let mut cur = s;
    for _ in 0..i {
        let next = sys
            .sum_root(r, cur)
            .ok_or(CommutatorError::StringBreak { r, s, i })?;
        prod = prod * entry(table, r, cur)?;
        cur = next;
    }
    Ok(ScaledMonomial::new(Rational64::new(1, factorial(i)), prod))
}

/// The supported `(i, j)` shapes, ordered by `i + j`.
pub const SHAPES: [(u32, u32); 7] = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3)];

/// `C_{ij,rs}`.
pub fn c_const(
    i: u32,
    j: u32,
    r: RootId,
    s: RootId,
    table: &ConstantTable,
    sys: &RootSystem,
) -> Result<ScaledMonomial, CommutatorError> {
    let sum = || {
        sys.sum_root(r, s)
            .ok_or(CommutatorError::StringBreak { r, s, i: 1 })
    };
    match (i, j) {
        (1, 1) | (2, 1) | (3, 1) => m_const(r, s, i, table, sys),
        (1, 2) | (1, 3) => {
            Ok(m_const(s, r, j, table, sys)?.times(Rational64::from_integer((-1i64).pow(j))))
        }
        (3, 2) => Ok(m_const(sum()?, r, 2, table, sys)?.times(Rational64::new(1, 3))),
        (2, 3) => Ok(m_const(sum()?, s, 2, table, sys)?.times(Rational64::new(-2, 3))),
        _ => Err(CommutatorError::UnsupportedShape { i, j }),
    }
}

/// One factor `x_target(coeff · t^i u^j)` of a commutator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub target: RootId,
    pub coeff: ScaledMonomial,
}

/// Expansion of `[x_s(u), x_r(t)]`; an empty term list means the elements
/// commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorRule {
    pub s: RootId,
    pub r: RootId,
    pub terms: Vec<CommutatorTerm>,
}

impl CommutatorRule {
    /// The single `(1,1)` term, if that is the whole rule.
    pub fn simple_term(&self) -> Option<(RootId, SignMonomial)> {
        match self.terms.as_slice() {
            [t] if (t.i, t.j) == (1, 1) => t.coeff.as_monomial().map(|m| (t.target, m)),
            _ => None,
        }
    }
}

fn combine(sys: &RootSystem, i: u32, r: RootId, j: u32, s: RootId) -> Option<RootId> {
    let (cr, cs) = (sys.root(r).coeffs(), sys.root(s).coeffs());
    let mut c = [0i32; RANK];
    for k in 0..RANK {
        c[k] = i as i32 * cr[k] + j as i32 * cs[k];
    }
    sys.id_of(&c).ok()
}

pub fn commutator_rule(
    s: RootId,
    r: RootId,
    table: &ConstantTable,
    sys: &RootSystem,
) -> Result<CommutatorRule, CommutatorError> {
    if r == -s {
        return Err(CommutatorError::OppositeRoots(r, s));
    }
    let mut terms = Vec::new();
    for (i, j) in SHAPES {
        let Some(target) = combine(sys, i, r, j, s) else { continue };
        let c = c_const(i, j, r, s, table, sys)?;
        let coeff = c.times(Rational64::from_integer((-1i64).pow(i)));
        terms.push(CommutatorTerm { i, j, target, coeff });
    }
    Ok(CommutatorRule { s, r, terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaCase {
    /// Coefficients are monomials in the sign parameters.
    General,
    /// All extraspecial constants are `+1`.
    Special,
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaCase::General => "general",
            FormulaCase::Special => "special",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ListKind {
    PosPos,
    NegNeg,
    Mixed,
}

impl ListKind {
    pub const ALL: [ListKind; 3] = [ListKind::PosPos, ListKind::NegNeg, ListKind::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            ListKind::PosPos => "pospos",
            ListKind::NegNeg => "negneg",
            ListKind::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberedRule {
    pub no: usize,
    pub rule: CommutatorRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaSet {
    pub case: FormulaCase,
    pub pospos: Vec<NumberedRule>,
    pub negneg: Vec<NumberedRule>,
    pub mixed: Vec<NumberedRule>,
}

impl FormulaSet {
    pub fn list(&self, kind: ListKind) -> &[NumberedRule] {
        match kind {
            ListKind::PosPos => &self.pospos,
            ListKind::NegNeg => &self.negneg,
            ListKind::Mixed => &self.mixed,
        }
    }
}

/// Argument pairs `(s, r)` of a list, in list order: grouped by the first
/// argument in index order, then by the second.
pub fn list_pairs(kind: ListKind, sys: &RootSystem) -> Vec<(RootId, RootId)> {
    let mut out = Vec::new();
    for s in RootId::positives() {
        for q in RootId::positives() {
            match kind {
                ListKind::PosPos | ListKind::NegNeg => {
                    if s < q && sys.sum_root(s, q).is_some() {
                        out.push(if kind == ListKind::PosPos { (s, q) } else { (-s, -q) });
                    }
                }
                ListKind::Mixed => {
                    if sys.sum_root(s, -q).is_some_and(|w| !w.is_positive()) {
                        out.push((s, -q));
                    }
                }
            }
        }
    }
    out
}

/// Regenerates all three formula lists from a constant table.
pub fn generate_all(
    case: FormulaCase,
    table: &ConstantTable,
    sys: &RootSystem,
) -> Result<FormulaSet, CommutatorError> {
    let expected = match case {
        FormulaCase::General => TableMode::Symbolic,
        FormulaCase::Special => TableMode::Numeric,
    };
    if table.mode() != expected {
        return Err(CommutatorError::WrongMode { case, expected });
    }
    let build = |kind| -> Result<Vec<NumberedRule>, CommutatorError> {
        list_pairs(kind, sys)
            .into_iter()
            .enumerate()
            .map(|(k, (s, r))| {
                Ok(NumberedRule {
                    no: k + 1,
                    rule: commutator_rule(s, r, table, sys)?,
                })
            })
            .collect()
    };
    Ok(FormulaSet {
        case,
        pospos: build(ListKind::PosPos)?,
        negneg: build(ListKind::NegNeg)?,
        mixed: build(ListKind::Mixed)?,
    })
}

/// Renders a rule's right-hand side as a formula cell, `x<target>(<coeff>)`.
pub fn formula_cell(rule: &CommutatorRule) -> String {
    rule.terms
        .iter()
        .map(|t| format!("x{}({})", t.target, t.coeff))
        .collect::<Vec<_>>()
        .join(" ")
}
