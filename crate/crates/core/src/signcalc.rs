//! Products of the thirty formal ±1 sign parameters.
//!
//! Every structure constant of E6 is `±1` times a product of the parameters
//! attached to the extraspecial pairs. Each parameter squares to one, so a
//! monomial is fully described by a sign and the parity of every parameter.
//!
//! Text form: an optional leading `-`, then factors joined by `*` in the order
//! `a1..a9 a0 b1..b9 g1..g6 d1..d3 e1 e2` (letters stand for α β γ δ ε). The
//! empty product renders as `1` or `-1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const VAR_COUNT: usize = 30;

/// Greek family of a sign parameter, with its ASCII letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Alpha,
        Family::Beta,
        Family::Gamma,
        Family::Delta,
        Family::Epsilon,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::Alpha => 'a',
            Family::Beta => 'b',
            Family::Gamma => 'g',
            Family::Delta => 'd',
            Family::Epsilon => 'e',
        }
    }

    /// Number of parameters in the family.
    pub fn size(self) -> usize {
        match self {
            Family::Alpha => 10,
            Family::Beta => 9,
            Family::Gamma => 6,
            Family::Delta => 3,
            Family::Epsilon => 2,
        }
    }

    fn offset(self) -> usize {
        Family::ALL
            .iter()
            .take_while(|&&f| f != self)
            .map(|f| f.size())
            .sum()
    }

    fn from_letter(c: char) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.letter() == c)
    }
}

/// One of the thirty sign parameters.
///
/// Internally the canonical position `0..30`; alpha parameters occupy
/// positions `0..10` with `α_0` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVar(u8);

impl SignVar {
    /// `subscript` is the printed subscript: `1..=size`, except that the tenth
    /// alpha is written `0`.
    pub fn new(family: Family, subscript: u8) -> Option<SignVar> {
        let rank = match (family, subscript) {
            (Family::Alpha, 0) => 10,
            (_, 0) => return None,
            (_, k) if usize::from(k) <= family.size() && !(family == Family::Alpha && k == 10) => {
                usize::from(k)
            }
            _ => return None,
        };
        Some(SignVar((family.offset() + rank - 1) as u8))
    }

    /// The `k`-th parameter of a family counting from one (the tenth alpha is
    /// `α_0`).
    pub fn nth(family: Family, k: usize) -> Option<SignVar> {
        if k == 0 || k > family.size() {
            return None;
        }
        Some(SignVar((family.offset() + k - 1) as u8))
    }

    pub fn from_position(pos: usize) -> Option<SignVar> {
        (pos < VAR_COUNT).then_some(SignVar(pos as u8))
    }

    pub fn position(self) -> usize {
        usize::from(self.0)
    }

    pub fn family(self) -> Family {
        let mut p = self.position();
        for f in Family::ALL {
            if p < f.size() {
                return f;
            }
            p -= f.size();
        }
        unreachable!("position is below VAR_COUNT")
    }

    pub fn subscript(self) -> u8 {
        let rank = self.position() - self.family().offset() + 1;
        (rank % 10) as u8
    }

    pub fn all() -> impl Iterator<Item = SignVar> {
        (0..VAR_COUNT as u8).map(SignVar)
    }
}

impl fmt::Display for SignVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family().letter(), self.subscript())
    }
}

impl FromStr for SignVar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::BadToken(s.to_string());
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.len() != 1 {
            return Err(bad());
        }
        let digit = rest.parse::<u8>().map_err(|_| bad())?;
        SignVar::new(family, digit).ok_or_else(bad)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty monomial text")]
    Empty,
    #[error("unrecognised factor `{0}`")]
    BadToken(String),
}

/// `±1` times a product of distinct sign parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignMonomial {
    negative: bool,
    parity: u32,
}

impl SignMonomial {
    pub const ONE: SignMonomial = SignMonomial {
        negative: false,
        parity: 0,
    };
    pub const MINUS_ONE: SignMonomial = SignMonomial {
        negative: true,
        parity: 0,
    };

    pub fn var(v: SignVar) -> Self {
        SignMonomial {
            negative: false,
            parity: 1 << v.position(),
        }
    }

    pub fn from_parts(negative: bool, parity: u32) -> Self {
        SignMonomial {
            negative,
            parity: parity & ((1 << VAR_COUNT) - 1),
        }
    }

    pub fn constant(value: i8) -> Self {
        if value < 0 {
            Self::MINUS_ONE
        } else {
            Self::ONE
        }
    }

    pub fn is_negative(self) -> bool {
        self.negative
    }

    pub fn parity(self) -> u32 {
        self.parity
    }

    /// True when no parameter occurs, i.e. the value is a plain `±1`.
    pub fn is_constant(self) -> bool {
        self.parity == 0
    }

    pub fn sign(self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn vars(self) -> impl Iterator<Item = SignVar> {
        SignVar::all().filter(move |v| self.parity & (1 << v.position()) != 0)
    }


    pub fn evaluate(self, assignment: &Assignment) -> i8 {
        let flips = (self.parity & assignment.negatives).count_ones();
        let neg = self.negative ^ (flips % 2 == 1);
        if neg {
            -1
        } else {
            1
        }
    }

    /// The monomial with its value under `assignment` as a constant.
    pub fn specialize(self, assignment: &Assignment) -> SignMonomial {
        SignMonomial::constant(self.evaluate(assignment))
    }

    pub fn parse(text: &str) -> Result<SignMonomial, ParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let mut m = SignMonomial {
            negative,
            parity: 0,
        };
        for token in body.split('*') {
            let token = token.trim();
            if token == "1" {
                continue;
            }
            let v: SignVar = token.parse()?;
            m.parity ^= 1 << v.position();
        }
        Ok(m)
    }
}

impl std::ops::Mul for SignMonomial {
    type Output = SignMonomial;
    fn mul(self, rhs: SignMonomial) -> SignMonomial {
        SignMonomial {
            negative: self.negative ^ rhs.negative,
            parity: self.parity ^ rhs.parity,
        }
    }
}

impl std::ops::Neg for SignMonomial {
    type Output = SignMonomial;
    fn neg(self) -> SignMonomial {
        SignMonomial {
            negative: !self.negative,
            parity: self.parity,
        }
    }
}

impl From<SignVar> for SignMonomial {
    fn from(v: SignVar) -> Self {
        SignMonomial::var(v)
    }
}

impl fmt::Display for SignMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.parity == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for v in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for SignMonomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        SignMonomial::parse(s)
    }
}

/// A value `±1` for every one of the thirty parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    negatives: u32,
}

impl Assignment {
    pub fn all_positive() -> Self {
        Assignment { negatives: 0 }
    }

    /// Bit `v` set means parameter `v` takes the value `-1`.
    pub fn from_negative_mask(mask: u32) -> Self {
        Assignment {
            negatives: mask & ((1 << VAR_COUNT) - 1),
        }
    }

    pub fn negative_mask(&self) -> u32 {
        self.negatives
    }

    pub fn get(&self, v: SignVar) -> i8 {
        if self.negatives & (1 << v.position()) != 0 {
            -1
        } else {
            1
        }
    }

    pub fn set(&mut self, v: SignVar, value: i8) {
        if value < 0 {
            self.negatives |= 1 << v.position();
        } else {
            self.negatives &= !(1 << v.position());
        }
    }

    /// Reads `var,value` lines (header optional, `#` comments allowed).
    /// Parameters that are not listed keep the value `+1`.
    pub fn parse_csv(text: &str) -> Result<Assignment, AssignmentError> {
        let mut a = Assignment::all_positive();
        let mut seen = 0u32;
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_no = no + 1;
            let (name, value) = line
                .split_once(',')
                .ok_or(AssignmentError::Malformed { line: line_no })?;
            let (name, value) = (name.trim(), value.trim());
            if no == 0 && name == "var" && value == "value" {
                continue;
            }
            let v: SignVar = name
                .parse()
                .map_err(|e| AssignmentError::Var { line: line_no, source: e })?;
            let value = match value {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(AssignmentError::Malformed { line: line_no }),
            };
            if seen & (1 << v.position()) != 0 {
                return Err(AssignmentError::Duplicate { line: line_no, var: v });
            }
            seen |= 1 << v.position();
            a.set(v, value);
        }
        Ok(a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("line {line}: expected `var,value` with value 1 or -1")]
    Malformed { line: usize },
    #[error("line {line}: {source}")]
    Var { line: usize, source: ParseError },
    #[error("line {line}: parameter {var} assigned twice")]
    Duplicate { line: usize, var: SignVar },
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> SignMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn thirty_distinct_vars() {
        let names: Vec<String> = SignVar::all().map(|v| v.to_string()).collect();
        assert_eq!(names.len(), 30);
        assert_eq!(names[9], "a0");
        assert_eq!(names[10], "b1");
        assert_eq!(names[29], "e2");
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 30);
        assert!("a10".parse::<SignVar>().is_err());
        assert!("g7".parse::<SignVar>().is_err());
        assert!("d0".parse::<SignVar>().is_err());
    }

    #[test]
    fn products() {
        assert_eq!(m("a1") * m("a2*b1"), m("a1*a2*b1"));
        assert_eq!((m("a1") * m("a2*b1")).to_string(), "a1*a2*b1");
        assert_eq!(m("a1") * m("a1"), SignMonomial::ONE);
        assert_eq!(m("-b5") * m("-a1*a6"), m("a1*a6*b5"));
    }

    #[test]
    fn evaluation() {
        let pos = Assignment::all_positive();
        assert_eq!(m("-a1*a6*b5").evaluate(&pos), -1);
        assert_eq!(SignMonomial::ONE.evaluate(&Assignment::from_negative_mask(u32::MAX)), 1);
        let mut a = Assignment::all_positive();
        a.set("a1".parse().unwrap(), -1);
        assert_eq!(m("a1*b2").evaluate(&a), -1);
    }

    #[test]
    fn canonical_text() {
        let x = m("-a6*a0*b4*b5*b7*b9*g2*g3*g5*g6*d1*d2*e2");
        assert!(x.is_negative());
        assert_eq!(x.vars().count(), 13);
        assert_eq!(x.to_string(), "-a6*a0*b4*b5*b7*b9*g2*g3*g5*g6*d1*d2*e2");
        assert_eq!(m("b1*a1"), m("a1*b1"));
        assert_eq!(m("a0*a1").to_string(), "a1*a0");
        assert_eq!(m("-1").to_string(), "-1");
        assert_eq!(m("1").to_string(), "1");
    }

    #[test]
    fn parse_errors_name_token() {
        assert_eq!(SignMonomial::parse(""), Err(ParseError::Empty));
        assert_eq!(
            SignMonomial::parse("a1*x3"),
            Err(ParseError::BadToken("x3".into()))
        );
        assert!(SignMonomial::parse("a1**b2").is_err());
        assert!(SignMonomial::parse("--a1").is_err());
    }

    #[test]
    fn assignment_csv() {
        let a = Assignment::parse_csv("var,value\na1,-1\n# c\ne2,1\n").unwrap();
        assert_eq!(a.get("a1".parse().unwrap()), -1);
        assert_eq!(a.get("e2".parse().unwrap()), 1);
        assert!(matches!(
            Assignment::parse_csv("a1,-1\na1,1"),
            Err(AssignmentError::Duplicate { line: 2, .. })
        ));
        assert!(Assignment::parse_csv("a1,2").is_err());
    }

    fn any_monomial() -> impl Strategy<Value = SignMonomial> {
        (any::<bool>(), 0u32..(1 << VAR_COUNT)).prop_map(|(n, p)| SignMonomial::from_parts(n, p))
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(x in any_monomial()) {
            prop_assert_eq!(SignMonomial::parse(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn squares_are_one(x in any_monomial()) {
            prop_assert_eq!(x * x, SignMonomial::ONE);
        }

        #[test]
        fn evaluate_is_homomorphism(x in any_monomial(), y in any_monomial(), mask in 0u32..(1 << VAR_COUNT)) {
            let a = Assignment::from_negative_mask(mask);
            prop_assert_eq!((x * y).evaluate(&a), x.evaluate(&a) * y.evaluate(&a));
        }
    }
}
