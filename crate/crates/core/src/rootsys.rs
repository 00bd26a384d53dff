//! The E6 root system over the fundamental basis `a..f`.
//!
//! Roots are stored as integer 6-tuples of coefficients over the fundamental
//! roots. The Euclidean realization in R^8 is derived from the coordinates of
//! the fundamental roots and only used for scalar products.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub const RANK: usize = 6;
pub const POSITIVE_COUNT: usize = 36;
pub const ROOT_COUNT: usize = 2 * POSITIVE_COUNT;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("{0:?} is not a root of the system")]
    NotARoot([i32; RANK]),
    #[error("root index {0} is out of range")]
    IndexOutOfRange(i32),
    #[error("the order relation is irreflexive: cannot compare a vector with itself")]
    SameVector,
    #[error("root string of {root} through {other} is undefined (other = ±root)")]
    UndefinedString { root: RootId, other: RootId },
    #[error("simple roots must all have squared length 2 (got {0} for simple root {1})")]
    NotSimplyLaced(i32, usize),
    #[error("cannot read {0:?} as a root")]
    Parse(String),
}

/// One of the six fundamental roots. The declaration order fixes the
/// coefficient position inside a [`Root`] tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FundamentalLabel {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl FundamentalLabel {
    pub const ALL: [FundamentalLabel; RANK] = [
        FundamentalLabel::A,
        FundamentalLabel::B,
        FundamentalLabel::C,
        FundamentalLabel::D,
        FundamentalLabel::E,
        FundamentalLabel::F,
    ];

    /// Position of the label's coefficient in a root tuple (0-based).
    pub fn position(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'a'..='f' => Some(Self::ALL[(c as u8 - b'a') as usize]),
            _ => None,
        }
    }
}

impl fmt::Display for FundamentalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Basis order used by the `≺` comparison: the difference `y - x` is read in
/// the order (f, e, b, d, c, a).
const ORDER_BASIS: [usize; RANK] = [5, 4, 1, 3, 2, 0];

/// A root given by its coefficients over the fundamental roots.
///
/// Values are only handed out by a [`RootSystem`], so every `Root` is a member
/// of the system (mixed-sign tuples never appear).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: [i8; RANK],
}

impl Root {
    pub fn coeffs(&self) -> [i32; RANK] {
        self.coeffs.map(i32::from)
    }

    pub fn coeff(&self, label: FundamentalLabel) -> i32 {
        i32::from(self.coeffs[label.position()])
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().map(|&c| i32::from(c)).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    /// The tuple rendered as six digits, e.g. `011210`. Negative roots get a
    /// leading minus sign.
    pub fn tuple_string(&self) -> String {
        let digits: String = self
            .coeffs
            .iter()
            .map(|c| char::from(b'0' + c.unsigned_abs()))
            .collect();
        if self.is_positive() {
            digits
        } else {
            format!("-{digits}")
        }
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

/// Renders the root as a linear combination, e.g. `a+b+2c+3d+2e+f` or
/// `-a-c`.
impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for label in FundamentalLabel::ALL {
            let c = self.coeff(label);
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}", label.symbol())?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Signed position of a root in the `≺`-ordered list: `1..=36` for positive
/// roots and `-1..=-36` for their negatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(i8);

impl RootId {
    pub fn new(index: i32) -> Result<Self, RootError> {
        if index == 0 || index.unsigned_abs() as usize > POSITIVE_COUNT {
            return Err(RootError::IndexOutOfRange(index));
        }
        Ok(RootId(index as i8))
    }

    pub fn index(self) -> i32 {
        i32::from(self.0)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Dense slot in `0..72`: positives first, then negatives.
    pub fn slot(self) -> usize {
        if self.0 > 0 {
            self.0 as usize - 1
        } else {
            POSITIVE_COUNT + (-self.0) as usize - 1
        }
    }

    pub fn from_slot(slot: usize) -> Self {
        assert!(slot < ROOT_COUNT, "slot {slot} out of range");
        if slot < POSITIVE_COUNT {
            RootId(slot as i8 + 1)
        } else {
            RootId(-((slot - POSITIVE_COUNT) as i8 + 1))
        }
    }

    pub fn abs(self) -> RootId {
        RootId(self.0.abs())
    }

    pub fn all() -> impl Iterator<Item = RootId> {
        (0..ROOT_COUNT).map(RootId::from_slot)
    }

    pub fn positives() -> impl Iterator<Item = RootId> {
        (0..POSITIVE_COUNT).map(RootId::from_slot)
    }
}

impl std::ops::Neg for RootId {
    type Output = RootId;
    fn neg(self) -> RootId {
        RootId(-self.0)
    }
}

impl fmt::Display for RootId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Outcome of adding two roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSum {
    Root(RootId),
    /// `r + s = 0`.
    Opposite,
    NotARoot,
}

impl RootSum {
    pub fn root(self) -> Option<RootId> {
        match self {
            RootSum::Root(id) => Some(id),
            _ => None,
        }
    }
}

/// Strict order `x ≺ y` on integer vectors over the fundamental basis.
pub fn precedes(x: &[i32; RANK], y: &[i32; RANK]) -> Result<bool, RootError> {
    for &pos in &ORDER_BASIS {
        let d = y[pos] - x[pos];
        if d != 0 {
            return Ok(d > 0);
        }
    }
    Err(RootError::SameVector)
}

/// Doubled R^8 coordinates of the fundamental roots a, b, c, d, e, f.
const E6_SIMPLE_COORDS: [[i32; 8]; RANK] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
];

/// An immutable simply-laced root system with the positive roots numbered in
/// `≺`-order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    roots: Vec<Root>,
    coords: Vec<[i32; 8]>,
    lookup: HashMap<[i8; RANK], RootId>,
    sums: Vec<RootSum>,
}

/// Builds E6 with the coordinate model used throughout the crate.
pub fn build_e6() -> RootSystem {
    RootSystem::from_simple_coords(&E6_SIMPLE_COORDS)
        .expect("E6 simple roots form a simply-laced system")
}

fn dot8(x: &[i32; 8], y: &[i32; 8]) -> i32 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl RootSystem {
    /// Generates all roots from doubled R^8 coordinates of six simple roots of
    /// squared length 2. Positive roots are grown by adding a simple root `α`
    /// to a root `r` whenever `(r, α) = -1`, which is exact for simply-laced
    /// systems.
    pub fn from_simple_coords(simple: &[[i32; 8]; RANK]) -> Result<Self, RootError> {
        for (i, v) in simple.iter().enumerate() {
            let sq = dot8(v, v);
            if sq != 8 {
                return Err(RootError::NotSimplyLaced(sq / 4, i));
            }
        }
        let coord_of = |c: &[i8; RANK]| -> [i32; 8] {
            let mut out = [0i32; 8];
            for (k, &m) in c.iter().enumerate() {
                for j in 0..8 {
                    out[j] += i32::from(m) * simple[k][j];
                }
            }
            out
        };

        let mut positives: Vec<[i8; RANK]> = (0..RANK)
            .map(|i| {
                let mut c = [0i8; RANK];
                c[i] = 1;
                c
            })
            .collect();
        let mut frontier = 0;
        while frontier < positives.len() {
            let r = positives[frontier];
            let rc = coord_of(&r);
            for (i, s) in simple.iter().enumerate() {
                if dot8(&rc, s) == -4 {
                    let mut next = r;
                    next[i] += 1;
                    if !positives.contains(&next) {
                        positives.push(next);
                    }
                }
            }
            frontier += 1;
        }
        let key = |c: &[i8; RANK]| ORDER_BASIS.map(|p| c[p]);
        positives.sort_by_key(key);

        let n = positives.len();
        let mut roots: Vec<Root> = positives.iter().map(|&c| Root { coeffs: c }).collect();
        roots.extend(positives.iter().map(|&c| -Root { coeffs: c }));
        let coords: Vec<[i32; 8]> = roots.iter().map(|r| coord_of(&r.coeffs)).collect();

        assert_eq!(n, POSITIVE_COUNT, "only rank-6 systems with 36 positive roots are supported");
        let lookup: HashMap<[i8; RANK], RootId> = roots
            .iter()
            .enumerate()
            .map(|(slot, r)| (r.coeffs, RootId::from_slot(slot)))
            .collect();

        let mut sums = Vec::with_capacity(ROOT_COUNT * ROOT_COUNT);
        for r in &roots {
            for s in &roots {
                let c: [i8; RANK] = std::array::from_fn(|k| r.coeffs[k] + s.coeffs[k]);
                sums.push(if c == [0; RANK] {
                    RootSum::Opposite
                } else {
                    lookup.get(&c).map_or(RootSum::NotARoot, |&id| RootSum::Root(id))
                });
            }
        }
        Ok(RootSystem {
            roots,
            coords,
            lookup,
            sums,
        })
    }

    pub fn root(&self, id: RootId) -> Root {
        self.roots[id.slot()]
    }

    /// Looks up a coefficient tuple.
    pub fn id_of(&self, coeffs: &[i32; RANK]) -> Result<RootId, RootError> {
        let mut c = [0i8; RANK];
        for k in 0..RANK {
            c[k] = i8::try_from(coeffs[k]).map_err(|_| RootError::NotARoot(*coeffs))?;
        }
        self.lookup.get(&c).copied().ok_or(RootError::NotARoot(*coeffs))
    }

    /// Reads a root given as a signed index (`-17`), a coefficient tuple
    /// (`011210`, `-011210`) or a linear combination (`a+b+2c`, `-a-c`).
    pub fn parse_root(&self, text: &str) -> Result<RootId, RootError> {
        let t = text.trim();
        let bad = || RootError::Parse(text.to_string());
        let digits = t.strip_prefix('-').unwrap_or(t);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            if digits.len() == RANK {
                let sign = if t.starts_with('-') { -1 } else { 1 };
                let mut c = [0i32; RANK];
                for (k, b) in digits.bytes().enumerate() {
                    c[k] = sign * i32::from(b - b'0');
                }
                return self.id_of(&c);
            }
            if digits.len() <= 2 {
                return RootId::new(t.parse().map_err(|_| bad())?);
            }
            return Err(bad());
        }
        let mut c = [0i32; RANK];
        let mut rest = t;
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' if rest.len() < t.len() => (1, &rest[1..]),
                _ if rest.len() == t.len() => (1, rest),
                _ => return Err(bad()),
            };
            let ndig = body.bytes().take_while(u8::is_ascii_digit).count();
            let mult: i32 = if ndig == 0 { 1 } else { body[..ndig].parse().map_err(|_| bad())? };
            let label = body[ndig..]
                .chars()
                .next()
                .and_then(FundamentalLabel::from_symbol)
                .ok_or_else(bad)?;
            c[label.position()] += sign * mult;
            rest = &body[ndig + 1..];
        }
        self.id_of(&c)
    }

    pub fn fundamental(&self, label: FundamentalLabel) -> RootId {
        let mut c = [0; RANK];
        c[label.position()] = 1;
        self.id_of(&c).expect("fundamental roots are roots")
    }

    pub fn positives(&self) -> &[Root] {
        &self.roots[..POSITIVE_COUNT]
    }

    pub fn height(&self, id: RootId) -> i32 {
        self.root(id).height()
    }

    pub fn sum(&self, r: RootId, s: RootId) -> RootSum {
        self.sums[r.slot() * ROOT_COUNT + s.slot()]
    }

    pub fn sum_root(&self, r: RootId, s: RootId) -> Option<RootId> {
        self.sum(r, s).root()
    }

    /// `root_string(r, s) = (p, q)`: the largest `p, q ≥ 0` with `s - p·r`
    /// and `s + q·r` in the system.
    pub fn root_string(&self, r: RootId, s: RootId) -> Result<(u32, u32), RootError> {
        if r == s || r == -s {
            return Err(RootError::UndefinedString { root: r, other: s });
        }
        let walk = |step: RootId| {
            let mut n = 0;
            let mut cur = s;
            while let Some(next) = self.sum_root(cur, step) {
                n += 1;
                cur = next;
            }
            n
        };
        Ok((walk(-r), walk(r)))
    }

    pub fn precedes(&self, x: RootId, y: RootId) -> Result<bool, RootError> {
        precedes(&self.root(x).coeffs(), &self.root(y).coeffs())
    }

    /// Scalar product in R^8.
    pub fn scalar_product(&self, r: RootId, s: RootId) -> i32 {
        dot8(&self.coords[r.slot()], &self.coords[s.slot()]) / 4
    }

    /// R^8 coordinates of a root, each doubled so that halves stay integral.
    pub fn doubled_coords(&self, id: RootId) -> [i32; 8] {
        self.coords[id.slot()]
    }
}

/// Formats a doubled coordinate as an exact half-integer (`1/2`, `-1`, `0`).
pub fn format_half(doubled: i32) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn id(sys: &RootSystem, tuple: &str) -> RootId {
        let mut c = [0i32; RANK];
        let neg = tuple.starts_with('-');
        for (k, ch) in tuple.trim_start_matches('-').chars().enumerate() {
            c[k] = ch.to_digit(10).unwrap() as i32 * if neg { -1 } else { 1 };
        }
        sys.id_of(&c).unwrap()
    }

    #[test]
    fn counts_and_anchor_rows() {
        let sys = build_e6();
        assert_eq!(sys.positives().len(), 36);
        assert_eq!(RootId::all().count(), 72);
        let r18 = sys.root(RootId::new(18).unwrap());
        assert_eq!(r18.tuple_string(), "011210");
        assert_eq!(r18.height(), 5);
        let r1 = sys.root(RootId::new(1).unwrap());
        assert_eq!(r1.tuple_string(), "100000");
        assert_eq!(r1.height(), 1);
        assert_eq!(sys.root(RootId::new(36).unwrap()).to_string(), "a+2b+2c+3d+2e+f");
    }

    #[test]
    fn order_examples() {
        assert!(precedes(&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]).unwrap());
        assert!(precedes(&[1, 1, 2, 3, 2, 1], &[1, 2, 2, 3, 2, 1]).unwrap());
        assert!(!precedes(&[0, 0, 1, 0, 0, 0], &[1, 0, 0, 0, 0, 0]).unwrap());
        assert_eq!(
            precedes(&[0, 1, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]),
            Err(RootError::SameVector)
        );
    }

    #[test]
    fn sums() {
        let sys = build_e6();
        let a = id(&sys, "100000");
        let b = id(&sys, "010000");
        let c = id(&sys, "001000");
        let d = id(&sys, "000100");
        assert_eq!(sys.sum(a, c), RootSum::Root(RootId::new(3).unwrap()));
        assert_eq!(sys.sum(a, b), RootSum::NotARoot);
        assert_eq!(sys.sum(d, id(&sys, "-001100")), RootSum::Root(-c));
        assert_eq!(sys.sum(a, -a), RootSum::Opposite);
    }

    #[test]
    fn strings() {
        let sys = build_e6();
        let a = id(&sys, "100000");
        let b = id(&sys, "010000");
        let c = id(&sys, "001000");
        let ac = id(&sys, "101000");
        assert_eq!(sys.root_string(a, c).unwrap(), (0, 1));
        assert_eq!(sys.root_string(a, b).unwrap(), (0, 0));
        assert_eq!(sys.root_string(c, ac).unwrap(), (1, 0));
        assert!(matches!(
            sys.root_string(a, -a),
            Err(RootError::UndefinedString { .. })
        ));
    }

    #[test]
    fn scalar_products() {
        let sys = build_e6();
        let a = id(&sys, "100000");
        let c = id(&sys, "001000");
        let d = id(&sys, "000100");
        let e = id(&sys, "000010");
        assert_eq!(sys.scalar_product(a, a), 2);
        assert_eq!(sys.scalar_product(c, d), -1);
        assert_eq!(sys.scalar_product(a, e), 0);
    }

    #[test]
    fn rejects_non_roots() {
        let sys = build_e6();
        assert!(sys.id_of(&[1, 1, 0, 0, 0, 0]).is_err());
        assert!(sys.id_of(&[1, -1, 0, 0, 0, 0]).is_err());
        assert!(RootId::new(0).is_err());
        assert!(RootId::new(37).is_err());
    }

    #[test]
    fn display_forms() {
        let sys = build_e6();
        assert_eq!(sys.root(RootId::new(3).unwrap()).to_string(), "a+c");
        assert_eq!(sys.root(RootId::new(-3).unwrap()).to_string(), "-a-c");
        assert_eq!(sys.root(RootId::new(-35).unwrap()).tuple_string(), "-112321");
        assert_eq!(format_half(1), "1/2");
        assert_eq!(format_half(-2), "-1");
    }

    fn any_root() -> impl Strategy<Value = RootId> {
        (1i32..=36, any::<bool>()).prop_map(|(i, neg)| RootId::new(if neg { -i } else { i }).unwrap())
    }

    proptest! {
        #[test]
        fn parse_roundtrip(r in any_root()) {
            let sys = build_e6();
            prop_assert_eq!(sys.parse_root(&r.to_string()).unwrap(), r);
            prop_assert_eq!(sys.parse_root(&sys.root(r).tuple_string()).unwrap(), r);
            prop_assert_eq!(sys.parse_root(&sys.root(r).to_string()).unwrap(), r);
        }

        #[test]
        fn sum_is_symmetric_and_negates(r in any_root(), s in any_root()) {
            let sys = build_e6();
            prop_assert_eq!(sys.sum(r, s), sys.sum(s, r));
            prop_assert_eq!(sys.sum_root(-r, -s), sys.sum_root(r, s).map(|t| -t));
            prop_assert_eq!(sys.scalar_product(r, r), 2);
            if let Some(t) = sys.sum_root(r, s) {
                prop_assert_eq!(sys.scalar_product(r, s), -1);
                prop_assert_eq!(sys.height(t), sys.height(r) + sys.height(s));
            }
        }

        #[test]
        fn order_is_total_and_matches_index(r in any_root(), s in any_root()) {
            let sys = build_e6();
            prop_assume!(r != s);
            let (x, y) = (sys.precedes(r, s).unwrap(), sys.precedes(s, r).unwrap());
            prop_assert!(x != y);
            if r.is_positive() && s.is_positive() {
                prop_assert_eq!(x, r < s);
            }
        }
    }
}
