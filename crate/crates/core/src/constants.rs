//! Structure constants `N_{r,s}` of the Chevalley basis.
//!
//! The constants on the thirty extraspecial pairs are free signs; every other
//! constant follows from them. [`derive_constants`] walks the positive sums in
//! `≺`-order, solves the four-term relation for each special pair that is not
//! extraspecial, and closes the table under antisymmetry, the cyclic relation
//! and the `N_{-r,-s} = -N_{r,s}` rule. Every relation instance that hits an
//! entry that is already known is compared against it.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::rootsys::{FundamentalLabel, RootId, RootSum, RootSystem, RANK, ROOT_COUNT};
use crate::signcalc::{Assignment, Family, SignMonomial, SignVar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableMode {
    /// Entries are monomials in the sign parameters.
    Symbolic,
    /// Entries are plain `±1`.
    Numeric,
}

/// The four relations among structure constants, plus domain completeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Seed,
    /// `N_{s,r} = -N_{r,s}`
    Antisymmetry,
    /// `N_{r1,r2} = N_{r2,r3} = N_{r3,r1}` for `r1 + r2 + r3 = 0`
    Cyclic,
    /// `N_{r,s} N_{-r,-s} = -(p+1)^2`
    OppositeSigns,
    /// The four-term relation for `r1 + r2 + r3 + r4 = 0`.
    FourTerm,
    /// Every pair with a root sum has an entry, and no other pair does.
    Completeness,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Seed => "seed",
            Relation::Antisymmetry => "antisymmetry",
            Relation::Cyclic => "cyclic",
            Relation::OppositeSigns => "opposite signs",
            Relation::FourTerm => "four-term",
            Relation::Completeness => "completeness",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("root {0} is not a non-simple positive root")]
    NotDecomposable(RootId),
    #[error("invalid extraspecial choice: {0}")]
    InvalidChoice(String),
    #[error(
        "conflicting values for N({r},{s}): {existing} already known, {relation} gives {derived}"
    )]
    Conflict {
        r: RootId,
        s: RootId,
        existing: SignMonomial,
        derived: SignMonomial,
        relation: Relation,
    },
    #[error("N({r},{s}) cannot be solved: N({missing_r},{missing_s}) is not known yet")]
    Underdetermined {
        r: RootId,
        s: RootId,
        missing_r: RootId,
        missing_s: RootId,
    },
    #[error("four-term relation for N({r},{s}) has {nonzero} known nonzero terms, expected 1")]
    Degenerate { r: RootId, s: RootId, nonzero: usize },
    #[error("root string through ({r},{s}) has p = {p}; constants are not ±1")]
    LongString { r: RootId, s: RootId, p: u32 },
}

/// The `≺`-minimal decomposition `t = r + s`, `r ≺ s`, of a positive root.
pub fn extraspecial_pair(t: RootId, sys: &RootSystem) -> Result<(RootId, RootId), ConstantsError> {
    special_pairs(t, sys)?
        .into_iter()
        .next()
        .ok_or(ConstantsError::NotDecomposable(t))
}

/// All special pairs `(r, s)` with `r + s = t`, `r ≺ s`, ordered by `r`.
pub fn special_pairs(t: RootId, sys: &RootSystem) -> Result<Vec<(RootId, RootId)>, ConstantsError> {
    if !t.is_positive() {
        return Err(ConstantsError::NotDecomposable(t));
    }
    // Positive roots are indexed in ≺-order, so index comparison is ≺.
    let pairs: Vec<_> = RootId::positives()
        .filter_map(|r| {
            let s = sys.sum_root(t, -r)?;
            (s.is_positive() && r < s).then_some((r, s))
        })
        .collect();
    if pairs.is_empty() {
        return Err(ConstantsError::NotDecomposable(t));
    }
    Ok(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtraspecialEntry {
    pub sum: RootId,
    pub first: RootId,
    pub second: RootId,
    pub var: SignVar,
}

/// Assignment of a sign parameter to every extraspecial pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraspecialChoice {
    entries: Vec<ExtraspecialEntry>,
}

fn family_of(label: FundamentalLabel) -> Option<Family> {
    match label {
        FundamentalLabel::A => Some(Family::Alpha),
        FundamentalLabel::C => Some(Family::Beta),
        FundamentalLabel::D => Some(Family::Gamma),
        FundamentalLabel::B => Some(Family::Delta),
        FundamentalLabel::E => Some(Family::Epsilon),
        FundamentalLabel::F => None,
    }
}

impl ExtraspecialChoice {
    /// The standard labelling: the first root of each extraspecial pair is
    /// simple and selects the family (`a→α, c→β, d→γ, b→δ, e→ε`); within a
    /// family parameters are numbered by the `≺`-order of the sum.
    pub fn standard(sys: &RootSystem) -> Result<Self, ConstantsError> {
        let mut counters = [0usize; 5];
        let mut entries = Vec::new();
        for t in RootId::positives() {
            if sys.height(t) < 2 {
                continue;
            }
            let (r, s) = extraspecial_pair(t, sys)?;
            let label = FundamentalLabel::ALL
                .into_iter()
                .find(|&l| sys.fundamental(l) == r)
                .ok_or_else(|| {
                    ConstantsError::InvalidChoice(format!("extraspecial first root {r} is not simple"))
                })?;
            let family = family_of(label).ok_or_else(|| {
                ConstantsError::InvalidChoice(format!("no parameter family for {label}"))
            })?;
            let k = &mut counters[family as usize];
            *k += 1;
            let var = SignVar::nth(family, *k).ok_or_else(|| {
                ConstantsError::InvalidChoice(format!("family {family:?} overflows"))
            })?;
            entries.push(ExtraspecialEntry { sum: t, first: r, second: s, var });
        }
        Self::from_entries(entries, sys)
    }

    /// Validates a hand-supplied choice: one entry per non-simple positive
    /// root, each pair extraspecial, parameters used exactly once.
    pub fn from_entries(mut entries: Vec<ExtraspecialEntry>, sys: &RootSystem) -> Result<Self, ConstantsError> {
        entries.sort_by_key(|e| e.sum);
        let expected: Vec<RootId> = RootId::positives().filter(|&t| sys.height(t) >= 2).collect();
        let sums: Vec<RootId> = entries.iter().map(|e| e.sum).collect();
        if sums != expected {
            return Err(ConstantsError::InvalidChoice(
                "entries must cover each non-simple positive root exactly once".into(),
            ));
        }
        let mut used = 0u32;
        for e in &entries {
            let pair = extraspecial_pair(e.sum, sys)?;
            if pair != (e.first, e.second) {
                return Err(ConstantsError::InvalidChoice(format!(
                    "({},{}) is not the extraspecial pair of {}",
                    e.first, e.second, e.sum
                )));
            }
            let bit = 1u32 << e.var.position();
            if used & bit != 0 {
                return Err(ConstantsError::InvalidChoice(format!("parameter {} used twice", e.var)));
            }
            used |= bit;
        }
        Ok(ExtraspecialChoice { entries })
    }

    pub fn entries(&self) -> &[ExtraspecialEntry] {
        &self.entries
    }

    pub fn seeds(&self) -> Seeds {
        Seeds {
            mode: TableMode::Symbolic,
            values: self
                .entries
                .iter()
                .map(|e| (e.first, e.second, SignMonomial::var(e.var)))
                .collect(),
        }
    }

    /// Seeds with every parameter replaced by its value under `a`.
    pub fn seeds_under(&self, a: &Assignment) -> Seeds {
        Seeds {
            mode: TableMode::Numeric,
            values: self
                .entries
                .iter()
                .map(|e| (e.first, e.second, SignMonomial::var(e.var).specialize(a)))
                .collect(),
        }
    }
}

/// Values of `N` on the extraspecial pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seeds {
    pub mode: TableMode,
    pub values: Vec<(RootId, RootId, SignMonomial)>,
}

/// `N_{r,s}` for every ordered pair of roots whose sum is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTable {
    mode: TableMode,
    entries: Vec<Option<SignMonomial>>,
}

impl ConstantTable {
    pub fn empty(mode: TableMode) -> Self {
        ConstantTable {
            mode,
            entries: vec![None; ROOT_COUNT * ROOT_COUNT],
        }
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    fn at(r: RootId, s: RootId) -> usize {
        r.slot() * ROOT_COUNT + s.slot()
    }

    pub fn get(&self, r: RootId, s: RootId) -> Option<SignMonomial> {
        self.entries[Self::at(r, s)]
    }

    /// Numeric value of an entry; `None` for absent entries or symbolic ones.
    pub fn value(&self, r: RootId, s: RootId) -> Option<i8> {
        self.get(r, s).filter(|m| m.is_constant()).map(SignMonomial::sign)
    }

    /// Overwrites one entry. Intended for building tables by hand and for
    /// mutation tests; nothing is re-derived.
    pub fn set(&mut self, r: RootId, s: RootId, value: Option<SignMonomial>) {
        self.entries[Self::at(r, s)] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (RootId, RootId, SignMonomial)> + '_ {
        self.entries.iter().enumerate().filter_map(|(i, e)| {
            e.map(|m| (RootId::from_slot(i / ROOT_COUNT), RootId::from_slot(i % ROOT_COUNT), m))
        })
    }

    pub fn len(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Deriver<'a> {
    sys: &'a RootSystem,
    table: ConstantTable,
    queue: VecDeque<(RootId, RootId)>,
}

impl Deriver<'_> {
    fn assign(&mut self, r: RootId, s: RootId, value: SignMonomial, relation: Relation) -> Result<(), ConstantsError> {
        match self.table.get(r, s) {
            None => {
                self.table.set(r, s, Some(value));
                self.queue.push_back((r, s));
                Ok(())
            }
            Some(existing) if existing == value => Ok(()),
            Some(existing) => Err(ConstantsError::Conflict {
                r,
                s,
                existing,
                derived: value,
                relation,
            }),
        }
    }

    fn close(&mut self) -> Result<(), ConstantsError> {
        while let Some((r, s)) = self.queue.pop_front() {
            let n = self.table.get(r, s).expect("queued entries are set");
            let t = self
                .sys
                .sum_root(r, s)
                .expect("entries exist only for pairs with a root sum");
            let (p, _) = self.sys.root_string(r, s).expect("r + s is a root, so s ≠ ±r");
            if p != 0 {
                return Err(ConstantsError::LongString { r, s, p });
            }
            self.assign(s, r, -n, Relation::Antisymmetry)?;
            self.assign(-r, -s, -n, Relation::OppositeSigns)?;
            self.assign(s, -t, n, Relation::Cyclic)?;
            self.assign(-t, r, n, Relation::Cyclic)?;
        }
        Ok(())
    }

    /// Known product `N_{x1,x2} N_{y1,y2}`, or `None` when a factor vanishes
    /// because its pair does not sum to a root.
    fn product(
        &self,
        for_pair: (RootId, RootId),
        x: (RootId, RootId),
        y: (RootId, RootId),
    ) -> Result<Option<SignMonomial>, ConstantsError> {
        let mut out = SignMonomial::ONE;
        for (a, b) in [x, y] {
            if self.sys.sum_root(a, b).is_none() {
                return Ok(None);
            }
            match self.table.get(a, b) {
                Some(v) => out = out * v,
                None => {
                    return Err(ConstantsError::Underdetermined {
                        r: for_pair.0,
                        s: for_pair.1,
                        missing_r: a,
                        missing_s: b,
                    })
                }
            }
        }
        Ok(Some(out))
    }

    /// Solves `N_{r1,s1}N_{-r,-s} + N_{s1,-r}N_{r1,-s} + N_{-r,r1}N_{s1,-s} = 0`
    /// for `N_{r,s}`, where `(r1, s1)` is the extraspecial pair of `r + s`.
    fn solve_four_term(&self, (r1, s1): (RootId, RootId), (r, s): (RootId, RootId)) -> Result<SignMonomial, ConstantsError> {
        let seed = self.table.get(r1, s1).expect("extraspecial entry seeded first");
        let terms = [
            self.product((r, s), (s1, -r), (r1, -s))?,
            self.product((r, s), (-r, r1), (s1, -s))?,
        ];
        let nonzero: Vec<SignMonomial> = terms.into_iter().flatten().collect();
        if nonzero.len() != 1 {
            return Err(ConstantsError::Degenerate { r, s, nonzero: nonzero.len() });
        }
        // seed * (-N_{r,s}) + x = 0 and seed^2 = 1.
        Ok(seed * nonzero[0])
    }
}

/// Derives the full table from the extraspecial values.
pub fn derive_constants(seeds: &Seeds, sys: &RootSystem) -> Result<ConstantTable, ConstantsError> {
    let mut d = Deriver {
        sys,
        table: ConstantTable::empty(seeds.mode),
        queue: VecDeque::new(),
    };
    for t in RootId::positives() {
        if sys.height(t) < 2 {
            continue;
        }
        let pairs = special_pairs(t, sys)?;
        let extra = pairs[0];
        let seed = seeds
            .values
            .iter()
            .find(|(r, s, _)| (*r, *s) == extra)
            .map(|&(_, _, v)| v)
            .ok_or_else(|| ConstantsError::InvalidChoice(format!("no seed for extraspecial pair of {t}")))?;
        d.assign(extra.0, extra.1, seed, Relation::Seed)?;
        d.close()?;
        for &(r, s) in &pairs[1..] {
            let value = d.solve_four_term(extra, (r, s))?;
            d.assign(r, s, value, Relation::FourTerm)?;
            d.close()?;
        }
    }
    Ok(d.table)
}

/// Replaces every entry by its value under `a`.
pub fn evaluate_table(table: &ConstantTable, a: &Assignment) -> ConstantTable {
    ConstantTable {
        mode: TableMode::Numeric,
        entries: table
            .entries
            .iter()
            .map(|e| e.map(|m| m.specialize(a)))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub roots: Vec<RootId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    /// Number of relation instances checked, per relation.
    pub checked: Vec<(Relation, usize)>,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, relation: Relation) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.relation == relation)
    }

    pub fn checked_count(&self, relation: Relation) -> usize {
        self.checked
            .iter()
            .find(|(r, _)| *r == relation)
            .map_or(0, |&(_, n)| n)
    }
}

/// A formal sum of `±` monomials is zero iff the signs cancel within each
/// parity class.
fn formal_sum_is_zero(terms: &[SignMonomial]) -> bool {
    let mut classes: Vec<(u32, i32)> = Vec::new();
    for t in terms {
        match classes.iter_mut().find(|(p, _)| *p == t.parity()) {
            Some((_, c)) => *c += i32::from(t.sign()),
            None => classes.push((t.parity(), i32::from(t.sign()))),
        }
    }
    classes.iter().all(|&(_, c)| c == 0)
}

/// Exhaustive check of the four relations on a table.
pub fn check_relations(table: &ConstantTable, sys: &RootSystem) -> RelationReport {
    let mut report = RelationReport::default();
    let n = |a: RootId, b: RootId| table.get(a, b);
    let violate = |rel: Relation, roots: Vec<RootId>, out: &mut Vec<Violation>| {
        out.push(Violation { relation: rel, roots });
    };
    let mut violations = Vec::new();

    let mut count = 0;
    for r in RootId::all() {
        for s in RootId::all() {
            count += 1;
            let has_sum = matches!(sys.sum(r, s), RootSum::Root(_));
            if has_sum != n(r, s).is_some() {
                violate(Relation::Completeness, vec![r, s], &mut violations);
            }
        }
    }
    report.checked.push((Relation::Completeness, count));

    let mut count = 0;
    for (r, s, v) in table.iter() {
        count += 1;
        if n(s, r) != Some(-v) {
            violate(Relation::Antisymmetry, vec![r, s], &mut violations);
        }
    }
    report.checked.push((Relation::Antisymmetry, count));

    let mut count = 0;
    for r1 in RootId::all() {
        for r2 in RootId::all() {
            let Some(t) = sys.sum_root(r1, r2) else { continue };
            let r3 = -t;
            count += 1;
            let a = n(r1, r2);
            if a.is_none() || a != n(r2, r3) || a != n(r3, r1) {
                violate(Relation::Cyclic, vec![r1, r2, r3], &mut violations);
            }
        }
    }
    report.checked.push((Relation::Cyclic, count));

    let mut count = 0;
    for (r, s, v) in table.iter() {
        count += 1;
        let p = sys.root_string(r, s).map(|(p, _)| p).unwrap_or(u32::MAX);
        let ok = p == 0 && n(-r, -s).map(|w| v * w) == Some(SignMonomial::MINUS_ONE);
        if !ok {
            violate(Relation::OppositeSigns, vec![r, s], &mut violations);
        }
    }
    report.checked.push((Relation::OppositeSigns, count));

    let coeffs: Vec<[i32; RANK]> = RootId::all().map(|r| sys.root(r).coeffs()).collect();
    let prod = |a: RootId, b: RootId, c: RootId, d: RootId| -> Option<SignMonomial> {
        Some(n(a, b)? * n(c, d)?)
    };
    let mut count = 0;
    for r1 in RootId::all() {
        for r2 in RootId::all() {
            if r2 == -r1 {
                continue;
            }
            for r3 in RootId::all() {
                if r3 == -r1 || r3 == -r2 {
                    continue;
                }
                let mut c4 = [0i32; RANK];
                for k in 0..RANK {
                    c4[k] = -(coeffs[r1.slot()][k] + coeffs[r2.slot()][k] + coeffs[r3.slot()][k]);
                }
                let Ok(r4) = sys.id_of(&c4) else { continue };
                if [r1, r2, r3].iter().any(|&x| x == -r4) {
                    continue;
                }
                count += 1;
                let terms: Vec<SignMonomial> = [
                    prod(r1, r2, r3, r4),
                    prod(r2, r3, r1, r4),
                    prod(r3, r1, r2, r4),
                ]
                .into_iter()
                .flatten()
                .collect();
                if !formal_sum_is_zero(&terms) {
                    violate(Relation::FourTerm, vec![r1, r2, r3, r4], &mut violations);
                }
            }
        }
    }
    report.checked.push((Relation::FourTerm, count));
    report.violations = violations;
    report
}

/// Number of positive special pairs: one entry per unordered pair of positive
/// roots with a root sum.
pub fn positive_special_pair_count(sys: &RootSystem) -> usize {
    RootId::positives()
        .flat_map(|t| special_pairs(t, sys).unwrap_or_default())
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_e6;

    fn id(sys: &RootSystem, name: &str) -> RootId {
        sys.parse_root(name).unwrap()
    }

    fn m(s: &str) -> SignMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn extraspecial_examples() {
        let sys = build_e6();
        assert_eq!(
            extraspecial_pair(id(&sys, "a+c"), &sys).unwrap(),
            (id(&sys, "a"), id(&sys, "c"))
        );
        assert_eq!(
            extraspecial_pair(id(&sys, "b+c+2d+e"), &sys).unwrap(),
            (id(&sys, "d"), id(&sys, "b+c+d+e"))
        );
        assert_eq!(
            extraspecial_pair(id(&sys, "a+2b+2c+3d+2e+f"), &sys).unwrap(),
            (id(&sys, "b"), id(&sys, "a+b+2c+3d+2e+f"))
        );
        assert_eq!(
            extraspecial_pair(id(&sys, "a"), &sys),
            Err(ConstantsError::NotDecomposable(id(&sys, "a")))
        );
        assert!(extraspecial_pair(id(&sys, "-a-c"), &sys).is_err());
    }

    #[test]
    fn standard_choice_is_bijective() {
        let sys = build_e6();
        let choice = ExtraspecialChoice::standard(&sys).unwrap();
        assert_eq!(choice.entries().len(), 30);
        let mut vars: Vec<_> = choice.entries().iter().map(|e| e.var).collect();
        vars.sort();
        assert_eq!(vars, SignVar::all().collect::<Vec<_>>());
        let last = choice.entries().last().unwrap();
        assert_eq!(last.var.to_string(), "d3");
    }

    #[test]
    fn derived_examples() {
        let sys = build_e6();
        let table = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
        assert_eq!(table.get(id(&sys, "a"), id(&sys, "c")), Some(m("a1")));
        assert_eq!(table.get(id(&sys, "a+c"), id(&sys, "d")), Some(m("a1*a2*b1")));
        assert_eq!(table.get(id(&sys, "a"), id(&sys, "-a-c")), Some(m("-a1")));
        assert_eq!(
            table.get(id(&sys, "a+b+c+2d+e"), id(&sys, "b+c+d+e+f")),
            Some(m("-a6*a0*b4*b9*g2*g3*g5*g6*d1*d3*e2"))
        );
        assert_eq!(table.get(id(&sys, "a"), id(&sys, "b")), None);
        assert_eq!(table.len(), 72 * 20);
    }

    #[test]
    fn numeric_examples() {
        let sys = build_e6();
        let table = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
        let num = evaluate_table(&table, &Assignment::all_positive());
        let r = |k| RootId::new(k).unwrap();
        assert_eq!(num.value(r(2), r(5)), None);
        assert_eq!(num.value(r(1), r(2)), Some(1));
        assert_eq!(num.value(r(3), r(18)), Some(-1));
        assert_eq!(num.mode(), TableMode::Numeric);
    }

    #[test]
    fn relations_hold_and_detect_flips() {
        let sys = build_e6();
        let table = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
        let report = check_relations(&table, &sys);
        assert!(report.passed(), "{:?}", &report.violations[..report.violations.len().min(5)]);
        assert!(report.checked_count(Relation::FourTerm) > 0);

        let mut bad = table.clone();
        let (r, s) = (id(&sys, "a+c"), id(&sys, "d"));
        bad.set(r, s, Some(-table.get(r, s).unwrap()));
        let report = check_relations(&bad, &sys);
        assert!(report.violations_of(Relation::FourTerm).count() > 0);
    }

    #[test]
    fn missing_seed_is_reported() {
        let sys = build_e6();
        let mut seeds = ExtraspecialChoice::standard(&sys).unwrap().seeds();
        seeds.values.pop();
        assert!(matches!(derive_constants(&seeds, &sys), Err(ConstantsError::InvalidChoice(_))));
    }

    #[test]
    fn hand_choice_must_be_extraspecial() {
        let sys = build_e6();
        let mut entries = ExtraspecialChoice::standard(&sys).unwrap().entries().to_vec();
        entries.swap(0, 1);
        assert!(ExtraspecialChoice::from_entries(entries.clone(), &sys).is_ok());
        let e = &mut entries[3];
        std::mem::swap(&mut e.first, &mut e.second);
        assert!(ExtraspecialChoice::from_entries(entries, &sys).is_err());
    }

    #[test]
    fn formal_zero() {
        assert!(formal_sum_is_zero(&[m("a1"), m("-a1")]));
        assert!(!formal_sum_is_zero(&[m("a1"), m("-a2")]));
        assert!(!formal_sum_is_zero(&[m("a1")]));
        assert!(formal_sum_is_zero(&[]));
    }

    #[test]
    fn special_pair_count() {
        assert_eq!(positive_special_pair_count(&build_e6()), 120);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]

        #[test]
        fn derivation_commutes_with_assignment(mask in 0u32..(1 << 30)) {
            let sys = build_e6();
            let choice = ExtraspecialChoice::standard(&sys).unwrap();
            let sym = derive_constants(&choice.seeds(), &sys).unwrap();
            let a = Assignment::from_negative_mask(mask);
            let direct = derive_constants(&choice.seeds_under(&a), &sys).unwrap();
            proptest::prop_assert_eq!(&direct, &evaluate_table(&sym, &a));
        }
    }
}
