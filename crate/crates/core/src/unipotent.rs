//! Words in the root elements `x_r(t)`, `r > 0`, and their collected form.
//!
//! The canonical form is the product `x_1(t_1) x_2(t_2) ⋯ x_36(t_36)` in
//! index order. Collection rewrites an out-of-order adjacent pair with
//! `x_s(u) x_r(t) = x_r(t) x_s(u) x_{r+s}(N_{s,r} t u)` and merges equal
//! neighbours with `x_r(t) x_r(u) = x_r(t + u)`.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::constants::{ConstantTable, TableMode};
use crate::field::{Field, FieldError};
use crate::liealg::{ChevalleyAlgebra, LieError, DIM};
use crate::linalg::Matrix;
use crate::rootsys::{RootId, RootSystem, POSITIVE_COUNT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnipotentError {
    #[error("root {0} is negative; only positive letters are supported")]
    NegativeRoot(RootId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("collection needs a numeric constant table")]
    NotNumeric,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Letter<E> {
    pub root: RootId,
    pub param: E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupWord<E> {
    pub letters: Vec<Letter<E>>,
}

impl<E> GroupWord<E> {
    pub fn new(letters: Vec<Letter<E>>) -> Self {
        GroupWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Reads a word given as lines `root_index scalar`. Blank lines and `#`
/// comments are skipped.
pub fn parse_word<F: Field>(text: &str, f: &F) -> Result<GroupWord<F::Elem>, UnipotentError> {
    let mut letters = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| UnipotentError::Parse { line: n + 1, message };
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(scalar), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected `root_index scalar`, got {line:?}")));
        };
        let index: i32 = idx.parse().map_err(|_| err(format!("bad root index {idx:?}")))?;
        let root = RootId::new(index).map_err(|e| err(e.to_string()))?;
        let param = f.parse(scalar).map_err(|e| err(e.to_string()))?;
        letters.push(Letter { root, param });
    }
    Ok(GroupWord { letters })
}

/// Coefficients `t_1..t_36` of `∏ x_k(t_k)` in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalUnipotent<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> CanonicalUnipotent<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F) -> Self {
        CanonicalUnipotent {
            coeffs: vec![f.zero(); POSITIVE_COUNT],
        }
    }

    pub fn coeff(&self, r: RootId) -> &E {
        &self.coeffs[r.slot()]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    /// The nonzero letters in canonical order.
    pub fn to_word<F: Field<Elem = E>>(&self, f: &F) -> GroupWord<E> {
        GroupWord {
            letters: RootId::positives()
                .zip(&self.coeffs)
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(root, c)| Letter { root, param: c.clone() })
                .collect(),
        }
    }
}

impl<E: fmt::Display> fmt::Display for CanonicalUnipotent<E> {
    /// `root_index scalar` lines; zero coefficients are still listed here,
    /// use [`CanonicalUnipotent::to_word`] to drop them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, c) in RootId::positives().zip(&self.coeffs) {
            writeln!(f, "{} {}", r.index(), c)?;
        }
        Ok(())
    }
}

/// Collection over a fixed field and numeric constant table.
#[derive(Clone, Debug)]
pub struct Collector<'a, F: Field> {
    sys: &'a RootSystem,
    table: &'a ConstantTable,
    field: F,
}

impl<'a, F: Field> Collector<'a, F> {
    pub fn new(sys: &'a RootSystem, table: &'a ConstantTable, field: F) -> Result<Self, UnipotentError> {
        if table.mode() != TableMode::Numeric {
            return Err(UnipotentError::NotNumeric);
        }
        Ok(Collector { sys, table, field })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn single(&self, root: RootId, param: F::Elem) -> Result<CanonicalUnipotent<F::Elem>, UnipotentError> {
        self.collect(&GroupWord::new(vec![Letter { root, param }]))
    }

    /// Collects by always rewriting the leftmost out-of-order pair.
    pub fn collect(&self, w: &GroupWord<F::Elem>) -> Result<CanonicalUnipotent<F::Elem>, UnipotentError> {
        self.collect_by(w, |_| 0)
    }

    /// Collects, rewriting a uniformly random out-of-order pair at each step.
    pub fn collect_random<R: Rng>(
        &self,
        w: &GroupWord<F::Elem>,
        rng: &mut R,
    ) -> Result<CanonicalUnipotent<F::Elem>, UnipotentError> {
        self.collect_by(w, |n| rng.gen_range(0..n))
    }

    /// Collects with a caller-chosen schedule: `pick(n)` selects which of the
    /// `n` current out-of-order positions (left to right) is rewritten next.
    pub fn collect_by(
        &self,
        w: &GroupWord<F::Elem>,
        mut pick: impl FnMut(usize) -> usize,
    ) -> Result<CanonicalUnipotent<F::Elem>, UnipotentError> {
        let f = &self.field;
        if let Some(l) = w.letters.iter().find(|l| !l.root.is_positive()) {
            return Err(UnipotentError::NegativeRoot(l.root));
        }
        let mut letters: Vec<Letter<F::Elem>> =
            w.letters.iter().filter(|l| !f.is_zero(&l.param)).cloned().collect();
        loop {
            let open: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&i| letters[i].root >= letters[i + 1].root)
                .collect();
            if open.is_empty() {
                break;
            }
            let i = open[pick(open.len()).min(open.len() - 1)];
            let (s, u) = (letters[i].root, letters[i].param.clone());
            let (r, t) = (letters[i + 1].root, letters[i + 1].param.clone());
            if s == r {
                let sum = f.add(&u, &t);
                if f.is_zero(&sum) {
                    letters.drain(i..i + 2);
                } else {
                    letters[i].param = sum;
                    letters.remove(i + 1);
                }
                continue;
            }
            letters[i] = Letter { root: r, param: t.clone() };
            letters[i + 1] = Letter { root: s, param: u.clone() };
            if let Some(target) = self.sys.sum_root(r, s) {
                let n = self.table.value(s, r).expect("numeric table covers root sums");
                let param = f.mul(&f.from_i64(i64::from(n)), &f.mul(&t, &u));
                if !f.is_zero(&param) {
                    letters.insert(i + 2, Letter { root: target, param });
                }
            }
        }
        let mut out = CanonicalUnipotent::identity(f);
        for l in letters {
            out.coeffs[l.root.slot()] = l.param;
        }
        Ok(out)
    }

    pub fn multiply(
        &self,
        x: &CanonicalUnipotent<F::Elem>,
        y: &CanonicalUnipotent<F::Elem>,
    ) -> CanonicalUnipotent<F::Elem> {
        let f = &self.field;
        let mut w = x.to_word(f);
        w.letters.extend(y.to_word(f).letters);
        self.collect(&w).expect("canonical letters are positive")
    }

    pub fn invert(&self, x: &CanonicalUnipotent<F::Elem>) -> CanonicalUnipotent<F::Elem> {
        let f = &self.field;
        let letters = x
            .to_word(f)
            .letters
            .into_iter()
            .rev()
            .map(|l| Letter {
                root: l.root,
                param: f.neg(&l.param),
            })
            .collect();
        self.collect(&GroupWord::new(letters)).expect("canonical letters are positive")
    }

    /// `x^{-1} y^{-1} x y`.
    pub fn group_commutator(
        &self,
        x: &CanonicalUnipotent<F::Elem>,
        y: &CanonicalUnipotent<F::Elem>,
    ) -> CanonicalUnipotent<F::Elem> {
        let xi = self.invert(x);
        let yi = self.invert(y);
        self.multiply(&self.multiply(&xi, &yi), &self.multiply(x, y))
    }
}

/// Product of the adjoint images `exp(t ad e_r)` of the letters. Accumulated
/// from the right so the sparse factor is always on the left.
pub fn adjoint_image<F: Field>(alg: &ChevalleyAlgebra, w: &GroupWord<F::Elem>, f: &F) -> Result<Matrix<F::Elem>, LieError> {
    let mut m = Matrix::identity(DIM, f);
    for l in w.letters.iter().rev() {
        m = alg.exp_ad(l.root, &l.param, f)?.mul(&m, f);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{derive_constants, evaluate_table, ExtraspecialChoice};
    use crate::field::{PrimeField, Rationals};
    use crate::rootsys::build_e6;
    use crate::signcalc::Assignment;
    use proptest::prelude::*;

    fn table() -> (RootSystem, ConstantTable) {
        let sys = build_e6();
        let sym = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
        let num = evaluate_table(&sym, &Assignment::all_positive());
        (sys, num)
    }

    fn id(sys: &RootSystem, s: &str) -> RootId {
        sys.parse_root(s).unwrap()
    }

    #[test]
    fn collect_examples() {
        let (sys, num) = table();
        let q = Rationals;
        let col = Collector::new(&sys, &num, q).unwrap();
        let (a, b, c) = (id(&sys, "a"), id(&sys, "b"), id(&sys, "c"));
        let t = q.from_i64(3);
        let u = q.from_i64(5);
        let w = GroupWord::new(vec![Letter { root: c, param: t.clone() }, Letter { root: a, param: u.clone() }]);
        let out = col.collect(&w).unwrap();
        assert_eq!(out.coeff(a), &u);
        assert_eq!(out.coeff(c), &t);
        assert_eq!(out.coeff(id(&sys, "a+c")), &q.from_i64(-15));

        let w = GroupWord::new(vec![Letter { root: a, param: t.clone() }, Letter { root: a, param: u.clone() }]);
        assert_eq!(col.collect(&w).unwrap().coeff(a), &q.from_i64(8));

        let w = GroupWord::new(vec![Letter { root: a, param: u.clone() }, Letter { root: b, param: t.clone() }]);
        assert_eq!(col.collect(&w).unwrap().to_word(&q), w);

        let bad = GroupWord::new(vec![Letter { root: -a, param: u }]);
        assert_eq!(col.collect(&bad), Err(UnipotentError::NegativeRoot(-a)));
    }

    #[test]
    fn commutator_examples() {
        let (sys, num) = table();
        let q = Rationals;
        let col = Collector::new(&sys, &num, q).unwrap();
        let (t, u) = (q.from_i64(2), q.from_i64(7));
        let xc = col.single(id(&sys, "c"), u.clone()).unwrap();
        let xa = col.single(id(&sys, "a"), t.clone()).unwrap();
        let xa_u = col.single(id(&sys, "a"), u.clone()).unwrap();
        let xc_t = col.single(id(&sys, "c"), t.clone()).unwrap();
        let comm = col.group_commutator(&xa_u, &xc_t);
        assert_eq!(comm.to_word(&q).letters, vec![Letter { root: id(&sys, "a+c"), param: q.from_i64(14) }]);
        let comm = col.group_commutator(&xc, &xa);
        assert_eq!(comm.to_word(&q).letters, vec![Letter { root: id(&sys, "a+c"), param: q.from_i64(-14) }]);

        let x1 = col.single(id(&sys, "a+c"), u.clone()).unwrap();
        let x2 = col.single(id(&sys, "b+c+2d+e"), t.clone()).unwrap();
        let comm = col.group_commutator(&x1, &x2);
        assert_eq!(comm.coeff(id(&sys, "a+b+2c+2d+e")), &q.from_i64(-14));

        let xb = col.single(id(&sys, "b"), t).unwrap();
        let xa = col.single(id(&sys, "a"), u).unwrap();
        assert!(col.group_commutator(&xa, &xb).is_identity(&q));
    }

    #[test]
    fn identity_and_inverse() {
        let (sys, num) = table();
        let f = PrimeField::new(2).unwrap();
        let col = Collector::new(&sys, &num, f).unwrap();
        let e = CanonicalUnipotent::identity(&f);
        assert!(col.invert(&e).is_identity(&f));
        let x = col.single(id(&sys, "a"), 1).unwrap();
        assert_eq!(col.invert(&x), x);
        assert!(col.multiply(&x, &col.invert(&x)).is_identity(&f));
    }

    #[test]
    fn parse_words() {
        let q = Rationals;
        let w = parse_word("# word\n1 3\n\n2 -1/2\n", &q).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.letters[1].param, q.from_ratio(-1, 2).unwrap());
        assert!(matches!(parse_word("1\n", &q), Err(UnipotentError::Parse { line: 1, .. })));
        assert!(matches!(parse_word("1 2\n40 1\n", &q), Err(UnipotentError::Parse { line: 2, .. })));
        assert!(matches!(parse_word("1 x\n", &q), Err(UnipotentError::Parse { .. })));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<(i32, u64)>> {
        prop::collection::vec((1i32..=36, 0u64..7), 0..=8)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn schedule_independent(spec in word_strategy(), seed in any::<u64>()) {
            use rand::SeedableRng;
            let (sys, num) = table();
            let f = PrimeField::new(7).unwrap();
            let col = Collector::new(&sys, &num, f).unwrap();
            let w = GroupWord::new(spec.iter().map(|&(i, p)| Letter { root: RootId::new(i).unwrap(), param: p }).collect());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            prop_assert_eq!(col.collect(&w).unwrap(), col.collect_random(&w, &mut rng).unwrap());
        }

        #[test]
        fn inverse_of_product(a in word_strategy(), b in word_strategy()) {
            let (sys, num) = table();
            let f = PrimeField::new(7).unwrap();
            let col = Collector::new(&sys, &num, f).unwrap();
            let mk = |s: &[(i32, u64)]| col.collect(&GroupWord::new(s.iter().map(|&(i, p)| Letter { root: RootId::new(i).unwrap(), param: p }).collect())).unwrap();
            let (x, y) = (mk(&a), mk(&b));
            prop_assert_eq!(col.invert(&col.multiply(&x, &y)), col.multiply(&col.invert(&y), &col.invert(&x)));
            prop_assert!(col.multiply(&x, &col.invert(&x)).is_identity(&f));
        }
    }
}
