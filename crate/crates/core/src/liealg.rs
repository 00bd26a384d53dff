//! The 78-dimensional Chevalley-basis Lie algebra built from a numeric
//! constant table, used as an independent oracle.
//!
//! Basis order: `h_1..h_6` (one per fundamental root, `a..f`), then `e_r` for
//! the roots in slot order (`1..36`, then `-1..-36`). Cartan brackets follow
//! the standard Chevalley basis: `[h_i, e_r] = (r, α_i) e_r` and
//! `[e_r, e_{-r}] = h_r = Σ c_i h_i` with `c_i` the coefficients of `r`.

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::constants::ConstantTable;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::rootsys::{FundamentalLabel, RootId, RootSystem, RANK, ROOT_COUNT};

pub const DIM: usize = RANK + ROOT_COUNT;

/// Highest power of `ad(e_r)` that can be nonzero.
pub const NILPOTENCY_BOUND: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("constant table has no numeric entry for ({0},{1})")]
    MissingEntry(RootId, RootId),
    #[error("characteristic {0} is not supported; need 0 or a prime above 5")]
    UnsupportedField(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElem {
    H(FundamentalLabel),
    E(RootId),
}

impl BasisElem {
    pub fn index(self) -> usize {
        match self {
            BasisElem::H(l) => l.position(),
            BasisElem::E(r) => RANK + r.slot(),
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i < RANK {
            BasisElem::H(FundamentalLabel::ALL[i])
        } else {
            BasisElem::E(RootId::from_slot(i - RANK))
        }
    }
}

impl std::fmt::Display for BasisElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisElem::H(l) => write!(f, "h_{l}"),
            BasisElem::E(r) => write!(f, "e_{r}"),
        }
    }
}

/// Sparse structure constants of the algebra over the integers.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    brackets: Vec<Vec<(usize, i64)>>,
}

pub fn build_algebra(table: &ConstantTable, sys: &RootSystem) -> Result<ChevalleyAlgebra, LieError> {
    let mut brackets = vec![Vec::new(); DIM * DIM];
    let h = |l: usize| BasisElem::H(FundamentalLabel::ALL[l]).index();
    let e = |r: RootId| BasisElem::E(r).index();
    for r in RootId::all() {
        for (l, label) in FundamentalLabel::ALL.into_iter().enumerate() {
            let c = i64::from(sys.scalar_product(r, sys.fundamental(label)));
            if c != 0 {
                brackets[h(l) * DIM + e(r)] = vec![(e(r), c)];
                brackets[e(r) * DIM + h(l)] = vec![(e(r), -c)];
            }
        }
        for s in RootId::all() {
            let out = if s == -r {
                sys.root(r)
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(l, &c)| (h(l), i64::from(c)))
                    .collect()
            } else if let Some(t) = sys.sum_root(r, s) {
                let n = table.value(r, s).ok_or(LieError::MissingEntry(r, s))?;
                vec![(e(t), i64::from(n))]
            } else {
                Vec::new()
            };
            brackets[e(r) * DIM + e(s)] = out;
        }
    }
    Ok(ChevalleyAlgebra { brackets })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub checked: usize,
    /// Basis index triples `(i, j, k)`, `i ≤ j ≤ k`, where the identity fails.
    pub violations: Vec<[usize; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ChevalleyAlgebra {
    pub fn dim(&self) -> usize {
        DIM
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.brackets[i * DIM + j]
    }

    /// `[b_i, v]` added into `out` with multiplier `k`.
    fn bracket_into(&self, i: usize, v: &[(usize, i64)], k: i64, out: &mut [i64]) {
        for &(j, c) in v {
            for &(m, d) in self.bracket_basis(i, j) {
                out[m] += k * c * d;
            }
        }
    }

    /// Bracket of two vectors in basis coordinates.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; DIM];
        let ys: Vec<(usize, i64)> = y.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                self.bracket_into(i, &ys, c, &mut out);
            }
        }
        out
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut out = [0i64; DIM];
        self.bracket_into(i, self.bracket_basis(j, k), 1, &mut out);
        self.bracket_into(j, self.bracket_basis(k, i), 1, &mut out);
        self.bracket_into(k, self.bracket_basis(i, j), 1, &mut out);
        out.iter().all(|&c| c == 0)
    }

    /// Jacobi identity on every basis triple `i ≤ j ≤ k`.
    pub fn jacobi_scan(&self) -> JacobiReport {
        let all: Vec<usize> = (0..DIM).collect();
        self.jacobi_scan_subset(&all)
    }

    /// Jacobi identity on the triples drawn from `basis`.
    pub fn jacobi_scan_subset(&self, basis: &[usize]) -> JacobiReport {
        let per_i: Vec<(usize, Vec<[usize; 3]>)> = (0..basis.len())
            .into_par_iter()
            .map(|a| {
                let mut checked = 0;
                let mut bad = Vec::new();
                for b in a..basis.len() {
                    for c in b..basis.len() {
                        checked += 1;
                        let (i, j, k) = (basis[a], basis[b], basis[c]);
                        if !self.jacobi_holds(i, j, k) {
                            bad.push([i, j, k]);
                        }
                    }
                }
                (checked, bad)
            })
            .collect();
        let mut report = JacobiReport::default();
        for (n, bad) in per_i {
            report.checked += n;
            report.violations.extend(bad);
        }
        report
    }

    /// Matrix of `ad(b_i)`: column `j` holds the coordinates of `[b_i, b_j]`.
    pub fn ad_matrix<F: Field>(&self, i: usize, f: &F) -> Matrix<F::Elem> {
        let mut m = Matrix::zero(DIM, f);
        for j in 0..DIM {
            for &(row, c) in self.bracket_basis(i, j) {
                m.set(row, j, f.from_i64(c));
            }
        }
        m
    }

    /// `exp(scalar · ad e_r) = Σ_{k ≤ 4} scalar^k ad(e_r)^k / k!`, the image of
    /// `x_r(scalar)` in the adjoint representation.
    pub fn exp_ad<F: Field>(&self, r: RootId, scalar: &F::Elem, f: &F) -> Result<Matrix<F::Elem>, LieError> {
        let p = f.characteristic();
        if p != 0 && p <= 5 {
            return Err(LieError::UnsupportedField(p));
        }
        let ad = self.ad_matrix(BasisElem::E(r).index(), f).scale(scalar, f);
        let mut term = Matrix::identity(DIM, f);
        let mut sum = term.clone();
        for k in 1..=NILPOTENCY_BOUND {
            let inv_k = f.inv(&f.from_i64(i64::from(k))).expect("k is invertible for p > 5");
            term = term.mul(&ad, f).scale(&inv_k, f);
            sum = sum.add(&term, f);
        }
        Ok(sum)
    }

    /// `X_s(u)^{-1} X_r(t)^{-1} X_s(u) X_r(t)` in the adjoint representation.
    pub fn group_commutator<F: Field>(
        &self,
        s: RootId,
        u: &F::Elem,
        r: RootId,
        t: &F::Elem,
        f: &F,
    ) -> Result<Matrix<F::Elem>, LieError> {
        let xs_inv = self.exp_ad(s, &f.neg(u), f)?;
        let xr_inv = self.exp_ad(r, &f.neg(t), f)?;
        let xs = self.exp_ad(s, u, f)?;
        let xr = self.exp_ad(r, t, f)?;
        Ok(xs_inv.mul(&xr_inv, f).mul(&xs, f).mul(&xr, f))
    }
}

/// Outcome of comparing group commutators with the single-term formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjointReport {
    pub samples: usize,
    /// Sampled pairs `(s, r)` whose sum is a root.
    pub with_sum: usize,
    pub failures: Vec<(RootId, RootId)>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws `samples` random `(s, r, u, t)` with `r ≠ -s` and checks
/// `(X_s(u), X_r(t)) = X_{r+s}(N_{s,r} t u)`, or the identity when `r + s` is
/// not a root. Three draws in four are restricted to pairs with a root sum.
pub fn adjoint_check<F: Field, R: Rng>(
    alg: &ChevalleyAlgebra,
    table: &ConstantTable,
    sys: &RootSystem,
    f: &F,
    samples: usize,
    rng: &mut R,
) -> Result<AdjointReport, LieError> {
    let roots: Vec<RootId> = RootId::all().collect();
    let mut report = AdjointReport { samples, ..AdjointReport::default() };
    for _ in 0..samples {
        let want_sum = rng.gen_range(0..4) != 0;
        let (s, r) = loop {
            let s = roots[rng.gen_range(0..roots.len())];
            let r = roots[rng.gen_range(0..roots.len())];
            if r != -s && sys.sum_root(s, r).is_some() == want_sum {
                break (s, r);
            }
        };
        let (u, t) = (f.random(rng), f.random(rng));
        let lhs = alg.group_commutator(s, &u, r, &t, f)?;
        let rhs = match sys.sum_root(s, r) {
            Some(sum) => {
                report.with_sum += 1;
                let n = table.value(s, r).ok_or(LieError::MissingEntry(s, r))?;
                alg.exp_ad(sum, &f.mul(&f.from_i64(i64::from(n)), &f.mul(&t, &u)), f)?
            }
            None => Matrix::identity(DIM, f),
        };
        if lhs != rhs {
            report.failures.push((s, r));
        }
    }
    Ok(report)
}

/// Basis indices of the Cartan subalgebra.
pub fn cartan_basis() -> Vec<usize> {
    (0..RANK).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{derive_constants, evaluate_table, ExtraspecialChoice};
    use crate::field::{PrimeField, Rationals};
    use crate::rootsys::build_e6;
    use crate::signcalc::{Assignment, SignMonomial};
    use proptest::prelude::*;

    fn numeric() -> (RootSystem, ConstantTable) {
        let sys = build_e6();
        let sym = derive_constants(&ExtraspecialChoice::standard(&sys).unwrap().seeds(), &sys).unwrap();
        (sys.clone(), evaluate_table(&sym, &Assignment::all_positive()))
    }

    #[test]
    fn bracket_examples() {
        let (sys, table) = numeric();
        let alg = build_algebra(&table, &sys).unwrap();
        let a = sys.parse_root("a").unwrap();
        let c = sys.parse_root("c").unwrap();
        let ac = sys.parse_root("a+c").unwrap();
        let e = |r| BasisElem::E(r).index();
        assert_eq!(alg.bracket_basis(e(a), e(c)), &[(e(ac), 1)]);
        assert!(alg.bracket_basis(0, 3).is_empty());
        assert_eq!(alg.bracket_basis(e(a), e(-a)), &[(0, 1)]);
        assert_eq!(alg.dim(), 78);
    }

    #[test]
    fn cartan_integers_in_range() {
        let (sys, table) = numeric();
        let alg = build_algebra(&table, &sys).unwrap();
        for i in 0..RANK {
            for j in RANK..DIM {
                for &(_, c) in alg.bracket_basis(i, j) {
                    assert!((-2..=2).contains(&c));
                }
            }
        }
    }

    #[test]
    fn flipped_constant_breaks_jacobi() {
        let (sys, mut table) = numeric();
        let a = sys.parse_root("a").unwrap();
        let c = sys.parse_root("c").unwrap();
        table.set(a, c, Some(SignMonomial::MINUS_ONE));
        let alg = build_algebra(&table, &sys).unwrap();
        assert!(!alg.jacobi_scan().passed());
        assert!(alg.jacobi_scan_subset(&cartan_basis()).passed());
    }

    #[test]
    fn exp_ad_one_parameter() {
        let (sys, table) = numeric();
        let alg = build_algebra(&table, &sys).unwrap();
        let a = sys.parse_root("a").unwrap();
        let q = Rationals;
        assert_eq!(alg.exp_ad(a, &q.zero(), &q).unwrap(), Matrix::identity(DIM, &q));
        let t = q.from_ratio(2, 3).unwrap();
        let u = q.from_i64(-5);
        let lhs = alg.exp_ad(a, &t, &q).unwrap().mul(&alg.exp_ad(a, &u, &q).unwrap(), &q);
        assert_eq!(lhs, alg.exp_ad(a, &q.add(&t, &u), &q).unwrap());
        assert_eq!(
            alg.exp_ad(a, &1, &PrimeField::new(5).unwrap()),
            Err(LieError::UnsupportedField(5))
        );
    }

    #[test]
    fn commutator_of_a_and_c() {
        let (sys, table) = numeric();
        let alg = build_algebra(&table, &sys).unwrap();
        let f = PrimeField::new(101).unwrap();
        let (a, c) = (sys.parse_root("a").unwrap(), sys.parse_root("c").unwrap());
        let lhs = alg.group_commutator(c, &7, a, &3, &f).unwrap();
        let n = i64::from(table.value(c, a).unwrap());
        let rhs = alg.exp_ad(sys.parse_root("a+c").unwrap(), &f.from_i64(n * 21), &f).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_is_nilpotent() {
        let (sys, table) = numeric();
        let alg = build_algebra(&table, &sys).unwrap();
        let f = PrimeField::new(1_000_003).unwrap();
        for r in RootId::all() {
            let ad = alg.ad_matrix(BasisElem::E(r).index(), &f);
            let mut p = ad.clone();
            for _ in 1..NILPOTENCY_BOUND {
                p = p.mul(&ad, &f);
            }
            assert!(p.mul(&ad, &f).is_zero(&f), "ad(e_{r})^5 != 0");
        }
    }

    fn sparse_vector() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec((0..DIM, -3i64..=3), 0..6).prop_map(|entries| {
            let mut v = vec![0; DIM];
            for (i, c) in entries {
                v[i] += c;
            }
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bracket_is_alternating_and_jacobi(x in sparse_vector(), y in sparse_vector(), z in sparse_vector()) {
            let (sys, table) = numeric();
            let alg = build_algebra(&table, &sys).unwrap();
            let xy = alg.bracket(&x, &y);
            let yx = alg.bracket(&y, &x);
            prop_assert!(xy.iter().zip(&yx).all(|(a, b)| a + b == 0));
            prop_assert!(alg.bracket(&x, &x).iter().all(|&c| c == 0));
            let j1 = alg.bracket(&x, &alg.bracket(&y, &z));
            let j2 = alg.bracket(&y, &alg.bracket(&z, &x));
            let j3 = alg.bracket(&z, &xy);
            prop_assert!((0..DIM).all(|k| j1[k] + j2[k] + j3[k] == 0));
        }
    }
}
