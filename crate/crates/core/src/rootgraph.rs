//! Weighted digraphs on one sign class of roots, with path-count and
//! K-number matrices.
//!
//! Edges run `v → v + δ` for `δ` in the label set when `v + δ` lies in the
//! same sign class. The weight is the coefficient in
//! `[x_δ(u), x_v(t)] = x_{v+δ}(N_{δ,v} t u)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::constants::ConstantTable;
use crate::rootsys::{FundamentalLabel, RootId, RootSystem, POSITIVE_COUNT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("constant table has no numeric entry for ({0},{1})")]
    MissingWeight(RootId, RootId),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("unknown label {0:?}")]
    BadLabel(String),
    #[error("{0} cannot be emitted as {1}")]
    Unsupported(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphSign {
    Neg,
    Pos,
}

impl GraphSign {
    pub fn root(self, k: usize) -> RootId {
        let i = k as i32 + 1;
        RootId::new(if self == GraphSign::Neg { -i } else { i }).expect("k < 36")
    }

    pub fn position(self, r: RootId) -> Option<usize> {
        (r.is_positive() == (self == GraphSign::Pos)).then(|| r.abs().index() as usize - 1)
    }
}

/// Edge direction relative to the label roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EdgeRule {
    /// `v → v + δ`, weight `N_{δ,v}`.
    #[default]
    Ascending,
    /// `v → v - δ`, weight `N_{-δ,v}`.
    Descending,
}

/// Parses `a,b,c` into labels.
pub fn parse_labels(text: &str) -> Result<Vec<FundamentalLabel>, GraphError> {
    let mut out: Vec<FundamentalLabel> = text
        .split(',')
        .map(|p| {
            let p = p.trim();
            let mut cs = p.chars();
            match (cs.next().and_then(FundamentalLabel::from_symbol), cs.next()) {
                (Some(l), None) => Ok(l),
                _ => Err(GraphError::BadLabel(p.to_string())),
            }
        })
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: RootId,
    pub to: RootId,
    pub label: FundamentalLabel,
    pub weight: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRootGraph {
    pub sign: GraphSign,
    pub labels: Vec<FundamentalLabel>,
    pub rule: EdgeRule,
    pub edges: Vec<Edge>,
}

pub fn build_graph(
    sign: GraphSign,
    labels: &[FundamentalLabel],
    rule: EdgeRule,
    weights: &ConstantTable,
    sys: &RootSystem,
) -> Result<WeightedRootGraph, GraphError> {
    let mut edges = Vec::new();
    for k in 0..POSITIVE_COUNT {
        let v = sign.root(k);
        for &label in labels {
            let d = sys.fundamental(label);
            let d = if rule == EdgeRule::Ascending { d } else { -d };
            let Some(to) = sys.sum_root(v, d) else { continue };
            if sign.position(to).is_none() {
                continue;
            }
            let weight = weights.value(d, v).ok_or(GraphError::MissingWeight(d, v))?;
            edges.push(Edge { from: v, to, label, weight });
        }
    }
    let mut labels = labels.to_vec();
    labels.sort();
    Ok(WeightedRootGraph { sign, labels, rule, edges })
}

/// A 36×36 integer matrix indexed by the roots of one sign class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    sign: GraphSign,
    data: Vec<i64>,
}

const N: usize = POSITIVE_COUNT;

impl IntMatrix {
    pub fn zero(sign: GraphSign) -> Self {
        IntMatrix { sign, data: vec![0; N * N] }
    }

    pub fn identity(sign: GraphSign) -> Self {
        let mut m = Self::zero(sign);
        for i in 0..N {
            m.data[i * N + i] = 1;
        }
        m
    }

    pub fn sign(&self) -> GraphSign {
        self.sign
    }

    /// Entry at (row, col) by vertex position.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * N + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut i64 {
        &mut self.data[i * N + j]
    }

    /// Entry by root; `None` if a root is outside the sign class.
    pub fn get(&self, row: RootId, col: RootId) -> Option<i64> {
        Some(self.at(self.sign.position(row)?, self.sign.position(col)?))
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix, GraphError> {
        let mut out = IntMatrix::zero(self.sign);
        for i in 0..N {
            for k in 0..N {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..N {
                    let b = o.at(k, j);
                    if b != 0 {
                        let cell = out.at_mut(i, j);
                        *cell = a
                            .checked_mul(b)
                            .and_then(|p| cell.checked_add(p))
                            .ok_or(GraphError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &IntMatrix) -> Result<IntMatrix, GraphError> {
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(GraphError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { sign: self.sign, data })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.sign);
        for i in 0..N {
            for j in 0..N {
                *out.at_mut(j, i) = self.at(i, j);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `Σ_{k≥1} M^k` for a nilpotent `M`.
    fn nilpotent_series(m: &IntMatrix) -> Result<IntMatrix, GraphError> {
        let mut acc = IntMatrix::zero(m.sign);
        let mut p = m.clone();
        for _ in 0..=N {
            if p.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&p)?;
            p = p.mul(m)?;
        }
        panic!("matrix is not nilpotent; the graph has a cycle")
    }

    /// Inverse of `I + M` for a nilpotent `M`: `Σ_k (-M)^k`.
    pub fn unitriangular_inverse(m: &IntMatrix) -> Result<IntMatrix, GraphError> {
        let neg = IntMatrix {
            sign: m.sign,
            data: m.data.iter().map(|x| -x).collect(),
        };
        IntMatrix::identity(m.sign).add(&Self::nilpotent_series(&neg)?)
    }

    /// Dense CSV with a header naming both index roles.
    pub fn to_csv(&self, row_name: &str, col_name: &str) -> String {
        let mut out = format!("{row_name},{col_name},value\n");
        for i in 0..N {
            for j in 0..N {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    self.sign.root(i),
                    self.sign.root(j),
                    self.at(i, j)
                );
            }
        }
        out
    }
}

impl WeightedRootGraph {
    /// `A[from][to] = 1` for each edge.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.sign);
        for e in &self.edges {
            let (i, j) = self.positions(e);
            *m.at_mut(i, j) = 1;
        }
        m
    }

    /// `W[from][to]` = weight of the edge.
    pub fn weights(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.sign);
        for e in &self.edges {
            let (i, j) = self.positions(e);
            *m.at_mut(i, j) = i64::from(e.weight);
        }
        m
    }

    fn positions(&self, e: &Edge) -> (usize, usize) {
        (
            self.sign.position(e.from).expect("edge within sign class"),
            self.sign.position(e.to).expect("edge within sign class"),
        )
    }

    /// `P[s][r]`: number of directed paths of length at least one from `s`
    /// to `r`.
    pub fn path_counts(&self) -> Result<IntMatrix, GraphError> {
        IntMatrix::nilpotent_series(&self.adjacency())
    }

    /// `K[r][s] = ((I + W')^{-1})[r][s]` with `W'[r][s]` the weight of the
    /// edge `s → r`: the signed, weighted path sum from `s` to `r`.
    pub fn k_numbers(&self) -> Result<IntMatrix, GraphError> {
        IntMatrix::unitriangular_inverse(&self.weights().transpose())
    }

    /// Graphviz rendering with one node per root and labelled, weighted
    /// edges.
    pub fn to_dot(&self, sys: &RootSystem) -> String {
        let mut out = String::from("digraph roots {\n");
        for k in 0..N {
            let r = self.sign.root(k);
            let _ = writeln!(out, "  \"{}\" [label=\"{}\\n{}\"];", r, r, sys.root(r));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{} ({:+})\"];",
                e.from, e.to, e.label, e.weight
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphArtifact {
    Dot,
    Adjacency,
    Weights,
    Paths,
    KNumbers,
}

impl std::str::FromStr for GraphArtifact {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, GraphError> {
        match s {
            "dot" => Ok(GraphArtifact::Dot),
            "adjacency" => Ok(GraphArtifact::Adjacency),
            "weights" => Ok(GraphArtifact::Weights),
            "paths" => Ok(GraphArtifact::Paths),
            "knumbers" => Ok(GraphArtifact::KNumbers),
            _ => Err(GraphError::Unsupported(s.to_string(), "graph artifact".into())),
        }
    }
}

/// Renders an artifact. `dot` is only available as DOT, the matrices only as
/// CSV.
pub fn export(
    g: &WeightedRootGraph,
    what: GraphArtifact,
    format: &str,
    sys: &RootSystem,
) -> Result<String, GraphError> {
    let unsupported = || GraphError::Unsupported(format!("{what:?}"), format.to_string());
    match (what, format) {
        (GraphArtifact::Dot, "dot") => Ok(g.to_dot(sys)),
        (GraphArtifact::Adjacency, "csv") => Ok(g.adjacency().to_csv("from_index", "to_index")),
        (GraphArtifact::Weights, "csv") => Ok(g.weights().to_csv("from_index", "to_index")),
        (GraphArtifact::Paths, "csv") => Ok(g.path_counts()?.to_csv("s_index", "r_index")),
        (GraphArtifact::KNumbers, "csv") => Ok(g.k_numbers()?.to_csv("r_index", "s_index")),
        _ => Err(unsupported()),
    }
}
