//! Dense square matrices over a [`Field`].

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zero<F: Field<Elem = E>>(n: usize, f: &F) -> Self {
        Matrix {
            n,
            data: vec![f.zero(); n * n],
        }
    }

    pub fn identity<F: Field<Elem = E>>(n: usize, f: &F) -> Self {
        let mut m = Self::zero(n, f);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zero(n, f);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let cell = &mut out.data[i * n + j];
                    *cell = f.add(cell, &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }

    /// Applies the matrix to a column vector.
    pub fn apply<F: Field<Elem = E>>(&self, v: &[E], f: &F) -> Vec<E> {
        assert_eq!(v.len(), self.n, "vector length differs");
        (0..self.n)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self.data[i * self.n + j];
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }
}
