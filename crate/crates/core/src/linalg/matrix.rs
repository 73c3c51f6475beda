use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::LinalgError;
use crate::num_serde;
use crate::scalar::Integral;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Integral> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when `rows`
    /// is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, LinalgError> {
        let r = rows.len();
        if let Some(bad) = rows.iter().position(|row| row.len() != cols) {
            return Err(LinalgError::Dimension(format!("row {bad} has length {}, expected {cols}", rows[bad].len())));
        }
        Ok(Matrix { rows: r, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| T::from_small(v)).collect()).collect();
        Self::from_rows(rows, cols).expect("rectangular literal")
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.clone() * s.clone()).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        for j in 0..self.cols {
            let s = self[(src, j)].clone();
            if !s.is_zero() {
                self[(dst, j)] = self[(dst, j)].clone() + factor.clone() * s;
            }
        }
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &T) {
        for i in 0..self.rows {
            let s = self[(i, src)].clone();
            if !s.is_zero() {
                self[(i, dst)] = self[(i, dst)].clone() + factor.clone() * s;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    /// The empty 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                    // Bareiss: the division is exact.
                    a[(i, j)] = v / prev.clone();
                }
                a[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let d = a[(n - 1, n - 1)].clone();
        Ok(if negate { -d } else { d })
    }

    /// Adjugate (transposed cofactor matrix); certifies `A adj(A) = adj(A) A = det(A) I`.
    pub fn adjugate(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = T::one();
        } else {
            let idx: Vec<usize> = (0..n).collect();
            for i in 0..n {
                for j in 0..n {
                    let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != i).collect();
                    let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != j).collect();
                    let minor = self.submatrix(&rows, &cols).determinant()?;
                    adj[(j, i)] = if (i + j) % 2 == 0 { minor } else { -minor };
                }
            }
        }
        let det = self.determinant()?;
        let expected = Self::identity(n).scale(&det);
        if self.mul(&adj)? != expected || adj.mul(self)? != expected {
            return Err(LinalgError::Certificate("A adj(A) = det(A) I".into()));
        }
        Ok(adj)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        (0..self.rows).filter(|&i| basis.insert(self.row(i))).count()
    }

    /// Indices of the first rows, in order, that increase the rank.
    pub fn greedy_independent_rows(&self) -> Vec<usize> {
        let mut basis = EchelonBasis::new(self.cols);
        (0..self.rows).filter(|&i| basis.insert(self.row(i))).collect()
    }

    /// Indices of the lexicographically first maximal set of independent columns.
    pub fn greedy_independent_cols(&self) -> Vec<usize> {
        let mut basis = EchelonBasis::new(self.rows);
        (0..self.cols).filter(|&j| basis.insert(&self.column(j))).collect()
    }

    /// Every column has at most 3 nonzero entries whose absolute values sum
    /// to at most 3.
    pub fn satisfies_column_condition(&self) -> bool {
        let three = T::from_small(3);
        (0..self.cols).all(|j| {
            let col = self.column(j);
            let nonzero = col.iter().filter(|v| !v.is_zero()).count();
            let sum = col.iter().fold(T::zero(), |acc, v| acc + v.abs());
            nonzero <= 3 && sum <= three
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Entry(#[serde(with = "num_serde::bigint")] BigInt);

/// JSON form `{"rows": R, "cols": C, "entries": [row-major]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl<T: Integral> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = self.entries.iter().map(|e| Entry(e.to_bigint())).collect();
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        Matrix::new(m.rows, m.cols, m.entries.into_iter().map(|e| e.0).collect()).map_err(de::Error::custom)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced echelon basis over the rationals, used
/// to test linear independence one vector at a time.
pub(crate) struct EchelonBasis<T: Integral> {
    width: usize,
    rows: Vec<(usize, Vec<Ratio<T>>)>,
}

impl<T: Integral> EchelonBasis<T> {
    pub(crate) fn new(width: usize) -> Self {
        EchelonBasis { width, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the current basis; returns whether it was.
    pub(crate) fn insert(&mut self, v: &[T]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut r: Vec<Ratio<T>> = v.iter().map(|x| Ratio::from_integer(x.clone())).collect();
        for (pivot, row) in &self.rows {
            if r[*pivot].is_zero() {
                continue;
            }
            let f = r[*pivot].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Ratio::one() / r[pivot].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, row) in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }
}
