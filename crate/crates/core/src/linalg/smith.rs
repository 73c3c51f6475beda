//! Smith normal form over the integers.
//!
//! `left * A * right = diag(d_1, ..., d_r, 0, ...)` with `left`, `right`
//! unimodular, every `d_i > 0` and `d_i | d_{i+1}`. The nonzero invariant
//! factors larger than one are the torsion orders of the cokernel
//! `Z^cols / rowspan(A)`.


use super::matrix::Matrix;
use crate::error::LinalgError;
use crate::scalar::Integral;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    /// Nonzero invariant factors in divisibility order; `d.len()` is the rank.
    pub d: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: Integral> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// Re-checks every defining identity against `a`.
    pub fn verify(&self, a: &Matrix<T>) -> Result<(), LinalgError> {
        let lar = self.left.mul(a)?.mul(&self.right)?;
        if lar != Matrix::diagonal(a.rows(), a.cols(), &self.d) {
            return Err(LinalgError::Certificate("left * A * right = diag(d)".into()));
        }
        if self.d.iter().any(|x| !x.is_positive()) {
            return Err(LinalgError::Certificate("invariant factors positive".into()));
        }
        if self.d.windows(2).any(|w| !(w[1].clone() % w[0].clone()).is_zero()) {
            return Err(LinalgError::Certificate("d_i divides d_(i+1)".into()));
        }
        for (name, m) in [("left", &self.left), ("right", &self.right)] {
            if !m.determinant()?.abs().is_one() {
                return Err(LinalgError::Certificate(format!("det({name}) = +-1")));
            }
        }
        Ok(())
    }
}

struct Reducer<T: Integral> {
    a: Matrix<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

impl<T: Integral> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(l) = self.left.as_mut() {
            l.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(r) = self.right.as_mut() {
            r.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(l) = self.left.as_mut() {
            l.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(r) = self.right.as_mut() {
            r.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(l) = self.left.as_mut() {
            l.negate_row(i);
        }
    }

    /// Smallest nonzero entry (by absolute value) in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(_, _, b)| v < *b) {
                    let done = v.is_one();
                    best = Some((i, j, v));
                    if done {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` outside the pivot. Returns false if a
    /// smaller remainder was swapped into the pivot and the pass must repeat.
    fn clear_pivot_cross(&mut self, t: usize) -> bool {
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].clone() / self.a[(t, t)].clone();
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                self.swap_rows(t, i);
                return false;
            }
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].clone() / self.a[(t, t)].clone();
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                self.swap_cols(t, j);
                return false;
            }
        }
        true
    }

    fn run(&mut self) -> Vec<T> {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut d = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_pivot_cross(t) {
                    continue;
                }
                // Pivot must divide the whole trailing block.
                let p = self.a[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(self.a[(i, j)].clone() % p.clone()).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            d.push(self.a[(t, t)].clone());
        }
        d
    }
}

/// Smith normal form with unimodular transforms; every identity is
/// re-verified before returning.
pub fn smith_normal_form<T: Integral>(a: &Matrix<T>) -> Result<SmithForm<T>, LinalgError> {
    let mut r = Reducer {
        a: a.clone(),
        left: Some(Matrix::identity(a.rows())),
        right: Some(Matrix::identity(a.cols())),
    };
    let d = r.run();
    let form = SmithForm { d, left: r.left.unwrap(), right: r.right.unwrap() };
    form.verify(a)?;
    Ok(form)
}

/// Nonzero invariant factors only, without tracking transforms.
pub fn invariant_factors<T: Integral>(a: &Matrix<T>) -> Vec<T> {
    let mut r = Reducer { a: a.clone(), left: None, right: None };
    r.run()
}

/// Torsion of the cokernel `Z^cols / rowspan(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torsion<T> {
    /// Invariant factors greater than one.
    pub orders: Vec<T>,
    /// Largest torsion order, or 1 when torsion-free.
    pub max_order: T,
    pub free_rank: usize,
}

pub fn torsion_orders<T: Integral>(a: &Matrix<T>) -> Torsion<T> {
    let d = invariant_factors(a);
    let free_rank = a.cols() - d.len();
    let orders: Vec<T> = d.into_iter().filter(|x| !x.is_one()).collect();
    let max_order = orders.last().cloned().unwrap_or_else(T::one);
    Torsion { orders, max_order, free_rank }
}
