//! Kernel bases: the bounded integral fundamental solutions built from an
//! adjugate, and a plain rational reduction used as an independent check.

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::error::LinalgError;
use crate::scalar::Integral;

/// Integral fundamental solutions of `A u = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalSolutionSet<T> {
    pub solutions: Vec<Vec<T>>,
    /// Rows kept as a maximal independent set of equations.
    pub pivot_rows: Vec<usize>,
    /// Columns forming the invertible block `P`.
    pub pivot_columns: Vec<usize>,
    pub det_p: T,
    pub rank: usize,
    /// `3^rank` when the column condition holds (and was certified).
    pub entry_bound: Option<T>,
}

/// Builds `u*_n` from `v*_n = -adj(P) Q e_n` and `w*_n = det(P) e_n`.
///
/// Rows are the first ones that increase the rank, `P` the lexicographically
/// first independent columns of those rows. When every column of `A` has at
/// most three nonzero entries of absolute sum at most three, the entry bound
/// `3^p` and the support bound `p + 1` are checked on every solution.
pub fn bounded_kernel_basis<T: Integral>(a: &Matrix<T>) -> Result<FundamentalSolutionSet<T>, LinalgError> {
    let pivot_rows = a.greedy_independent_rows();
    let all_cols: Vec<usize> = (0..a.cols()).collect();
    let reduced = a.submatrix(&pivot_rows, &all_cols);
    let pivot_columns = reduced.greedy_independent_cols();
    let p = pivot_rows.len();
    debug_assert_eq!(pivot_columns.len(), p);

    let block = reduced.submatrix(&(0..p).collect::<Vec<_>>(), &pivot_columns);
    let det_p = block.determinant()?;
    let adj = block.adjugate()?;
    let free: Vec<usize> = all_cols.iter().copied().filter(|j| !pivot_columns.contains(j)).collect();

    let mut solutions = Vec::with_capacity(free.len());
    for &n in &free {
        let q_col = reduced.column(n);
        let v = adj.mul_vec(&q_col)?;
        let mut u = vec![T::zero(); a.cols()];
        for (k, &c) in pivot_columns.iter().enumerate() {
            u[c] = -v[k].clone();
        }
        u[n] = det_p.clone();
        solutions.push(u);
    }

    for u in &solutions {
        if a.mul_vec(u)?.iter().any(|x| !x.is_zero()) {
            return Err(LinalgError::Certificate("A u = 0".into()));
        }
    }
    if solutions.len() != a.cols() - p {
        return Err(LinalgError::Certificate("solution count = cols - rank".into()));
    }

    let entry_bound = if a.satisfies_column_condition() {
        let bound = num_traits::pow(T::from_small(3), p);
        for u in &solutions {
            if u.iter().any(|x| x.abs() > bound) {
                return Err(LinalgError::Certificate(format!("|u_i| <= 3^{p}")));
            }
            if u.iter().filter(|x| !x.is_zero()).count() > p + 1 {
                return Err(LinalgError::Certificate(format!("at most {} nonzero entries", p + 1)));
            }
        }
        Some(bound)
    } else {
        None
    };

    Ok(FundamentalSolutionSet { solutions, pivot_rows, pivot_columns, det_p, rank: p, entry_bound })
}

/// Kernel basis by exact rational row reduction (one vector per free column).
pub fn rational_kernel_basis<T: Integral>(a: &Matrix<T>) -> Vec<Vec<Ratio<T>>> {
    let (m, n) = (a.rows(), a.cols());
    let mut r: Vec<Vec<Ratio<T>>> = a
        .row_vecs()
        .into_iter()
        .map(|row| row.into_iter().map(Ratio::from_integer).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        let Some(sel) = (row..m).find(|&i| !r[i][col].is_zero()) else { continue };
        r.swap(row, sel);
        let inv = Ratio::one() / r[row][col].clone();
        for x in r[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m {
            if i != row && !r[i][col].is_zero() {
                let f = r[i][col].clone();
                for j in 0..n {
                    let v = r[row][j].clone();
                    r[i][j] = r[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|free| {
            let mut v = vec![Ratio::zero(); n];
            v[free] = Ratio::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[k][free].clone();
            }
            v
        })
        .collect()
}

/// Whether two finite sets of rational vectors span the same subspace.
pub fn same_rational_span<T: Integral>(a: &[Vec<Ratio<T>>], b: &[Vec<Ratio<T>>], width: usize) -> bool {
    let rank = |vs: &[Vec<Ratio<T>>]| rational_rank(vs, width);
    let ra = rank(a);
    let rb = rank(b);
    let joint: Vec<Vec<Ratio<T>>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&joint) == ra
}

fn rational_rank<T: Integral>(vs: &[Vec<Ratio<T>>], width: usize) -> usize {
    let mut rows: Vec<Vec<Ratio<T>>> = vs.to_vec();
    let mut rank = 0;
    for col in 0..width {
        let Some(sel) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(rank, sel);
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone() / rows[rank][col].clone();
            for j in col..width {
                let v = rows[rank][j].clone();
                rows[i][j] = rows[i][j].clone() - f.clone() * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Lifts integer vectors to rationals, for span comparisons.
pub fn to_rational<T: Integral>(vs: &[Vec<T>]) -> Vec<Vec<Ratio<T>>> {
    vs.iter().map(|v| v.iter().cloned().map(Ratio::from_integer).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_row_example() {
        let a = M::from_i64_rows(&[&[1, 1, -2]]);
        let s = bounded_kernel_basis(&a).unwrap();
        assert_eq!(s.pivot_columns, vec![0]);
        assert_eq!(s.det_p, BigInt::one());
        assert_eq!(s.solutions, vec![ints(&[-1, 1, 0]), ints(&[2, 0, 1])]);
        assert_eq!(s.entry_bound, Some(BigInt::from(3)));
        let oracle = rational_kernel_basis(&a);
        assert!(same_rational_span(&to_rational(&s.solutions), &oracle, 3));
    }

    #[test]
    fn zero_matrix_gives_standard_basis() {
        let s = bounded_kernel_basis(&M::zeros(1, 3)).unwrap();
        assert_eq!(s.det_p, BigInt::one());
        assert_eq!(s.solutions, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let s = bounded_kernel_basis(&M::from_i64_rows(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(s.solutions.is_empty());
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn dependent_rows_are_dropped() {
        let a = M::from_i64_rows(&[&[1, 1, 0], &[2, 2, 0], &[0, 1, 1]]);
        let s = bounded_kernel_basis(&a).unwrap();
        assert_eq!(s.pivot_rows, vec![0, 2]);
        assert_eq!(s.solutions.len(), 1);
    }

    #[test]
    fn rational_examples() {
        let a = M::from_i64_rows(&[&[1, 1, -2]]);
        let k = rational_kernel_basis(&a);
        assert_eq!(k.len(), 2);
        assert!(rational_kernel_basis(&M::identity(3)).is_empty());
        assert_eq!(rational_kernel_basis(&M::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn column_condition_off_means_no_bound() {
        let a = M::from_i64_rows(&[&[5, 7, 1]]);
        assert_eq!(bounded_kernel_basis(&a).unwrap().entry_bound, None);
    }
}
