//! Abstract handle complexes: cells of four kinds, fiber classes and the
//! integer contributions between them; bounded relative-cycle generators,
//! torsion bounds and weighted areas.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Diagnostic, HandleError, LinalgError};
use crate::linalg::{bounded_kernel_basis, rational_kernel_basis, same_rational_span, to_rational, torsion_orders, Matrix};
use crate::num_serde;
use crate::scalar::Integral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HandleKind {
    ZeroHandle,
    OneHandle,
    MonkeyHandle,
    IsolatedDisk,
}

impl HandleKind {
    pub fn name(self) -> &'static str {
        match self {
            HandleKind::ZeroHandle => "zero-handle",
            HandleKind::OneHandle => "one-handle",
            HandleKind::MonkeyHandle => "monkey-handle",
            HandleKind::IsolatedDisk => "isolated-disk",
        }
    }

    /// Area weight (units of pi) used when a cell gives none.
    pub fn default_area(self) -> BigRational {
        match self {
            HandleKind::MonkeyHandle => BigRational::from_integer(1.into()),
            _ => BigRational::zero(),
        }
    }
}

impl fmt::Display for HandleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleCell {
    pub id: String,
    pub kind: HandleKind,
    #[serde(default, with = "num_serde::opt_rational", skip_serializing_if = "Option::is_none")]
    pub area: Option<BigRational>,
}

impl HandleCell {
    pub fn new(id: impl Into<String>, kind: HandleKind) -> Self {
        HandleCell { id: id.into(), kind, area: None }
    }

    pub fn with_area(mut self, area: BigRational) -> Self {
        self.area = Some(area);
        self
    }

    pub fn area(&self) -> BigRational {
        self.area.clone().unwrap_or_else(|| self.kind.default_area())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub cell: String,
    pub fiber: String,
    pub value: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleComplex {
    pub cells: Vec<HandleCell>,
    #[serde(default)]
    pub fibers: Vec<String>,
    #[serde(default)]
    pub contributions: Vec<Contribution>,
}

impl HandleComplex {
    pub fn new(cells: Vec<HandleCell>, fibers: Vec<String>) -> Self {
        HandleComplex { cells, fibers, contributions: Vec::new() }
    }

    pub fn contribute(&mut self, cell: &str, fiber: &str, value: i64) {
        self.contributions.push(Contribution { cell: cell.into(), fiber: fiber.into(), value });
    }

    pub fn cell(&self, id: &str) -> Option<&HandleCell> {
        self.cells.iter().find(|c| c.id == id)
    }

    pub fn total_area(&self) -> BigRational {
        self.cells.iter().map(HandleCell::area).sum()
    }

    pub fn count(&self, kind: HandleKind) -> usize {
        self.cells.iter().filter(|c| c.kind == kind).count()
    }

    /// Every violated structural or kind rule; empty when valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut cell_ids = HashSet::new();
        for c in &self.cells {
            if !cell_ids.insert(c.id.as_str()) {
                out.push(Diagnostic::new(&c.id, "duplicate cell id"));
            }
            if c.area.as_ref().is_some_and(|a| a.is_negative()) {
                out.push(Diagnostic::new(&c.id, "area must be nonnegative"));
            }
        }
        let mut fiber_ids = HashSet::new();
        for f in &self.fibers {
            if !fiber_ids.insert(f.as_str()) {
                out.push(Diagnostic::new(f, "duplicate fiber class"));
            }
        }
        let mut seen = HashSet::new();
        let mut columns: HashMap<&str, Vec<i64>> = HashMap::new();
        for (i, c) in self.contributions.iter().enumerate() {
            let item = format!("contribution[{i}]");
            let mut ok = true;
            if !cell_ids.contains(c.cell.as_str()) {
                out.push(Diagnostic::new(&item, format!("unknown cell {:?}", c.cell)));
                ok = false;
            }
            if !fiber_ids.contains(c.fiber.as_str()) {
                out.push(Diagnostic::new(&item, format!("unknown fiber class {:?}", c.fiber)));
                ok = false;
            }
            if !seen.insert((c.cell.as_str(), c.fiber.as_str())) {
                out.push(Diagnostic::new(&item, format!("repeated pair ({}, {})", c.cell, c.fiber)));
                ok = false;
            }
            if ok && c.value != 0 {
                columns.entry(c.cell.as_str()).or_default().push(c.value);
            }
        }
        let mut checked = HashSet::new();
        for cell in &self.cells {
            if !checked.insert(cell.id.as_str()) {
                continue;
            }
            let values = columns.get(cell.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
            if let Some(msg) = kind_violation(cell.kind, values) {
                out.push(Diagnostic::new(&cell.id, msg));
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), HandleError> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(HandleError::Invalid(diags))
        }
    }

    /// Rows are fiber classes, columns are cells in declaration order.
    pub fn contribution_matrix<T: Integral>(&self) -> Result<Matrix<T>, HandleError> {
        self.ensure_valid()?;
        Ok(self.matrix_unchecked())
    }

    fn matrix_unchecked<T: Integral>(&self) -> Matrix<T> {
        let col: HashMap<&str, usize> = self.cells.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let row: HashMap<&str, usize> = self.fibers.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
        let mut m = Matrix::zeros(self.fibers.len(), self.cells.len());
        for c in &self.contributions {
            m[(row[c.fiber.as_str()], col[c.cell.as_str()])] = T::from_small(c.value);
        }
        m
    }
}

fn kind_violation(kind: HandleKind, values: &[i64]) -> Option<String> {
    let abs_sum: i64 = values.iter().map(|v| v.abs()).sum();
    match kind {
        HandleKind::ZeroHandle if values.len() > 1 || values.iter().any(|v| v.abs() != 1) => {
            Some("zero-handle must contribute 0 or ±1 to a single fiber class".into())
        }
        HandleKind::OneHandle if values.len() > 1 || values.iter().any(|v| v.abs() != 2) => {
            Some("one-handle must contribute 0 or ±2".into())
        }
        HandleKind::MonkeyHandle if abs_sum > 3 => {
            Some(format!("monkey-handle contributions have absolute sum {abs_sum} > 3"))
        }
        HandleKind::IsolatedDisk if !values.is_empty() => Some("isolated-disk must not contribute".into()),
        _ => None,
    }
}

/// Integer 2-chain on the cells, listed in declaration order; zero
/// coefficients are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCycle<T> {
    pub coefficients: Vec<(String, T)>,
}

impl<T: Integral> RelativeCycle<T> {
    pub fn from_dense(h: &HandleComplex, dense: &[T]) -> Self {
        let coefficients = h
            .cells
            .iter()
            .zip(dense)
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c.id.clone(), v.clone()))
            .collect();
        RelativeCycle { coefficients }
    }

    pub fn coefficient(&self, id: &str) -> T {
        self.coefficients.iter().find(|(c, _)| c == id).map(|(_, v)| v.clone()).unwrap_or_else(T::zero)
    }

    pub fn dense(&self, h: &HandleComplex) -> Result<Vec<T>, HandleError> {
        let mut out = vec![T::zero(); h.cells.len()];
        for (id, v) in &self.coefficients {
            let i = h.cells.iter().position(|c| c.id == *id).ok_or_else(|| HandleError::UnknownCell(id.clone()))?;
            out[i] = out[i].clone() + v.clone();
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self, h: &HandleComplex) -> Result<Self, HandleError> {
        let a = self.dense(h)?;
        let b = other.dense(h)?;
        let sum: Vec<T> = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self::from_dense(h, &sum))
    }

    pub fn max_abs(&self) -> T {
        self.coefficients.iter().map(|(_, v)| v.abs()).max().unwrap_or_else(T::zero)
    }
}

/// Generators of the cycle space together with the bound they satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleGenerators<T> {
    pub cycles: Vec<RelativeCycle<T>>,
    /// Rank `p` of the contribution matrix.
    pub rank: usize,
    /// `3^p`.
    pub entry_bound: T,
}

/// Singletons for isolated disks and other non-contributing cells, followed
/// by the bounded kernel basis of the remaining columns.
///
/// Each generator is checked to be a cycle within `3^p`, and the whole set
/// to span the rational cycle space.
pub fn bounded_cycle_generators<T: Integral>(h: &HandleComplex) -> Result<CycleGenerators<T>, HandleError> {
    let a: Matrix<T> = h.contribution_matrix()?;
    let (zero_cols, live_cols): (Vec<usize>, Vec<usize>) =
        (0..a.cols()).partition(|&j| a.column(j).iter().all(Zero::is_zero));
    let all_rows: Vec<usize> = (0..a.rows()).collect();
    let live = a.submatrix(&all_rows, &live_cols);
    let basis = bounded_kernel_basis(&live)?;
    let p = basis.rank;
    let entry_bound = num_traits::pow(T::from_small(3), p);
    if basis.entry_bound.as_ref() != Some(&entry_bound) {
        return Err(LinalgError::Certificate("column condition on contribution matrix".into()).into());
    }

    let mut dense: Vec<Vec<T>> = Vec::new();
    for &j in &zero_cols {
        let mut u = vec![T::zero(); a.cols()];
        u[j] = T::one();
        dense.push(u);
    }
    for s in &basis.solutions {
        let mut u = vec![T::zero(); a.cols()];
        for (k, &j) in live_cols.iter().enumerate() {
            u[j] = s[k].clone();
        }
        dense.push(u);
    }

    for u in &dense {
        if a.mul_vec(u)?.iter().any(|x| !x.is_zero()) {
            return Err(LinalgError::Certificate("A u = 0".into()).into());
        }
        if u.iter().any(|x| x.abs() > entry_bound) {
            return Err(LinalgError::Certificate(format!("|u_i| <= 3^{p}")).into());
        }
    }
    if !same_rational_span(&to_rational(&dense), &rational_kernel_basis(&a), a.cols()) {
        return Err(LinalgError::Certificate("generators span the rational cycle space".into()).into());
    }

    let cycles = dense.iter().map(|u| RelativeCycle::from_dense(h, u)).collect();
    Ok(CycleGenerators { cycles, rank: p, entry_bound })
}

/// `sum |coef(cell)| * area(cell)`, in units of pi.
pub fn weighted_area<T: Integral>(c: &RelativeCycle<T>, h: &HandleComplex) -> Result<BigRational, HandleError> {
    let mut total = BigRational::zero();
    for (id, v) in &c.coefficients {
        let cell = h.cell(id).ok_or_else(|| HandleError::UnknownCell(id.clone()))?;
        total += BigRational::from_integer(v.abs().to_bigint()) * cell.area();
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBound<T> {
    pub max_order: T,
    pub bound: T,
    /// Rows with more than one nonzero entry.
    pub wide_rows: usize,
    pub ok: bool,
}

/// Checks the row shapes (a single `±1`/`±2`, or several entries of
/// absolute sum at most 3) and compares the largest torsion order of the
/// cokernel with `2 * 3^t`, `t` the number of wide rows.
pub fn torsion_bound<T: Integral>(rows: &Matrix<T>) -> Result<TorsionBound<T>, HandleError> {
    let two = T::from_small(2);
    let three = T::from_small(3);
    let mut wide = 0;
    for (i, row) in rows.row_vecs().iter().enumerate() {
        let nonzero: Vec<&T> = row.iter().filter(|x| !x.is_zero()).collect();
        match nonzero.len() {
            0 => return Err(HandleError::BadRow { row: i, msg: "zero row".into() }),
            1 => {
                let v = nonzero[0].abs();
                if !(v.is_one() || v == two) {
                    return Err(HandleError::BadRow { row: i, msg: format!("single entry {} is not ±1 or ±2", nonzero[0]) });
                }
            }
            _ => {
                let sum = nonzero.iter().fold(T::zero(), |acc, x| acc + x.abs());
                if sum > three {
                    return Err(HandleError::BadRow { row: i, msg: format!("absolute sum {sum} > 3") });
                }
                wide += 1;
            }
        }
    }
    let max_order = torsion_orders(rows).max_order;
    let bound = two * num_traits::pow(three, wide);
    let ok = max_order <= bound;
    Ok(TorsionBound { max_order, bound, wide_rows: wide, ok })
}

/// [`torsion_bound`] for relation rows attached to a valid complex.
pub fn torsion_bound_check<T: Integral>(h: &HandleComplex, rows: &Matrix<T>) -> Result<TorsionBound<T>, HandleError> {
    h.ensure_valid()?;
    torsion_bound(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use HandleKind::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn fibers(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn kind_rules() {
        let mut h = HandleComplex::new(vec![HandleCell::new("B", OneHandle)], fibers(&["f"]));
        h.contribute("B", "f", 1);
        let d = h.validate();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].item, "B");
        assert!(d[0].message.contains("one-handle must contribute 0 or ±2"));

        let mut h = HandleComplex::new(vec![HandleCell::new("F", MonkeyHandle)], fibers(&["f", "g"]));
        h.contribute("F", "f", 2);
        h.contribute("F", "g", -2);
        assert!(h.validate()[0].message.contains("4 > 3"));

        assert!(HandleComplex::default().validate().is_empty());

        let mut h = HandleComplex::new(
            vec![HandleCell::new("D", ZeroHandle), HandleCell::new("d", IsolatedDisk)],
            fibers(&["f", "g"]),
        );
        h.contribute("D", "f", 1);
        h.contribute("D", "g", 1);
        h.contribute("d", "f", 1);
        h.contribute("x", "f", 1);
        let items: Vec<String> = h.validate().into_iter().map(|d| d.item).collect();
        assert_eq!(items, ["contribution[3]", "D", "d"]);
    }

    #[test]
    fn matrix_transcription() {
        let mut h = HandleComplex::new(
            vec![HandleCell::new("F", MonkeyHandle), HandleCell::new("B", OneHandle)],
            fibers(&["p1", "p2"]),
        );
        h.contribute("F", "p1", 1);
        h.contribute("F", "p2", -2);
        h.contribute("B", "p1", 2);
        assert_eq!(h.contribution_matrix::<i64>().unwrap(), Matrix::from_i64_rows(&[&[1, 2], &[-2, 0]]));

        let disks = HandleComplex::new(
            vec![HandleCell::new("d1", IsolatedDisk), HandleCell::new("d2", IsolatedDisk)],
            vec![],
        );
        let m = disks.contribution_matrix::<i64>().unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 2));
    }

    #[test]
    fn isolated_disks_are_generators() {
        let h = HandleComplex::new(
            vec![HandleCell::new("d1", IsolatedDisk), HandleCell::new("d2", IsolatedDisk)],
            vec![],
        );
        let g = bounded_cycle_generators::<BigInt>(&h).unwrap();
        let ids: Vec<Vec<(String, BigInt)>> = g.cycles.into_iter().map(|c| c.coefficients).collect();
        assert_eq!(ids, vec![vec![("d1".to_string(), BigInt::from(1))], vec![("d2".to_string(), BigInt::from(1))]]);
    }

    #[test]
    fn contributing_monkey_alone_has_no_cycle() {
        let mut h = HandleComplex::new(vec![HandleCell::new("F", MonkeyHandle)], fibers(&["f"]));
        h.contribute("F", "f", 3);
        assert!(bounded_cycle_generators::<BigInt>(&h).unwrap().cycles.is_empty());
    }

    #[test]
    fn three_monkeys() {
        let cells = vec![
            HandleCell::new("F1", MonkeyHandle),
            HandleCell::new("F2", MonkeyHandle),
            HandleCell::new("F3", MonkeyHandle),
        ];
        let mut h = HandleComplex::new(cells, fibers(&["f"]));
        h.contribute("F1", "f", 1);
        h.contribute("F2", "f", 1);
        h.contribute("F3", "f", -2);
        let g = bounded_cycle_generators::<i64>(&h).unwrap();
        let dense: Vec<Vec<i64>> = g.cycles.iter().map(|c| c.dense(&h).unwrap()).collect();
        assert_eq!(dense, vec![vec![-1, 1, 0], vec![2, 0, 1]]);
        assert_eq!(g.entry_bound, 3);
    }

    #[test]
    fn silent_cells_become_singletons() {
        let mut h = HandleComplex::new(
            vec![HandleCell::new("B", OneHandle), HandleCell::new("D", ZeroHandle), HandleCell::new("F", MonkeyHandle)],
            fibers(&["f"]),
        );
        h.contribute("D", "f", 1);
        h.contribute("F", "f", -1);
        let g = bounded_cycle_generators::<i64>(&h).unwrap();
        let dense: Vec<Vec<i64>> = g.cycles.iter().map(|c| c.dense(&h).unwrap()).collect();
        assert_eq!(dense, vec![vec![1, 0, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn areas() {
        let h = HandleComplex::new(
            vec![
                HandleCell::new("d1", IsolatedDisk).with_area(ratio(1, 1)),
                HandleCell::new("F", MonkeyHandle),
                HandleCell::new("B", OneHandle).with_area(ratio(1, 2)),
            ],
            vec![],
        );
        let c = RelativeCycle { coefficients: vec![("d1".to_string(), 1i64)] };
        assert_eq!(weighted_area(&c, &h).unwrap(), ratio(1, 1));
        let c = RelativeCycle { coefficients: vec![("F".to_string(), 3i64), ("B".to_string(), -2)] };
        assert_eq!(weighted_area(&c, &h).unwrap(), ratio(4, 1));
        let bad = RelativeCycle { coefficients: vec![("Z".to_string(), 1i64)] };
        assert_eq!(weighted_area(&bad, &h), Err(HandleError::UnknownCell("Z".into())));
        assert_eq!(h.total_area(), ratio(5, 2));
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_bound(&Matrix::<i64>::from_i64_rows(&[&[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!((t.max_order, t.bound, t.wide_rows, t.ok), (2, 6, 1, true));
        let t = torsion_bound(&Matrix::<i64>::zeros(0, 2)).unwrap();
        assert_eq!((t.max_order, t.bound, t.ok), (1, 2, true));
        let t = torsion_bound(&Matrix::<i64>::from_i64_rows(&[&[1, 1, 1]])).unwrap();
        assert_eq!((t.max_order, t.bound, t.ok), (1, 6, true));
        assert!(matches!(
            torsion_bound(&Matrix::<i64>::from_i64_rows(&[&[3, 0]])),
            Err(HandleError::BadRow { row: 0, .. })
        ));
        assert!(matches!(
            torsion_bound(&Matrix::<i64>::from_i64_rows(&[&[1, 0], &[2, 2]])),
            Err(HandleError::BadRow { row: 1, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"cells":[{"id":"F","kind":"monkey-handle"},{"id":"B","kind":"one-handle","area":"1/2"},
            {"id":"d","kind":"isolated-disk","area":0.25}],
            "fibers":["f"],"contributions":[{"cell":"F","fiber":"f","value":2},{"cell":"B","fiber":"f","value":-2}]}"#;
        let h: HandleComplex = serde_json::from_str(text).unwrap();
        assert_eq!(h.cells[0].area(), ratio(1, 1));
        assert_eq!(h.cells[1].area(), ratio(1, 2));
        assert_eq!(h.cells[2].area(), ratio(1, 4));
        let back: HandleComplex = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
    }
}
