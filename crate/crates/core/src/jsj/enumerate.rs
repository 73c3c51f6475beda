use std::collections::BTreeMap;

use super::shape::{Shape, SlotContent};
use super::{coprime, DecoratedTree, HyperbolicCatalog};
use crate::error::JsjError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_vertices: usize,
    /// Bound on `|p|` for torus knots and cables.
    pub max_abs_p: i64,
    /// Bound on `q` for torus knots and cables.
    pub max_q: i64,
    pub max_r: i64,
    /// Optional further cap on cable `q` only.
    pub max_cable_q: Option<i64>,
}

impl EnumerationBounds {
    pub fn new(max_vertices: usize, max_abs_p: i64, max_q: i64, max_r: i64) -> Self {
        EnumerationBounds { max_vertices, max_abs_p, max_q, max_r, max_cable_q: None }
    }

    /// Vertex cap `4n - 3` for a group of rank `n` (0 when `n = 0`).
    pub fn from_rank(rank: usize, max_abs_p: i64, max_q: i64, max_r: i64) -> Self {
        Self::new((4 * rank).saturating_sub(3), max_abs_p, max_q, max_r)
    }

    pub fn with_cable_cap(mut self, cap: i64) -> Self {
        self.max_cable_q = Some(cap);
        self
    }

    fn cable_q_limit(&self) -> i64 {
        self.max_cable_q.map_or(self.max_q, |c| c.min(self.max_q))
    }
}

struct Generator<'a> {
    bounds: &'a EnumerationBounds,
    cat: &'a HyperbolicCatalog,
    torus: Vec<(i64, i64)>,
    cables: Vec<(i64, i64)>,
    /// `memo[n]`: every shape with exactly `n` vertices, sorted by encoding.
    memo: Vec<Vec<(String, Shape)>>,
}

impl<'a> Generator<'a> {
    fn new(bounds: &'a EnumerationBounds, cat: &'a HyperbolicCatalog) -> Self {
        let pmax = bounds.max_abs_p.max(0);
        let mut torus = Vec::new();
        let mut cables = Vec::new();
        for q in 2..=bounds.max_q {
            for p in (-pmax..=pmax).filter(|&p| p != 0 && coprime(p, q)) {
                if p.abs() > q {
                    torus.push((p, q));
                }
                if q <= bounds.cable_q_limit() {
                    cables.push((p, q));
                }
            }
        }
        Generator { bounds, cat, torus, cables, memo: vec![Vec::new()] }
    }

    fn of_size(&mut self, n: usize) -> &[(String, Shape)] {
        while self.memo.len() <= n {
            let k = self.memo.len();
            let level = self.build(k);
            self.memo.push(level);
        }
        &self.memo[n]
    }

    fn build(&mut self, n: usize) -> Vec<(String, Shape)> {
        let mut out: Vec<Shape> = Vec::new();
        if n == 1 {
            out.extend(self.torus.iter().map(|&(p, q)| Shape::TorusKnot { p, q }));
        }
        if n >= 2 {
            let below: Vec<Shape> = self.of_size(n - 1).iter().map(|(_, s)| s.clone()).collect();
            for &(p, q) in &self.cables.clone() {
                out.extend(below.iter().map(|c| Shape::Cable { p, q, child: Box::new(c.clone()) }));
            }
            self.key_chains(n, &mut out);
        }
        self.hyperbolic(n, &mut out);
        let mut keyed: Vec<(String, Shape)> = out.into_iter().map(|s| (s.encode(), s)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        keyed
    }

    fn key_chains(&mut self, n: usize, out: &mut Vec<Shape>) {
        if self.bounds.max_r < 2 {
            return;
        }
        let mut pool: Vec<(String, Shape, usize)> = Vec::new();
        for s in 1..n {
            let level: Vec<(String, Shape)> = self.of_size(s).to_vec();
            pool.extend(level.into_iter().filter(|(_, sh)| !matches!(sh, Shape::KeyChain { .. })).map(|(e, sh)| (e, sh, s)));
        }
        pool.sort_by(|a, b| a.0.cmp(&b.0));
        let rmax = self.bounds.max_r.min(n as i64 - 1);
        for r in 2..=rmax {
            let mut picked = Vec::new();
            multisets(&pool, 0, r as usize, n - 1, &mut picked, &mut |children| {
                out.push(Shape::KeyChain { children: children.to_vec() });
            });
        }
    }

    fn hyperbolic(&mut self, n: usize, out: &mut Vec<Shape>) {
        for entry in self.cat.entries.clone() {
            let k = entry.child_slots() as usize;
            if k + 1 > n || (k == 0 && n != 1) {
                continue;
            }
            let mut fillings: Vec<Vec<(u32, SlotContent)>> = Vec::new();
            let mut current = Vec::new();
            self.fill_slots(1, k, n - 1, entry.longitude_choices_per_boundary, &mut current, &mut fillings);
            for meridian in 0..entry.meridian_choices {
                for slots in &fillings {
                    out.push(Shape::Hyperbolic { catalog_id: entry.catalog_id.clone(), meridian, slots: slots.clone() });
                }
            }
        }
    }

    fn fill_slots(
        &mut self,
        slot: usize,
        k: usize,
        remaining: usize,
        longitudes: u32,
        current: &mut Vec<(u32, SlotContent)>,
        out: &mut Vec<Vec<(u32, SlotContent)>>,
    ) {
        if slot > k {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let later = k - slot;
        if remaining < later + 1 {
            return;
        }
        for size in 1..=remaining - later {
            let shapes: Vec<Shape> = self.of_size(size).iter().map(|(_, s)| s.clone()).collect();
            for shape in shapes {
                for longitude in 0..longitudes {
                    current.push((slot as u32, SlotContent::Child { longitude, shape: shape.clone() }));
                    self.fill_slots(slot + 1, k, remaining - size, longitudes, current, out);
                    current.pop();
                }
            }
        }
    }
}

/// Nondecreasing index sequences of length `count` whose sizes sum to `total`.
fn multisets(
    pool: &[(String, Shape, usize)],
    start: usize,
    count: usize,
    total: usize,
    picked: &mut Vec<Shape>,
    emit: &mut dyn FnMut(&[Shape]),
) {
    if count == 0 {
        if total == 0 {
            emit(picked);
        }
        return;
    }
    for i in start..pool.len() {
        let size = pool[i].2;
        // Each remaining pick needs at least one vertex.
        if size + (count - 1) > total {
            continue;
        }
        picked.push(pool[i].1.clone());
        multisets(pool, i, count - 1, total - size, picked, emit);
        picked.pop();
    }
}

/// Canonical encodings and shapes of every valid tree within `bounds`,
/// sorted by encoding.
pub fn enumerate_shapes(bounds: &EnumerationBounds, cat: &HyperbolicCatalog) -> Result<Vec<(String, Shape)>, JsjError> {
    cat.ensure_valid()?;
    let mut g = Generator::new(bounds, cat);
    let mut all = BTreeMap::new();
    for n in 1..=bounds.max_vertices {
        for (enc, shape) in g.of_size(n) {
            all.insert(enc.clone(), shape.clone());
        }
    }
    Ok(all.into_iter().collect())
}

/// Every valid decorated tree within `bounds`, once per isomorphism class,
/// in lexicographic order of canonical form.
pub fn enumerate_trees(bounds: &EnumerationBounds, cat: &HyperbolicCatalog) -> Result<Vec<DecoratedTree>, JsjError> {
    Ok(enumerate_shapes(bounds, cat)?.into_iter().map(|(_, s)| s.to_tree()).collect())
}
