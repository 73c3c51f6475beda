//! Decorated rooted JSJ trees of knot complements.
//!
//! Vertices are key-chain, torus-knot, cable or catalogued hyperbolic
//! pieces; edges point from a piece to the piece glued into one of its
//! child boundary tori. The empty tree stands for the unknot complement.

mod canonical;
mod catalog;
mod enumerate;
mod rewrite;
mod shape;
mod stats;
mod validate;

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use canonical::canonical_form;
pub use catalog::{CatalogEntry, HyperbolicCatalog};
pub use enumerate::{enumerate_shapes, enumerate_trees, EnumerationBounds};
pub use rewrite::{desatellite, graft, winding_divisibility, GraftSlot, Winding};
pub use shape::{Shape, SlotContent};
pub use stats::{piece_stats, weidmann_cap, PieceStats, GROMOV_V3_HI, GROMOV_V3_LO};
pub use validate::{structural_diagnostics, validate_tree};

/// A child boundary of a hyperbolic piece closed up by Dehn filling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FilledSlot {
    pub slot: u32,
    pub slope: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum NodeKind {
    KeyChain {
        r: i64,
    },
    TorusKnot {
        p: i64,
        q: i64,
    },
    Cable {
        p: i64,
        q: i64,
    },
    Hyperbolic {
        catalog_id: String,
        #[serde(default)]
        meridian: u32,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        filled: Vec<FilledSlot>,
    },
}

impl NodeKind {
    /// Torus knot with `(p, q) ~ (q, p)` resolved to `|p| > q`, sign on `p`.
    pub fn torus_knot(p: i64, q: i64) -> NodeKind {
        let (p, q) = normalize_torus(p, q);
        NodeKind::TorusKnot { p, q }
    }

    pub fn hyperbolic(catalog_id: impl Into<String>, meridian: u32) -> NodeKind {
        NodeKind::Hyperbolic { catalog_id: catalog_id.into(), meridian, filled: Vec::new() }
    }

    pub fn is_key_chain(&self) -> bool {
        matches!(self, NodeKind::KeyChain { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            NodeKind::KeyChain { .. } => "key-chain",
            NodeKind::TorusKnot { .. } => "torus-knot",
            NodeKind::Cable { .. } => "cable",
            NodeKind::Hyperbolic { .. } => "hyperbolic",
        }
    }

    /// Renormalizes torus-knot parameters; other kinds are unchanged.
    pub fn normalized(&self) -> NodeKind {
        match *self {
            NodeKind::TorusKnot { p, q } => NodeKind::torus_knot(p, q),
            _ => self.clone(),
        }
    }
}

pub(crate) fn normalize_torus(p: i64, q: i64) -> (i64, i64) {
    let sign = match (p.signum(), q.signum()) {
        (0, s) | (s, 0) => s,
        (a, b) => a * b,
    };
    let (a, b) = (p.abs(), q.abs());
    (sign * a.max(b), a.min(b))
}

pub(crate) fn coprime(a: i64, b: i64) -> bool {
    a.gcd(&b) == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    #[serde(flatten)]
    pub kind: NodeKind,
}

/// Parent-to-child gluing. `slot` and `longitude` are meaningful for
/// hyperbolic parents only and are 0 otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub parent: String,
    pub child: String,
    #[serde(default)]
    pub slot: u32,
    #[serde(default)]
    pub longitude: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedTree {
    #[serde(default)]
    pub root: Option<String>,
    #[serde(default)]
    pub nodes: Vec<Node>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

impl DecoratedTree {
    /// The unknot complement.
    pub fn unknot() -> Self {
        Self::default()
    }

    pub fn single(id: impl Into<String>, kind: NodeKind) -> Self {
        let id = id.into();
        DecoratedTree { root: Some(id.clone()), nodes: vec![Node { id, kind }], edges: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none() && self.nodes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub(crate) fn node_mut(&mut self, id: &str) -> Option<&mut Node> {
        self.nodes.iter_mut().find(|n| n.id == id)
    }

    pub fn children(&self, id: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.parent == id).collect()
    }

    pub fn parent_edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.child == id)
    }

    /// Adds a node and, when `parent` is given, the edge into it.
    pub fn push(&mut self, id: impl Into<String>, kind: NodeKind, parent: Option<(&str, u32, u32)>) -> &mut Self {
        let id = id.into();
        match parent {
            Some((p, slot, longitude)) => {
                self.edges.push(Edge { parent: p.to_string(), child: id.clone(), slot, longitude });
            }
            None => self.root = Some(id.clone()),
        }
        self.nodes.push(Node { id, kind });
        self
    }

    /// Ids of `id` and all its descendants, parents before children.
    pub fn subtree_ids(&self, id: &str) -> Vec<String> {
        let by_parent = self.child_map();
        let mut out = vec![id.to_string()];
        let mut i = 0;
        while i < out.len() {
            if let Some(kids) = by_parent.get(out[i].as_str()) {
                out.extend(kids.iter().map(|e| e.child.clone()));
            }
            i += 1;
        }
        out
    }

    pub(crate) fn child_map(&self) -> HashMap<&str, Vec<&Edge>> {
        let mut m: HashMap<&str, Vec<&Edge>> = HashMap::new();
        for e in &self.edges {
            m.entry(e.parent.as_str()).or_default().push(e);
        }
        m
    }

    /// Copy of the subtree rooted at `id`.
    pub fn subtree(&self, id: &str) -> DecoratedTree {
        let ids = self.subtree_ids(id);
        DecoratedTree {
            root: Some(id.to_string()),
            nodes: self.nodes.iter().filter(|n| ids.contains(&n.id)).cloned().collect(),
            edges: self.edges.iter().filter(|e| ids.contains(&e.parent)).cloned().collect(),
        }
    }

    /// Prefixes every node id, e.g. before grafting two trees that share ids.
    pub fn relabel(&self, prefix: &str) -> DecoratedTree {
        let re = |s: &String| format!("{prefix}{s}");
        DecoratedTree {
            root: self.root.as_ref().map(re),
            nodes: self.nodes.iter().map(|n| Node { id: re(&n.id), kind: n.kind.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { parent: re(&e.parent), child: re(&e.child), ..e.clone() })
                .collect(),
        }
    }

    /// Renormalizes every torus-knot node.
    pub fn normalized(&self) -> DecoratedTree {
        let mut t = self.clone();
        for n in t.nodes.iter_mut() {
            n.kind = n.kind.normalized();
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_normalization() {
        assert_eq!(normalize_torus(3, 2), (3, 2));
        assert_eq!(normalize_torus(-3, 2), (-3, 2));
        assert_eq!(normalize_torus(2, 3), (3, 2));
        assert_eq!(normalize_torus(-2, 3), (-3, 2));
        assert_eq!(normalize_torus(2, -3), (-3, 2));
        assert_eq!(normalize_torus(-5, -3), (5, 3));
        assert_eq!(normalize_torus(3, -5), (-5, 3));
    }

    #[test]
    fn json_shape() {
        let mut t = DecoratedTree::default();
        t.push("c", NodeKind::Cable { p: 5, q: 3 }, None).push("k", NodeKind::torus_knot(3, 2), Some(("c", 0, 0)));
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(
            text,
            r#"{"root":"c","nodes":[{"id":"c","kind":"cable","params":{"p":5,"q":3}},{"id":"k","kind":"torus-knot","params":{"p":3,"q":2}}],"edges":[{"parent":"c","child":"k","slot":0,"longitude":0}]}"#
        );
        let back: DecoratedTree = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let bare: DecoratedTree = serde_json::from_str(
            r#"{"root":"h","nodes":[{"id":"h","kind":"hyperbolic","params":{"catalog_id":"m004"}}]}"#,
        )
        .unwrap();
        assert_eq!(bare.nodes[0].kind, NodeKind::hyperbolic("m004", 0));
    }

    #[test]
    fn subtrees_and_relabel() {
        let mut t = DecoratedTree::default();
        t.push("a", NodeKind::KeyChain { r: 2 }, None)
            .push("b", NodeKind::Cable { p: 1, q: 2 }, Some(("a", 0, 0)))
            .push("c", NodeKind::torus_knot(3, 2), Some(("b", 0, 0)))
            .push("d", NodeKind::torus_knot(5, 2), Some(("a", 0, 0)));
        assert_eq!(t.subtree_ids("b"), ["b", "c"]);
        assert_eq!(t.subtree("b").vertex_count(), 2);
        let r = t.relabel("x.");
        assert_eq!(r.root.as_deref(), Some("x.a"));
        assert_eq!(r.edges[0].parent, "x.a");
    }
}
