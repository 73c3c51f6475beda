use std::collections::{HashMap, HashSet};

use super::{coprime, DecoratedTree, HyperbolicCatalog, NodeKind};
use crate::error::Diagnostic;

fn edge_item(parent: &str, child: &str) -> String {
    format!("edge {parent}->{child}")
}

/// Every rule that can be checked without the hyperbolic catalog.
pub fn structural_diagnostics(t: &DecoratedTree) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let Some(root) = t.root.as_deref() else {
        if !t.nodes.is_empty() || !t.edges.is_empty() {
            out.push(Diagnostic::new("tree", "nodes or edges given without a root"));
        }
        return out;
    };

    let mut ids = HashSet::new();
    for n in &t.nodes {
        if n.id.is_empty() {
            out.push(Diagnostic::new("tree", "empty node id"));
        }
        if !ids.insert(n.id.as_str()) {
            out.push(Diagnostic::new(&n.id, "duplicate node id"));
        }
    }
    if !ids.contains(root) {
        out.push(Diagnostic::new(root, "root is not a node"));
        return out;
    }

    let kinds: HashMap<&str, &NodeKind> = t.nodes.iter().map(|n| (n.id.as_str(), &n.kind)).collect();
    let mut parent_of: HashMap<&str, &str> = HashMap::new();
    let mut edges_ok = true;
    for e in &t.edges {
        let item = edge_item(&e.parent, &e.child);
        for end in [&e.parent, &e.child] {
            if !ids.contains(end.as_str()) {
                out.push(Diagnostic::new(&item, format!("unknown node {end:?}")));
                edges_ok = false;
            }
        }
        if e.child == root {
            out.push(Diagnostic::new(&item, "the root cannot have a parent"));
            edges_ok = false;
        }
        if parent_of.insert(e.child.as_str(), e.parent.as_str()).is_some() {
            out.push(Diagnostic::new(&e.child, "node has more than one parent"));
            edges_ok = false;
        }
    }
    for n in &t.nodes {
        if n.id != root && !parent_of.contains_key(n.id.as_str()) {
            out.push(Diagnostic::new(&n.id, "node has no parent and is not the root"));
            edges_ok = false;
        }
    }
    if edges_ok {
        let reach = t.subtree_ids(root).len();
        if reach != t.nodes.len() {
            out.push(Diagnostic::new("tree", "edges contain a cycle; not every node descends from the root"));
            edges_ok = false;
        }
    }

    let children = t.child_map();
    for n in &t.nodes {
        let kids = children.get(n.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
        match &n.kind {
            NodeKind::KeyChain { r } => {
                if *r < 2 {
                    out.push(Diagnostic::new(&n.id, format!("key-chain needs r > 1, got {r}")));
                } else if kids.len() as i64 != *r {
                    out.push(Diagnostic::new(&n.id, format!("key-chain K({r}) requires {r} children, has {}", kids.len())));
                }
            }
            NodeKind::TorusKnot { p, q } => {
                if *q < 2 || p.abs() <= *q {
                    out.push(Diagnostic::new(&n.id, format!("torus knot ({p},{q}) must satisfy |p| > q >= 2")));
                } else if !coprime(*p, *q) {
                    out.push(Diagnostic::new(&n.id, format!("torus knot ({p},{q}) parameters must be coprime")));
                }
                if !kids.is_empty() {
                    out.push(Diagnostic::new(&n.id, "torus knot cannot have children"));
                }
            }
            NodeKind::Cable { p, q } => {
                if *p == 0 || *q < 2 {
                    out.push(Diagnostic::new(&n.id, format!("cable ({p},{q}) must satisfy p != 0, q > 1")));
                } else if !coprime(*p, *q) {
                    out.push(Diagnostic::new(&n.id, format!("cable ({p},{q}) parameters must be coprime")));
                }
                if kids.len() != 1 {
                    out.push(Diagnostic::new(&n.id, "cable requires exactly one child"));
                }
            }
            NodeKind::Hyperbolic { filled, .. } => {
                let mut used = HashSet::new();
                for f in filled {
                    if f.slot == 0 || !used.insert(f.slot) {
                        out.push(Diagnostic::new(&n.id, format!("filled slot {} repeated or not a child slot", f.slot)));
                    }
                }
                for e in kids {
                    if e.slot == 0 || !used.insert(e.slot) {
                        out.push(Diagnostic::new(
                            edge_item(&e.parent, &e.child),
                            format!("slot {} repeated or not a child slot", e.slot),
                        ));
                    }
                }
            }
        }
        if !matches!(n.kind, NodeKind::Hyperbolic { .. }) {
            for e in kids {
                if e.slot != 0 || e.longitude != 0 {
                    out.push(Diagnostic::new(
                        edge_item(&e.parent, &e.child),
                        "slot and longitude apply to hyperbolic parents only",
                    ));
                }
            }
        }
        if edges_ok && n.kind.is_key_chain() {
            if let Some(p) = parent_of.get(n.id.as_str()) {
                if kinds[p].is_key_chain() {
                    out.push(Diagnostic::new(&n.id, "key-chain node has a key-chain parent"));
                }
            }
        }
    }
    out
}

/// Structural rules plus resolution of every hyperbolic node against `cat`.
pub fn validate_tree(t: &DecoratedTree, cat: &HyperbolicCatalog) -> Vec<Diagnostic> {
    let mut out = structural_diagnostics(t);
    let children = t.child_map();
    for n in &t.nodes {
        let NodeKind::Hyperbolic { catalog_id, meridian, filled } = &n.kind else { continue };
        let Some(entry) = cat.get(catalog_id) else {
            out.push(Diagnostic::new(&n.id, format!("unknown catalog id {catalog_id:?}")));
            continue;
        };
        if *meridian >= entry.meridian_choices {
            out.push(Diagnostic::new(
                &n.id,
                format!("meridian choice {meridian} out of range (catalog allows {})", entry.meridian_choices),
            ));
        }
        let kids = children.get(n.id.as_str()).map(Vec::as_slice).unwrap_or(&[]);
        let slots = entry.child_slots();
        if kids.len() + filled.len() != slots as usize {
            out.push(Diagnostic::new(
                &n.id,
                format!(
                    "hyperbolic {catalog_id} has {slots} child slots but {} children and {} filled",
                    kids.len(),
                    filled.len()
                ),
            ));
        }
        let lmax = entry.longitude_choices_per_boundary;
        for e in kids {
            if e.slot > slots {
                out.push(Diagnostic::new(edge_item(&e.parent, &e.child), format!("slot {} exceeds {slots}", e.slot)));
            }
            if e.longitude >= lmax {
                out.push(Diagnostic::new(
                    edge_item(&e.parent, &e.child),
                    format!("longitude choice {} out of range (catalog allows {lmax})", e.longitude),
                ));
            }
        }
        for f in filled {
            if f.slot > slots || f.slope >= lmax {
                out.push(Diagnostic::new(&n.id, format!("filled slot {} / slope {} out of range", f.slot, f.slope)));
            }
        }
    }
    out
}
