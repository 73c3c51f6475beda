use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::validate::{structural_diagnostics, validate_tree};
use super::{DecoratedTree, Edge, FilledSlot, HyperbolicCatalog, NodeKind};
use crate::error::{Diagnostic, JsjError};

fn ensure_structure(t: &DecoratedTree) -> Result<(), JsjError> {
    let d = structural_diagnostics(t);
    if d.is_empty() {
        Ok(())
    } else {
        Err(JsjError::Invalid(d))
    }
}

/// Cuts the edge above `child` (edges are named by their child node).
///
/// The subtree below is removed and the parent rewritten: a cable becomes the
/// torus knot with the same parameters, a key-chain loses one component (a
/// 1-key-chain is spliced out), and a hyperbolic piece records the slot as
/// filled along the edge's longitude. A cable with `|p| = 1` becomes the
/// unknot complement, which in turn is cut away from its own parent; at the
/// root this yields the empty tree.
pub fn desatellite(t: &DecoratedTree, child: &str) -> Result<DecoratedTree, JsjError> {
    ensure_structure(t)?;
    if t.node(child).is_none() {
        return Err(JsjError::UnknownNode(child.to_string()));
    }
    let out = cut(t.clone(), child)?;
    ensure_structure(&out)?;
    Ok(out)
}

fn cut(mut t: DecoratedTree, child: &str) -> Result<DecoratedTree, JsjError> {
    let edge = t.parent_edge(child).cloned().ok_or_else(|| JsjError::RootEdge(child.to_string()))?;
    let removed = t.subtree_ids(child);
    t.nodes.retain(|n| !removed.contains(&n.id));
    t.edges.retain(|e| !removed.contains(&e.child));

    let parent = edge.parent.as_str();
    let kind = t.node(parent).expect("parent of a live edge").kind.clone();
    match kind {
        NodeKind::Cable { p, .. } if p.abs() == 1 => {
            if t.root.as_deref() == Some(parent) {
                return Ok(DecoratedTree::unknot());
            }
            return cut(t, parent);
        }
        NodeKind::Cable { p, q } => {
            t.node_mut(parent).expect("parent exists").kind = NodeKind::torus_knot(p, q);
        }
        NodeKind::KeyChain { r } if r - 1 == 1 => {
            let survivor = t.children(parent)[0].child.clone();
            t.edges.retain(|e| e.parent != parent);
            match t.parent_edge(parent).cloned() {
                Some(up) => {
                    for e in t.edges.iter_mut().filter(|e| e.child == parent) {
                        *e = Edge { child: survivor.clone(), ..up.clone() };
                    }
                }
                None => t.root = Some(survivor),
            }
            t.nodes.retain(|n| n.id != parent);
        }
        NodeKind::KeyChain { r } => {
            t.node_mut(parent).expect("parent exists").kind = NodeKind::KeyChain { r: r - 1 };
        }
        NodeKind::Hyperbolic { catalog_id, meridian, mut filled } => {
            filled.push(FilledSlot { slot: edge.slot, slope: edge.longitude });
            filled.sort();
            t.node_mut(parent).expect("parent exists").kind = NodeKind::Hyperbolic { catalog_id, meridian, filled };
        }
        NodeKind::TorusKnot { .. } => unreachable!("torus knots have no children in a valid tree"),
    }
    Ok(t)
}

/// Open child position of a node under construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraftSlot {
    pub node: String,
    /// Boundary index for hyperbolic parents, 0 otherwise.
    pub slot: u32,
    pub longitude: u32,
}

impl GraftSlot {
    pub fn new(node: impl Into<String>) -> Self {
        GraftSlot { node: node.into(), slot: 0, longitude: 0 }
    }

    pub fn hyperbolic(node: impl Into<String>, slot: u32, longitude: u32) -> Self {
        GraftSlot { node: node.into(), slot, longitude }
    }
}

/// Attaches the root of `s` below `at`. A filled hyperbolic slot is
/// reopened, so grafting undoes [`desatellite`] structurally.
pub fn graft(t: &DecoratedTree, at: &GraftSlot, s: &DecoratedTree, cat: &HyperbolicCatalog) -> Result<DecoratedTree, JsjError> {
    let Some(s_root) = s.root.clone() else {
        return Err(JsjError::Invalid(vec![Diagnostic::new("subtree", "cannot graft the empty tree")]));
    };
    let d = validate_tree(s, cat);
    if !d.is_empty() {
        return Err(JsjError::Invalid(d));
    }
    let parent = t.node(&at.node).ok_or_else(|| JsjError::UnknownNode(at.node.clone()))?;
    if let Some(n) = s.nodes.iter().find(|n| t.node(&n.id).is_some()) {
        return Err(JsjError::IdCollision(n.id.clone()));
    }
    let used = t.children(&at.node).len();
    let unavailable = || JsjError::SlotUnavailable { node: at.node.clone(), slot: at.slot as usize };
    let mut reopened = None;
    match &parent.kind {
        NodeKind::TorusKnot { .. } => return Err(JsjError::NoOpenSlot(at.node.clone())),
        NodeKind::Cable { .. } => {
            if used >= 1 {
                return Err(JsjError::NoOpenSlot(at.node.clone()));
            }
            if at.slot != 0 || at.longitude != 0 {
                return Err(unavailable());
            }
        }
        NodeKind::KeyChain { r } => {
            if used as i64 >= *r {
                return Err(JsjError::NoOpenSlot(at.node.clone()));
            }
            if at.slot != 0 || at.longitude != 0 {
                return Err(unavailable());
            }
            if s.node(&s_root).is_some_and(|n| n.kind.is_key_chain()) {
                return Err(JsjError::KeyChainUnderKeyChain(at.node.clone()));
            }
        }
        NodeKind::Hyperbolic { catalog_id, filled, .. } => {
            let entry = cat.resolve(catalog_id)?;
            if at.slot == 0 || at.slot > entry.child_slots() || at.longitude >= entry.longitude_choices_per_boundary {
                return Err(unavailable());
            }
            if t.children(&at.node).iter().any(|e| e.slot == at.slot) {
                return Err(unavailable());
            }
            reopened = filled.iter().position(|f| f.slot == at.slot);
        }
    }

    let mut out = t.clone();
    if let Some(i) = reopened {
        if let Some(NodeKind::Hyperbolic { filled, .. }) = out.node_mut(&at.node).map(|n| &mut n.kind) {
            filled.remove(i);
        }
    }
    out.nodes.extend(s.nodes.iter().cloned());
    out.edges.extend(s.edges.iter().cloned());
    out.edges.push(Edge { parent: at.node.clone(), child: s_root, slot: at.slot, longitude: at.longitude });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Winding {
    /// Product of cable `q` over the edges from the node up to the root.
    #[serde(with = "crate::num_serde::bigint")]
    pub divisor: BigInt,
    /// Edges on that path whose parent is hyperbolic (counted as factor 1).
    pub hyperbolic_edges: usize,
    pub path_length: usize,
}

/// The integer `d` with `H_1` of the subtree complement at `v` mapping into
/// `d Z` inside `H_1` of the whole complement.
pub fn winding_divisibility(t: &DecoratedTree, v: &str) -> Result<Winding, JsjError> {
    ensure_structure(t)?;
    if t.node(v).is_none() {
        return Err(JsjError::UnknownNode(v.to_string()));
    }
    let mut w = Winding { divisor: BigInt::one(), hyperbolic_edges: 0, path_length: 0 };
    let mut cur = v.to_string();
    while let Some(e) = t.parent_edge(&cur) {
        w.path_length += 1;
        match t.node(&e.parent).expect("validated").kind {
            NodeKind::Cable { q, .. } => w.divisor *= q,
            NodeKind::Hyperbolic { .. } => w.hyperbolic_edges += 1,
            _ => {}
        }
        cur = e.parent.clone();
    }
    Ok(w)
}
