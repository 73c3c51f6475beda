use super::shape::Shape;
use super::validate::structural_diagnostics;
use super::DecoratedTree;
use crate::error::JsjError;

/// Deterministic encoding, equal exactly for isomorphic decorated trees.
///
/// `T(p,q)` torus knot, `C(p,q)[child]` cable, `K(r)[c1,...]` key-chain with
/// sorted children, `H(id,m)[slot/longitude:child, slot:fill(slope)]`
/// hyperbolic in slot order; the empty tree is `unknot`.
pub fn canonical_form(t: &DecoratedTree) -> Result<String, JsjError> {
    let diags = structural_diagnostics(t);
    if !diags.is_empty() {
        return Err(JsjError::Invalid(diags));
    }
    Ok(match t.root.as_deref() {
        None => "unknot".to_string(),
        Some(root) => Shape::from_tree(t, root).encode(),
    })
}
