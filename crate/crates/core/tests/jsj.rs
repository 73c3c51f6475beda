use knotcalc_core::jsj::{
    canonical_form, desatellite, enumerate_trees, graft, validate_tree, winding_divisibility, CatalogEntry,
    DecoratedTree, EnumerationBounds, GraftSlot, HyperbolicCatalog, NodeKind,
};
use num_bigint::BigInt;

fn catalog() -> HyperbolicCatalog {
    HyperbolicCatalog::new(vec![
        CatalogEntry::new("m004", 1, "2.029883212819307", 2, 1),
        CatalogEntry::new("L6a4", 3, "7.327724753188", 1, 2),
    ])
}

#[test]
fn every_enumerated_tree_survives_json() {
    let cat = catalog();
    for t in enumerate_trees(&EnumerationBounds::new(3, 3, 3, 2), &cat).unwrap() {
        let text = serde_json::to_string(&t).unwrap();
        let back: DecoratedTree = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(canonical_form(&back).unwrap(), canonical_form(&t).unwrap());
    }
}

#[test]
fn graft_and_desatellite_are_inverse_on_cables() {
    let cat = catalog();
    let leaf = DecoratedTree::single("leaf", NodeKind::torus_knot(-5, 3));
    for (p, q) in [(3, 2), (-7, 3), (11, 4)] {
        let base = DecoratedTree::single("c", NodeKind::torus_knot(p, q));
        let open = DecoratedTree::single("c", NodeKind::Cable { p, q });
        let sat = graft(&open, &GraftSlot::new("c"), &leaf, &cat).unwrap();
        assert!(validate_tree(&sat, &cat).is_empty());
        let back = desatellite(&sat, "leaf").unwrap();
        assert_eq!(canonical_form(&back).unwrap(), canonical_form(&base.normalized()).unwrap());
    }
}

#[test]
fn hyperbolic_slots_round_trip() {
    let cat = catalog();
    let mut t = DecoratedTree::default();
    t.push("h", NodeKind::hyperbolic("L6a4", 0), None)
        .push("a", NodeKind::torus_knot(3, 2), Some(("h", 1, 0)))
        .push("b", NodeKind::Cable { p: 2, q: 3 }, Some(("h", 2, 1)))
        .push("c", NodeKind::torus_knot(5, 2), Some(("b", 0, 0)));
    assert!(validate_tree(&t, &cat).is_empty());
    let cut = desatellite(&t, "b").unwrap();
    assert!(validate_tree(&cut, &cat).is_empty());
    assert_eq!(canonical_form(&cut).unwrap(), "H(L6a4,0)[1/0:T(3,2),2:fill(1)]");
    let again = graft(&cut, &GraftSlot::hyperbolic("h", 2, 1), &t.subtree("b"), &cat).unwrap();
    assert_eq!(canonical_form(&again).unwrap(), canonical_form(&t).unwrap());
}

#[test]
fn winding_multiplies_cable_orders() {
    let mut t = DecoratedTree::default();
    t.push("c1", NodeKind::Cable { p: 5, q: 3 }, None)
        .push("c2", NodeKind::Cable { p: 1, q: 4 }, Some(("c1", 0, 0)))
        .push("k", NodeKind::torus_knot(3, 2), Some(("c2", 0, 0)));
    assert_eq!(winding_divisibility(&t, "k").unwrap().divisor, BigInt::from(12));
    assert_eq!(winding_divisibility(&t, "c2").unwrap().divisor, BigInt::from(3));
    assert_eq!(winding_divisibility(&t, "c1").unwrap().divisor, BigInt::from(1));
}

#[test]
fn validation_reports_each_problem() {
    let cat = catalog();
    let mut t = DecoratedTree::default();
    t.push("kc", NodeKind::KeyChain { r: 2 }, None)
        .push("inner", NodeKind::KeyChain { r: 2 }, Some(("kc", 0, 0)))
        .push("x", NodeKind::torus_knot(4, 2), Some(("inner", 0, 0)));
    let diags = validate_tree(&t, &cat);
    let items: Vec<&str> = diags.iter().map(|d| d.item.as_str()).collect();
    assert!(items.contains(&"kc"), "{diags:?}");
    assert!(items.contains(&"inner"), "{diags:?}");
    assert!(items.contains(&"x"), "{diags:?}");
}
