use super::{DecoratedTree, FilledSlot, NodeKind};

/// Id-free recursive form of a valid tree, with key-chain children sorted
/// by encoding and hyperbolic slots in slot order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    TorusKnot { p: i64, q: i64 },
    Cable { p: i64, q: i64, child: Box<Shape> },
    KeyChain { children: Vec<Shape> },
    Hyperbolic { catalog_id: String, meridian: u32, slots: Vec<(u32, SlotContent)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SlotContent {
    Child { longitude: u32, shape: Shape },
    Filled { slope: u32 },
}

impl Shape {
    /// Builds the shape below `id`. The tree must pass the structural checks.
    pub(crate) fn from_tree(t: &DecoratedTree, id: &str) -> Shape {
        Self::build(t, id).0
    }

    fn build(t: &DecoratedTree, id: &str) -> (Shape, String) {
        let node = t.node(id).expect("validated tree");
        let kids = t.children(id);
        let shape = match &node.kind {
            NodeKind::TorusKnot { p, q } => Shape::TorusKnot { p: *p, q: *q },
            NodeKind::Cable { p, q } => {
                let (child, _) = Self::build(t, &kids[0].child);
                Shape::Cable { p: *p, q: *q, child: Box::new(child) }
            }
            NodeKind::KeyChain { .. } => {
                let mut built: Vec<(Shape, String)> = kids.iter().map(|e| Self::build(t, &e.child)).collect();
                built.sort_by(|a, b| a.1.cmp(&b.1));
                Shape::KeyChain { children: built.into_iter().map(|(s, _)| s).collect() }
            }
            NodeKind::Hyperbolic { catalog_id, meridian, filled } => {
                let mut slots: Vec<(u32, SlotContent)> = kids
                    .iter()
                    .map(|e| (e.slot, SlotContent::Child { longitude: e.longitude, shape: Self::build(t, &e.child).0 }))
                    .chain(filled.iter().map(|f| (f.slot, SlotContent::Filled { slope: f.slope })))
                    .collect();
                slots.sort_by_key(|(s, _)| *s);
                Shape::Hyperbolic { catalog_id: catalog_id.clone(), meridian: *meridian, slots }
            }
        };
        let enc = shape.encode();
        (shape, enc)
    }

    pub fn encode(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        use std::fmt::Write;
        match self {
            Shape::TorusKnot { p, q } => write!(out, "T({p},{q})").unwrap(),
            Shape::Cable { p, q, child } => {
                write!(out, "C({p},{q})[").unwrap();
                child.write(out);
                out.push(']');
            }
            Shape::KeyChain { children } => {
                write!(out, "K({})[", children.len()).unwrap();
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.write(out);
                }
                out.push(']');
            }
            Shape::Hyperbolic { catalog_id, meridian, slots } => {
                write!(out, "H({catalog_id},{meridian})[").unwrap();
                for (i, (slot, content)) in slots.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    match content {
                        SlotContent::Child { longitude, shape } => {
                            write!(out, "{slot}/{longitude}:").unwrap();
                            shape.write(out);
                        }
                        SlotContent::Filled { slope } => write!(out, "{slot}:fill({slope})").unwrap(),
                    }
                }
                out.push(']');
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Shape::TorusKnot { .. } => 1,
            Shape::Cable { child, .. } => 1 + child.vertex_count(),
            Shape::KeyChain { children } => 1 + children.iter().map(Shape::vertex_count).sum::<usize>(),
            Shape::Hyperbolic { slots, .. } => {
                1 + slots
                    .iter()
                    .map(|(_, c)| match c {
                        SlotContent::Child { shape, .. } => shape.vertex_count(),
                        SlotContent::Filled { .. } => 0,
                    })
                    .sum::<usize>()
            }
        }
    }

    /// Materializes the shape with node ids `n0, n1, ...` in preorder.
    pub fn to_tree(&self) -> DecoratedTree {
        let mut t = DecoratedTree::default();
        let mut next = 0;
        self.emit(&mut t, None, &mut next);
        t
    }

    fn emit(&self, t: &mut DecoratedTree, parent: Option<(&str, u32, u32)>, next: &mut usize) {
        let id = format!("n{next}");
        *next += 1;
        let kind = match self {
            Shape::TorusKnot { p, q } => NodeKind::TorusKnot { p: *p, q: *q },
            Shape::Cable { p, q, .. } => NodeKind::Cable { p: *p, q: *q },
            Shape::KeyChain { children } => NodeKind::KeyChain { r: children.len() as i64 },
            Shape::Hyperbolic { catalog_id, meridian, slots } => NodeKind::Hyperbolic {
                catalog_id: catalog_id.clone(),
                meridian: *meridian,
                filled: slots
                    .iter()
                    .filter_map(|(slot, c)| match c {
                        SlotContent::Filled { slope } => Some(FilledSlot { slot: *slot, slope: *slope }),
                        SlotContent::Child { .. } => None,
                    })
                    .collect(),
            },
        };
        t.push(id.clone(), kind, parent);
        match self {
            Shape::TorusKnot { .. } => {}
            Shape::Cable { child, .. } => child.emit(t, Some((&id, 0, 0)), next),
            Shape::KeyChain { children } => {
                for c in children {
                    c.emit(t, Some((&id, 0, 0)), next);
                }
            }
            Shape::Hyperbolic { slots, .. } => {
                for (slot, c) in slots {
                    if let SlotContent::Child { longitude, shape } = c {
                        shape.emit(t, Some((&id, *slot, *longitude)), next);
                    }
                }
            }
        }
    }
}
