//! Oracle-computation trees over a set-valued container, read in the
//! classical two-valued semantics.
//!
//! A container is degenerate when some shape has no positions. Over a
//! degenerate container the oracle modality is constantly true, so modal
//! equality and tree membership hold everywhere; otherwise the modality
//! is the identity.

pub mod sheaf;
pub mod suite;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Shapes with finite position sets. Shape and position order are the
/// order given at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetContainer {
    shapes: Vec<String>,
    positions: Vec<Vec<String>>,
    degenerate: bool,
}

impl SetContainer {
    pub fn new<I, S, P>(shapes: I) -> Result<SetContainer>
    where
        I: IntoIterator<Item = (S, Vec<P>)>,
        S: Into<String>,
        P: Into<String>,
    {
        let mut names = Vec::new();
        let mut positions = Vec::new();
        let mut seen = HashSet::new();
        for (s, ps) in shapes {
            let s = s.into();
            if !seen.insert(s.clone()) {
                return Err(Error::DuplicateLabel(s));
            }
            let ps: Vec<String> = ps.into_iter().map(Into::into).collect();
            let mut pseen = HashSet::new();
            if let Some(dup) = ps.iter().find(|p| !pseen.insert(p.as_str())) {
                return Err(Error::DuplicateLabel(format!("{s}.{dup}")));
            }
            names.push(s);
            positions.push(ps);
        }
        let degenerate = positions.iter().any(Vec::is_empty);
        Ok(SetContainer {
            shapes: names,
            positions,
            degenerate,
        })
    }

    /// Container with shapes `a0, a1, ...` and positions `u0, u1, ...`.
    pub fn with_arities(arities: &[usize]) -> SetContainer {
        SetContainer::new(
            arities
                .iter()
                .enumerate()
                .map(|(a, &n)| (format!("a{a}"), (0..n).map(|u| format!("u{u}")).collect::<Vec<_>>())),
        )
        .expect("generated labels are distinct")
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn shape(&self, a: usize) -> &str {
        &self.shapes[a]
    }

    pub fn shapes(&self) -> &[String] {
        &self.shapes
    }

    pub fn shape_index(&self, label: &str) -> Option<usize> {
        self.shapes.iter().position(|s| s == label)
    }

    pub fn positions(&self, a: usize) -> &[String] {
        &self.positions[a]
    }

    pub fn arity(&self, a: usize) -> usize {
        self.positions[a].len()
    }
}

/// A finite oracle-computation tree with leaf values in `usize`.
/// A node's children are listed in the order of its shape's positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    Node { shape: usize, children: Vec<Tree> },
}

impl Tree {
    pub fn node(shape: usize, children: Vec<Tree>) -> Tree {
        Tree::Node { shape, children }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node { children, .. } => 1 + children.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node { children, .. } => 1 + children.iter().map(Tree::size).sum::<usize>(),
        }
    }

    /// Every node's shape exists and its children match the positions.
    pub fn check(&self, c: &SetContainer) -> Result<()> {
        match self {
            Tree::Leaf(_) => Ok(()),
            Tree::Node { shape, children } => {
                if *shape >= c.len() {
                    return Err(Error::InvalidTree(format!("shape index {shape} out of range")));
                }
                if children.len() != c.arity(*shape) {
                    return Err(Error::InvalidTree(format!(
                        "shape {} has {} positions but {} children",
                        c.shape(*shape),
                        c.arity(*shape),
                        children.len()
                    )));
                }
                children.iter().try_for_each(|t| t.check(c))
            }
        }
    }

    pub fn leaf_values(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut BTreeSet<usize>) {
        match self {
            Tree::Leaf(v) => {
                out.insert(*v);
            }
            Tree::Node { children, .. } => children.iter().for_each(|t| t.collect_leaves(out)),
        }
    }
}

/// Modal equality of values: `x = y`, or anything at all over a
/// degenerate container.
pub fn modal_eq(c: &SetContainer, x: usize, y: usize) -> bool {
    x == y || c.is_degenerate()
}

/// `x ∈ leaf y` iff `x` is modally equal to `y`; `x ∈ node a κ` iff `x`
/// is a member of every child.
pub fn membership(c: &SetContainer, x: usize, t: &Tree) -> bool {
    match t {
        Tree::Leaf(y) => modal_eq(c, x, *y),
        Tree::Node { children, .. } => children.iter().all(|k| membership(c, x, k)),
    }
}

/// A member set: either every value or a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Members {
    All,
    Finite(BTreeSet<usize>),
}

impl Members {
    pub fn contains(&self, x: usize) -> bool {
        match self {
            Members::All => true,
            Members::Finite(s) => s.contains(&x),
        }
    }

    pub fn intersect(self, other: Members) -> Members {
        match (self, other) {
            (Members::All, m) | (m, Members::All) => m,
            (Members::Finite(a), Members::Finite(b)) => Members::Finite(a.intersection(&b).copied().collect()),
        }
    }

    /// A value in exactly one of the two sets, if any.
    pub fn distinguish(&self, other: &Members) -> Option<usize> {
        match (self, other) {
            (Members::All, Members::All) => None,
            (Members::Finite(a), Members::Finite(b)) => a.symmetric_difference(b).next().copied(),
            (Members::All, Members::Finite(s)) | (Members::Finite(s), Members::All) => {
                (0..).find(|x| !s.contains(x))
            }
        }
    }

    pub fn singleton(&self) -> Option<usize> {
        match self {
            Members::Finite(s) if s.len() == 1 => s.iter().next().copied(),
            _ => None,
        }
    }
}

/// The set of `x` with `x ∈ t`.
pub fn members(c: &SetContainer, t: &Tree) -> Members {
    if c.is_degenerate() {
        return Members::All;
    }
    match t {
        Tree::Leaf(y) => Members::Finite(BTreeSet::from([*y])),
        Tree::Node { children, .. } => children
            .iter()
            .fold(Members::All, |acc, k| acc.intersect(members(c, k))),
    }
}

/// Why a tree is not equifoliate: at the node reached by `path`
/// (child indices from the root), `x` belongs to child `u` but not to
/// child `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquiWitness {
    pub path: Vec<usize>,
    pub x: usize,
    pub u: usize,
    pub v: usize,
}

impl fmt::Display for EquiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at path {:?}: {} is a member of child {} but not of child {}",
            self.path, self.x, self.u, self.v
        )
    }
}

/// Checks that every node's children are equifoliate with equal member
/// sets, returning the member set of `t` on success.
pub fn equifoliate(c: &SetContainer, t: &Tree) -> std::result::Result<Members, EquiWitness> {
    let mut path = Vec::new();
    equi_at(c, t, &mut path)
}

fn equi_at(c: &SetContainer, t: &Tree, path: &mut Vec<usize>) -> std::result::Result<Members, EquiWitness> {
    match t {
        Tree::Leaf(_) => Ok(members(c, t)),
        Tree::Node { children, .. } => {
            let mut sets = Vec::with_capacity(children.len());
            for (i, k) in children.iter().enumerate() {
                path.push(i);
                let m = equi_at(c, k, path)?;
                path.pop();
                sets.push(m);
            }
            for u in 1..sets.len() {
                if let Some(x) = sets[0].distinguish(&sets[u]) {
                    let (u, v) = if sets[0].contains(x) { (0, u) } else { (u, 0) };
                    return Err(EquiWitness {
                        path: path.clone(),
                        x,
                        u,
                        v,
                    });
                }
            }
            Ok(members(c, t))
        }
    }
}

/// Grafts `f(x)` at every leaf `x`.
pub fn bind(t: &Tree, f: &dyn Fn(usize) -> Tree) -> Tree {
    match t {
        Tree::Leaf(x) => f(*x),
        Tree::Node { shape, children } => Tree::Node {
            shape: *shape,
            children: children.iter().map(|k| bind(k, f)).collect(),
        },
    }
}

/// Record of a successful equifoliate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquiCertificate {
    pub members: Members,
    pub nodes: usize,
}

/// A tree together with the evidence that it is equifoliate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquiTree {
    tree: Tree,
    certificate: EquiCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquiError {
    Malformed(String),
    NotEquifoliate(EquiWitness),
}

impl EquiTree {
    pub fn new(c: &SetContainer, tree: Tree) -> std::result::Result<EquiTree, EquiError> {
        tree.check(c).map_err(|e| EquiError::Malformed(e.to_string()))?;
        let members = equifoliate(c, &tree).map_err(EquiError::NotEquifoliate)?;
        let nodes = tree.size();
        Ok(EquiTree {
            tree,
            certificate: EquiCertificate { members, nodes },
        })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn certificate(&self) -> &EquiCertificate {
        &self.certificate
    }
}

/// Canonical form of an element of the sheafification of a value set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalSheafElement {
    /// The only element when the container is degenerate.
    Collapsed,
    Pure(usize),
}

impl CanonicalSheafElement {
    pub fn contains(&self, x: usize) -> bool {
        match self {
            CanonicalSheafElement::Collapsed => true,
            CanonicalSheafElement::Pure(y) => x == *y,
        }
    }
}

/// Descends an equifoliate tree to its canonical sheaf element: the unique
/// member over a nondegenerate container.
pub fn delta(c: &SetContainer, e: &EquiTree) -> Result<CanonicalSheafElement> {
    if c.is_degenerate() {
        return Ok(CanonicalSheafElement::Collapsed);
    }
    members(c, &e.tree)
        .singleton()
        .map(CanonicalSheafElement::Pure)
        .ok_or_else(|| Error::InternalInvariant(format!("equifoliate tree {:?} has no unique member", e.tree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> SetContainer {
        SetContainer::with_arities(&[2])
    }

    fn degenerate() -> SetContainer {
        SetContainer::with_arities(&[2, 0])
    }

    #[test]
    fn modal_equality() {
        assert!(modal_eq(&binary(), 1, 1));
        assert!(!modal_eq(&binary(), 1, 2));
        assert!(modal_eq(&degenerate(), 1, 2));
        assert!(!SetContainer::with_arities(&[]).is_degenerate());
    }

    #[test]
    fn membership_examples() {
        let c = binary();
        assert!(membership(&c, 3, &Tree::Leaf(3)));
        let t = Tree::node(0, vec![Tree::Leaf(1), Tree::Leaf(1)]);
        assert!(!membership(&c, 0, &t));
        assert!(membership(&c, 1, &t));
        let d = degenerate();
        let empty = Tree::node(1, vec![]);
        assert!((0..5).all(|x| membership(&d, x, &empty)));
        assert_eq!(members(&d, &empty), Members::All);
    }

    #[test]
    fn equifoliate_examples() {
        let c = binary();
        assert!(equifoliate(&c, &Tree::Leaf(0)).is_ok());
        let bad = Tree::node(0, vec![Tree::Leaf(0), Tree::Leaf(1)]);
        let w = equifoliate(&c, &bad).unwrap_err();
        assert_eq!((w.x, w.u, w.v), (0, 0, 1));
        assert!(membership(&c, w.x, &Tree::Leaf(0)) && !membership(&c, w.x, &Tree::Leaf(1)));
        assert!(equifoliate(&degenerate(), &Tree::node(0, vec![Tree::Leaf(0), Tree::Leaf(1)])).is_ok());

        let deep = Tree::node(0, vec![Tree::Leaf(2), Tree::node(0, vec![Tree::Leaf(2), Tree::Leaf(3)])]);
        assert_eq!(equifoliate(&c, &deep).unwrap_err().path, vec![1]);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let c = binary();
        assert!(Tree::node(0, vec![Tree::Leaf(0)]).check(&c).is_err());
        assert!(Tree::node(4, vec![]).check(&c).is_err());
        assert!(matches!(
            EquiTree::new(&c, Tree::node(0, vec![])),
            Err(EquiError::Malformed(_))
        ));
    }

    #[test]
    fn bind_unit_laws() {
        let f = |x: usize| Tree::node(0, vec![Tree::Leaf(x + 1), Tree::Leaf(x + 1)]);
        assert_eq!(bind(&Tree::Leaf(4), &f), f(4));
        let t = Tree::node(0, vec![Tree::Leaf(0), Tree::node(0, vec![Tree::Leaf(1), Tree::Leaf(2)])]);
        assert_eq!(bind(&t, &Tree::Leaf), t);
        let g = |x: usize| Tree::Leaf(x * 2);
        assert_eq!(bind(&bind(&t, &f), &g), bind(&t, &|x| bind(&f(x), &g)));
    }

    #[test]
    fn delta_examples() {
        let c = binary();
        let leaf = EquiTree::new(&c, Tree::Leaf(5)).unwrap();
        assert_eq!(delta(&c, &leaf).unwrap(), CanonicalSheafElement::Pure(5));
        let node = EquiTree::new(&c, Tree::node(0, vec![Tree::Leaf(2), Tree::Leaf(2)])).unwrap();
        assert_eq!(delta(&c, &node).unwrap(), CanonicalSheafElement::Pure(2));
        let d = degenerate();
        let any = EquiTree::new(&d, Tree::node(0, vec![Tree::Leaf(0), Tree::Leaf(1)])).unwrap();
        assert_eq!(delta(&d, &any).unwrap(), CanonicalSheafElement::Collapsed);
    }
}
