//! Rooted binary trees of carets.
//!
//! Carets are addressed by their infix index and leaves by their left-to-right
//! number, both starting at 0. A tree with `n` carets has `n + 1` leaves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A rooted binary tree. `Leaf` doubles as the empty subtree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tree {
    Leaf,
    Caret(Box<Tree>, Box<Tree>),
}

/// Direction of an edge below a caret.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// The seven caret types used by the word-length formula.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum CaretType {
    /// Caret 0, at the bottom of the left side.
    L0,
    /// Any other left caret.
    LL,
    /// Interior caret without a right child.
    I0,
    /// Interior caret with a right child.
    IR,
    /// Right caret `k` whose successor `k + 1` is interior.
    RI,
    /// Right caret that is not `RI` but has a higher-numbered interior caret.
    RNI,
    /// Right caret with no higher-numbered interior caret.
    R0,
}

impl CaretType {
    pub const ALL: [CaretType; 7] = [
        CaretType::L0,
        CaretType::LL,
        CaretType::I0,
        CaretType::IR,
        CaretType::RI,
        CaretType::RNI,
        CaretType::R0,
    ];

    pub fn is_left(self) -> bool {
        matches!(self, CaretType::L0 | CaretType::LL)
    }

    pub fn is_interior(self) -> bool {
        matches!(self, CaretType::I0 | CaretType::IR)
    }

    pub fn is_right(self) -> bool {
        matches!(self, CaretType::RI | CaretType::RNI | CaretType::R0)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaretType::L0 => "L0",
            CaretType::LL => "LL",
            CaretType::I0 => "I0",
            CaretType::IR => "IR",
            CaretType::RI => "RI",
            CaretType::RNI => "RNI",
            CaretType::R0 => "R0",
        }
    }
}

impl fmt::Display for CaretType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaretType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaretType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown caret type `{s}`"))
    }
}

/// Position data for one caret, as produced by [`Tree::infix_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaretInfo {
    pub index: usize,
    /// Edges from the root.
    pub path: Vec<Side>,
    pub on_left_side: bool,
    pub on_right_side: bool,
    pub has_left_child: bool,
    pub has_right_child: bool,
}

impl CaretInfo {
    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }
}

/// Position data for one exposed leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafInfo {
    pub number: usize,
    pub path: Vec<Side>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeParseError {
    #[error("unexpected character `{found}` at offset {position}")]
    Unexpected { position: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("trailing input at offset {0}")]
    Trailing(usize),
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    pub fn caret(left: Tree, right: Tree) -> Tree {
        Tree::Caret(Box::new(left), Box::new(right))
    }

    /// The single caret `(**)`.
    pub fn single() -> Tree {
        Tree::caret(Tree::Leaf, Tree::Leaf)
    }

    /// A chain of `carets` carets going down the right side.
    pub fn right_comb(carets: usize) -> Tree {
        (0..carets).fold(Tree::Leaf, |acc, _| Tree::caret(Tree::Leaf, acc))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn left(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(l, _) => Some(l),
        }
    }

    pub fn right(&self) -> Option<&Tree> {
        match self {
            Tree::Leaf => None,
            Tree::Caret(_, r) => Some(r),
        }
    }

    pub fn caret_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Caret(l, r) => 1 + l.caret_count() + r.caret_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.caret_count() + 1
    }

    /// Follows `path` from the root. Returns `None` when the path runs off the
    /// tree; a returned `Leaf` is an empty subtree.
    pub fn subtree(&self, path: &[Side]) -> Option<&Tree> {
        let mut node = self;
        for side in path {
            node = match (node, side) {
                (Tree::Leaf, _) => return None,
                (Tree::Caret(l, _), Side::Left) => l,
                (Tree::Caret(_, r), Side::Right) => r,
            };
        }
        Some(node)
    }

    /// True when the subtree at `path` has no carets (or does not exist).
    pub fn is_empty_at(&self, path: &[Side]) -> bool {
        self.subtree(path).map_or(true, Tree::is_leaf)
    }

    /// Carets in infix order: left subtree, caret, right subtree.
    pub fn infix_order(&self) -> Vec<CaretInfo> {
        fn walk(t: &Tree, path: &mut Vec<Side>, on_left: bool, on_right: bool, out: &mut Vec<CaretInfo>) {
            if let Tree::Caret(l, r) = t {
                path.push(Side::Left);
                walk(l, path, on_left, false, out);
                path.pop();
                out.push(CaretInfo {
                    index: out.len(),
                    path: path.clone(),
                    on_left_side: on_left,
                    on_right_side: on_right,
                    has_left_child: !l.is_leaf(),
                    has_right_child: !r.is_leaf(),
                });
                path.push(Side::Right);
                walk(r, path, false, on_right, out);
                path.pop();
            }
        }
        let mut out = Vec::with_capacity(self.caret_count());
        walk(self, &mut Vec::new(), true, true, &mut out);
        out
    }

    /// Exposed leaves from left to right.
    pub fn leaf_numbers(&self) -> Vec<LeafInfo> {
        fn walk(t: &Tree, path: &mut Vec<Side>, out: &mut Vec<LeafInfo>) {
            match t {
                Tree::Leaf => out.push(LeafInfo {
                    number: out.len(),
                    path: path.clone(),
                }),
                Tree::Caret(l, r) => {
                    path.push(Side::Left);
                    walk(l, path, out);
                    path.pop();
                    path.push(Side::Right);
                    walk(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Caret types in infix order.
    pub fn classify(&self) -> Vec<CaretType> {
        let carets = self.infix_order();
        let n = carets.len();
        let interior: Vec<bool> = carets
            .iter()
            .map(|c| !c.on_left_side && !(c.on_right_side && !c.is_root()))
            .collect();
        // interior_after[k]: some interior caret has index > k
        let mut interior_after = vec![false; n];
        for k in (0..n.saturating_sub(1)).rev() {
            interior_after[k] = interior_after[k + 1] || interior[k + 1];
        }
        carets
            .iter()
            .map(|c| {
                let k = c.index;
                if c.on_left_side {
                    if k == 0 {
                        CaretType::L0
                    } else {
                        CaretType::LL
                    }
                } else if c.on_right_side {
                    if k + 1 < n && interior[k + 1] {
                        CaretType::RI
                    } else if interior_after[k] {
                        CaretType::RNI
                    } else {
                        CaretType::R0
                    }
                } else if c.has_right_child {
                    CaretType::IR
                } else {
                    CaretType::I0
                }
            })
            .collect()
    }

    /// Leaf exponents `E(k)`: the number of left edges climbing from leaf `k`
    /// without reaching the right side of the tree.
    pub fn leaf_exponents(&self) -> Vec<u32> {
        // Within a subtree hanging off the right side, a leftmost leaf gains one
        // for every left edge; the edge into the right side is not counted.
        fn hanging(t: &Tree, out: &mut Vec<u32>) {
            match t {
                Tree::Leaf => out.push(0),
                Tree::Caret(l, r) => {
                    let first = out.len();
                    hanging(l, out);
                    out[first] += 1;
                    hanging(r, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut node = self;
        while let Tree::Caret(l, r) = node {
            hanging(l, &mut out);
            node = r;
        }
        out.push(0);
        out
    }

    /// The smallest tree realising the given leaf exponents. Trailing zeros are
    /// not significant: the result may have fewer leaves than `exponents`.
    pub fn from_exponents(exponents: &[u32]) -> Tree {
        // Each subtree hanging off the right side is a prefix code: its first
        // value is the length of its left spine, followed by one hanging subtree
        // per spine caret, deepest first.
        fn hanging(values: &[u32], pos: &mut usize) -> Tree {
            let spine = values.get(*pos).copied().unwrap_or(0);
            *pos += 1;
            let mut t = Tree::Leaf;
            for _ in 0..spine {
                let right = hanging(values, pos);
                t = Tree::caret(t, right);
            }
            t
        }
        let significant = exponents.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        let values = &exponents[..significant];
        let mut pos = 0;
        let mut hanging_subtrees = Vec::new();
        while pos < values.len() {
            hanging_subtrees.push(hanging(values, &mut pos));
        }
        if hanging_subtrees.is_empty() {
            hanging_subtrees.push(Tree::Leaf);
        }
        hanging_subtrees
            .into_iter()
            .rev()
            .fold(Tree::Leaf, |acc, left| Tree::caret(left, acc))
    }

    /// Appends `extra` carets with empty left subtrees to the bottom of the
    /// right side. Leaf exponents are unchanged (apart from new zeros).
    pub fn pad_right(&self, extra: usize) -> Tree {
        match self {
            Tree::Leaf => Tree::right_comb(extra),
            Tree::Caret(l, r) => Tree::Caret(l.clone(), Box::new(r.pad_right(extra))),
        }
    }

    /// Smallest tree containing both `self` and `other` as rooted prefixes.
    pub fn union(&self, other: &Tree) -> Tree {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Caret(a, b), Tree::Caret(c, d)) => Tree::caret(a.union(c), b.union(d)),
        }
    }

    /// If `self` is a prefix of `target`, the subtrees of `target` that hang at
    /// each leaf of `self`, in leaf order.
    pub fn expansion_to(&self, target: &Tree) -> Option<Vec<Tree>> {
        fn walk(t: &Tree, target: &Tree, out: &mut Vec<Tree>) -> bool {
            match (t, target) {
                (Tree::Leaf, s) => {
                    out.push(s.clone());
                    true
                }
                (Tree::Caret(..), Tree::Leaf) => false,
                (Tree::Caret(a, b), Tree::Caret(c, d)) => walk(a, c, out) && walk(b, d, out),
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        walk(self, target, &mut out).then_some(out)
    }

    /// Replaces leaf `k` by `subtrees[k]`.
    ///
    /// # Panics
    /// If `subtrees.len()` differs from the leaf count.
    pub fn graft(&self, subtrees: &[Tree]) -> Tree {
        fn walk(t: &Tree, subtrees: &[Tree], next: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    let s = subtrees[*next].clone();
                    *next += 1;
                    s
                }
                Tree::Caret(l, r) => {
                    let l = walk(l, subtrees, next);
                    let r = walk(r, subtrees, next);
                    Tree::caret(l, r)
                }
            }
        }
        assert_eq!(subtrees.len(), self.leaf_count(), "graft needs one subtree per leaf");
        let mut next = 0;
        walk(self, subtrees, &mut next)
    }

    /// Left leaf numbers `m` of carets whose two children are exposed leaves
    /// `m` and `m + 1`, ascending.
    pub fn cherries(&self) -> Vec<usize> {
        fn walk(t: &Tree, leaf: &mut usize, out: &mut Vec<usize>) {
            match t {
                Tree::Leaf => *leaf += 1,
                Tree::Caret(l, r) => {
                    if l.is_leaf() && r.is_leaf() {
                        out.push(*leaf);
                        *leaf += 2;
                    } else {
                        walk(l, leaf, out);
                        walk(r, leaf, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut 0, &mut out);
        out
    }

    /// Removes the cherries whose left leaf numbers are listed (ascending).
    pub fn collapse_cherries(&self, at: &[usize]) -> Tree {
        fn walk(t: &Tree, leaf: &mut usize, at: &[usize], next: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    *leaf += 1;
                    Tree::Leaf
                }
                Tree::Caret(l, r) if l.is_leaf() && r.is_leaf() => {
                    let m = *leaf;
                    *leaf += 2;
                    if at.get(*next) == Some(&m) {
                        *next += 1;
                        Tree::Leaf
                    } else {
                        t.clone()
                    }
                }
                Tree::Caret(l, r) => {
                    let l = walk(l, leaf, at, next);
                    let r = walk(r, leaf, at, next);
                    Tree::caret(l, r)
                }
            }
        }
        walk(self, &mut 0, at, &mut 0)
    }

    /// All trees with exactly `carets` carets, in a fixed order.
    pub fn enumerate(carets: usize) -> Vec<Tree> {
        let mut by_size: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
        for n in 1..=carets {
            let mut trees = Vec::new();
            for left in 0..n {
                for l in &by_size[left] {
                    for r in &by_size[n - 1 - left] {
                        trees.push(Tree::caret(l.clone(), r.clone()));
                    }
                }
            }
            by_size.push(trees);
        }
        by_size.swap_remove(carets)
    }

    /// Graphviz rendering with caret labels `index:type` and leaf labels
    /// `number(E=exponent)`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        self.write_dot_body(&mut out, "", "  ");
        out.push_str("}\n");
        out
    }

    /// DOT statements for this tree with node ids prefixed by `prefix`.
    pub fn write_dot_body(&self, out: &mut String, prefix: &str, indent: &str) {
        use std::fmt::Write;

        let carets = self.infix_order();
        let types = self.classify();
        let leaves = self.leaf_numbers();
        let exps = self.leaf_exponents();
        let caret_id = |path: &[Side]| -> Option<usize> { carets.iter().position(|c| c.path == path) };

        let node_name = |path: &[Side]| -> String {
            match caret_id(path) {
                Some(i) => format!("{prefix}c{i}"),
                None => {
                    let k = leaves.iter().position(|l| l.path == path).expect("path names a node");
                    format!("{prefix}l{k}")
                }
            }
        };

        for c in &carets {
            let _ = writeln!(out, "{indent}{prefix}c{} [label=\"{}:{}\"];", c.index, c.index, types[c.index]);
        }
        for l in &leaves {
            let _ = writeln!(
                out,
                "{indent}{prefix}l{} [label=\"{}(E={})\", shape=plaintext];",
                l.number, l.number, exps[l.number]
            );
        }
        for c in &carets {
            let mut child = c.path.clone();
            child.push(Side::Left);
            let _ = writeln!(out, "{indent}{prefix}c{} -> {};", c.index, node_name(&child));
            child.pop();
            child.push(Side::Right);
            let _ = writeln!(out, "{indent}{prefix}c{} -> {};", c.index, node_name(&child));
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("*"),
            Tree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for Tree {
    type Err = TreeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn node(bytes: &[u8], pos: &mut usize) -> Result<Tree, TreeParseError> {
            match bytes.get(*pos) {
                None => Err(TreeParseError::UnexpectedEnd),
                Some(b'*') => {
                    *pos += 1;
                    Ok(Tree::Leaf)
                }
                Some(b'(') => {
                    *pos += 1;
                    let l = node(bytes, pos)?;
                    let r = node(bytes, pos)?;
                    match bytes.get(*pos) {
                        Some(b')') => {
                            *pos += 1;
                            Ok(Tree::caret(l, r))
                        }
                        Some(&c) => Err(TreeParseError::Unexpected {
                            position: *pos,
                            found: c as char,
                        }),
                        None => Err(TreeParseError::UnexpectedEnd),
                    }
                }
                Some(&c) => Err(TreeParseError::Unexpected {
                    position: *pos,
                    found: c as char,
                }),
            }
        }
        let s = s.trim();
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = node(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(TreeParseError::Trailing(pos));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CaretType::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    #[test]
    fn text_format_round_trips() {
        for s in ["*", "(**)", "(*((**)*))", "(((**)(**))*)"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert_eq!("(**".parse::<Tree>(), Err(TreeParseError::UnexpectedEnd));
        assert!(matches!("(*x)".parse::<Tree>(), Err(TreeParseError::Unexpected { position: 2, .. })));
        assert_eq!("(**)*".parse::<Tree>(), Err(TreeParseError::Trailing(4)));
    }

    #[test]
    fn single_caret() {
        let s = Tree::single();
        assert_eq!(s.infix_order().len(), 1);
        assert!(s.infix_order()[0].is_root());
        assert_eq!(s.leaf_numbers().len(), 2);
        assert_eq!(s.classify(), vec![L0]);
        assert_eq!(s.leaf_exponents(), vec![0, 0]);
    }

    #[test]
    fn right_comb() {
        let comb = Tree::right_comb(3);
        assert_eq!(comb.to_string(), "(*(*(**)))");
        let paths: Vec<_> = comb.infix_order().into_iter().map(|c| c.path).collect();
        assert_eq!(paths, vec![vec![], vec![Side::Right], vec![Side::Right, Side::Right]]);
        assert_eq!(comb.leaf_numbers().len(), 4);
        assert_eq!(comb.classify(), vec![L0, R0, R0]);
        assert_eq!(comb.leaf_exponents(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn x1_positive_tree() {
        let tp = t("(*((**)*))");
        assert_eq!(tp.leaf_numbers().len(), 4);
        assert_eq!(tp.leaf_exponents(), vec![0, 1, 0, 0]);
        assert_eq!(tp.classify(), vec![L0, I0, R0]);
    }

    #[test]
    fn exponent_construction_is_minimal() {
        assert_eq!(Tree::from_exponents(&[]), Tree::single());
        assert_eq!(Tree::from_exponents(&[0, 0, 0]), Tree::single());
        assert_eq!(Tree::from_exponents(&[1]).to_string(), "((**)*)");
        assert_eq!(Tree::from_exponents(&[0, 1]).to_string(), "(*((**)*))");
        assert_eq!(Tree::from_exponents(&[1, 1]).to_string(), "((*(**))*)");
    }

    #[test]
    fn exponents_invert_construction_on_small_trees() {
        for n in 1..=8 {
            for tree in Tree::enumerate(n) {
                let exps = tree.leaf_exponents();
                let minimal = Tree::from_exponents(&exps);
                let extra = n - minimal.caret_count();
                assert_eq!(minimal.pad_right(extra), tree, "tree {tree}");
            }
        }
    }

    #[test]
    fn enumeration_counts_are_catalan() {
        let counts: Vec<usize> = (0..=7).map(|n| Tree::enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn refinement_helpers() {
        let a = t("((**)*)");
        let b = t("(*(**))");
        let u = a.union(&b);
        assert_eq!(u.to_string(), "((**)(**))");
        let exp = a.expansion_to(&u).unwrap();
        assert_eq!(a.graft(&exp), u);
        assert!(u.expansion_to(&a).is_none());
    }

    #[test]
    fn cherries_and_collapse() {
        let tree = t("((**)((**)*))");
        assert_eq!(tree.cherries(), vec![0, 2]);
        assert_eq!(tree.collapse_cherries(&[2]).to_string(), "((**)(**))");
        assert_eq!(tree.collapse_cherries(&[0, 2]).to_string(), "(*(**))");
    }

    #[test]
    fn subtree_queries() {
        let tree = t("(*((**)*))");
        assert!(tree.is_empty_at(&[Side::Left]));
        assert!(!tree.is_empty_at(&[Side::Right, Side::Left]));
        assert!(tree.is_empty_at(&[Side::Right, Side::Left, Side::Left, Side::Left]));
        assert_eq!(tree.subtree(&[Side::Left, Side::Left]), None);
    }

    #[test]
    fn dot_labels() {
        let dot = t("(*((**)*))").to_dot("x1");
        assert!(dot.contains("c1 [label=\"1:I0\"]"));
        assert!(dot.contains("l1 [label=\"1(E=1)\", shape=plaintext]"));
        assert!(dot.contains("c2 -> c1;"));
        assert!(dot.contains("c0 -> l0;"));
    }
}
