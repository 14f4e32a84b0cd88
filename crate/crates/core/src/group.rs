//! Group structure on reduced tree pairs.
//!
//! Product convention: `multiply(f, g)` is the element of the concatenated
//! word `f g`. With `f = (B, C)` and `g = (A, B)` the product is `(A, C)`; in
//! general the negative tree of `f` and the positive tree of `g` are expanded
//! to their common refinement first. Every other module goes through
//! [`multiply`] and never re-derives this.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::Tree;

/// A tree pair `(negative, positive)` with equal caret counts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreePair {
    negative: Tree,
    positive: Tree,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("caret counts differ: negative has {negative}, positive has {positive}")]
    CaretCountMismatch { negative: usize, positive: usize },
    #[error("a tree pair needs at least one caret")]
    Empty,
}

impl TreePair {
    pub fn from_trees(negative: Tree, positive: Tree) -> Result<TreePair, PairError> {
        let (n, p) = (negative.caret_count(), positive.caret_count());
        if n != p {
            return Err(PairError::CaretCountMismatch { negative: n, positive: p });
        }
        if n == 0 {
            return Err(PairError::Empty);
        }
        Ok(TreePair { negative, positive })
    }

    pub fn identity() -> TreePair {
        TreePair {
            negative: Tree::single(),
            positive: Tree::single(),
        }
    }

    pub fn negative(&self) -> &Tree {
        &self.negative
    }

    pub fn positive(&self) -> &Tree {
        &self.positive
    }

    pub fn caret_count(&self) -> usize {
        self.negative.caret_count()
    }

    pub fn is_identity(&self) -> bool {
        *self == TreePair::identity()
    }

    /// Leaf numbers `m` where both trees have a caret with exposed leaves `m, m + 1`.
    pub fn reducible_carets(&self) -> Vec<usize> {
        if self.caret_count() == 1 {
            return Vec::new();
        }
        let p = self.positive.cherries();
        self.negative.cherries().into_iter().filter(|m| p.binary_search(m).is_ok()).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.reducible_carets().is_empty()
    }

    /// Removes common cherries until none remain. Removals can expose new
    /// common cherries, so this iterates to a fixpoint.
    pub fn reduced(&self) -> TreePair {
        let mut pair = self.clone();
        loop {
            let common = pair.reducible_carets();
            if common.is_empty() {
                return pair;
            }
            pair = TreePair {
                negative: pair.negative.collapse_cherries(&common),
                positive: pair.positive.collapse_cherries(&common),
            };
        }
    }

    /// Unreduced representative with negative tree `target`, if the current
    /// negative tree is a prefix of it.
    pub fn expand_negative_to(&self, target: &Tree) -> Option<TreePair> {
        let subtrees = self.negative.expansion_to(target)?;
        Some(TreePair {
            negative: target.clone(),
            positive: self.positive.graft(&subtrees),
        })
    }

    /// Unreduced representative with positive tree `target`.
    pub fn expand_positive_to(&self, target: &Tree) -> Option<TreePair> {
        let subtrees = self.positive.expansion_to(target)?;
        Some(TreePair {
            negative: self.negative.graft(&subtrees),
            positive: target.clone(),
        })
    }

    pub fn inverse(&self) -> TreePair {
        invert(self)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.negative, self.positive)
    }
}

/// The four generators `x0, x0^-1, x1, x1^-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Generator {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X0, Generator::X0Inv, Generator::X1, Generator::X1Inv];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::X0 => Generator::X0Inv,
            Generator::X0Inv => Generator::X0,
            Generator::X1 => Generator::X1Inv,
            Generator::X1Inv => Generator::X1,
        }
    }

    /// Compact letter: `a, A, b, B` for `x0, x0^-1, x1, x1^-1`.
    pub fn letter(self) -> char {
        match self {
            Generator::X0 => 'a',
            Generator::X0Inv => 'A',
            Generator::X1 => 'b',
            Generator::X1Inv => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Generator> {
        Some(match c {
            'a' => Generator::X0,
            'A' => Generator::X0Inv,
            'b' => Generator::X1,
            'B' => Generator::X1Inv,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Generator::X0 => "x0",
            Generator::X0Inv => "x0^-1",
            Generator::X1 => "x1",
            Generator::X1Inv => "x1^-1",
        }
    }

    /// True for `x0^-1` and `x1^-1`.
    pub fn is_inverse(self) -> bool {
        matches!(self, Generator::X0Inv | Generator::X1Inv)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(g) = Generator::from_letter(c) {
                return Ok(g);
            }
        }
        Generator::ALL
            .into_iter()
            .find(|g| g.as_str() == s || (s == "x0^1" && *g == Generator::X0) || (s == "x1^1" && *g == Generator::X1))
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

/// Reduced tree pair of a generator.
pub fn generator_pair(g: Generator) -> TreePair {
    let x0 = || TreePair {
        negative: Tree::right_comb(2),
        positive: Tree::caret(Tree::single(), Tree::Leaf),
    };
    let x1 = || TreePair {
        negative: Tree::right_comb(3),
        positive: Tree::caret(Tree::Leaf, Tree::caret(Tree::single(), Tree::Leaf)),
    };
    match g {
        Generator::X0 => x0(),
        Generator::X0Inv => invert(&x0()),
        Generator::X1 => x1(),
        Generator::X1Inv => invert(&x1()),
    }
}

pub fn invert(pair: &TreePair) -> TreePair {
    TreePair {
        negative: pair.positive.clone(),
        positive: pair.negative.clone(),
    }
}

/// Minimal common expansion of two trees together with the subtrees grafted
/// onto each leaf of `a` and of `b` to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub tree: Tree,
    pub expand_a: Vec<Tree>,
    pub expand_b: Vec<Tree>,
}

impl Refinement {
    /// Carets added to `a` and to `b` respectively.
    pub fn added_carets(&self) -> (usize, usize) {
        let count = |v: &[Tree]| v.iter().map(Tree::caret_count).sum();
        (count(&self.expand_a), count(&self.expand_b))
    }
}

pub fn common_refinement(a: &Tree, b: &Tree) -> Refinement {
    let tree = a.union(b);
    let expand_a = a.expansion_to(&tree).expect("union contains a");
    let expand_b = b.expansion_to(&tree).expect("union contains b");
    Refinement { tree, expand_a, expand_b }
}

/// Reduced pair of the product `f g`.
pub fn multiply(f: &TreePair, g: &TreePair) -> TreePair {
    let middle = common_refinement(&f.negative, &g.positive);
    let f_positive = f.positive.graft(&middle.expand_a);
    let g_negative = g.negative.graft(&middle.expand_b);
    TreePair {
        negative: g_negative,
        positive: f_positive,
    }
    .reduced()
}

/// `pair · g`.
pub fn apply_generator(pair: &TreePair, g: Generator) -> TreePair {
    multiply(pair, &generator_pair(g))
}

/// Word-metric distance `|f^-1 g|`.
pub fn distance(f: &TreePair, g: &TreePair) -> u32 {
    crate::metric::word_length(&multiply(&invert(f), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::NormalForm;

    fn el(s: &str) -> TreePair {
        crate::normal_form::parse(s).unwrap().normal_form().to_tree_pair()
    }

    fn nf(p: &TreePair) -> String {
        NormalForm::from_tree_pair(p).to_string()
    }

    #[test]
    fn generator_pairs_match_normal_forms() {
        assert_eq!(generator_pair(Generator::X0), el("x0"));
        assert_eq!(generator_pair(Generator::X1), el("x1"));
        assert_eq!(generator_pair(Generator::X0Inv), el("x0^-1"));
        assert_eq!(generator_pair(Generator::X1Inv), invert(&generator_pair(Generator::X1)));
        assert_eq!(generator_pair(Generator::X1).positive().leaf_exponents(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn inversion() {
        assert_eq!(invert(&TreePair::identity()), TreePair::identity());
        assert_eq!(nf(&invert(&el("x1"))), "x1^-1");
        let p = el("x1^3 x5 x6^-1 x2^-1");
        assert_eq!(invert(&invert(&p)), p);
    }

    #[test]
    fn composition_golden() {
        let f = el("x1^3 x2^-1 x1^-1 x0^-2");
        let g = el("x1 x2^-1 x0^-1");
        assert_eq!(nf(&multiply(&f, &g)), "x1^3 x5 x6^-1 x2^-1 x1^-1 x0^-3");
    }

    #[test]
    fn x0_squared() {
        let x0 = generator_pair(Generator::X0);
        assert_eq!(nf(&multiply(&x0, &x0)), "x0^2");
    }

    #[test]
    fn product_with_inverse_is_identity() {
        for s in ["x0", "x1^2 x4 x3^-1", "x1^3 x5 x6^-1 x2^-1 x1^-1 x0^-3"] {
            let p = el(s);
            assert!(multiply(&p, &invert(&p)).is_identity(), "{s}");
            assert!(multiply(&invert(&p), &p).is_identity(), "{s}");
            assert_eq!(multiply(&p, &TreePair::identity()), p);
        }
    }

    #[test]
    fn refinement_basics() {
        let t: Tree = "(*((**)*))".parse().unwrap();
        assert_eq!(common_refinement(&t, &t).tree, t);
        let r = common_refinement(&Tree::single(), &Tree::right_comb(2));
        assert_eq!(r.tree, Tree::right_comb(2));
        assert_eq!(r.added_carets(), (1, 0));
    }

    #[test]
    fn apply_generator_from_identity() {
        for g in Generator::ALL {
            assert_eq!(apply_generator(&TreePair::identity(), g), generator_pair(g));
        }
    }

    #[test]
    fn reduction_cascades() {
        // (x0 x0^-1) built by hand as an unreduced pair of three carets
        let n: Tree = "((**)(**))".parse().unwrap();
        let pair = TreePair::from_trees(n.clone(), n).unwrap();
        assert_eq!(pair.reduced(), TreePair::identity());
    }

    #[test]
    fn rejects_mismatched_trees() {
        assert_eq!(
            TreePair::from_trees(Tree::single(), Tree::right_comb(2)),
            Err(PairError::CaretCountMismatch { negative: 1, positive: 2 })
        );
        assert_eq!(TreePair::from_trees(Tree::Leaf, Tree::Leaf), Err(PairError::Empty));
    }

    #[test]
    fn generator_letters() {
        for g in Generator::ALL {
            assert_eq!(Generator::from_letter(g.letter()), Some(g));
            assert_eq!(g.as_str().parse::<Generator>(), Ok(g));
            assert_eq!(g.inverse().inverse(), g);
        }
    }
}
