//! Random trees, elements and words for sweeps and property tests.

use rand::Rng;

use crate::geodesic::GeneratorWord;
use crate::group::{Generator, TreePair};
use crate::tree::Tree;

/// A random tree with exactly `carets` carets (left subtree size uniform).
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, carets: usize) -> Tree {
    if carets == 0 {
        return Tree::Leaf;
    }
    let left = rng.gen_range(0..carets);
    let l = random_tree(rng, left);
    let r = random_tree(rng, carets - 1 - left);
    Tree::caret(l, r)
}

/// A random reduced element whose unreduced representative had between 1 and
/// `max_carets` carets.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, max_carets: usize) -> TreePair {
    let n = rng.gen_range(1..=max_carets.max(1));
    let pair = TreePair::from_trees(random_tree(rng, n), random_tree(rng, n)).expect("equal caret counts");
    pair.reduced()
}

/// A random strictly negative (or, with `positive`, strictly positive)
/// element; may be the identity.
pub fn random_one_sided<R: Rng + ?Sized>(rng: &mut R, max_carets: usize, positive: bool) -> TreePair {
    let n = rng.gen_range(1..=max_carets.max(1));
    let tree = random_tree(rng, n);
    let comb = Tree::right_comb(n);
    let pair = if positive {
        TreePair::from_trees(comb, tree)
    } else {
        TreePair::from_trees(tree, comb)
    };
    pair.expect("equal caret counts").reduced()
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> GeneratorWord {
    GeneratorWord((0..len).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect())
}
