//! Exact word length in the generators `x0, x1` from caret-type weights, and
//! the length bounds and caret counts that can be read off a normal form.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::TreePair;
use crate::normal_form::{NormalForm, Term};
use crate::tree::{CaretType, Tree};

/// Pair weights, rows and columns in the same order. The `(L0, L0)` pairing
/// weighs 0 and `L0` pairs with nothing else.
pub const WEIGHT_TABLE: &str = concat!(
    "     R0  RNI RI  LL  I0  IR\n",
    "R0   0   2   2   1   1   3\n",
    "RNI  2   2   2   1   1   3\n",
    "RI   2   2   2   1   3   3\n",
    "LL   1   1   1   2   2   2\n",
    "I0   1   1   3   2   2   4\n",
    "IR   3   3   3   2   4   4\n",
);

struct Weights {
    order: Vec<CaretType>,
    values: Vec<Vec<u32>>,
}

static WEIGHTS: LazyLock<Weights> = LazyLock::new(|| {
    let mut lines = WEIGHT_TABLE.lines();
    let order: Vec<CaretType> = lines
        .next()
        .expect("header")
        .split_whitespace()
        .map(|s| s.parse().expect("caret type"))
        .collect();
    let mut values = vec![Vec::new(); order.len()];
    for line in lines {
        let mut cells = line.split_whitespace();
        let row: CaretType = cells.next().expect("row label").parse().expect("caret type");
        let i = order.iter().position(|&t| t == row).expect("row in header");
        values[i] = cells.map(|c| c.parse().expect("weight")).collect();
    }
    Weights { order, values }
});

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("caret type {0} cannot be paired with {1}")]
    MixedL0(CaretType, CaretType),
}

pub fn caret_pair_weight(a: CaretType, b: CaretType) -> Result<u32, MetricError> {
    match (a, b) {
        (CaretType::L0, CaretType::L0) => Ok(0),
        (CaretType::L0, _) | (_, CaretType::L0) => Err(MetricError::MixedL0(a, b)),
        _ => {
            let w = &*WEIGHTS;
            let i = w.order.iter().position(|&t| t == a).expect("type in table");
            let j = w.order.iter().position(|&t| t == b).expect("type in table");
            Ok(w.values[i][j])
        }
    }
}

/// One row of a length breakdown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaretPairing {
    pub index: usize,
    pub negative: CaretType,
    pub positive: CaretType,
    pub weight: u32,
}

/// Weight of every same-index caret pairing.
pub fn length_breakdown(pair: &TreePair) -> Vec<CaretPairing> {
    let neg = pair.negative().classify();
    let pos = pair.positive().classify();
    neg.into_iter()
        .zip(pos)
        .enumerate()
        .map(|(index, (negative, positive))| CaretPairing {
            index,
            negative,
            positive,
            weight: caret_pair_weight(negative, positive).expect("L0 carets share index 0"),
        })
        .collect()
}

/// Word length `|w|` of a reduced pair.
pub fn word_length(pair: &TreePair) -> u32 {
    length_breakdown(pair).iter().map(|p| p.weight).sum()
}

/// Closed interval `[lower, upper]` for a word length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: i64,
    pub upper: i64,
}

impl Bounds {
    pub fn contains(&self, length: u32) -> bool {
        self.lower <= length as i64 && length as i64 <= self.upper
    }
}

/// `N - 2 <= |w| <= 4N - 4` with `N` the caret count of either tree.
pub fn coarse_bounds(pair: &TreePair) -> Bounds {
    let n = pair.caret_count() as i64;
    Bounds {
        lower: n - 2,
        upper: 4 * n - 4,
    }
}

/// The tighter `N - 2 <= |w| <= 3N - 3`, valid when one tree is a right comb
/// (strictly positive or negative elements). `None` otherwise.
pub fn one_sided_coarse_bounds(pair: &TreePair) -> Option<Bounds> {
    let n = pair.caret_count();
    let comb = Tree::right_comb(n);
    (pair.negative() == &comb || pair.positive() == &comb).then(|| Bounds {
        lower: n as i64 - 2,
        upper: 3 * n as i64 - 3,
    })
}

/// Which half of a normal form (and which tree of the pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    Negative,
    Positive,
}

fn part(nf: &NormalForm, side: Part) -> &[Term] {
    match side {
        Part::Negative => nf.negative(),
        Part::Positive => nf.positive(),
    }
}

/// Exponent of `x0` and the remaining terms, i.e. `s0` and `(j1, s1) … (jl, sl)`.
fn split_x0(terms: &[Term]) -> (u64, &[Term]) {
    match terms.first() {
        Some(t) if t.index == 0 => (t.exponent as u64, &terms[1..]),
        _ => (0, terms),
    }
}

/// The smallest tree whose leaf exponents realise one part of `nf`.
pub fn minimal_tree(nf: &NormalForm, side: Part) -> Tree {
    Tree::from_exponents(&NormalForm::exponent_vector(part(nf, side)))
}

/// Whether the root of the minimal tree of `side` has an empty right
/// subtree, read from the normal form alone: with the `x0` term excluded,
/// every index `jn` must satisfy `jn <= s0 + s1 + … + s(n-1)`. Checking only
/// the highest index is not enough (`x1^3 x2` as a negative part fails at
/// `j1` but passes at `j2`). `None` when the part has no term besides `x0`.
pub fn right_spine_empty_by_formula(nf: &NormalForm, side: Part) -> Option<bool> {
    let (s0, rest) = split_x0(part(nf, side));
    if rest.is_empty() {
        return None;
    }
    let mut below = s0;
    let mut empty = true;
    for t in rest {
        empty &= t.index as u64 <= below;
        below += t.exponent as u64;
    }
    Some(empty)
}

/// Count of carets that still lack their right subtree at the highest
/// nonzero-exponent leaf, excluding the right spine, together with that
/// leaf's index. Only `x0` gives `(0, s0)`.
///
/// Walking the leaves left to right, each leaf closes one pending caret and
/// opens as many as its exponent; once nothing is pending the next leaf
/// starts a new subtree hanging off the right spine.
fn pending_at_last_leaf(terms: &[Term]) -> (u64, u64) {
    let (s0, rest) = split_x0(terms);
    let (mut leaf, mut pending) = (0u64, s0);
    for t in rest {
        let j = t.index as u64;
        pending = pending.saturating_sub(j - leaf) + t.exponent as u64;
        leaf = j;
    }
    (leaf, pending)
}

/// Whether the root of the minimal tree of `side` has an empty right subtree.
pub fn right_spine_empty(nf: &NormalForm, side: Part) -> bool {
    let direct = minimal_tree(nf, side).right().map_or(true, Tree::is_leaf);
    if let Some(formula) = right_spine_empty_by_formula(nf, side) {
        debug_assert_eq!(formula, direct, "right-side test disagrees for {nf}");
    }
    direct
}

/// Caret counts of one minimal tree by kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaretCensus {
    pub total: u64,
    pub left: u64,
    pub interior: u64,
    pub right: u64,
}

impl CaretCensus {
    /// Counts taken directly from a tree's classification.
    pub fn of_tree(tree: &Tree) -> CaretCensus {
        let types = tree.classify();
        let count = |f: fn(CaretType) -> bool| types.iter().filter(|&&t| f(t)).count() as u64;
        CaretCensus {
            total: types.len() as u64,
            left: count(CaretType::is_left),
            interior: count(CaretType::is_interior),
            right: count(CaretType::is_right),
        }
    }
}

/// Caret counts of the minimal tree of `side`, computed from exponents and
/// indices only (padding right carets excluded).
///
/// The total is `j + p + 1`, with `j` the highest index and `p` the carets
/// pending there. This is `jl + sl + 1` when the carets hanging at earlier
/// leaves are all closed by leaf `jl`, and `s0 + … + sl + 1` when the root has
/// an empty right subtree.
pub fn caret_census(nf: &NormalForm, side: Part) -> CaretCensus {
    let terms = part(nf, side);
    let (s0, rest) = split_x0(terms);
    let interior: u64 = rest.iter().map(|t| t.exponent as u64).sum();
    let (leaf, pending) = pending_at_last_leaf(terms);
    let total = leaf + pending + 1;
    let left = s0 + 1;
    CaretCensus {
        total,
        left,
        interior,
        right: total - left - interior,
    }
}

/// A bound computed from a normal form, tagged with the case it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormBounds {
    pub bounds: Bounds,
    /// True when the root of the negative tree has a nonempty right subtree.
    pub right_subtree_nonempty: bool,
    /// True when the bound was computed for the inverse element, because the
    /// negative tree had more `R0` carets than the positive one.
    pub used_inverse: bool,
}

fn r0_count(tree: &Tree) -> usize {
    tree.classify().into_iter().filter(|&t| t == CaretType::R0).count()
}

/// Length bounds from the negative half of the normal form.
///
/// Requires the negative tree to have at most as many `R0` carets as the
/// positive tree; otherwise the bound is computed for the inverse, which has
/// the same length.
pub fn refined_bounds(nf: &NormalForm) -> NormalFormBounds {
    let pair = nf.to_tree_pair();
    let swap = r0_count(pair.negative()) > r0_count(pair.positive());
    let oriented = if swap { nf.inverse() } else { nf.clone() };
    let (s0, rest) = split_x0(oriented.negative());
    let s0 = s0 as i64;
    let interior: i64 = rest.iter().map(|t| t.exponent as i64).sum();
    let nonempty = !right_spine_empty(&oriented, Part::Negative);
    let bounds = if nonempty {
        let top = caret_census(&oriented, Part::Negative).total as i64 - 1;
        Bounds {
            lower: top - 1,
            upper: 3 * top + interior + 2 * s0,
        }
    } else {
        Bounds {
            lower: s0 + interior - 1,
            upper: 2 * s0 + 4 * interior,
        }
    };
    NormalFormBounds {
        bounds,
        right_subtree_nonempty: nonempty,
        used_inverse: swap,
    }
}

/// Length bounds for strictly positive or strictly negative elements; `None`
/// for mixed elements and the identity.
pub fn one_sided_bounds(nf: &NormalForm) -> Option<NormalFormBounds> {
    let (side, used_inverse) = if nf.is_strictly_negative() {
        (Part::Negative, false)
    } else if nf.is_strictly_positive() {
        (Part::Positive, true)
    } else {
        return None;
    };
    let terms = part(nf, side);
    let total: i64 = terms.iter().map(|t| t.exponent as i64).sum();
    let (s0, _) = split_x0(terms);
    let s0 = s0 as i64;
    let nonempty = !right_spine_empty(nf, side);
    let bounds = if nonempty {
        let top = caret_census(nf, side).total as i64 - 1;
        Bounds {
            lower: 2 * top - total - 2,
            upper: 2 * top + total - 2 * s0,
        }
    } else {
        Bounds {
            lower: total,
            upper: s0 + 3 * (total - s0),
        }
    };
    Some(NormalFormBounds {
        bounds,
        right_subtree_nonempty: nonempty,
        used_inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use CaretType::*;

    fn nf(s: &str) -> NormalForm {
        s.parse().unwrap()
    }

    #[test]
    fn weight_lookups() {
        assert_eq!(caret_pair_weight(L0, L0), Ok(0));
        assert_eq!(caret_pair_weight(IR, I0), Ok(4));
        assert_eq!(caret_pair_weight(R0, R0), Ok(0));
        assert_eq!(caret_pair_weight(RI, I0), Ok(3));
        assert_eq!(caret_pair_weight(L0, R0), Err(MetricError::MixedL0(L0, R0)));
    }

    #[test]
    fn table_is_symmetric() {
        let types = [R0, RNI, RI, LL, I0, IR];
        for a in types {
            for b in types {
                assert_eq!(caret_pair_weight(a, b), caret_pair_weight(b, a));
            }
        }
    }

    #[test]
    fn small_lengths() {
        assert_eq!(word_length(&TreePair::identity()), 0);
        assert_eq!(word_length(&nf("x1").to_tree_pair()), 1);
        assert_eq!(word_length(&nf("x0").to_tree_pair()), 1);
        assert_eq!(word_length(&nf("x1^2 x2^-1 x1^-1").to_tree_pair()), 6);
    }

    #[test]
    fn coarse_bounds_on_x1_cubed() {
        let p = nf("x1^3").to_tree_pair();
        assert_eq!(p.caret_count(), 5);
        assert_eq!(coarse_bounds(&p), Bounds { lower: 3, upper: 16 });
        assert_eq!(word_length(&p), 3);
    }

    #[test]
    fn right_side_examples() {
        let ex = nf("x10^-1 x7^-1 x6^-1 x4^-1 x2^-2 x0^-2");
        assert_eq!(right_spine_empty_by_formula(&ex, Part::Negative), Some(false));
        assert!(!right_spine_empty(&ex, Part::Negative));
        assert_eq!(right_spine_empty_by_formula(&nf("x0^-3"), Part::Negative), None);
        assert!(right_spine_empty(&nf("x0^-3"), Part::Negative));
        assert!(!right_spine_empty(&nf("x1^-1"), Part::Negative));
        // boundary of the index condition: j = s0 + ... exactly
        assert!(right_spine_empty(&nf("x1^-1 x0^-1"), Part::Negative));
        assert_eq!(right_spine_empty_by_formula(&nf("x1^-1 x0^-1"), Part::Negative), Some(true));
    }

    #[test]
    fn census_examples() {
        let ex = nf("x10^-1 x7^-1 x6^-1 x4^-1 x2^-2 x0^-2");
        assert_eq!(
            caret_census(&ex, Part::Negative),
            CaretCensus { total: 12, left: 3, interior: 6, right: 3 }
        );
        assert_eq!(
            caret_census(&NormalForm::identity(), Part::Negative),
            CaretCensus { total: 1, left: 1, interior: 0, right: 0 }
        );
        assert_eq!(
            caret_census(&nf("x0^-2"), Part::Negative),
            CaretCensus { total: 3, left: 3, interior: 0, right: 0 }
        );
    }

    #[test]
    fn one_sided_examples() {
        let ex = nf("x10^-1 x7^-1 x6^-1 x4^-1 x2^-2 x0^-2");
        assert_eq!(one_sided_bounds(&ex).unwrap().bounds, Bounds { lower: 12, upper: 26 });
        assert_eq!(one_sided_bounds(&nf("x0^-1")).unwrap().bounds, Bounds { lower: 1, upper: 1 });
        assert_eq!(one_sided_bounds(&nf("x1 x0^-1")), None);
    }
}
