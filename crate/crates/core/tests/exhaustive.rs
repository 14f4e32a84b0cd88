//! Exhaustive checks over all small trees.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_core::geodesic::{self, nested_traversal};
use thompson_core::group::apply_generator;
use thompson_core::metric::{caret_pair_weight, word_length};
use thompson_core::normal_form::{NormalForm, Term};
use thompson_core::sample::random_pair;
use thompson_core::tree::{CaretInfo, Side};
use thompson_core::{deadend, CaretType, Generator, Tree, TreePair};

fn trees_up_to(n: usize) -> impl Iterator<Item = Tree> {
    (0..=n).flat_map(Tree::enumerate)
}

fn negative_element(tree: &Tree) -> TreePair {
    let n = tree.caret_count();
    TreePair::from_trees(tree.clone(), Tree::right_comb(n)).unwrap().reduced()
}

#[test]
fn catalan_counts() {
    let counts: Vec<usize> = (0..=8).map(|n| Tree::enumerate(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
}

#[test]
fn single_l0_and_right_family_partition() {
    for t in trees_up_to(8).filter(|t| !t.is_leaf()) {
        let types = t.classify();
        let carets = t.infix_order();
        assert_eq!(types.iter().filter(|&&c| c == CaretType::L0).count(), 1, "{t}");
        for (k, info) in carets.iter().enumerate() {
            let ty = types[k];
            if info.on_right_side && !info.on_left_side {
                let next_interior = types.get(k + 1).is_some_and(|c| c.is_interior());
                let later_interior = types[k + 1..].iter().any(|c| c.is_interior());
                let expected = if next_interior {
                    CaretType::RI
                } else if later_interior {
                    CaretType::RNI
                } else {
                    CaretType::R0
                };
                assert_eq!(ty, expected, "{t} caret {k}");
            }
        }
    }
}

#[test]
fn infix_and_leaf_numbers_are_bijections() {
    for t in trees_up_to(7) {
        let n = t.caret_count();
        let carets: Vec<usize> = t.infix_order().iter().map(|c: &CaretInfo| c.index).collect();
        assert_eq!(carets, (0..n).collect::<Vec<_>>());
        let leaves: Vec<usize> = t.leaf_numbers().iter().map(|l| l.number).collect();
        assert_eq!(leaves, (0..=n).collect::<Vec<_>>());
    }
}

#[test]
fn exponent_sum_counts_left_edges_off_the_right_side() {
    for t in trees_up_to(8).filter(|t| !t.is_leaf()) {
        let exps = t.leaf_exponents();
        let sum = exps.iter().sum::<u32>() as usize;
        let right_side = t.infix_order().iter().filter(|c| c.on_right_side).count();
        assert_eq!(sum, t.caret_count() - right_side, "{t}");
        let types = t.classify();
        let left = types.iter().filter(|c| c.is_left()).count();
        let interior = types.iter().filter(|c| c.is_interior()).count();
        assert_eq!(sum, left.saturating_sub(1) + interior, "{t}");
        assert_eq!(*exps.last().unwrap(), 0);
        for (leaf, e) in t.leaf_numbers().iter().zip(&exps) {
            if leaf.path.last() == Some(&Side::Right) {
                assert_eq!(*e, 0, "{t} leaf {}", leaf.number);
            }
        }
        // exponents fix the tree up to trailing right carets
        let rebuilt = Tree::from_exponents(&exps);
        assert_eq!(rebuilt.pad_right(t.caret_count() - rebuilt.caret_count()), t);
    }
}

#[test]
fn tree_pair_normal_form_bijection() {
    let mut seen = std::collections::HashSet::new();
    for n in 1..=6 {
        let trees = Tree::enumerate(n);
        for a in &trees {
            for b in &trees {
                let pair = TreePair::from_trees(a.clone(), b.clone()).unwrap();
                if !pair.is_reduced() {
                    continue;
                }
                let nf = NormalForm::from_tree_pair(&pair);
                assert!(seen.insert(nf.to_string()), "{nf} repeated");
                assert_eq!(nf.to_tree_pair(), pair, "{nf}");
                assert_eq!(NormalForm::from_tree_pair(&nf.to_tree_pair()), nf);
                assert!(nf.positive().iter().chain(nf.negative()).all(|t: &Term| t.exponent >= 1));
            }
        }
    }
    assert!(seen.contains("1"));
}

#[test]
fn bijection_on_random_larger_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for _ in 0..10_000 {
        let n = rng.gen_range(7..=30);
        let pair = random_pair(&mut rng, n);
        let nf = NormalForm::from_tree_pair(&pair);
        assert_eq!(nf.to_tree_pair(), pair, "{nf}");
    }
}

#[test]
fn nested_traversal_on_all_small_negative_trees() {
    let mut checked = 0;
    for t in trees_up_to(9).filter(|t| !t.is_leaf()) {
        let pair = negative_element(&t);
        let nf = NormalForm::from_tree_pair(&pair);
        let w = geodesic::nested_traversal_word(&nf).unwrap();
        assert_eq!(geodesic::evaluate(&w), pair, "{nf}");
        assert_eq!(w.len() as u32, word_length(&pair), "{nf}");
        assert!(!w.0.contains(&Generator::X1), "{nf} uses x1");
        // per-caret accounting on the unpadded tree of the element
        let walk = nested_traversal(pair.negative());
        for (ty, &n) in walk.types.iter().zip(&walk.letters_per_caret) {
            let expected = match ty {
                CaretType::L0 => 0,
                _ => caret_pair_weight(*ty, CaretType::R0).unwrap() as usize,
            };
            assert_eq!(n, expected, "{nf} caret type {ty}");
        }
        assert_eq!(walk.letters_per_caret.iter().sum::<usize>(), w.len());
        checked += 1;
    }
    assert_eq!(checked, 1 + 2 + 5 + 14 + 42 + 132 + 429 + 1430 + 4862);
}

#[test]
fn normal_form_after_x1_moves() {
    for n in 1..=6 {
        let trees = Tree::enumerate(n);
        for a in &trees {
            for b in &trees {
                let pair = TreePair::from_trees(a.clone(), b.clone()).unwrap();
                if !pair.is_reduced() {
                    continue;
                }
                let before = NormalForm::from_tree_pair(&pair);
                let smallest_right_leaf = a.left().unwrap().caret_count() as u32 + 1;
                for g in [Generator::X1, Generator::X1Inv] {
                    let product = apply_generator(&pair, g);
                    if !deadend::precondition_holds(&pair, g) || product.caret_count() != pair.caret_count() {
                        continue;
                    }
                    let after = NormalForm::from_tree_pair(&product);
                    assert_eq!(after.positive(), before.positive(), "{before} {g}");
                    let mut expected = exponent_map(before.negative());
                    let e = expected.entry(smallest_right_leaf).or_insert(0);
                    if g == Generator::X1 {
                        *e -= 1;
                    } else {
                        *e += 1;
                    }
                    expected.retain(|_, e| *e != 0);
                    assert_eq!(exponent_map(after.negative()), expected, "{before} {g}");
                }
            }
        }
    }
}

fn exponent_map(terms: &[Term]) -> std::collections::BTreeMap<u32, i64> {
    terms.iter().map(|t| (t.index, t.exponent as i64)).collect()
}
