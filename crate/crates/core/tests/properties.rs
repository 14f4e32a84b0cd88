mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_core::deadend::{self, EffectRule};
use thompson_core::geodesic::{self, GeneratorWord};
use thompson_core::group::{apply_generator, generator_pair, invert, multiply};
use thompson_core::metric::{word_length, Part};
use thompson_core::normal_form::{self, InfiniteWord, NormalForm};
use thompson_core::sample::{random_pair, random_tree};
use thompson_core::{metric, Generator, Tree, TreePair};

fn pair_from_seed(seed: u64, max_carets: usize) -> TreePair {
    random_pair(&mut ChaCha8Rng::seed_from_u64(seed), max_carets)
}

fn element() -> impl Strategy<Value = TreePair> {
    (any::<u64>(), 1usize..14).prop_map(|(seed, n)| pair_from_seed(seed, n))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn generator_word(max: usize) -> impl Strategy<Value = GeneratorWord> {
    prop::collection::vec(generator(), 0..max).prop_map(GeneratorWord)
}

fn infinite_letters() -> impl Strategy<Value = Vec<(u32, bool)>> {
    prop::collection::vec((0u32..7, any::<bool>()), 0..14)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn multiplication_is_associative(f in element(), g in element(), h in element()) {
        prop_assert_eq!(multiply(&multiply(&f, &g), &h), multiply(&f, &multiply(&g, &h)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn identity_and_inverses(f in element()) {
        let e = TreePair::identity();
        prop_assert_eq!(&multiply(&f, &e), &f);
        prop_assert_eq!(&multiply(&e, &f), &f);
        prop_assert!(multiply(&f, &invert(&f)).is_identity());
        prop_assert!(multiply(&invert(&f), &f).is_identity());
        prop_assert!(multiply(&f, &invert(&f)).is_reduced());
    }

    #[test]
    fn products_are_reduced(f in element(), g in element()) {
        prop_assert!(multiply(&f, &g).is_reduced());
    }

    #[test]
    fn normalize_agrees_with_rewriting(pairs in infinite_letters()) {
        let letters = common::letters_from(&pairs);
        let by_trees = normal_form::normalize(&InfiniteWord { letters: letters.clone() });
        prop_assert_eq!(by_trees, common::rewrite_normal_form(&letters));
    }

    #[test]
    fn normal_form_round_trip(f in element()) {
        let nf = NormalForm::from_tree_pair(&f);
        prop_assert_eq!(&nf.to_tree_pair(), &f);
        let text = nf.to_string();
        prop_assert_eq!(normal_form::parse(&text).unwrap().normal_form(), nf);
    }

    #[test]
    fn relators_are_trivial(f in element(), k in 0usize..4) {
        // [x0 x1^-1, x0^-1 x1 x0] and [x0 x1^-1, x0^-2 x1 x0^2]
        let u: GeneratorWord = "a B".parse().unwrap();
        let v: GeneratorWord = ["A b a", "A A b a a"][k % 2].parse().unwrap();
        let r = u.concat(&v).concat(&u.inverse()).concat(&v.inverse());
        prop_assert_eq!(r.len(), if k % 2 == 0 { 10 } else { 14 });
        let word = geodesic::evaluate(&r);
        prop_assert!(word.is_identity());
        let conj = multiply(&multiply(&f, &word), &invert(&f));
        prop_assert!(conj.is_identity());
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in generator_word(12), v in generator_word(12)) {
        let lhs = geodesic::evaluate(&u.concat(&v));
        prop_assert_eq!(lhs, multiply(&geodesic::evaluate(&u), &geodesic::evaluate(&v)));
    }

    #[test]
    fn length_is_symmetric_and_triangular(f in element(), g in element()) {
        prop_assert_eq!(word_length(&f), word_length(&invert(&f)));
        let fg = multiply(&f, &g);
        prop_assert!(word_length(&fg) <= word_length(&f) + word_length(&g));
    }

    #[test]
    fn length_parity_matches_letter_count(f in element()) {
        let nf = NormalForm::from_tree_pair(&f);
        prop_assert_eq!(word_length(&f) as u64 % 2, nf.infinite_length() % 2);
    }

    #[test]
    fn each_generator_changes_length_by_one(f in element(), g in generator()) {
        let d = word_length(&apply_generator(&f, g)) as i64 - word_length(&f) as i64;
        prop_assert!(d == 1 || d == -1);
    }

    #[test]
    fn generator_acts_as_rotation(f in element(), g in generator()) {
        let product = apply_generator(&f, g);
        match common::rotate(f.negative(), g) {
            Some(rotated) => {
                prop_assert!(deadend::precondition_holds(&f, g));
                let expected = TreePair::from_trees(rotated, f.positive().clone()).unwrap().reduced();
                prop_assert_eq!(product, expected);
            }
            None => {
                prop_assert!(!deadend::precondition_holds(&f, g));
                prop_assert!(product.caret_count() > f.caret_count());
                prop_assert_eq!(deadend::measured_delta(&f, g), 1);
            }
        }
    }

    #[test]
    fn one_caret_pair_changes_without_reduction(f in element(), g in generator()) {
        let product = apply_generator(&f, g);
        if !deadend::precondition_holds(&f, g) || product.caret_count() != f.caret_count() {
            return Ok(());
        }
        let before = metric::length_breakdown(&f);
        let after = metric::length_breakdown(&product);
        let changed: Vec<usize> = before
            .iter()
            .zip(&after)
            .filter(|(a, b)| (a.negative, a.positive) != (b.negative, b.positive))
            .map(|(a, _)| a.index)
            .collect();
        prop_assert_eq!(changed.len(), 1);
        let p = deadend::predict(&f, g).unwrap();
        prop_assert_eq!(p.caret, Some(changed[0]));
        prop_assert!(matches!(p.rule, EffectRule::Chart(_)));
    }

    #[test]
    fn predictions_match_measurement(f in element(), g in generator()) {
        let effect = deadend::generator_effect(&f, g);
        prop_assert!(effect.is_ok(), "{:?}", effect);
    }

    #[test]
    fn replacement_word_evaluates_and_is_short(f in element()) {
        let nf = NormalForm::from_tree_pair(&f);
        let w = geodesic::replacement_word(&nf);
        prop_assert_eq!(geodesic::evaluate(&w), f.clone());
        prop_assert!(w.len() as u64 <= 4 * word_length(&f) as u64, "{} has {} letters", nf, w.len());
    }

    #[test]
    fn nested_traversal_is_geodesic(seed in any::<u64>(), n in 1usize..40, positive in any::<bool>()) {
        let tree = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let comb = Tree::right_comb(n);
        let pair = if positive {
            TreePair::from_trees(comb, tree)
        } else {
            TreePair::from_trees(tree, comb)
        }.unwrap().reduced();
        let nf = NormalForm::from_tree_pair(&pair);
        let w = geodesic::nested_traversal_word(&nf).unwrap();
        prop_assert_eq!(geodesic::evaluate(&w), pair.clone());
        prop_assert_eq!(w.len() as u32, word_length(&pair));
    }

    #[test]
    fn census_matches_tree(f in element()) {
        let nf = NormalForm::from_tree_pair(&f);
        for side in [Part::Negative, Part::Positive] {
            let tree = metric::minimal_tree(&nf, side);
            prop_assert_eq!(metric::caret_census(&nf, side), metric::CaretCensus::of_tree(&tree));
            let direct = tree.right().map_or(true, Tree::is_leaf);
            if let Some(formula) = metric::right_spine_empty_by_formula(&nf, side) {
                prop_assert_eq!(formula, direct);
            }
        }
    }

    #[test]
    fn ball_neighbours_differ_by_one(g in generator(), h in generator()) {
        // two steps from the identity land at length 0 or 2
        let two = apply_generator(&generator_pair(g), h);
        let len = word_length(&two);
        prop_assert!(len == 0 || len == 2);
        prop_assert_eq!(len == 0, h == g.inverse());
    }
}
