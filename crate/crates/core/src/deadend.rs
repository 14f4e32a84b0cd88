//! How a single generator changes word length, and dead-end elements (those
//! that every generator shortens).
//!
//! When the negative tree `T-` of `w` satisfies the generator's precondition
//! (below), right-multiplying by the generator rotates `T-` near the root and
//! changes the type of exactly one caret `C`; `T+` is untouched. The change in
//! length is then read off the type of the caret paired with `C` in `T+`,
//! using the [`CHARTS`] rows. When the precondition fails the length always
//! grows by one.
//!
//! The charts assume the product keeps the caret count. When the rotated pair
//! is reducible instead, the length always drops by one: the reduced pair of
//! `w g` has fewer carets than `w`, so `g^-1` cannot act on it by a rotation,
//! its precondition fails there, and `|w| = |w g| + 1`.
//!
//! | generator | precondition on `T-`          | caret `C`          |
//! |-----------|-------------------------------|--------------------|
//! | `x0`      | root has a left subtree       | root               |
//! | `x0^-1`   | root has a right subtree      | right child `C_R`  |
//! | `x1`      | `C_R` has a left subtree      | `C_RL`             |
//! | `x1^-1`   | `C_R` has a right subtree     | `C_R`              |

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesic::GeneratorWord;
use crate::group::{apply_generator, Generator, TreePair};
use crate::metric::word_length;
use crate::normal_form::NormalForm;
use crate::tree::{CaretType, Side, Tree};

use CaretType::*;
use Side::{Left as L, Right as R};

const ANY: &[CaretType] = &[R0, RNI, RI, LL, I0, IR];

/// One row of a generator chart: caret `C` goes from `initial` to `new`, and
/// the length goes up or down according to the type of its partner in `T+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartRow {
    pub generator: Generator,
    /// Condition on `T-` selecting the row.
    pub condition: &'static str,
    pub initial: CaretType,
    pub new: CaretType,
    pub increase: &'static [CaretType],
    pub decrease: &'static [CaretType],
}

macro_rules! row {
    ($g:ident, $cond:literal, $from:ident -> $to:ident, up: $up:expr, down: $down:expr) => {
        ChartRow {
            generator: Generator::$g,
            condition: $cond,
            initial: $from,
            new: $to,
            increase: $up,
            decrease: $down,
        }
    };
}

/// Three rows per generator, in the order `x0, x0^-1, x1, x1^-1`.
pub const CHARTS: [ChartRow; 12] = [
    row!(X0, "S_RL nonempty", LL -> RI, up: &[R0, RNI, RI, I0, IR], down: &[LL]),
    row!(X0, "S_RL empty, interior caret in S_RR", LL -> RNI, up: &[R0, RNI, RI, IR], down: &[LL, I0]),
    row!(X0, "S_RL empty, no interior caret in S_RR", LL -> R0, up: &[RNI, RI, IR], down: &[R0, LL, I0]),
    row!(X0Inv, "S_RRL nonempty", RI -> LL, up: &[LL], down: &[R0, RNI, RI, I0, IR]),
    row!(X0Inv, "S_RRL empty, interior caret in S_RR", RNI -> LL, up: &[LL, I0], down: &[R0, RNI, RI, IR]),
    row!(X0Inv, "S_RRL empty, no interior caret in S_RR", R0 -> LL, up: &[R0, LL, I0], down: &[RNI, RI, IR]),
    row!(X1, "S_RLR nonempty", IR -> RI, up: &[], down: ANY),
    row!(X1, "S_RLR empty, interior caret in S_RR", I0 -> RNI, up: &[R0, RNI], down: &[LL, I0, IR, RI]),
    row!(X1, "S_RLR empty, no interior caret in S_RR", I0 -> R0, up: &[RNI], down: &[LL, I0, IR, RI, R0]),
    row!(X1Inv, "S_RRL nonempty", RI -> IR, up: ANY, down: &[]),
    row!(X1Inv, "S_RRL empty, interior caret in S_RRR", RNI -> I0, up: &[LL, I0, IR, RI], down: &[R0, RNI]),
    row!(X1Inv, "S_RRL empty, no interior caret in S_RRR", R0 -> I0, up: &[LL, I0, IR, RI, R0], down: &[RNI]),
];

/// Which rule predicted a length change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EffectRule {
    /// The generator's precondition fails, so the length grows by one.
    PreconditionFails,
    /// The rotated pair is reducible, so the length drops by one.
    Reduces,
    /// Index into [`CHARTS`].
    Chart(usize),
}

impl fmt::Display for EffectRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EffectRule::PreconditionFails => f.write_str("precondition-fails"),
            EffectRule::Reduces => f.write_str("reduces"),
            EffectRule::Chart(i) => {
                let row = &CHARTS[*i];
                write!(f, "{}:{} ({} -> {})", row.generator, i % 3 + 1, row.initial, row.new)
            }
        }
    }
}

/// Measured change in length for one generator, with the rule that predicts it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEffect {
    pub generator: Generator,
    pub delta: i8,
    pub rule: EffectRule,
}

/// A chart prediction before measuring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub delta: i8,
    pub rule: EffectRule,
    /// Infix index of the caret whose type changes.
    pub caret: Option<usize>,
    /// Type of its partner in `T+`.
    pub partner: Option<CaretType>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeadEndError {
    #[error("rule {rule} predicts {predicted:+} for {generator} on {element} but the length changes by {measured:+}")]
    ChartMismatch {
        element: String,
        generator: Generator,
        rule: EffectRule,
        predicted: i8,
        measured: i8,
    },
    #[error("rule {rule} does not list partner type {partner} for {element}")]
    ChartGap {
        element: String,
        rule: EffectRule,
        partner: CaretType,
    },
    #[error("{0} is not a dead end")]
    NotDeadEnd(String),
}

/// Some caret of a subtree hanging off the right side is not on its right
/// side, i.e. the subtree contains an interior caret.
fn has_interior(t: Option<&Tree>) -> bool {
    let mut node = t;
    while let Some(Tree::Caret(l, r)) = node {
        if !l.is_leaf() {
            return true;
        }
        node = Some(r);
    }
    false
}

fn size(t: &Tree, path: &[Side]) -> usize {
    t.subtree(path).map_or(0, Tree::caret_count)
}

/// Chart row and caret index for `g` on `T-`, or `None` when the precondition fails.
fn select_row(neg: &Tree, g: Generator) -> Option<(usize, usize)> {
    let nonempty = |p: &[Side]| !neg.is_empty_at(p);
    let pick = |first: bool, second: bool| if first { 0 } else if second { 1 } else { 2 };
    match g {
        Generator::X0 => nonempty(&[L]).then(|| {
            let row = pick(nonempty(&[R, L]), has_interior(neg.subtree(&[R])));
            (row, size(neg, &[L]))
        }),
        Generator::X0Inv => nonempty(&[R]).then(|| {
            let row = pick(nonempty(&[R, R, L]), has_interior(neg.subtree(&[R, R])));
            (3 + row, size(neg, &[L]) + 1 + size(neg, &[R, L]))
        }),
        Generator::X1 => nonempty(&[R, L]).then(|| {
            let row = pick(nonempty(&[R, L, R]), has_interior(neg.subtree(&[R, R])));
            (6 + row, size(neg, &[L]) + 1 + size(neg, &[R, L, L]))
        }),
        Generator::X1Inv => nonempty(&[R, R]).then(|| {
            let row = pick(nonempty(&[R, R, L]), has_interior(neg.subtree(&[R, R, R])));
            (9 + row, size(neg, &[L]) + 1 + size(neg, &[R, L]))
        }),
    }
}

/// Whether the generator's precondition holds for `pair`.
pub fn precondition_holds(pair: &TreePair, g: Generator) -> bool {
    select_row(pair.negative(), g).is_some()
}

/// Length change predicted by the charts, without multiplying.
pub fn predict(pair: &TreePair, g: Generator) -> Result<Prediction, DeadEndError> {
    let Some((row_index, caret)) = select_row(pair.negative(), g) else {
        return Ok(Prediction {
            delta: 1,
            rule: EffectRule::PreconditionFails,
            caret: None,
            partner: None,
        });
    };
    if apply_generator(pair, g).caret_count() < pair.caret_count() {
        return Ok(Prediction {
            delta: -1,
            rule: EffectRule::Reduces,
            caret: Some(caret),
            partner: None,
        });
    }
    let row = &CHARTS[row_index];
    debug_assert_eq!(pair.negative().classify()[caret], row.initial, "row {row_index} on {pair}");
    let partner = pair.positive().classify()[caret];
    let rule = EffectRule::Chart(row_index);
    let delta = if row.decrease.contains(&partner) {
        -1
    } else if row.increase.contains(&partner) {
        1
    } else {
        return Err(DeadEndError::ChartGap {
            element: NormalForm::from_tree_pair(pair).to_string(),
            rule,
            partner,
        });
    };
    Ok(Prediction {
        delta,
        rule,
        caret: Some(caret),
        partner: Some(partner),
    })
}

/// `|w g| - |w|`, checked against the chart prediction.
pub fn generator_effect(pair: &TreePair, g: Generator) -> Result<GeneratorEffect, DeadEndError> {
    let predicted = predict(pair, g)?;
    let measured = measured_delta(pair, g);
    if measured != predicted.delta {
        return Err(DeadEndError::ChartMismatch {
            element: NormalForm::from_tree_pair(pair).to_string(),
            generator: g,
            rule: predicted.rule,
            predicted: predicted.delta,
            measured,
        });
    }
    Ok(GeneratorEffect {
        generator: g,
        delta: measured,
        rule: predicted.rule,
    })
}

/// `|w g| - |w|` by direct computation.
pub fn measured_delta(pair: &TreePair, g: Generator) -> i8 {
    (word_length(&apply_generator(pair, g)) as i64 - word_length(pair) as i64) as i8
}

/// Every generator shortens `pair`. The identity is never a dead end.
pub fn is_dead_end(pair: &TreePair) -> bool {
    !pair.is_identity() && Generator::ALL.iter().all(|&g| measured_delta(pair, g) == -1)
}

/// Structural dead-end test, without multiplying: all four chart predictions
/// are decreases, and the trees have the shape
///
/// ```text
///  T-:          b              (b = root, d = C_R, c = C_RL, e = C_RR)
///             /   \
///           ..     d
///                /   \
///              c       e
///                     / \
///                    *   E      E nonempty
/// ```
///
/// with `d` of type `R0` or `RNI` in both trees, the partner of `b` a left
/// caret with a nonempty left subtree, and the partner of `e` having an empty
/// left subtree. In every dead end up to length 12, `d` is `RNI` in exactly
/// one of the two trees.
pub fn matches_dead_end_form(pair: &TreePair) -> bool {
    let neg = pair.negative();
    let all_decrease = Generator::ALL
        .iter()
        .all(|&g| matches!(predict(pair, g), Ok(p) if p.delta == -1 && matches!(p.rule, EffectRule::Chart(_))));
    if !all_decrease {
        return false;
    }
    if neg.is_empty_at(&[R, R]) || !neg.is_empty_at(&[R, R, L]) || neg.is_empty_at(&[R, R, R]) {
        return false;
    }
    let b = size(neg, &[L]);
    let d = b + 1 + size(neg, &[R, L]);
    let e = d + 1;
    let neg_types = neg.classify();
    let pos_types = pair.positive().classify();
    let pos_carets = pair.positive().infix_order();
    matches!(neg_types[d], R0 | RNI)
        && matches!(pos_types[d], R0 | RNI)
        && pos_types[b] == LL
        && pos_carets[b].has_left_child
        && !pos_carets[e].has_left_child
}

/// `x0^-1 x1 x1`, the three-step way out of the ball `B(|w|)` from a dead end.
pub fn escape_word(pair: &TreePair) -> Result<GeneratorWord, DeadEndError> {
    if !is_dead_end(pair) {
        return Err(DeadEndError::NotDeadEnd(NormalForm::from_tree_pair(pair).to_string()));
    }
    Ok(GeneratorWord(vec![Generator::X0Inv, Generator::X1, Generator::X1]))
}
