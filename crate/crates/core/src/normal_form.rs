//! Words in the infinite presentation and their unique normal form.
//!
//! The grammar is `word := ε | term (WS term)*`, `term := "x" digits ["^" ["-"] digits]`.
//! The literal `1` is also accepted for the identity, and is how the identity
//! normal form renders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{self, TreePair};
use crate::tree::Tree;

/// `x_index^exponent` with a positive exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Term {
    pub index: u32,
    pub exponent: u32,
}

impl Term {
    pub fn new(index: u32, exponent: u32) -> Term {
        Term { index, exponent }
    }
}

/// The unique normal form `x_{i1}^{r1} … x_{ik}^{rk} x_{jl}^{-sl} … x_{j1}^{-s1}`.
///
/// Both parts are stored with ascending indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct NormalForm {
    positive: Vec<Term>,
    negative: Vec<Term>,
}

/// A letter `x_index^{±1}` of the infinite generating set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub index: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A free word over `{x_0, x_1, …}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct InfiniteWord {
    pub letters: Vec<Letter>,
}

/// Result of parsing word text.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Parsed {
    Normal(NormalForm),
    Word(InfiniteWord),
}

impl Parsed {
    pub fn into_word(self) -> InfiniteWord {
        match self {
            Parsed::Normal(nf) => nf.to_word(),
            Parsed::Word(w) => w,
        }
    }

    /// Normal form of the parsed element, normalizing if needed.
    pub fn normal_form(self) -> NormalForm {
        match self {
            Parsed::Normal(nf) => nf,
            Parsed::Word(w) => normalize(&w),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WordError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("not in normal form: {0}")]
    NotNormalForm(String),
}

// Guards the expansion of `x_i^e` into letters.
const MAX_EXPONENT: u32 = 1 << 16;
const MAX_INDEX: u32 = 1 << 16;

/// One `x_i^e` syllable as written, `e != 0` not guaranteed.
#[derive(Clone, Copy, Debug)]
struct Syllable {
    index: u32,
    exponent: i64,
}

fn syntax(position: usize, message: impl Into<String>) -> WordError {
    WordError::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Syllable>, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    let digits = |pos: &mut usize| -> Option<(u64, usize)> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return None;
        }
        text[start..*pos].parse::<u64>().ok().map(|v| (v, start))
    };
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(out);
    }
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            return Ok(out);
        }
        if bytes[pos] != b'x' {
            return Err(syntax(pos, format!("expected `x`, found `{}`", text[pos..].chars().next().unwrap())));
        }
        pos += 1;
        let (index, at) = digits(&mut pos).ok_or_else(|| syntax(pos, "expected generator index"))?;
        if index > MAX_INDEX as u64 {
            return Err(syntax(at, "generator index too large"));
        }
        let mut exponent = 1i64;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let negative = pos < bytes.len() && bytes[pos] == b'-';
            if negative {
                pos += 1;
            }
            let (value, at) = digits(&mut pos).ok_or_else(|| syntax(pos, "expected exponent"))?;
            if value > MAX_EXPONENT as u64 {
                return Err(syntax(at, "exponent too large"));
            }
            exponent = if negative { -(value as i64) } else { value as i64 };
        }
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(syntax(pos, "expected whitespace between terms"));
        }
        out.push(Syllable {
            index: index as u32,
            exponent,
        });
    }
}

/// Reads syllables as a normal form if they have normal-form shape.
fn as_normal_form(syllables: &[Syllable]) -> Result<NormalForm, String> {
    let split = syllables.iter().position(|s| s.exponent < 0).unwrap_or(syllables.len());
    let (pos, neg) = syllables.split_at(split);
    if syllables.iter().any(|s| s.exponent == 0) {
        return Err("zero exponent".into());
    }
    if neg.iter().any(|s| s.exponent > 0) {
        return Err("positive term after a negative term".into());
    }
    if pos.windows(2).any(|w| w[0].index >= w[1].index) {
        return Err("positive indices must strictly increase".into());
    }
    if neg.windows(2).any(|w| w[0].index <= w[1].index) {
        return Err("negative indices must strictly decrease".into());
    }
    let positive = pos.iter().map(|s| Term::new(s.index, s.exponent as u32)).collect();
    let negative = neg
        .iter()
        .rev()
        .map(|s| Term::new(s.index, s.exponent.unsigned_abs() as u32))
        .collect();
    NormalForm::new(positive, negative).map_err(|e| match e {
        WordError::NotNormalForm(m) => m,
        other => other.to_string(),
    })
}

/// Parses word text. The result is a [`Parsed::Normal`] exactly when the text
/// is already a valid unique normal form.
pub fn parse(text: &str) -> Result<Parsed, WordError> {
    let syllables = lex(text)?;
    match as_normal_form(&syllables) {
        Ok(nf) => Ok(Parsed::Normal(nf)),
        Err(_) => {
            let mut letters = Vec::new();
            for s in syllables {
                let letter = Letter {
                    index: s.index,
                    inverse: s.exponent < 0,
                };
                letters.extend(std::iter::repeat(letter).take(s.exponent.unsigned_abs() as usize));
            }
            Ok(Parsed::Word(InfiniteWord { letters }))
        }
    }
}

impl FromStr for NormalForm {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        as_normal_form(&lex(s)?).map_err(WordError::NotNormalForm)
    }
}

impl FromStr for InfiniteWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(parse(s)?.into_word())
    }
}

impl NormalForm {
    /// Builds a normal form from ascending parts, checking every invariant.
    pub fn new(positive: Vec<Term>, negative: Vec<Term>) -> Result<NormalForm, WordError> {
        for part in [&positive, &negative] {
            if part.iter().any(|t| t.exponent == 0) {
                return Err(WordError::NotNormalForm("zero exponent".into()));
            }
            if part.windows(2).any(|w| w[0].index >= w[1].index) {
                return Err(WordError::NotNormalForm("indices must strictly increase within a part".into()));
            }
        }
        let nf = NormalForm { positive, negative };
        if let Some(i) = nf.uniqueness_violation() {
            return Err(WordError::NotNormalForm(format!(
                "x{i} occurs with both signs but x{} does not occur",
                i + 1
            )));
        }
        Ok(nf)
    }

    pub fn identity() -> NormalForm {
        NormalForm::default()
    }

    pub fn is_identity(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    /// Ascending `(index, exponent)` terms of the positive part.
    pub fn positive(&self) -> &[Term] {
        &self.positive
    }

    /// Ascending `(index, exponent)` terms of the negative part.
    pub fn negative(&self) -> &[Term] {
        &self.negative
    }

    fn occurs(&self, index: u32) -> bool {
        self.positive.iter().chain(&self.negative).any(|t| t.index == index)
    }

    fn uniqueness_violation(&self) -> Option<u32> {
        self.positive
            .iter()
            .map(|t| t.index)
            .find(|&i| self.negative.iter().any(|t| t.index == i) && !self.occurs(i + 1))
    }

    pub fn inverse(&self) -> NormalForm {
        NormalForm {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }

    /// Number of letters in the infinite presentation.
    pub fn infinite_length(&self) -> u64 {
        self.positive.iter().chain(&self.negative).map(|t| t.exponent as u64).sum()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.positive.is_empty() && !self.negative.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.negative.is_empty() && !self.positive.is_empty()
    }

    /// Exponent of each leaf for a part, indexed by leaf number.
    pub(crate) fn exponent_vector(part: &[Term]) -> Vec<u32> {
        let len = part.last().map_or(0, |t| t.index as usize + 1);
        let mut v = vec![0; len];
        for t in part {
            v[t.index as usize] = t.exponent;
        }
        v
    }

    pub(crate) fn part_from_exponents(exps: &[u32]) -> Vec<Term> {
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| Term::new(i as u32, e))
            .collect()
    }

    pub fn to_word(&self) -> InfiniteWord {
        let mut letters = Vec::new();
        for t in &self.positive {
            letters.extend(std::iter::repeat(Letter { index: t.index, inverse: false }).take(t.exponent as usize));
        }
        for t in self.negative.iter().rev() {
            letters.extend(std::iter::repeat(Letter { index: t.index, inverse: true }).take(t.exponent as usize));
        }
        InfiniteWord { letters }
    }

    /// The reduced tree pair with this normal form.
    pub fn to_tree_pair(&self) -> TreePair {
        let negative = Tree::from_exponents(&Self::exponent_vector(&self.negative));
        let positive = Tree::from_exponents(&Self::exponent_vector(&self.positive));
        let n = negative.caret_count().max(positive.caret_count());
        let negative = negative.pad_right(n - negative.caret_count());
        let positive = positive.pad_right(n - positive.caret_count());
        let pair = TreePair::from_trees(negative, positive).expect("padded trees have equal caret counts");
        let reduced = pair.reduced();
        debug_assert_eq!(reduced, pair, "normal form {self} produced an unreduced pair");
        reduced
    }

    pub fn from_tree_pair(pair: &TreePair) -> NormalForm {
        NormalForm {
            positive: Self::part_from_exponents(&pair.positive().leaf_exponents()),
            negative: Self::part_from_exponents(&pair.negative().leaf_exponents()),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::take(&mut first) {
                f.write_str(" ")?;
            }
            Ok(())
        };
        for t in &self.positive {
            sep(f)?;
            match t.exponent {
                1 => write!(f, "x{}", t.index)?,
                e => write!(f, "x{}^{}", t.index, e)?,
            }
        }
        for t in self.negative.iter().rev() {
            sep(f)?;
            write!(f, "x{}^-{}", t.index, t.exponent)?;
        }
        Ok(())
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.inverse {
                write!(f, "x{}^-1", l.index)?;
            } else {
                write!(f, "x{}", l.index)?;
            }
        }
        Ok(())
    }
}

/// Tree pair of the single letter `x_i^{±1}`.
pub fn letter_pair(letter: Letter) -> TreePair {
    let term = vec![Term::new(letter.index, 1)];
    let nf = if letter.inverse {
        NormalForm::new(Vec::new(), term)
    } else {
        NormalForm::new(term, Vec::new())
    };
    nf.expect("a single letter is a normal form").to_tree_pair()
}

/// Unique normal form of a word, by multiplying letter tree pairs in order.
pub fn normalize(word: &InfiniteWord) -> NormalForm {
    let pair = word
        .letters
        .iter()
        .fold(TreePair::identity(), |acc, &l| group::multiply(&acc, &letter_pair(l)));
    NormalForm::from_tree_pair(&pair)
}
