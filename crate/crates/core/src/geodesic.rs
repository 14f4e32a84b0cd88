//! Words in the generators `x0, x1` representing a given element.
//!
//! [`replacement_word`] works for any element but is usually not minimal.
//! [`nested_traversal_word`] gives a minimal-length word for strictly
//! positive or strictly negative elements by walking the negative tree in
//! infix order and emitting, per caret type:
//!
//! | type        | before right subtree | after right subtree |
//! |-------------|----------------------|---------------------|
//! | L0, R0      | –                    | –                   |
//! | LL          | `x0^-1`              | –                   |
//! | I0          | `x1^-1`              | –                   |
//! | IR          | `x0^-1`              | `x0 x1^-1`          |
//! | RNI, RI     | `x0^-1`              | `x0`                |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{apply_generator, Generator, TreePair};
use crate::metric::word_length;
use crate::normal_form::{self, NormalForm, WordError};
use crate::tree::{CaretType, Tree};

/// A word over `x0^{±1}, x1^{±1}`; not necessarily freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GeneratorWord(pub Vec<Generator>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeodesicError {
    #[error("nested traversal needs a strictly positive or strictly negative element, got {0}")]
    MixedWord(String),
    #[error(transparent)]
    Parse(#[from] WordError),
    #[error("generator index {0} is not 0 or 1")]
    NotAGenerator(u32),
}

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// Cancels adjacent `g g^-1` pairs until none remain.
    pub fn freely_reduced(&self) -> GeneratorWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        GeneratorWord(out)
    }

    /// Whitespace-separated `a A b B` tokens.
    pub fn to_letters(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::with_capacity(2 * self.0.len());
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push(g.letter());
        }
        s
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(g.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = GeodesicError;

    /// Accepts either `a A b B` tokens or `x0^-1 x1 …` terms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if !tokens.is_empty() && tokens.iter().all(|t| t.len() == 1 && Generator::from_letter(t.as_bytes()[0] as char).is_some()) {
            return Ok(GeneratorWord(
                tokens.iter().filter_map(|t| Generator::from_letter(t.as_bytes()[0] as char)).collect(),
            ));
        }
        let word = normal_form::parse(s)?.into_word();
        word.letters
            .iter()
            .map(|l| match (l.index, l.inverse) {
                (0, false) => Ok(Generator::X0),
                (0, true) => Ok(Generator::X0Inv),
                (1, false) => Ok(Generator::X1),
                (1, true) => Ok(Generator::X1Inv),
                (i, _) => Err(GeodesicError::NotAGenerator(i)),
            })
            .collect::<Result<_, _>>()
            .map(GeneratorWord)
    }
}

/// The element of `word`, multiplying generators left to right from the identity.
pub fn evaluate(word: &GeneratorWord) -> TreePair {
    word.0.iter().fold(TreePair::identity(), |acc, &g| apply_generator(&acc, g))
}

/// True when no shorter word represents the same element.
pub fn is_geodesic_word(word: &GeneratorWord) -> bool {
    word.len() as u64 == word_length(&evaluate(word)) as u64
}

/// Substitutes `x_n^e = x0^-(n-1) x1^e x0^(n-1)` for each letter of the normal
/// form and cancels adjacent inverse pairs.
pub fn replacement_word(nf: &NormalForm) -> GeneratorWord {
    let mut out = Vec::new();
    for letter in nf.to_word().letters {
        let x1 = if letter.inverse { Generator::X1Inv } else { Generator::X1 };
        match letter.index {
            0 => out.push(if letter.inverse { Generator::X0Inv } else { Generator::X0 }),
            n => {
                let conj = (n - 1) as usize;
                out.extend(std::iter::repeat(Generator::X0Inv).take(conj));
                out.push(x1);
                out.extend(std::iter::repeat(Generator::X0).take(conj));
            }
        }
    }
    GeneratorWord(out).freely_reduced()
}

/// Output of the nested traversal of one tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedTraversal {
    pub word: GeneratorWord,
    /// Caret types in infix order.
    pub types: Vec<CaretType>,
    /// Letters charged to each caret, in infix order. Letters emitted while
    /// building a caret's right subtree are charged to the carets inside it.
    pub letters_per_caret: Vec<usize>,
}

/// Nested traversal of a negative tree: the returned word takes the identity
/// to `(tree, right comb)`.
pub fn nested_traversal(tree: &Tree) -> NestedTraversal {
    use CaretType::*;
    use Generator::*;

    struct Walk {
        types: Vec<CaretType>,
        next: usize,
        word: Vec<Generator>,
        charged: Vec<usize>,
    }

    impl Walk {
        fn visit(&mut self, t: &Tree) {
            let Tree::Caret(l, r) = t else { return };
            self.visit(l);
            let k = self.next;
            self.next += 1;
            let (before, after): (&[Generator], &[Generator]) = match self.types[k] {
                L0 | R0 => (&[], &[]),
                LL => (&[X0Inv], &[]),
                I0 => (&[X1Inv], &[]),
                IR => (&[X0Inv], &[X0, X1Inv]),
                RNI | RI => (&[X0Inv], &[X0]),
            };
            self.word.extend_from_slice(before);
            self.visit(r);
            self.word.extend_from_slice(after);
            self.charged[k] = before.len() + after.len();
        }
    }

    let types = tree.classify();
    let n = types.len();
    let mut walk = Walk {
        types,
        next: 0,
        word: Vec::new(),
        charged: vec![0; n],
    };
    walk.visit(tree);
    NestedTraversal {
        word: GeneratorWord(walk.word),
        types: walk.types,
        letters_per_caret: walk.charged,
    }
}

/// A minimal-length word for a strictly positive or strictly negative element
/// (or the identity). Positive elements use the inverse of the word built
/// for their inverse.
pub fn nested_traversal_word(nf: &NormalForm) -> Result<GeneratorWord, GeodesicError> {
    if nf.is_identity() {
        return Ok(GeneratorWord::default());
    }
    if nf.is_strictly_negative() {
        Ok(nested_traversal(nf.to_tree_pair().negative()).word)
    } else if nf.is_strictly_positive() {
        Ok(nested_traversal_word(&nf.inverse())?.inverse())
    } else {
        Err(GeodesicError::MixedWord(nf.to_string()))
    }
}
