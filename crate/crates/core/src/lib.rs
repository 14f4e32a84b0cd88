//! Thompson's group `F` through reduced tree pair diagrams.
//!
//! Elements are [`TreePair`]s. They convert to and from the unique
//! [`NormalForm`] in the infinite presentation, multiply by common
//! refinement, and have their length in the generators `x0, x1` computed
//! exactly from caret types ([`metric::word_length`]). On top of that sit
//! dead-end detection ([`deadend`]), path construction ([`geodesic`]) and a
//! breadth-first Cayley graph oracle ([`oracle`]) used to check all of it.

pub mod deadend;
pub mod geodesic;
pub mod group;
pub mod metric;
pub mod normal_form;
pub mod oracle;
pub mod sample;
pub mod tree;

pub use group::{Generator, TreePair};
pub use normal_form::{InfiniteWord, NormalForm, Parsed};
pub use tree::{CaretType, Tree};

/// Tree pair of a word in either presentation.
pub fn element(text: &str) -> Result<TreePair, normal_form::WordError> {
    Ok(normal_form::parse(text)?.normal_form().to_tree_pair())
}
