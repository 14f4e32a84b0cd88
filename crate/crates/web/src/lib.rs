//! Browser bindings. Each export wraps a plain function returning
//! `Result<String, String>` so the logic is testable off the browser.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use thompson_core::geodesic;
use thompson_core::metric;
use thompson_core::normal_form;
use thompson_core::{NormalForm, Tree, TreePair};

const LEVEL: f64 = 34.0;
const SPACING: f64 = 26.0;
const MARGIN: f64 = 20.0;

fn parse(word: &str) -> Result<NormalForm, String> {
    normal_form::parse(word).map(|p| p.normal_form()).map_err(|e| e.to_string())
}

/// Normal form, word length and the per-caret weights, one per line.
pub fn describe_word(word: &str) -> Result<String, String> {
    let nf = parse(word)?;
    let pair = nf.to_tree_pair();
    let rows = metric::length_breakdown(&pair);
    let mut out = format!("normal form {nf}\ncarets {}\nlength {}\n", pair.caret_count(), metric::word_length(&pair));
    for r in rows {
        let _ = writeln!(out, "{}: ({}, {}) -> {}", r.index, r.negative, r.positive, r.weight);
    }
    Ok(out)
}

/// Minimal word in `a A b B` for a strictly positive or negative element.
pub fn shortest_word(word: &str) -> Result<String, String> {
    let nf = parse(word)?;
    geodesic::nested_traversal_word(&nf)
        .map(|w| w.to_letters())
        .map_err(|e| e.to_string())
}

struct Layout {
    svg: String,
    next_leaf: usize,
    next_caret: usize,
}

impl Layout {
    /// Draws `t` with its top at depth `depth`, returning the node position.
    fn draw(&mut self, t: &Tree, depth: usize, x0: f64, types: &[thompson_core::CaretType]) -> (f64, f64) {
        let y = MARGIN + depth as f64 * LEVEL;
        match t {
            Tree::Leaf => {
                let x = x0 + self.next_leaf as f64 * SPACING;
                self.next_leaf += 1;
                let _ = writeln!(self.svg, r#"<circle cx="{x}" cy="{y}" r="2.5"/>"#);
                (x, y)
            }
            Tree::Caret(l, r) => {
                let left = self.draw(l, depth + 1, x0, types);
                let index = self.next_caret;
                self.next_caret += 1;
                let right = self.draw(r, depth + 1, x0, types);
                let x = (left.0 + right.0) / 2.0;
                for (cx, cy) in [left, right] {
                    let _ = writeln!(self.svg, r#"<line x1="{x}" y1="{y}" x2="{cx}" y2="{cy}"/>"#);
                }
                let _ = writeln!(
                    self.svg,
                    r#"<text x="{x}" y="{}" text-anchor="middle">{index}:{}</text>"#,
                    y - 6.0,
                    types[index]
                );
                (x, y)
            }
        }
    }
}

fn depth(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Caret(l, r) => 1 + depth(l).max(depth(r)),
    }
}

/// Both trees of the reduced pair side by side, carets labelled `index:type`.
pub fn pair_svg(word: &str) -> Result<String, String> {
    let pair: TreePair = parse(word)?.to_tree_pair();
    let leaves = pair.negative().leaf_count();
    let width = (leaves - 1) as f64 * SPACING;
    let height = depth(pair.negative()).max(depth(pair.positive())) as f64 * LEVEL + 2.0 * MARGIN + 10.0;
    let total = 2.0 * width + 4.0 * MARGIN;
    let mut layout = Layout {
        svg: format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{height}" font-size="10" stroke="black" fill="black">"#
        ),
        next_leaf: 0,
        next_caret: 0,
    };
    layout.svg.push('\n');
    for (k, tree) in [pair.negative(), pair.positive()].into_iter().enumerate() {
        layout.next_leaf = 0;
        layout.next_caret = 0;
        let x0 = MARGIN + k as f64 * (width + 2.0 * MARGIN);
        let types = tree.classify();
        layout.svg.push_str(&format!(r#"<g class="{}">"#, ["negative", "positive"][k]));
        layout.svg.push('\n');
        layout.draw(tree, 0, x0, &types);
        layout.svg.push_str("</g>\n");
    }
    layout.svg.push_str("</svg>\n");
    Ok(layout.svg)
}

#[wasm_bindgen]
pub fn describe(word: &str) -> Result<String, JsError> {
    describe_word(word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn render_svg(word: &str) -> Result<String, JsError> {
    pair_svg(word).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn minimal_path(word: &str) -> Result<String, JsError> {
    shortest_word(word).map_err(|e| JsError::new(&e))
}
