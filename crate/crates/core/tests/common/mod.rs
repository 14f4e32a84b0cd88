//! Oracles shared by the integration tests. None of them go through tree
//! pairs for the thing they check.

#![allow(dead_code)]

use thompson_core::normal_form::{Letter, NormalForm, Term};
use thompson_core::{Generator, Tree};

/// Normal form by rewriting with the relations of the infinite presentation:
/// positive letters move left in ascending order, negative letters move right
/// in descending order, then pairs `x_i … x_i^-1` with no `x_{i+1}^{±1}` are
/// removed by conjugation.
pub fn rewrite_normal_form(letters: &[Letter]) -> NormalForm {
    let mut w: Vec<(u32, bool)> = letters.iter().map(|l| (l.index, l.inverse)).collect();
    loop {
        let mut changed = false;
        let mut k = 0;
        while k + 1 < w.len() {
            let ((i, a), (j, b)) = (w[k], w[k + 1]);
            match (a, b) {
                _ if i == j && a != b => {
                    w.drain(k..k + 2);
                    changed = true;
                    k = k.saturating_sub(1);
                    continue;
                }
                // x_j x_i = x_i x_{j+1}
                (false, false) if j < i => {
                    w[k] = (j, false);
                    w[k + 1] = (i + 1, false);
                    changed = true;
                }
                (true, false) if i < j => {
                    // x_i^-1 x_j = x_{j+1} x_i^-1
                    w[k] = (j + 1, false);
                    w[k + 1] = (i, true);
                    changed = true;
                }
                (true, false) if j < i => {
                    // x_i^-1 x_j = x_j x_{i+1}^-1
                    w[k] = (j, false);
                    w[k + 1] = (i + 1, true);
                    changed = true;
                }
                (true, true) if i < j => {
                    // x_i^-1 x_j^-1 = x_{j+1}^-1 x_i^-1
                    w[k] = (j + 1, true);
                    w[k + 1] = (i, true);
                    changed = true;
                }
                _ => {}
            }
            k += 1;
        }
        if changed {
            continue;
        }
        // w is now positives ascending then negatives descending
        let split = w.iter().position(|l| l.1).unwrap_or(w.len());
        let bad = w[..split].iter().rposition(|&(i, _)| {
            w[split..].iter().any(|&(j, _)| j == i) && !w.iter().any(|&(j, _)| j == i + 1)
        });
        let Some(p) = bad else { break };
        let i = w[p].0;
        let q = split + w[split..].iter().position(|&(j, _)| j == i).unwrap();
        for l in &mut w[p + 1..q] {
            debug_assert!(l.0 >= i + 2);
            l.0 -= 1;
        }
        w.remove(q);
        w.remove(p);
    }
    let mut positive: Vec<Term> = Vec::new();
    let mut negative: Vec<Term> = Vec::new();
    for (i, inv) in w {
        let part = if inv { &mut negative } else { &mut positive };
        match part.iter_mut().find(|t| t.index == i) {
            Some(t) => t.exponent += 1,
            None => part.push(Term::new(i, 1)),
        }
    }
    negative.reverse();
    NormalForm::new(positive, negative).expect("rewriting yields a normal form")
}

/// The generator's action on the negative tree as a plain rotation, or `None`
/// when the tree lacks the carets the rotation needs.
pub fn rotate(t: &Tree, g: Generator) -> Option<Tree> {
    use Tree::Caret;
    let c = |l: &Tree, r: &Tree| Tree::caret(l.clone(), r.clone());
    match (g, t) {
        (Generator::X0, Caret(l, cr)) => match &**l {
            Caret(a, b) => Some(c(a, &c(b, cr))),
            _ => None,
        },
        (Generator::X0Inv, Caret(a, r)) => match &**r {
            Caret(b, cr) => Some(c(&c(a, b), cr)),
            _ => None,
        },
        (Generator::X1, Caret(a, r)) => match &**r {
            Caret(rl, d) => match &**rl {
                Caret(b, cc) => Some(c(a, &c(b, &c(cc, d)))),
                _ => None,
            },
            _ => None,
        },
        (Generator::X1Inv, Caret(a, r)) => match &**r {
            Caret(b, rr) => match &**rr {
                Caret(cc, d) => Some(c(a, &c(&c(b, cc), d))),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

/// Letters of a random word in `x_0 … x_{max_index}`.
pub fn letters_from(pairs: &[(u32, bool)]) -> Vec<Letter> {
    pairs.iter().map(|&(index, inverse)| Letter { index, inverse }).collect()
}
