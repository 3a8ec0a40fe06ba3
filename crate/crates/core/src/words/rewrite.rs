//! Explicit rewriting with a choice of redex.
//!
//! [`britton_reduce`](super::britton_reduce) streams letters into a normal
//! form. This module instead rewrites a raw letter list in place, picking the
//! leftmost or rightmost applicable rule each step, and only afterwards moves
//! vertex-group factors into canonical position. Comparing the two strategies
//! probes that the normal form does not depend on the order of rewriting.

use super::{Letter, NormalForm, Syllable, Word};
use crate::presentation::GroupSpec;
use crate::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Result of rewriting to a pinch-free word, before canonicalisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewritten {
    pub word: Word,
    /// Pinches applied, counting `t^ε t^{-ε}` cancellations.
    pub pinches: usize,
}

enum Rule {
    DropZero,
    Merge,
    Pinch(IntVector),
}

/// The rule applicable at position `i`, if any.
fn rule_at(letters: &[Letter], i: usize, spec: &GroupSpec) -> Option<Rule> {
    match &letters[i] {
        Letter::X(z) if z.is_zero() => Some(Rule::DropZero),
        Letter::X(_) => matches!(letters.get(i + 1), Some(Letter::X(_))).then_some(Rule::Merge),
        Letter::T(s) => match (letters.get(i + 1), letters.get(i + 2)) {
            (Some(Letter::T(s2)), _) if *s2 == -*s => Some(Rule::Pinch(IntVector::zeros(spec.n()))),
            (Some(Letter::X(g)), Some(Letter::T(s2))) if *s2 == -*s => {
                // t x^{Bh} t^-1 -> x^{Ah};  t^-1 x^{Ah} t -> x^{Bh}
                let (lat, image) = match s {
                    super::Sign::Pos => (spec.lattice_b(), spec.a()),
                    super::Sign::Neg => (spec.lattice_a(), spec.b()),
                };
                let (r, h) = lat.decompose_unchecked(g);
                r.is_zero().then(|| Rule::Pinch(image.apply_unchecked(&h)))
            }
            _ => None,
        },
    }
}

fn apply(letters: &mut Vec<Letter>, i: usize, rule: Rule) {
    match rule {
        Rule::DropZero => {
            letters.remove(i);
        }
        Rule::Merge => {
            let Letter::X(b) = letters.remove(i + 1) else {
                unreachable!()
            };
            let Letter::X(a) = &mut letters[i] else {
                unreachable!()
            };
            a.add_assign_ref(&b);
        }
        Rule::Pinch(image) => {
            let width = if matches!(letters[i + 1], Letter::T(_)) {
                2
            } else {
                3
            };
            letters.splice(i..i + width, [Letter::X(image)]);
        }
    }
}

/// Rewrites until no rule applies.
pub fn rewrite(w: &Word, spec: &GroupSpec, strategy: Strategy) -> Rewritten {
    let mut letters = w.0.clone();
    let mut pinches = 0;
    loop {
        let found = match strategy {
            Strategy::Leftmost => {
                (0..letters.len()).find_map(|i| rule_at(&letters, i, spec).map(|r| (i, r)))
            }
            Strategy::Rightmost => (0..letters.len())
                .rev()
                .find_map(|i| rule_at(&letters, i, spec).map(|r| (i, r))),
        };
        let Some((i, rule)) = found else { break };
        if matches!(rule, Rule::Pinch(_)) {
            pinches += 1;
        }
        apply(&mut letters, i, rule);
    }
    Rewritten {
        word: Word(letters),
        pinches,
    }
}

/// Moves vertex-group factors of a pinch-free word rightward into residue
/// position. Returns `None` if a pinch is encountered (input not reduced).
pub fn canonicalize(w: &Word, spec: &GroupSpec) -> Option<NormalForm> {
    let mut carry = IntVector::zeros(spec.n());
    let mut syllables: Vec<Syllable> = Vec::new();
    for l in w.letters() {
        match l {
            Letter::X(z) => carry.add_assign_ref(z),
            Letter::T(s) => {
                let (lat, other) = match s {
                    super::Sign::Pos => (spec.lattice_a(), spec.b()),
                    super::Sign::Neg => (spec.lattice_b(), spec.a()),
                };
                let (r, h) = lat.decompose_unchecked(&carry);
                if r.is_zero() && syllables.last().is_some_and(|p| p.sign == -*s) {
                    return None;
                }
                syllables.push(Syllable {
                    residue: r,
                    sign: *s,
                });
                carry = other.apply_unchecked(&h);
            }
        }
    }
    Some(NormalForm::from_parts(syllables, carry))
}

/// Rewrite with `strategy`, then canonicalise.
pub fn reduce_with_strategy(w: &Word, spec: &GroupSpec, strategy: Strategy) -> NormalForm {
    let rewritten = rewrite(w, spec, strategy);
    canonicalize(&rewritten.word, spec).expect("rewriting leaves no pinch")
}

/// Identity test that never canonicalises: a pinch-free word is trivial iff
/// it has no stable letters and its `x`-part vanishes.
pub fn is_trivial_by_rewriting(w: &Word, spec: &GroupSpec) -> bool {
    rewrite(w, spec, Strategy::Leftmost).word.is_empty()
}
