//! Words in the generators and their Britton normal forms.
//!
//! A [`NormalForm`] is stored as `x^{r₁} t^{ε₁} x^{r₂} t^{ε₂} ··· x^{r_m} t^{ε_m} x^{g}`
//! where every `rᵢ` is the canonical residue of the lattice that its following
//! stable letter requires (`A·Zⁿ` before `t`, `B·Zⁿ` before `t⁻¹`) and `g` is
//! arbitrary. Read as the alternating sequence `(z₀, [(ε₁, z₁), …, (ε_m, z_m)])`
//! this is pinch-free, and it is unique: equal group elements have equal
//! normal forms, so the type's `Eq`/`Hash` decide the word problem.

mod parse;
pub mod rewrite;

pub use parse::parse_word;

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::presentation::GroupSpec;
use crate::IntVector;

/// Exponent of a stable letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `x^z`, an element of the vertex group `Zⁿ`.
    X(IntVector),
    /// `t^ε`
    T(Sign),
}

/// A raw, unreduced product of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the exponents of `t`.
    pub fn t_exponent_sum(&self) -> i64 {
        self.0
            .iter()
            .map(|l| match l {
                Letter::T(s) => s.value(),
                Letter::X(_) => 0,
            })
            .sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// The formal inverse: letters reversed and inverted.
    pub fn inverse(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::X(z) => Letter::X(-z),
                    Letter::T(s) => Letter::T(-*s),
                })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l {
                Letter::X(z) => write_x(f, z)?,
                Letter::T(s) => write_t(f, *s)?,
            }
        }
        Ok(())
    }
}

fn write_x(f: &mut impl fmt::Write, z: &IntVector) -> fmt::Result {
    if z.dim() == 1 {
        write!(f, "x^{}", z[0])
    } else {
        write!(f, "v{z}")
    }
}

fn write_t(f: &mut impl fmt::Write, s: Sign) -> fmt::Result {
    match s {
        Sign::Pos => f.write_str("t"),
        Sign::Neg => f.write_str("t^-1"),
    }
}

/// One `x^{r} t^{ε}` block of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub residue: IntVector,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    syllables: Vec<Syllable>,
    tail: IntVector,
}

impl NormalForm {
    pub fn identity(n: usize) -> Self {
        NormalForm {
            syllables: Vec::new(),
            tail: IntVector::zeros(n),
        }
    }

    /// The element `x^z` of the vertex group.
    pub fn from_x(z: IntVector) -> Self {
        NormalForm {
            syllables: Vec::new(),
            tail: z,
        }
    }

    pub(crate) fn from_parts(syllables: Vec<Syllable>, tail: IntVector) -> Self {
        NormalForm { syllables, tail }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Trailing vertex-group factor `x^g`.
    pub fn tail(&self) -> &IntVector {
        &self.tail
    }

    /// Number of stable letters, minimal over all words for the element.
    pub fn t_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn t_exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|s| s.sign.value()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_zero()
    }

    /// Whether the element lies in the vertex group `Zⁿ`.
    pub fn in_vertex_group(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Right multiplication by `x^z`.
    pub fn mul_x(&mut self, z: &IntVector) {
        self.tail.add_assign_ref(z);
    }

    /// Right multiplication by `t^ε`.
    ///
    /// The tail `g` is split against the lattice that `t^ε` needs
    /// (`g = A·h + r` for `t`, `g = B·h + r` for `t⁻¹`). A zero residue
    /// directly after `t^{-ε}` is a pinch and collapses the last syllable;
    /// otherwise a new syllable is opened and the carry moves past `t^ε`.
    pub fn mul_t(&mut self, sign: Sign, spec: &GroupSpec) {
        let (split, carry_matrix) = match sign {
            Sign::Pos => (spec.lattice_a(), spec.b()),
            Sign::Neg => (spec.lattice_b(), spec.a()),
        };
        let (r, h) = split.decompose_unchecked(&self.tail);
        let carry = carry_matrix.apply_unchecked(&h);
        let pinch = r.is_zero() && self.syllables.last().is_some_and(|s| s.sign == -sign);
        if pinch {
            let last = self.syllables.pop().expect("checked above");
            self.tail = &last.residue + &carry;
        } else {
            self.syllables.push(Syllable { residue: r, sign });
            self.tail = carry;
        }
    }

    pub fn mul_letter(&mut self, letter: &Letter, spec: &GroupSpec) {
        match letter {
            Letter::X(z) => self.mul_x(z),
            Letter::T(s) => self.mul_t(*s, spec),
        }
    }

    /// The normal form spelled out as letters, dropping `x^0`.
    pub fn to_word(&self) -> Word {
        let mut out = Vec::with_capacity(2 * self.syllables.len() + 1);
        for s in &self.syllables {
            if !s.residue.is_zero() {
                out.push(Letter::X(s.residue.clone()));
            }
            out.push(Letter::T(s.sign));
        }
        if !self.tail.is_zero() {
            out.push(Letter::X(self.tail.clone()));
        }
        Word(out)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Reduces `w` to its normal form, left to right.
///
/// This is leftmost-innermost rewriting: `x`-letters merge into the running
/// tail, `t^ε t^{-ε}` cancels as a pinch with zero middle, and each pinch
/// removes two stable letters.
pub fn britton_reduce(w: &Word, spec: &GroupSpec) -> NormalForm {
    let mut nf = NormalForm::identity(spec.n());
    for l in w.letters() {
        nf.mul_letter(l, spec);
    }
    nf
}

/// Whether `w` represents the identity.
pub fn word_problem(w: &Word, spec: &GroupSpec) -> bool {
    britton_reduce(w, spec).is_identity()
}

pub fn nf_multiply(u: &NormalForm, w: &NormalForm, spec: &GroupSpec) -> NormalForm {
    let mut out = u.clone();
    for s in &w.syllables {
        out.mul_x(&s.residue);
        out.mul_t(s.sign, spec);
    }
    out.mul_x(&w.tail);
    out
}

pub fn nf_invert(u: &NormalForm, spec: &GroupSpec) -> NormalForm {
    let mut out = NormalForm::identity(spec.n());
    out.mul_x(&-&u.tail);
    for s in u.syllables.iter().rev() {
        out.mul_t(-s.sign, spec);
        out.mul_x(&-&s.residue);
    }
    out
}

/// The generating letters `x₁^{±1}, …, xₙ^{±1}, t^{±1}` in a fixed order.
pub fn generators(spec: &GroupSpec) -> Vec<Letter> {
    let n = spec.n();
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        let e = IntVector::unit(n, i);
        out.push(Letter::X(e.clone()));
        out.push(Letter::X(-&e));
    }
    out.push(Letter::T(Sign::Pos));
    out.push(Letter::T(Sign::Neg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bs, make_matrix_group};
    use crate::IntMatrix;

    fn bs23() -> GroupSpec {
        make_bs(2, 3).unwrap()
    }

    fn reduce(text: &str, spec: &GroupSpec) -> NormalForm {
        britton_reduce(&parse_word(text, spec).unwrap(), spec)
    }

    #[test]
    fn stable_relation_pinches() {
        let g = bs23();
        assert_eq!(reduce("t x^3 t^-1", &g).to_string(), "x^2");
        let nf = reduce("t x^2 t^-1", &g);
        assert_eq!(nf.t_length(), 2);
        assert_eq!(nf.to_string(), "t x^2 t^-1");
        assert_eq!(reduce("t^-1 x^4 t", &g).to_string(), "x^6");
        assert!(reduce("x^2 t x^-3 t^-1", &g).is_identity());
    }

    #[test]
    fn word_problem_examples() {
        let g = bs23();
        let wp = |s: &str| word_problem(&parse_word(s, &g).unwrap(), &g);
        assert!(wp("x^2 t x^-3 t^-1"));
        assert!(!wp("t"));
        assert!(!wp("t x t^-1 x^-1"));
        assert_eq!(reduce("t x t^-1 x^-1", &g).t_length(), 2);
    }

    #[test]
    fn multiply_and_invert() {
        let g = bs23();
        let x = reduce("x", &g);
        let xi = reduce("x^-1", &g);
        assert!(nf_multiply(&x, &xi, &g).is_identity());

        let tx = reduce("t x", &g);
        let inv = nf_invert(&tx, &g);
        assert_eq!(inv, reduce("x^-1 t^-1", &g));
        assert!(nf_multiply(&tx, &inv, &g).is_identity());
        assert_eq!(nf_invert(&inv, &g), tx);
    }

    #[test]
    fn normal_form_is_canonical_across_spellings() {
        let g = bs23();
        // t x^4 = t x^3 x = x^2 t x
        assert_eq!(reduce("t x^4", &g), reduce("x^2 t x", &g));
        // x^3 t^-1 = t^-1 x^2
        assert_eq!(reduce("x^3 t^-1", &g), reduce("t^-1 x^2", &g));
    }

    #[test]
    fn exponents_grow_without_overflow() {
        let g = make_bs(1, 2).unwrap();
        // t^-k x t^k = x^{2^k} in BS(1,2)
        let k = 80;
        let mut w = vec![Letter::T(Sign::Neg); k];
        w.push(Letter::X(IntVector::from_i64(&[1])));
        w.extend(vec![Letter::T(Sign::Pos); k]);
        let nf = britton_reduce(&Word(w), &g);
        assert!(nf.in_vertex_group());
        assert_eq!(nf.tail()[0], num_bigint::BigInt::from(2).pow(k as u32));
    }

    #[test]
    fn ascending_matrix_group() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap();
        let g = make_matrix_group(a, IntMatrix::identity(2)).unwrap();
        // t x^{Bz} t^-1 = x^{Az} with B = I
        let nf = reduce("t v[1,1] t^-1", &g);
        assert_eq!(nf, NormalForm::from_x(IntVector::from_i64(&[3, 2])));
        assert_eq!(reduce("v[3,2] t v[-1,-1] t^-1", &g).to_string(), "1");
        assert!(!reduce("t^-1 v[1,0] t", &g).in_vertex_group());
    }

    #[test]
    fn t_exponent_sum_survives_reduction() {
        let g = bs23();
        for s in ["t x^3 t^-1 t t", "x t^-1 x^5 t x^-2 t^-1", "t t^-1 t^-1"] {
            let w = parse_word(s, &g).unwrap();
            assert_eq!(britton_reduce(&w, &g).t_exponent_sum(), w.t_exponent_sum());
        }
    }
}
