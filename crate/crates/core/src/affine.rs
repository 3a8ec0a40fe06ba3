//! The semidirect product `Z ⋉ Qⁿ` and the homomorphism `x^z ↦ (0, z)`,
//! `t ↦ (1, 0)`.
//!
//! Composition is `(k, a)·(k', a') = (k + k', a + Λᵏ·a')` with `Λ = A·B⁻¹`,
//! so the stable relation `t·x^{Bz}·t⁻¹ = x^{Az}` maps to the identity.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::presentation::GroupSpec;
use crate::words::{Letter, NormalForm, Sign, Word};
use crate::RationalVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    /// Height: the `Z`-coordinate, equal to the `t`-exponent sum.
    pub k: i64,
    /// Translation part in `Qⁿ`.
    pub a: RationalVector,
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        AffineElement {
            k: 0,
            a: RationalVector::zeros(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.a.is_zero()
    }

    pub fn translation(a: RationalVector) -> Self {
        AffineElement { k: 0, a }
    }

    pub fn stable(sign: Sign, n: usize) -> Self {
        AffineElement {
            k: sign.value(),
            a: RationalVector::zeros(n),
        }
    }

    /// `max |aᵢ|`, exact.
    pub fn norm_inf(&self) -> BigRational {
        self.a.norm_inf()
    }
}

/// Renders as `(k; a₁, …, aₙ)` with exact rationals.
impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.k)?;
        for (i, c) in self.a.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {c}")?;
        }
        f.write_str(")")
    }
}

pub fn aff_compose(e1: &AffineElement, e2: &AffineElement, spec: &GroupSpec) -> AffineElement {
    let mut a = spec.apply_lambda_pow(e1.k, &e2.a);
    a.add_assign_ref(&e1.a);
    AffineElement { k: e1.k + e2.k, a }
}

/// `(k, a)⁻¹ = (−k, −Λ⁻ᵏ·a)`
pub fn aff_invert(e: &AffineElement, spec: &GroupSpec) -> AffineElement {
    AffineElement {
        k: -e.k,
        a: -&spec.apply_lambda_pow(-e.k, &e.a),
    }
}

fn letter_image(l: &Letter, n: usize) -> AffineElement {
    match l {
        Letter::X(z) => AffineElement::translation(z.to_rational()),
        Letter::T(s) => AffineElement::stable(*s, n),
    }
}

/// Image of a word, folded left to right.
pub fn j_affine_word(w: &Word, spec: &GroupSpec) -> AffineElement {
    let n = spec.n();
    let mut acc = AffineElement::identity(n);
    for l in w.letters() {
        acc = match l {
            // (k, a)·(0, z) = (k, a + Λᵏ z)
            Letter::X(z) => {
                let mut a = spec.apply_lambda_pow(acc.k, &z.to_rational());
                a.add_assign_ref(&acc.a);
                AffineElement { k: acc.k, a }
            }
            Letter::T(s) => AffineElement {
                k: acc.k + s.value(),
                a: acc.a,
            },
        };
    }
    acc
}

/// Image of a word, folded right to left; independent check of the above.
pub fn j_affine_word_rev(w: &Word, spec: &GroupSpec) -> AffineElement {
    let n = spec.n();
    w.letters()
        .iter()
        .rev()
        .fold(AffineElement::identity(n), |acc, l| {
            aff_compose(&letter_image(l, n), &acc, spec)
        })
}

pub fn j_affine(nf: &NormalForm, spec: &GroupSpec) -> AffineElement {
    j_affine_word(&nf.to_word(), spec)
}

/// `‖a‖∞ ≤ bound`, compared exactly.
pub fn within_inf(e: &AffineElement, bound: &BigInt) -> bool {
    e.norm_inf() <= BigRational::from_integer(bound.clone())
}
