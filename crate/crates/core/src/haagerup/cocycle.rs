//! The edge cocycle of the tree action.
//!
//! `b(γ)` is the signed indicator of the geodesic from `v` to `γ·v`, viewed
//! in the space of finitely supported functions on oriented edges with
//! `f(ē) = −f(e)`. Every edge is stored once, keyed by its endpoint farther
//! from `v`, and its coefficient refers to the direction pointing away from
//! `v`. Then `‖b(γ)‖² = d(v, γ·v)` and `b(γδ) = b(γ) + γ·b(δ)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::presentation::GroupSpec;
use crate::tree::{act, geodesic, vertex_of, Vertex};
use crate::words::{nf_invert, nf_multiply, NormalForm};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleVector {
    coeffs: BTreeMap<Vertex, i64>,
}

impl CocycleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Signed edges of the geodesic from `u` to `w`.
    pub fn path(u: &Vertex, w: &Vertex) -> Self {
        let mut out = Self::zero();
        for pair in geodesic(u, w).windows(2) {
            out.add_edge(&pair[0], &pair[1], 1);
        }
        out
    }

    /// Adds `c` times the oriented edge `from → to` (adjacent vertices).
    pub fn add_edge(&mut self, from: &Vertex, to: &Vertex, c: i64) {
        let (key, c) = if from.is_parent_of(to) {
            (to.clone(), c)
        } else {
            debug_assert!(to.is_parent_of(from), "vertices are not adjacent");
            (from.clone(), -c)
        };
        match self.coeffs.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
    }

    pub fn norm_sq(&self) -> i64 {
        self.coeffs.values().map(|c| c * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// `(from, to, coefficient)` with `from` the endpoint nearer `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, &Vertex, i64)> + '_ {
        self.coeffs.iter().map(|(child, &c)| {
            (
                child.parent().expect("edge key is not the base vertex"),
                child,
                c,
            )
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c, k) in other.edges() {
            out.add_edge(&p, c, k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        CocycleVector {
            coeffs: self.coeffs.iter().map(|(k, &c)| (k.clone(), -c)).collect(),
        }
    }

    /// Push-forward along `γ`: edge `u → w` becomes `γu → γw`.
    pub fn translate(&self, gamma: &NormalForm, spec: &GroupSpec) -> Self {
        let mut out = Self::zero();
        for (p, c, k) in self.edges() {
            out.add_edge(&act(gamma, &p, spec), &act(gamma, c, spec), k);
        }
        out
    }
}

/// `b(γ)`: the geodesic `v → γ·v`, every edge with coefficient `+1`.
pub fn cocycle(gamma: &NormalForm) -> CocycleVector {
    CocycleVector::path(&Vertex::base(), &vertex_of(gamma))
}

/// Exact check of `b(γδ) = b(γ) + γ·b(δ)`.
pub fn cocycle_identity_check(gamma: &NormalForm, delta: &NormalForm, spec: &GroupSpec) -> bool {
    let lhs = cocycle(&nf_multiply(gamma, delta, spec));
    let rhs = cocycle(gamma).add(&cocycle(delta).translate(gamma, spec));
    lhs == rhs
}

/// Exact check of `b(γ⁻¹) = −γ⁻¹·b(γ)`.
pub fn cocycle_inverse_check(gamma: &NormalForm, spec: &GroupSpec) -> bool {
    let inv = nf_invert(gamma, spec);
    cocycle(&inv) == cocycle(gamma).translate(&inv, spec).neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::make_bs;
    use crate::words::{britton_reduce, parse_word};
    use crate::IntVector;

    fn nf(s: &str, g: &GroupSpec) -> NormalForm {
        britton_reduce(&parse_word(s, g).unwrap(), g)
    }

    #[test]
    fn basic_cocycles() {
        let g = make_bs(2, 3).unwrap();
        assert!(cocycle(&NormalForm::from_x(IntVector::from_i64(&[9]))).is_zero());
        let bt = cocycle(&nf("t", &g));
        assert_eq!(bt.norm_sq(), 1);
        let edges: Vec<_> = bt.edges().collect();
        assert_eq!(edges.len(), 1);
        assert!(edges[0].0.is_base());
        assert_eq!(*edges[0].1, Vertex::base_up(1));
        assert_eq!(cocycle(&nf("t x t", &g)).norm_sq(), 2);
    }

    #[test]
    fn cocycle_law_examples() {
        let g = make_bs(2, 3).unwrap();
        let id = NormalForm::identity(1);
        let t = nf("t", &g);
        assert!(cocycle_identity_check(&t, &id, &g));
        assert!(cocycle_identity_check(&id, &t, &g));
        assert!(cocycle_identity_check(&t, &t, &g));
        let b2 = cocycle(&nf("t t", &g));
        assert_eq!(b2.norm_sq(), 2);
        let ray: Vec<String> = b2.edges().map(|(_, c, k)| format!("{c}:{k}")).collect();
        assert_eq!(ray, ["t:1", "t | t:1"]);
        for (a, b) in [
            ("t x t^-1", "t x^-1 t"),
            ("x t^-1 x^2", "t t x"),
            ("t^-1 x t", "t^-1 x^-1 t"),
        ] {
            assert!(
                cocycle_identity_check(&nf(a, &g), &nf(b, &g), &g),
                "{a} / {b}"
            );
            assert!(cocycle_inverse_check(&nf(a, &g), &g));
        }
    }

    #[test]
    fn backtracking_cancels() {
        let g = make_bs(2, 3).unwrap();
        let u = vertex_of(&nf("t x t", &g));
        let there = CocycleVector::path(&Vertex::base(), &u);
        let back = CocycleVector::path(&u, &Vertex::base());
        assert!(there.add(&back).is_zero());
        assert_eq!(back, there.neg());
    }
}
