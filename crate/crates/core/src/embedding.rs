//! Finite checks of the combined map `γ ↦ (γ acting on the tree, j_affine(γ))`.
//!
//! Balls are taken in the word metric for the letters `x_i^{±1}, t^{±1}` and
//! deduplicated by normal form. On each ball we verify that the combined map
//! has trivial kernel, that the stabilizer of the base vertex is exactly the
//! vertex group, and we tabulate sublevel-set counts as evidence of properness.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::affine::{j_affine, AffineElement};
use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::tree::{act, Vertex};
use crate::words::{generators, NormalForm};

/// Upper limits on enumeration radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_word_length: usize,
    pub max_tree_radius: usize,
}

impl Bounds {
    /// 12 for `n = 1`, 8 otherwise.
    pub fn for_spec(spec: &GroupSpec) -> Self {
        let l = if spec.n() == 1 { 12 } else { 8 };
        Bounds {
            max_word_length: l,
            max_tree_radius: l,
        }
    }

    pub fn uniform(limit: usize) -> Self {
        Bounds {
            max_word_length: limit,
            max_tree_radius: limit,
        }
    }
}

/// All elements of word length at most `radius`, in breadth-first order.
#[derive(Clone, Debug)]
pub struct GroupBall {
    pub radius: usize,
    elements: Vec<NormalForm>,
    lengths: Vec<usize>,
    index: HashMap<NormalForm, usize>,
}

impl GroupBall {
    pub fn elements(&self) -> &[NormalForm] {
        &self.elements
    }

    /// Word length of `elements()[i]`.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &NormalForm) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &NormalForm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Number of elements of length at most `l`.
    pub fn count_within(&self, l: usize) -> usize {
        self.lengths.partition_point(|&x| x <= l)
    }

    /// Elements of length exactly `l`.
    pub fn sphere(&self, l: usize) -> &[NormalForm] {
        let lo = self.lengths.partition_point(|&x| x < l);
        let hi = self.lengths.partition_point(|&x| x <= l);
        &self.elements[lo..hi]
    }

    /// `k` distinct elements chosen uniformly.
    pub fn sample<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Result<Vec<NormalForm>> {
        if k > self.len() {
            return Err(Error::Input(format!(
                "cannot draw {k} distinct elements from a ball of {}",
                self.len()
            )));
        }
        let mut picks = index::sample(rng, self.len(), k).into_vec();
        picks.sort_unstable();
        Ok(picks
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect())
    }
}

pub fn enumerate_ball(radius: usize, spec: &GroupSpec, bounds: &Bounds) -> Result<GroupBall> {
    if radius > bounds.max_word_length {
        return Err(Error::Resource {
            requested: radius,
            bound: bounds.max_word_length,
        });
    }
    let gens = generators(spec);
    let id = NormalForm::identity(spec.n());
    let mut ball = GroupBall {
        radius,
        elements: vec![id.clone()],
        lengths: vec![0],
        index: HashMap::from([(id, 0)]),
    };
    let mut frontier = 0..1;
    for len in 1..=radius {
        let start = ball.elements.len();
        for i in frontier.clone() {
            for g in &gens {
                let mut next = ball.elements[i].clone();
                next.mul_letter(g, spec);
                if !ball.index.contains_key(&next) {
                    ball.index.insert(next.clone(), ball.elements.len());
                    ball.elements.push(next);
                    ball.lengths.push(len);
                }
            }
        }
        frontier = start..ball.elements.len();
    }
    Ok(ball)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub element: String,
    pub reason: String,
}

/// Outcome of a check over a ball; `violations` is expected to be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub elements: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Trivial kernel: a nontrivial element either moves the base vertex or is
/// a nonzero `x^z` whose affine image is nontrivial.
pub fn check_injectivity(ball: &GroupBall, spec: &GroupSpec) -> CheckReport {
    let base = Vertex::base();
    let mut violations = Vec::new();
    for g in ball.elements().iter().filter(|g| !g.is_identity()) {
        if act(g, &base, spec) != base {
            continue;
        }
        let reason = if !g.in_vertex_group() {
            Some("fixes the base vertex but has stable letters")
        } else if j_affine(g, spec).is_identity() {
            Some("fixes the base vertex and has trivial affine image")
        } else {
            None
        };
        if let Some(reason) = reason {
            violations.push(Violation {
                element: g.to_string(),
                reason: reason.into(),
            });
        }
    }
    violations.sort_by(|a, b| a.element.cmp(&b.element));
    CheckReport {
        check: "injectivity",
        elements: ball.len(),
        violations,
    }
}

/// `{γ : γ·v = v} = {γ : t-length(γ) = 0}` on the ball, both inclusions.
pub fn check_stabilizer(ball: &GroupBall, spec: &GroupSpec) -> CheckReport {
    let base = Vertex::base();
    let mut violations = Vec::new();
    for g in ball.elements() {
        let fixes = act(g, &base, spec) == base;
        let in_g = g.t_length() == 0;
        if fixes != in_g {
            let reason = if fixes {
                "fixes v but has positive t-length"
            } else {
                "has t-length 0 but moves v"
            };
            violations.push(Violation {
                element: g.to_string(),
                reason: reason.into(),
            });
        }
    }
    violations.sort_by(|a, b| a.element.cmp(&b.element));
    CheckReport {
        check: "stabilizer",
        elements: ball.len(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub length: usize,
    pub threshold: u64,
    pub count: usize,
}

/// Counts of `{γ : |γ| ≤ L, d(v, γv) ≤ R, |k(γ)| ≤ R, ‖a(γ)‖∞ ≤ R}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropernessProfile {
    pub max_length: usize,
    pub thresholds: Vec<u64>,
    /// Ordered by threshold, then length.
    pub rows: Vec<ProfileRow>,
    /// Per threshold: the count did not change over the last two lengths.
    pub stabilized: Vec<bool>,
}

impl PropernessProfile {
    pub fn counts(&self, threshold: u64) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.threshold == threshold)
            .map(|r| r.count)
            .collect()
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilized.iter().all(|&s| s)
    }
}

pub fn properness_profile(
    max_length: usize,
    thresholds: &[u64],
    spec: &GroupSpec,
    bounds: &Bounds,
) -> Result<PropernessProfile> {
    let ball = enumerate_ball(max_length, spec, bounds)?;
    let images: Vec<(usize, AffineElement)> = ball
        .elements()
        .iter()
        .map(|g| (g.t_length(), j_affine(g, spec)))
        .collect();

    let mut rows = Vec::new();
    let mut stabilized = Vec::new();
    for &r in thresholds {
        let rq = BigRational::from_integer(BigInt::from(r));
        let mut per_len = vec![0usize; max_length + 1];
        for (i, (d, e)) in images.iter().enumerate() {
            if (*d as u64) <= r && e.k.unsigned_abs() <= r && e.norm_inf() <= rq {
                per_len[ball.length(i)] += 1;
            }
        }
        let mut acc = 0;
        let counts: Vec<usize> = per_len
            .iter()
            .map(|c| {
                acc += c;
                acc
            })
            .collect();
        let tail = &counts[max_length.saturating_sub(2)..];
        stabilized.push(tail.iter().all(|&c| c == tail[0]));
        rows.extend(counts.iter().enumerate().map(|(l, &count)| ProfileRow {
            length: l,
            threshold: r,
            count,
        }));
    }
    Ok(PropernessProfile {
        max_length,
        thresholds: thresholds.to_vec(),
        rows,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bs, make_matrix_group};
    use crate::words::{britton_reduce, nf_invert, parse_word};
    use crate::IntMatrix;

    fn bounds() -> Bounds {
        Bounds::uniform(12)
    }

    #[test]
    fn small_balls() {
        let g = make_bs(2, 3).unwrap();
        let b0 = enumerate_ball(0, &g, &bounds()).unwrap();
        assert_eq!(b0.len(), 1);
        assert!(b0.elements()[0].is_identity());
        let b1 = enumerate_ball(1, &g, &bounds()).unwrap();
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere(1).len(), 4);
        assert!(matches!(
            enumerate_ball(13, &g, &bounds()),
            Err(Error::Resource {
                requested: 13,
                bound: 12
            })
        ));
    }

    #[test]
    fn balls_grow_and_are_closed_under_inversion() {
        let g = make_bs(2, 3).unwrap();
        let b = enumerate_ball(5, &g, &bounds()).unwrap();
        let mut last = 0;
        for l in 0..=5 {
            assert!(b.count_within(l) > last);
            last = b.count_within(l);
        }
        for x in b.elements() {
            assert!(b.contains(&nf_invert(x, &g)));
        }
    }

    #[test]
    fn single_checks() {
        let g = make_bs(2, 3).unwrap();
        let b = enumerate_ball(4, &g, &bounds()).unwrap();
        assert!(check_injectivity(&b, &g).is_ok());
        assert!(check_stabilizer(&b, &g).is_ok());

        let nf = |s: &str| britton_reduce(&parse_word(s, &g).unwrap(), &g);
        assert_eq!(act(&nf("x^7"), &Vertex::base(), &g), Vertex::base());
        assert!(!j_affine(&nf("x^7"), &g).is_identity());
        assert_ne!(act(&nf("t"), &Vertex::base(), &g), Vertex::base());
        let txt = nf("t x t^-1");
        assert_eq!(txt.t_length(), 2);
        assert_ne!(act(&txt, &Vertex::base(), &g), Vertex::base());
        let p = nf("t x^3 t^-1");
        assert_eq!(p.t_length(), 0);
        assert_eq!(act(&p, &Vertex::base(), &g), Vertex::base());
    }

    #[test]
    fn checks_pass_on_a_matrix_group() {
        let g = make_matrix_group(
            IntMatrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap(),
            IntMatrix::identity(2),
        )
        .unwrap();
        let b = enumerate_ball(3, &g, &bounds()).unwrap();
        assert!(check_injectivity(&b, &g).is_ok());
        assert!(check_stabilizer(&b, &g).is_ok());
    }

    #[test]
    fn profile_shape() {
        let g = make_bs(1, 2).unwrap();
        let p = properness_profile(6, &[0, 1, 3], &g, &bounds()).unwrap();
        assert_eq!(p.counts(0), vec![1; 7]);
        assert!(p.stabilized[0]);
        for &r in &[1, 3] {
            let c = p.counts(r);
            assert!(c.windows(2).all(|w| w[0] <= w[1]));
        }
        let c1 = p.counts(1);
        let c3 = p.counts(3);
        assert!(c1.iter().zip(&c3).all(|(a, b)| a <= b));
    }

    #[test]
    fn sampling_is_distinct() {
        use rand::SeedableRng;
        let g = make_bs(2, 3).unwrap();
        let b = enumerate_ball(4, &g, &bounds()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s = b.sample(40, &mut rng).unwrap();
        let uniq: std::collections::HashSet<_> = s.iter().collect();
        assert_eq!(uniq.len(), 40);
        assert!(b.sample(b.len() + 1, &mut rng).is_err());
    }
}
