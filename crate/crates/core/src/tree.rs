//! The Bass-Serre tree of the HNN splitting.
//!
//! Vertices are the left cosets `γ·Zⁿ`. Each is named by its canonical
//! transversal word `x^{r₁} t^{ε₁} ··· x^{r_m} t^{ε_m}`, which is exactly the
//! syllable part of the normal form of any element of the coset. Dropping the
//! last syllable gives the neighbor one step closer to the base vertex, so
//! the names form a prefix tree that coincides with the Bass-Serre tree and
//! distances come from longest common prefixes.
//!
//! Edges are oriented so that `u → u·x^r·t` is positive.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::words::{britton_reduce, NormalForm, Sign, Syllable, Word};
use crate::IntVector;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    syllables: Vec<Syllable>,
}

impl Vertex {
    /// The vertex fixed by the vertex group.
    pub fn base() -> Self {
        Vertex::default()
    }

    /// The up-neighbor `t·Zⁿ` of the base vertex.
    pub fn base_up(n: usize) -> Self {
        Vertex {
            syllables: vec![Syllable {
                residue: IntVector::zeros(n),
                sign: Sign::Pos,
            }],
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Distance to the base vertex.
    pub fn depth(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_base(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Neighbor one step closer to the base vertex.
    pub fn parent(&self) -> Option<Vertex> {
        let (_, rest) = self.syllables.split_last()?;
        Some(Vertex {
            syllables: rest.to_vec(),
        })
    }

    /// The syllable leading here from the parent.
    pub fn last_syllable(&self) -> Option<&Syllable> {
        self.syllables.last()
    }

    /// Canonical coset representative as a group element.
    pub fn representative(&self, n: usize) -> NormalForm {
        NormalForm::from_parts(self.syllables.clone(), IntVector::zeros(n))
    }

    pub fn is_parent_of(&self, other: &Vertex) -> bool {
        other.depth() == self.depth() + 1 && other.syllables.starts_with(&self.syllables)
    }

    /// Label such as `x^1·t | x^2·t^-1`; the base vertex is `v`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("v");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if !s.residue.is_zero() {
                if s.residue.dim() == 1 {
                    write!(f, "x^{}·", s.residue[0])?;
                } else {
                    write!(f, "v{}·", s.residue)?;
                }
            }
            f.write_str(if s.sign == Sign::Pos { "t" } else { "t^-1" })?;
        }
        Ok(())
    }
}

/// Canonical vertex `γ·v` for an element in normal form.
pub fn vertex_of(nf: &NormalForm) -> Vertex {
    Vertex {
        syllables: nf.syllables().to_vec(),
    }
}

pub fn vertex_of_word(w: &Word, spec: &GroupSpec) -> Vertex {
    vertex_of(&britton_reduce(w, spec))
}

/// `γ·u`.
pub fn act(gamma: &NormalForm, u: &Vertex, spec: &GroupSpec) -> Vertex {
    let mut nf = gamma.clone();
    for s in &u.syllables {
        nf.mul_x(&s.residue);
        nf.mul_t(s.sign, spec);
    }
    vertex_of(&nf)
}

/// All `|det A| + |det B|` neighbors: `ũ·x^r·t` for `r ∈ Zⁿ/AZⁿ`, then
/// `ũ·x^r·t⁻¹` for `r ∈ Zⁿ/BZⁿ`.
pub fn neighbors(u: &Vertex, spec: &GroupSpec) -> Vec<Vertex> {
    let base = u.representative(spec.n());
    let step = |r: &IntVector, sign: Sign| {
        let mut nf = base.clone();
        nf.mul_x(r);
        nf.mul_t(sign, spec);
        vertex_of(&nf)
    };
    let ups = spec.residues_a().iter().map(|r| step(r, Sign::Pos));
    let downs = spec.residues_b().iter().map(|r| step(r, Sign::Neg));
    ups.chain(downs).collect()
}

fn common_prefix(u: &Vertex, w: &Vertex) -> usize {
    u.syllables
        .iter()
        .zip(&w.syllables)
        .take_while(|(a, b)| a == b)
        .count()
}

pub fn distance(u: &Vertex, w: &Vertex) -> usize {
    u.depth() + w.depth() - 2 * common_prefix(u, w)
}

/// Vertices of the geodesic from `u` to `w`, both ends included.
pub fn geodesic(u: &Vertex, w: &Vertex) -> Vec<Vertex> {
    let c = common_prefix(u, w);
    let mut path: Vec<Vertex> = (c..=u.depth())
        .rev()
        .map(|k| Vertex {
            syllables: u.syllables[..k].to_vec(),
        })
        .collect();
    path.extend((c + 1..=w.depth()).map(|k| Vertex {
        syllables: w.syllables[..k].to_vec(),
    }));
    path
}

/// Orders an edge `{parent, child}` along the positive orientation.
pub fn positive_orientation(parent: &Vertex, child: &Vertex) -> (Vertex, Vertex) {
    debug_assert!(parent.is_parent_of(child));
    match child.last_syllable().map(|s| s.sign) {
        Some(Sign::Neg) => (child.clone(), parent.clone()),
        _ => (parent.clone(), child.clone()),
    }
}

/// An element carrying the base edge `v → t·v` onto the positively oriented
/// edge between `parent` and `child`.
pub fn edge_witness(parent: &Vertex, child: &Vertex, spec: &GroupSpec) -> NormalForm {
    let last = child.last_syllable().expect("child is not the base vertex");
    let mut gamma = parent.representative(spec.n());
    gamma.mul_x(&last.residue);
    if last.sign == Sign::Neg {
        gamma.mul_t(Sign::Neg, spec);
    }
    gamma
}

/// A finite window of the tree around `center`.
#[derive(Clone, Debug)]
pub struct TreeBall {
    pub center: Vertex,
    pub radius: usize,
    /// Sorted by canonical name.
    pub vertices: Vec<Vertex>,
    /// Distance from `center`, parallel to `vertices`.
    pub distances: Vec<usize>,
    /// Index pairs `(closer to center, farther)`.
    pub edges: Vec<(usize, usize)>,
}

impl TreeBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, u: &Vertex) -> Option<usize> {
        self.vertices.binary_search(u).ok()
    }
}

/// Breadth-first enumeration of all vertices within `radius` of `center`.
pub fn ball(
    center: &Vertex,
    radius: usize,
    spec: &GroupSpec,
    max_radius: usize,
) -> Result<TreeBall> {
    if radius > max_radius {
        return Err(Error::Resource {
            requested: radius,
            bound: max_radius,
        });
    }
    let mut seen: HashMap<Vertex, (usize, Option<Vertex>)> = HashMap::new();
    seen.insert(center.clone(), (0, None));
    let mut queue = VecDeque::from([center.clone()]);
    while let Some(u) = queue.pop_front() {
        let d = seen[&u].0;
        if d == radius {
            continue;
        }
        for w in neighbors(&u, spec) {
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), (d + 1, Some(u.clone())));
                queue.push_back(w);
            }
        }
    }
    let mut vertices: Vec<Vertex> = seen.keys().cloned().collect();
    vertices.sort();
    let index: HashMap<&Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let distances = vertices.iter().map(|v| seen[v].0).collect();
    let mut edges: Vec<(usize, usize)> = vertices
        .iter()
        .enumerate()
        .filter_map(|(i, v)| seen[v].1.as_ref().map(|p| (index[p], i)))
        .collect();
    edges.sort();
    Ok(TreeBall {
        center: center.clone(),
        radius,
        vertices,
        distances,
        edges,
    })
}

/// Graphviz rendering; edges drawn along the positive orientation.
pub fn to_dot(ball: &TreeBall) -> String {
    let mut out = String::from("digraph bass_serre {\n  node [shape=circle, fontsize=10];\n");
    for (i, v) in ball.vertices.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", v.label()));
    }
    for &(a, b) in &ball.edges {
        let (pa, ch) = (&ball.vertices[a], &ball.vertices[b]);
        let (tail, _) = positive_orientation_loose(pa, ch);
        let (from, to) = if tail == *pa { (a, b) } else { (b, a) };
        out.push_str(&format!("  n{from} -> n{to};\n"));
    }
    out.push_str("}\n");
    out
}

/// Like [`positive_orientation`] for any adjacent pair.
pub fn positive_orientation_loose(u: &Vertex, w: &Vertex) -> (Vertex, Vertex) {
    if u.is_parent_of(w) {
        positive_orientation(u, w)
    } else {
        positive_orientation(w, u)
    }
}

/// One CSV row per edge: `(parent, child, direction, residue)`.
pub fn edge_rows(ball: &TreeBall) -> Vec<[String; 4]> {
    ball.edges
        .iter()
        .map(|&(a, b)| {
            let (pa, ch) = (&ball.vertices[a], &ball.vertices[b]);
            // BFS parent may sit deeper than the child when the centre is not v
            let (p, c) = if pa.is_parent_of(ch) {
                (pa, ch)
            } else {
                (ch, pa)
            };
            let s = c.last_syllable().expect("child has a syllable");
            let residue = if s.residue.dim() == 1 {
                s.residue[0].to_string()
            } else {
                s.residue.to_string()
            };
            [p.label(), c.label(), s.sign.value().to_string(), residue]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bs, make_matrix_group};
    use crate::words::{nf_multiply, parse_word};
    use crate::IntMatrix;

    fn bs23() -> GroupSpec {
        make_bs(2, 3).unwrap()
    }

    fn nf(s: &str, g: &GroupSpec) -> NormalForm {
        britton_reduce(&parse_word(s, g).unwrap(), g)
    }

    fn vx(s: &str, g: &GroupSpec) -> Vertex {
        vertex_of(&nf(s, g))
    }

    #[test]
    fn vertex_examples() {
        let g = bs23();
        assert!(vx("x^5", &g).is_base());
        let v = vx("x^3 t", &g);
        assert_eq!(v.label(), "x^1·t");
        assert_eq!(v, vx("x t", &g));
        // x^3 t G = x t G iff t^-1 x^2 t lies in G
        assert!(nf("t^-1 x^-1 x^3 t", &g).in_vertex_group());

        let v = vx("t x t^-1", &g);
        assert_eq!(v.label(), "t | x^1·t^-1");
        assert_eq!(v.depth(), 2);
    }

    #[test]
    fn neighbor_counts() {
        let g = bs23();
        let nb = neighbors(&Vertex::base(), &g);
        let labels: Vec<String> = nb.iter().map(Vertex::label).collect();
        assert_eq!(labels, ["t", "x^1·t", "t^-1", "x^1·t^-1", "x^2·t^-1"]);

        let asc = make_matrix_group(
            IntMatrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap(),
            IntMatrix::identity(2),
        )
        .unwrap();
        assert_eq!(neighbors(&Vertex::base(), &asc).len(), 5);
        assert_eq!(neighbors(&Vertex::base(), &make_bs(1, 1).unwrap()).len(), 2);
    }

    #[test]
    fn neighbors_are_distinct_adjacent_and_symmetric() {
        let g = bs23();
        let b = ball(&Vertex::base(), 2, &g, 8).unwrap();
        for u in &b.vertices {
            let nb = neighbors(u, &g);
            assert_eq!(nb.len(), 5);
            for (i, w) in nb.iter().enumerate() {
                assert_eq!(distance(u, w), 1);
                assert!(nb[i + 1..].iter().all(|x| x != w));
                assert!(neighbors(w, &g).contains(u));
            }
        }
    }

    #[test]
    fn ball_sizes() {
        let g = bs23();
        assert_eq!(
            ball(&Vertex::base(), 0, &g, 8).unwrap().vertices,
            vec![Vertex::base()]
        );
        assert_eq!(ball(&Vertex::base(), 1, &g, 8).unwrap().len(), 6);
        assert_eq!(ball(&Vertex::base(), 2, &g, 8).unwrap().len(), 26);
        assert_eq!(
            ball(&Vertex::base(), 5, &make_bs(1, 1).unwrap(), 8)
                .unwrap()
                .len(),
            11
        );
        assert!(matches!(
            ball(&Vertex::base(), 9, &g, 8),
            Err(Error::Resource {
                requested: 9,
                bound: 8
            })
        ));
    }

    #[test]
    fn distance_and_geodesic() {
        let g = bs23();
        let u = vx("t x t", &g);
        assert_eq!(distance(&Vertex::base(), &u), 2);
        assert_eq!(distance(&u, &u), 0);
        let w = vx("t^-1 x t^-1", &g);
        let path = geodesic(&u, &w);
        assert_eq!(path.len(), distance(&u, &w) + 1);
        assert_eq!(path.first(), Some(&u));
        assert_eq!(path.last(), Some(&w));
        for pair in path.windows(2) {
            assert_eq!(distance(&pair[0], &pair[1]), 1);
        }
    }

    #[test]
    fn action_is_a_homomorphism_and_fixes_base_under_g() {
        let g = bs23();
        let u = vx("t x^2 t^-1 t^-1", &g);
        assert_eq!(act(&NormalForm::identity(1), &u, &g), u);
        for z in -5..=5 {
            assert!(act(
                &NormalForm::from_x(IntVector::from_i64(&[z])),
                &Vertex::base(),
                &g
            )
            .is_base());
        }
        let a = nf("t x^-1 t", &g);
        let b = nf("x t^-1 x^2", &g);
        assert_eq!(
            act(&nf_multiply(&a, &b, &g), &u, &g),
            act(&a, &act(&b, &u, &g), &g)
        );
    }

    #[test]
    fn edge_witnesses_carry_the_base_edge() {
        let g = bs23();
        let b = ball(&Vertex::base(), 3, &g, 8).unwrap();
        let up = Vertex::base_up(1);
        for &(i, j) in &b.edges {
            let (p, c) = (&b.vertices[i], &b.vertices[j]);
            let gamma = edge_witness(p, c, &g);
            let expect = positive_orientation(p, c);
            assert_eq!(
                (act(&gamma, &Vertex::base(), &g), act(&gamma, &up, &g)),
                expect
            );
        }
    }

    #[test]
    fn dot_and_csv_exports() {
        let g = bs23();
        let b = ball(&Vertex::base(), 1, &g, 8).unwrap();
        let dot = to_dot(&b);
        assert!(dot.starts_with("digraph bass_serre {"));
        assert_eq!(dot.matches("->").count(), 5);
        assert!(dot.contains("[label=\"x^2·t^-1\"]"));
        let rows = edge_rows(&b);
        assert_eq!(rows.len(), 5);
        assert!(rows.contains(&["v".into(), "x^2·t^-1".into(), "-1".into(), "2".into()]));
    }
}
