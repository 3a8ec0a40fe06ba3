//! The HNN datum `(n, A, B)`.
//!
//! The group is `⟨ x₁..xₙ, t | [xᵢ, xⱼ] = 1, t·x^{Bz}·t⁻¹ = x^{Az} ⟩`. For
//! `BS(p, q)` this is `x^p = t·x^q·t⁻¹`, so `A = (p)` and `B = (q)`.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Lattice, Matrix, ResidueSystem, Vector};
use crate::error::{Error, Result};
use crate::{IntMatrix, IntVector, RationalMatrix, RationalVector};

#[derive(Debug)]
struct Inner {
    n: usize,
    a: Lattice,
    b: Lattice,
    residues_a: ResidueSystem,
    residues_b: ResidueSystem,
    lambda: RationalMatrix,
    lambda_inv: RationalMatrix,
    // powers[k] = Λᵏ, inv_powers[k] = Λ⁻ᵏ
    powers: RwLock<Vec<RationalMatrix>>,
    inv_powers: RwLock<Vec<RationalMatrix>>,
}

/// A validated HNN datum. Cheap to clone.
#[derive(Clone, Debug)]
pub struct GroupSpec(Arc<Inner>);

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.a() == other.a() && self.b() == other.b()
    }
}

impl Eq for GroupSpec {}

impl GroupSpec {
    pub fn n(&self) -> usize {
        self.0.n
    }

    /// The matrix realising `i₂` (the image side of the stable relation).
    pub fn a(&self) -> &IntMatrix {
        self.0.a.matrix()
    }

    /// The matrix realising `i₁`.
    pub fn b(&self) -> &IntMatrix {
        self.0.b.matrix()
    }

    pub fn lattice_a(&self) -> &Lattice {
        &self.0.a
    }

    pub fn lattice_b(&self) -> &Lattice {
        &self.0.b
    }

    pub fn index_a(&self) -> BigInt {
        self.0.a.index()
    }

    pub fn index_b(&self) -> BigInt {
        self.0.b.index()
    }

    pub fn residues_a(&self) -> &ResidueSystem {
        &self.0.residues_a
    }

    pub fn residues_b(&self) -> &ResidueSystem {
        &self.0.residues_b
    }

    /// Valence of every vertex of the Bass-Serre tree.
    pub fn tree_degree(&self) -> usize {
        self.0.residues_a.len() + self.0.residues_b.len()
    }

    /// `Λ = A·B⁻¹`, the linear part of `t` acting on `Qⁿ`.
    pub fn lambda(&self) -> &RationalMatrix {
        &self.0.lambda
    }

    pub fn lambda_inv(&self) -> &RationalMatrix {
        &self.0.lambda_inv
    }

    /// The scalar `λ = p/q` when `n = 1`.
    pub fn lambda_scalar(&self) -> Option<BigRational> {
        (self.n() == 1).then(|| self.0.lambda.get(0, 0).clone())
    }

    /// Applies `Λᵏ` to `a`, memoising the matrix powers.
    pub fn apply_lambda_pow(&self, k: i64, a: &RationalVector) -> RationalVector {
        if k == 0 || a.is_zero() {
            return a.clone();
        }
        let (cache, base) = if k > 0 {
            (&self.0.powers, &self.0.lambda)
        } else {
            (&self.0.inv_powers, &self.0.lambda_inv)
        };
        let e = k.unsigned_abs() as usize;
        if self.n() == 1 {
            // scalar fast path, no cache traffic
            let mut s = base.get(0, 0).clone();
            let mut out = BigRational::from_integer(1.into());
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    out *= &s;
                }
                s = &s * &s;
                e >>= 1;
            }
            return Vector::new(vec![out * &a[0]]);
        }
        {
            let powers = cache.read().expect("lambda cache poisoned");
            if let Some(m) = powers.get(e) {
                return m.apply_unchecked(a);
            }
        }
        let mut powers = cache.write().expect("lambda cache poisoned");
        while powers.len() <= e {
            let next = powers
                .last()
                .expect("seeded with identity")
                .mul(base)
                .expect("square");
            powers.push(next);
        }
        powers[e].apply_unchecked(a)
    }

    /// Serialisable form of the datum.
    pub fn to_file(&self) -> SpecFile {
        let rows = |m: &IntMatrix| {
            m.rows()
                .map(|r| {
                    r.iter()
                        .map(|x| x.try_into().expect("entry fits i64"))
                        .collect()
                })
                .collect()
        };
        SpecFile {
            n: self.n(),
            a: rows(self.a()),
            b: rows(self.b()),
        }
    }
}

/// `BS(p, q) = ⟨x, t | x^p = t·x^q·t⁻¹⟩`.
pub fn make_bs(p: i64, q: i64) -> Result<GroupSpec> {
    if p == 0 || q == 0 {
        return Err(Error::Config(format!(
            "BS parameters must be nonzero, got ({p}, {q})"
        )));
    }
    make_matrix_group(Matrix::from_i64(&[&[p]])?, Matrix::from_i64(&[&[q]])?)
}

/// HNN extension of `Zⁿ` with `t·x^{Bz}·t⁻¹ = x^{Az}`.
pub fn make_matrix_group(a: IntMatrix, b: IntMatrix) -> Result<GroupSpec> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: b.dim(),
        });
    }
    let a = Lattice::new(a)?;
    let b = Lattice::new(b)?;
    let lambda = a
        .matrix()
        .to_rational()
        .mul(&b.matrix().inverse_rational()?)?;
    let lambda_inv = lambda.inverse()?;
    let residues_a = a.residues();
    let residues_b = b.residues();
    Ok(GroupSpec(Arc::new(Inner {
        n,
        a,
        b,
        residues_a,
        residues_b,
        powers: RwLock::new(vec![Matrix::identity(n), lambda.clone()]),
        inv_powers: RwLock::new(vec![Matrix::identity(n), lambda_inv.clone()]),
        lambda,
        lambda_inv,
    })))
}

/// On-disk JSON form `{"n": 2, "A": [[2,1],[0,2]], "B": [[1,0],[0,1]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
}

impl SpecFile {
    pub fn build(&self) -> Result<GroupSpec> {
        let to_matrix = |rows: &[Vec<i64>]| {
            if rows.len() != self.n {
                return Err(Error::Dimension {
                    expected: self.n,
                    got: rows.len(),
                });
            }
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
            )
        };
        make_matrix_group(to_matrix(&self.a)?, to_matrix(&self.b)?)
    }
}

impl GroupSpec {
    /// Whether `z ∈ A·Zⁿ`.
    pub fn in_a(&self, z: &IntVector) -> bool {
        self.0.a.contains(z)
    }

    /// Whether `z ∈ B·Zⁿ`.
    pub fn in_b(&self, z: &IntVector) -> bool {
        self.0.b.contains(z)
    }

    /// `|det A| + |det B|` as a big integer (the tree degree).
    pub fn degree_big(&self) -> BigInt {
        self.index_a().abs() + self.index_b().abs()
    }

    /// `Λ = ±I`: the linear part of `t` is an isometry of every `ℓᵖ` norm.
    pub fn lambda_is_signed_identity(&self) -> bool {
        let n = self.n();
        let one = BigRational::from_integer(1.into());
        [one.clone(), -one].iter().any(|c| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let e = self.0.lambda.get(i, j);
                    if i == j {
                        e == c
                    } else {
                        e.is_zero()
                    }
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn bs_constructor() {
        let g = make_bs(2, 3).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(*g.a(), Matrix::from_i64(&[&[2]]).unwrap());
        assert_eq!(*g.b(), Matrix::from_i64(&[&[3]]).unwrap());
        assert_eq!(g.lambda_scalar(), Some(ratio(2, 3)));
        assert_eq!(g.tree_degree(), 5);

        assert_eq!(make_bs(1, 1).unwrap().lambda_scalar(), Some(ratio(1, 1)));
        let asc = make_bs(1, 2).unwrap();
        assert_eq!(asc.lambda_scalar(), Some(ratio(1, 2)));
        assert_eq!(asc.residues_a().len(), 1);
        assert_eq!(asc.residues_b().len(), 2);
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert!(matches!(make_bs(0, 3), Err(Error::Config(_))));
        assert!(matches!(make_bs(2, 0), Err(Error::Config(_))));
    }

    #[test]
    fn matrix_constructor() {
        let a = Matrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap();
        let g = make_matrix_group(a.clone(), Matrix::identity(2)).unwrap();
        assert_eq!(g.tree_degree(), 5);
        assert_eq!(*g.lambda(), a.to_rational());

        let id = make_matrix_group(Matrix::identity(2), Matrix::identity(2)).unwrap();
        assert_eq!(id.tree_degree(), 2);
        assert!(id.lambda_is_signed_identity());

        let scalar = make_matrix_group(
            Matrix::from_i64(&[&[2]]).unwrap(),
            Matrix::from_i64(&[&[3]]).unwrap(),
        )
        .unwrap();
        assert_eq!(scalar, make_bs(2, 3).unwrap());
    }

    #[test]
    fn matrix_constructor_errors() {
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(make_matrix_group(singular, Matrix::identity(2)).is_err());
        assert!(matches!(
            make_matrix_group(Matrix::identity(2), Matrix::identity(3)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn lambda_powers_match_repeated_application() {
        let g = make_matrix_group(
            Matrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap(),
            Matrix::from_i64(&[&[1, 1], &[-1, 2]]).unwrap(),
        )
        .unwrap();
        let a = Vector::new(vec![ratio(1, 3), ratio(-2, 1)]);
        for k in -4i64..=4 {
            let mut expect = a.clone();
            for _ in 0..k.unsigned_abs() {
                let m = if k > 0 { g.lambda() } else { g.lambda_inv() };
                expect = m.apply(&expect).unwrap();
            }
            assert_eq!(g.apply_lambda_pow(k, &a), expect, "k = {k}");
        }
        let s = make_bs(2, 3).unwrap();
        let one = Vector::new(vec![ratio(1, 1)]);
        assert_eq!(s.apply_lambda_pow(3, &one), Vector::new(vec![ratio(8, 27)]));
        assert_eq!(s.apply_lambda_pow(-2, &one), Vector::new(vec![ratio(9, 4)]));
    }

    #[test]
    fn spec_file_round_trip() {
        let json = r#"{"n": 2, "A": [[2,1],[0,2]], "B": [[1,0],[0,1]]}"#;
        let file: SpecFile = serde_json::from_str(json).unwrap();
        let g = file.build().unwrap();
        assert_eq!(g.tree_degree(), 5);
        assert_eq!(g.to_file(), file);
        let bad: SpecFile = serde_json::from_str(r#"{"n": 2, "A": [[2]], "B": [[1]]}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
