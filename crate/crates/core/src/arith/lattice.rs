use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Matrix, Vector};
use crate::error::{Error, Result};

type IntMatrix = Matrix<BigInt>;
type IntVector = Vector<BigInt>;

/// The full-rank lattice `M·Zⁿ` together with its column Hermite normal form.
///
/// `hnf = matrix · unimodular` is lower triangular with positive diagonal and
/// entries left of each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    matrix: IntMatrix,
    hnf: IntMatrix,
    unimodular: IntMatrix,
}

impl Lattice {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.int_det().is_zero() {
            return Err(Error::Config(format!("matrix {matrix} is singular")));
        }
        let n = matrix.dim();
        let mut h = matrix.clone();
        let mut u = IntMatrix::identity(n);

        for i in 0..n {
            for j in i + 1..n {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let a = h.get(i, i).clone();
                let b = h.get(i, j).clone();
                let eg = a.extended_gcd(&b);
                let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
                // [x  -b/g]
                // [y   a/g] has determinant 1
                combine_columns(&mut h, i, j, &eg.x, &eg.y, &-&bg, &ag);
                combine_columns(&mut u, i, j, &eg.x, &eg.y, &-&bg, &ag);
            }
            if h.get(i, i).is_negative() {
                negate_column(&mut h, i);
                negate_column(&mut u, i);
            }
            let pivot = h.get(i, i).clone();
            debug_assert!(pivot.is_positive());
            for j in 0..i {
                let q = h.get(i, j).div_floor(&pivot);
                if !q.is_zero() {
                    axpy_column(&mut h, j, i, &q);
                    axpy_column(&mut u, j, i, &q);
                }
            }
        }
        Ok(Lattice {
            matrix,
            hnf: h,
            unimodular: u,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn hnf(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Index of the lattice in `Zⁿ`, i.e. `|det M|`.
    pub fn index(&self) -> BigInt {
        (0..self.dim()).fold(BigInt::from(1), |acc, i| acc * self.hnf.get(i, i))
    }

    /// Split `z = M·h + r` with `r` in the canonical box `∏ [0, pivotᵢ)`.
    pub fn decompose(&self, z: &IntVector) -> Result<(IntVector, IntVector)> {
        if z.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: z.dim(),
            });
        }
        Ok(self.decompose_unchecked(z))
    }

    pub(crate) fn decompose_unchecked(&self, z: &IntVector) -> (IntVector, IntVector) {
        let n = self.dim();
        let mut r = z.clone();
        let mut q = Vec::with_capacity(n);
        for i in 0..n {
            let qi = r[i].div_floor(self.hnf.get(i, i));
            if !qi.is_zero() {
                for row in i..n {
                    let v = &r.0[row] - &qi * self.hnf.get(row, i);
                    r.0[row] = v;
                }
            }
            q.push(qi);
        }
        let h = self.unimodular.apply_unchecked(&Vector(q));
        (r, h)
    }

    pub fn contains(&self, z: &IntVector) -> bool {
        if z.is_zero() {
            return true;
        }
        self.decompose_unchecked(z).0.is_zero()
    }

    /// Canonical residue representatives, lexicographic, zero first.
    pub fn residues(&self) -> ResidueSystem {
        let n = self.dim();
        let bounds: Vec<BigInt> = (0..n).map(|i| self.hnf.get(i, i).clone()).collect();
        let mut reps = Vec::new();
        let mut cur = vec![BigInt::zero(); n];
        'outer: loop {
            reps.push(Vector(cur.clone()));
            for i in (0..n).rev() {
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    continue 'outer;
                }
                cur[i] = BigInt::zero();
            }
            break;
        }
        ResidueSystem {
            matrix: self.matrix.clone(),
            representatives: reps,
        }
    }
}

/// One representative per coset of `M·Zⁿ` in `Zⁿ`, zero first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSystem {
    pub matrix: IntMatrix,
    pub representatives: Vec<IntVector>,
}

impl ResidueSystem {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntVector> {
        self.representatives.iter()
    }
}

/// `z = M·h + r` with `r` the canonical representative of `z` mod `M·Zⁿ`.
pub fn lattice_decompose(z: &IntVector, m: &IntMatrix) -> Result<(IntVector, IntVector)> {
    Lattice::new(m.clone())?.decompose(z)
}

pub fn in_lattice(z: &IntVector, m: &IntMatrix) -> Result<bool> {
    let lat = Lattice::new(m.clone())?;
    if z.dim() != lat.dim() {
        return Err(Error::Dimension {
            expected: lat.dim(),
            got: z.dim(),
        });
    }
    Ok(lat.contains(z))
}

pub fn residues(m: &IntMatrix) -> Result<ResidueSystem> {
    Ok(Lattice::new(m.clone())?.residues())
}

/// `(col_i, col_j) <- (a·col_i + b·col_j, c·col_i + d·col_j)`
fn combine_columns(
    m: &mut IntMatrix,
    i: usize,
    j: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    for row in 0..m.dim() {
        let (x, y) = (m.get(row, i).clone(), m.get(row, j).clone());
        *m.get_mut(row, i) = a * &x + b * &y;
        *m.get_mut(row, j) = c * &x + d * &y;
    }
}

fn negate_column(m: &mut IntMatrix, j: usize) {
    for row in 0..m.dim() {
        let v = -m.get(row, j);
        *m.get_mut(row, j) = v;
    }
}

/// `col_dst -= q · col_src`
fn axpy_column(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in 0..m.dim() {
        let v = m.get(row, dst) - q * m.get(row, src);
        *m.get_mut(row, dst) = v;
    }
}
