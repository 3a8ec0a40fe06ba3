//! Kernel matrices over finite sets of group elements and their PSD verdicts.

use std::collections::HashSet;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::scalar::Real;
use crate::tree::{distance, vertex_of};
use crate::words::NormalForm;

/// Absolute eigenvalue tolerance per unit of matrix dimension.
pub const PSD_TOLERANCE_PER_DIM: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport<T> {
    /// Elements rendered as normal-form strings.
    pub elements: Vec<String>,
    pub kernel: String,
    pub s: T,
    pub matrix: Vec<Vec<T>>,
    pub min_eigenvalue: T,
    pub tolerance: T,
    pub psd: bool,
}

/// Builds `K_ij = f(i, j)` for `i ≤ j`, mirrors it, and certifies it.
pub fn gram_report<T, F>(
    elements: &[NormalForm],
    kernel: &str,
    s: T,
    mut f: F,
) -> Result<GramReport<T>>
where
    T: Real,
    F: FnMut(usize, usize) -> Result<T>,
{
    if s <= T::zero() {
        return Err(Error::Input(format!(
            "kernel parameter s = {s} must be positive"
        )));
    }
    let mut seen = HashSet::new();
    for e in elements {
        if !seen.insert(e) {
            return Err(Error::Input(format!("duplicate element {e}")));
        }
    }
    let dim = elements.len();
    let mut m = DMatrix::<T>::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = f(i, j)?;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let min_eigenvalue = min_eigenvalue(&m);
    let tolerance = T::of(PSD_TOLERANCE_PER_DIM * dim.max(1) as f64);
    Ok(GramReport {
        elements: elements.iter().map(ToString::to_string).collect(),
        kernel: kernel.to_string(),
        s,
        matrix: (0..dim)
            .map(|i| (0..dim).map(|j| m[(i, j)]).collect())
            .collect(),
        min_eigenvalue,
        tolerance,
        psd: min_eigenvalue >= -tolerance,
    })
}

/// Smallest eigenvalue of a symmetric matrix (`+∞` when empty).
pub fn min_eigenvalue<T: Real>(m: &DMatrix<T>) -> T {
    if m.is_empty() {
        return T::of(f64::INFINITY);
    }
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(T::of(f64::INFINITY), |a, b| if b < a { b } else { a })
}

pub(crate) fn check_dims(elements: &[NormalForm], spec: &GroupSpec) -> Result<()> {
    match elements.iter().find(|e| e.tail().dim() != spec.n()) {
        Some(e) => Err(Error::Dimension {
            expected: spec.n(),
            got: e.tail().dim(),
        }),
        None => Ok(()),
    }
}

/// `K_ij = exp(−s·d(γᵢ·v, γⱼ·v))`.
pub fn tree_gram<T: Real>(
    elements: &[NormalForm],
    s: T,
    spec: &GroupSpec,
) -> Result<GramReport<T>> {
    check_dims(elements, spec)?;
    let verts: Vec<_> = elements.iter().map(vertex_of).collect();
    gram_report(elements, "tree", s, |i, j| {
        let d = T::of(distance(&verts[i], &verts[j]) as f64);
        Ok((-s * d).exp())
    })
}
