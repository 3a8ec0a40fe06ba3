//! Analytic layer: the tree cocycle, positive-definite kernels on finite
//! samples, and an explicit proper witness combining the tree distance with
//! an affine displacement.
//!
//! The witness is `ψ_s(γ) = exp(−s·(d(v, γ·v) + D(γ)))` where `D` is
//!
//! * the half-plane displacement of `j_affine(γ)` when `n = 1` and `λ > 0`;
//! * `|k| + ‖a‖₁` when `Λ = ±I`, where the linear part is an `ℓ¹` isometry;
//! * unavailable otherwise (only the tree kernel and the properness profile
//!   are offered).

mod cocycle;
mod hyperbolic;
mod kernel;

pub use cocycle::{cocycle, cocycle_identity_check, cocycle_inverse_check, CocycleVector};
pub use hyperbolic::{
    apply_isometry, displacement, exact_distance, exact_orbit, hyperbolic_distance,
    hyperbolic_orbit, ExactPoint, HyperbolicPoint,
};
pub use kernel::{gram_report, min_eigenvalue, tree_gram, GramReport, PSD_TOLERANCE_PER_DIM};

use serde::Serialize;

use crate::affine::{j_affine, AffineElement};
use crate::embedding::{enumerate_ball, Bounds};
use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::scalar::Real;
use crate::tree::{distance, vertex_of, Vertex};
use crate::words::{nf_invert, nf_multiply, NormalForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessRegime {
    Hyperbolic,
    Isometric,
    ProfileOnly,
}

pub fn witness_regime(spec: &GroupSpec) -> WitnessRegime {
    if hyperbolic::positive_lambda(spec).is_ok() {
        WitnessRegime::Hyperbolic
    } else if spec.lambda_is_signed_identity() {
        WitnessRegime::Isometric
    } else {
        WitnessRegime::ProfileOnly
    }
}

/// `D(γ)` for the affine image `e`.
pub fn affine_displacement<T: Real>(e: &AffineElement, spec: &GroupSpec) -> Result<T> {
    match witness_regime(spec) {
        WitnessRegime::Hyperbolic => displacement(e, spec),
        WitnessRegime::Isometric => {
            let l1 = hyperbolic::rational_to_real::<T>(&e.a.norm_l1());
            Ok(T::of(e.k.unsigned_abs() as f64) + l1)
        }
        WitnessRegime::ProfileOnly => Err(Error::UnsupportedWitness(
            "no explicit affine witness for this datum; use the tree kernel and properness profile"
                .into(),
        )),
    }
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if s > T::zero() {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "kernel parameter s = {s} must be positive"
        )))
    }
}

/// `ψ_s(γ)`, in `(0, 1]`.
pub fn witness<T: Real>(gamma: &NormalForm, s: T, spec: &GroupSpec) -> Result<T> {
    check_s(s)?;
    let d_tree = T::of(distance(&Vertex::base(), &vertex_of(gamma)) as f64);
    let d_aff: T = affine_displacement(&j_affine(gamma, spec), spec)?;
    Ok((-s * (d_tree + d_aff)).exp())
}

/// `K_ij = ψ_s(γᵢ⁻¹·γⱼ)`.
pub fn witness_gram<T: Real>(
    elements: &[NormalForm],
    s: T,
    spec: &GroupSpec,
) -> Result<GramReport<T>> {
    kernel::check_dims(elements, spec)?;
    check_s(s)?;
    if witness_regime(spec) == WitnessRegime::ProfileOnly {
        return Err(Error::UnsupportedWitness(
            "profile-only regime: witness kernel unavailable".into(),
        ));
    }
    let inverses: Vec<_> = elements.iter().map(|g| nf_invert(g, spec)).collect();
    gram_report(elements, "witness", s, |i, j| {
        witness(&nf_multiply(&inverses[i], &elements[j], spec), s, spec)
    })
}

/// Largest witness value on one sphere of the word metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C0Row<T> {
    pub length: usize,
    pub max: T,
    pub argmax: String,
}

/// `max ψ_s` over each sphere of radius `0..=max_length`.
pub fn c0_profile<T: Real>(
    max_length: usize,
    s: T,
    spec: &GroupSpec,
    bounds: &Bounds,
) -> Result<Vec<C0Row<T>>> {
    check_s(s)?;
    if witness_regime(spec) == WitnessRegime::ProfileOnly {
        return Err(Error::UnsupportedWitness(
            "profile-only regime: no decay profile".into(),
        ));
    }
    let ball = enumerate_ball(max_length, spec, bounds)?;
    let mut rows = Vec::with_capacity(max_length + 1);
    for l in 0..=max_length {
        let mut best: Option<(T, &NormalForm)> = None;
        for g in ball.sphere(l) {
            let v = witness(g, s, spec)?;
            if best.is_none_or(|(m, _)| v > m) {
                best = Some((v, g));
            }
        }
        if let Some((max, g)) = best {
            rows.push(C0Row {
                length: l,
                max,
                argmax: g.to_string(),
            });
        }
    }
    Ok(rows)
}

/// Whether the sphere maxima strictly decrease from length `start` on.
pub fn strictly_decreasing_from<T: Real>(rows: &[C0Row<T>], start: usize) -> bool {
    let tail: Vec<_> = rows.iter().filter(|r| r.length >= start).collect();
    tail.windows(2).all(|w| w[1].max < w[0].max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{make_bs, make_matrix_group};
    use crate::words::{britton_reduce, parse_word};
    use crate::IntMatrix;

    fn nf(s: &str, g: &GroupSpec) -> NormalForm {
        britton_reduce(&parse_word(s, g).unwrap(), g)
    }

    #[test]
    fn regimes() {
        assert_eq!(
            witness_regime(&make_bs(1, 2).unwrap()),
            WitnessRegime::Hyperbolic
        );
        assert_eq!(
            witness_regime(&make_bs(-2, -3).unwrap()),
            WitnessRegime::Hyperbolic
        );
        assert_eq!(
            witness_regime(&make_bs(3, -3).unwrap()),
            WitnessRegime::Isometric
        );
        assert_eq!(
            witness_regime(&make_bs(2, -3).unwrap()),
            WitnessRegime::ProfileOnly
        );
        let asc = make_matrix_group(
            IntMatrix::from_i64(&[&[2, 1], &[0, 2]]).unwrap(),
            IntMatrix::identity(2),
        )
        .unwrap();
        assert_eq!(witness_regime(&asc), WitnessRegime::ProfileOnly);
        let flat = make_matrix_group(IntMatrix::identity(2), IntMatrix::identity(2)).unwrap();
        assert_eq!(witness_regime(&flat), WitnessRegime::Isometric);
    }

    #[test]
    fn witness_values() {
        let g = make_bs(1, 2).unwrap();
        assert_eq!(witness(&NormalForm::identity(1), 1.0, &g).unwrap(), 1.0);
        let psi = witness(&nf("t", &g), 1.0, &g).unwrap();
        assert!((psi - (-(1.0 + std::f64::consts::LN_2)).exp()).abs() < 1e-10);
        assert!((psi - 0.183_939_720_585_721_2 / 1.0).abs() < 1e-3);
    }

    #[test]
    fn witness_is_bounded_by_tree_factor() {
        let g = make_bs(2, 3).unwrap();
        let s = 0.7;
        for w in ["t x t", "x^5", "t^-1 x t^-1 x^-1", "x t x t x t^-1"] {
            let gamma = nf(w, &g);
            let psi = witness(&gamma, s, &g).unwrap();
            let bound = (-s * gamma.t_length() as f64).exp();
            assert!(psi > 0.0 && psi <= bound + 1e-15, "{w}");
        }
    }

    #[test]
    fn isometric_regime_uses_l1() {
        let g = make_bs(3, -3).unwrap();
        let gamma = nf("t x^2", &g);
        // j = (1, Λ·2) = (1, -2)
        let e = j_affine(&gamma, &g);
        assert_eq!(affine_displacement::<f64>(&e, &g).unwrap(), 3.0);
        let r = witness_gram(&[nf("", &g), gamma, nf("x t^-1", &g)], 0.5, &g).unwrap();
        assert!(r.psd);
    }

    #[test]
    fn profile_only_downgrade() {
        let g = make_bs(2, -3).unwrap();
        assert!(matches!(
            witness(&nf("t", &g), 1.0, &g),
            Err(Error::UnsupportedWitness(_))
        ));
        assert!(matches!(
            c0_profile(3, 1.0, &g, &Bounds::uniform(12)),
            Err(Error::UnsupportedWitness(_))
        ));
        assert!(tree_gram(&[nf("t", &g), nf("x", &g)], 1.0, &g).unwrap().psd);
    }

    #[test]
    fn small_c0_profile() {
        let g = make_bs(1, 2).unwrap();
        let rows = c0_profile(5, 1.0, &g, &Bounds::uniform(12)).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].max, 1.0);
        assert_eq!(rows[0].argmax, "1");
        assert!(rows.iter().all(|r| r.max > 0.0 && r.max <= 1.0));
    }
}
