//! Upper half-plane model for `n = 1`, `λ > 0`: `(k, a)` acts by the
//! isometry `z ↦ λᵏ·z + a`, and orbits start at `i = (0, 1)`.
//!
//! Orbit points have rational coordinates, so distances between them are
//! evaluated from the exact quantity `δ = |P − Q|² / (2·y_P·y_Q)` via
//! `d = arccosh(1 + δ) = ln(1 + δ + √(δ(δ + 2)))`, keeping precision for
//! nearby points.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::affine::AffineElement;
use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::scalar::Real;
use crate::RationalVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicPoint<T> {
    pub x: T,
    /// Always positive.
    pub y: T,
}

impl<T: Real> HyperbolicPoint<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if y > T::zero() {
            Ok(HyperbolicPoint { x, y })
        } else {
            Err(Error::Input(format!("y = {y} is not positive")))
        }
    }

    pub fn base() -> Self {
        HyperbolicPoint {
            x: T::zero(),
            y: T::one(),
        }
    }
}

/// Orbit point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl ExactPoint {
    pub fn to_float<T: Real>(&self) -> HyperbolicPoint<T> {
        HyperbolicPoint {
            x: rational_to_real(&self.x),
            y: rational_to_real(&self.y),
        }
    }
}

pub(crate) fn rational_to_real<T: Real>(q: &BigRational) -> T {
    T::of(q.to_f64().unwrap_or(f64::NAN))
}

/// `λ` when the half-plane model applies.
pub fn positive_lambda(spec: &GroupSpec) -> Result<BigRational> {
    match spec.lambda_scalar() {
        Some(l) if l.is_positive() => Ok(l),
        Some(l) => Err(Error::UnsupportedWitness(format!(
            "λ = {l} is not positive"
        ))),
        None => Err(Error::UnsupportedWitness(format!(
            "half-plane model needs n = 1, got n = {}",
            spec.n()
        ))),
    }
}

pub fn exact_orbit(e: &AffineElement, spec: &GroupSpec) -> Result<ExactPoint> {
    positive_lambda(spec)?;
    let y = spec.apply_lambda_pow(e.k, &RationalVector::new(vec![BigRational::one()]));
    Ok(ExactPoint {
        x: e.a[0].clone(),
        y: y[0].clone(),
    })
}

/// `(k, a)·i = (a, λᵏ)`.
pub fn hyperbolic_orbit<T: Real>(
    e: &AffineElement,
    spec: &GroupSpec,
) -> Result<HyperbolicPoint<T>> {
    Ok(exact_orbit(e, spec)?.to_float())
}

/// Image of `p` under the isometry of `e`.
pub fn apply_isometry<T: Real>(
    e: &AffineElement,
    p: &HyperbolicPoint<T>,
    spec: &GroupSpec,
) -> Result<HyperbolicPoint<T>> {
    let scale: T = rational_to_real(&exact_orbit(e, spec)?.y);
    let shift: T = rational_to_real(&e.a[0]);
    Ok(HyperbolicPoint {
        x: scale * p.x + shift,
        y: scale * p.y,
    })
}

fn arccosh_one_plus<T: Real>(delta: T) -> T {
    (delta + (delta * (delta + T::of(2.0))).sqrt()).ln_1p()
}

/// `arccosh(1 + ((x₂−x₁)² + (y₂−y₁)²) / (2·y₁·y₂))`
pub fn hyperbolic_distance<T: Real>(p: &HyperbolicPoint<T>, q: &HyperbolicPoint<T>) -> T {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    let delta = (dx * dx + dy * dy) / (T::of(2.0) * p.y * q.y);
    arccosh_one_plus(delta)
}

/// Same distance with the ratio `δ` formed exactly.
pub fn exact_distance<T: Real>(p: &ExactPoint, q: &ExactPoint) -> T {
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let two = BigRational::from_integer(2.into());
    let delta = (&dx * &dx + &dy * &dy) / (two * &p.y * &q.y);
    if delta.is_zero() {
        return T::zero();
    }
    arccosh_one_plus(rational_to_real(&delta))
}

/// `d(i, (k, a)·i)`.
pub fn displacement<T: Real>(e: &AffineElement, spec: &GroupSpec) -> Result<T> {
    let base = ExactPoint {
        x: BigRational::zero(),
        y: BigRational::one(),
    };
    Ok(exact_distance(&base, &exact_orbit(e, spec)?))
}
