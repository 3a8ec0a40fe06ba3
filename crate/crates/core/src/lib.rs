//! Executable HNN extensions of `Zⁿ` (generalised Baumslag-Solitar groups).
//!
//! * [`arith`]: exact vectors, matrices and lattice residue systems.
//! * [`presentation`]: the HNN datum `t·x^{Bz}·t⁻¹ = x^{Az}`.
//! * [`words`]: parsing, Britton reduction and the word problem.
//! * [`tree`]: the Bass-Serre tree and the action of the group on it.
//! * [`affine`]: the homomorphism to `Z ⋉ Qⁿ`.
//! * [`embedding`]: ball enumeration, injectivity and properness checks.
//! * [`haagerup`]: tree cocycles, positive-definite kernels and witnesses.
//!
//! Exact layers are generic over a [`scalar::Ring`]; the floating-point
//! layer is generic over [`scalar::Real`]. The aliases below fix the scalar
//! choices used throughout.

pub mod affine;
pub mod arith;
pub mod embedding;
pub mod error;
pub mod haagerup;
pub mod presentation;
pub mod scalar;
pub mod tree;
pub mod words;

pub use error::{Error, Result};
pub use presentation::{make_bs, make_matrix_group, GroupSpec};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type IntVector = arith::Vector<BigInt>;
pub type IntMatrix = arith::Matrix<BigInt>;
pub type RationalVector = arith::Vector<BigRational>;
pub type RationalMatrix = arith::Matrix<BigRational>;

pub type HyperbolicPoint = haagerup::HyperbolicPoint<f64>;
pub type GramReport = haagerup::GramReport<f64>;
pub type HyperbolicPoint32 = haagerup::HyperbolicPoint<f32>;
pub type GramReport32 = haagerup::GramReport<f32>;
