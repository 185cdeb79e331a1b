//! Exact decision procedures for effectively free biquotient actions of
//! `SU(2)` and `SU(2)²` on `SU(4)`, `SO(7)` and `Spin(7)`.
//!
//! Everything is reduced to linear congruences on maximal tori:
//!
//! * [`linalg`]: exact integer/rational matrices, Smith normal form and the
//!   congruence solver on `(ℝ/ℤ)^r`.
//! * [`octonion`] and [`spin`]: octonions, the Clifford embedding and the
//!   explicit `Spin(7) ⊂ SO(8)` maximal torus.
//! * [`weyl`]: torus coordinates, centers and Weyl groups (as signed
//!   permutations) of the three target groups.
//! * [`reps`]: homomorphisms `SU(2) → G` and `SU(2)² → G` up to equivalence
//!   and their torus weight matrices.
//! * [`freeness`]: the freeness decision with re-checkable witnesses.
//! * [`classify`]: drivers that enumerate every candidate pair.

pub mod classify;
pub mod error;
pub mod freeness;
pub mod linalg;
pub mod notation;
pub mod octonion;
pub mod reps;
pub mod spin;
pub mod weyl;

pub use error::{Error, Result};

/// Outcome of one named verification step.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub(crate) fn display_string<T: std::fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
