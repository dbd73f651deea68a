//! Exact cohomology of finite-dimensional Poisson algebras over the rationals.
//!
//! A Poisson algebra here is an associative unital algebra together with a
//! Lie bracket satisfying the Leibniz rule; the product need not be
//! commutative. The crate assembles the quasi-Poisson cochain complex of
//! such an algebra (the total complex of a Hochschild-by-Chevalley-Eilenberg
//! bicomplex), runs exact sparse rank computations over the rationals, and
//! reports graded cohomology dimensions:
//!
//! * `HQ^n` — quasi-Poisson cohomology of the total complex,
//! * `HH^n` — Hochschild cohomology of the associative structure,
//! * `HL^n` — Lie-algebra (Chevalley-Eilenberg) cohomology of the bracket,
//!
//! plus closed-form low-degree formulas, a truncation optimisation for
//! algebras with vanishing higher Hochschild cohomology, and dimension-level
//! cross-checks (short-exact-sequence, tensor and Künneth identities).
//!
//! The [`enveloping`] module implements the universal enveloping algebra
//! with its PBW rewriting and shuffle Hopf structure, the smash-product
//! enveloping algebra, and the free-resolution differentials, so the
//! structural theorems behind the complex can be verified at property level.
//!
//! Everything is exact: no floating point appears anywhere in the crate.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod document;
pub mod engine;
pub mod enveloping;
pub mod error;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};

/// Resource limits threaded through matrix assembly. The universal
/// enveloping degree cap lives on [`enveloping::Enveloping`] instead.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Cap on `rows * cols` of any matrix the engine will attempt.
    pub entry_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            entry_cap: linalg::DEFAULT_ENTRY_CAP,
        }
    }
}

impl Limits {
    pub fn with_entry_cap(entry_cap: u64) -> Self {
        Limits { entry_cap }
    }
}
