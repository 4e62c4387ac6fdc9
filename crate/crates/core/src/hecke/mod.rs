//! The Hecke algebra as a free `R`-module through the coset-table matrix model.
//!
//! A group is described by a [`GroupSpec`]: matrices `ρ(σ)` over the parabolic subalgebra
//! `H' = R[σ0]`, one per generator, together with words for the coset representatives
//! `x_i`. Flattening `ρ(σ)` over the basis `1, σ0, ..., σ0^{e-1}` of `H'` yields the action of
//! `σ` on `H` by right multiplication in the basis `b_{e·i+p+1} = σ0^p x_{i+1}`.

mod algebra;
pub mod builtin;
mod hprime;
mod spec;
mod verify;
mod word;

pub use algebra::{FracElement, HeckeAlgebra, HeckeElement, Side};
pub use hprime::{elementary_symmetric, hecke_relation, HPrimeElement, HPrimeMatrix, HPrimeRing};
pub use spec::{ClassReps, ClassRepsJson, GroupSpec, GroupSpecFile};
pub use verify::{check_relations, specialized_relations_hold, verify_relations, Check, RelationReport};
pub use word::{BraidWord, WordJson};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::ring::RingError;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid group data: {0}")]
    Invalid(String),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("malformed word: {0}")]
    Word(String),
    #[error("unknown group `{0}` (builtin groups: a2, g4)")]
    UnknownGroup(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read spec file: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
