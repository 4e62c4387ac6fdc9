//! Exact computations in generic Hecke algebras of small complex reflection groups.
//!
//! The algebra is realized as a free module over a Laurent polynomial ring through a
//! coset-table matrix model. On top of that model the crate computes the symmetrising
//! trace, its Gram matrix and dual basis, and bases of the center.

pub mod center;
pub mod cli;
pub mod hecke;
pub mod linalg;
pub mod ring;
pub mod trace;
