//! Exact computations for commensurating HNN-extensions `G(A, L')` of free
//! abelian groups.
//!
//! A group `G(A, L')` is presented as `⟨ℤⁿ, t ‖ t c t⁻¹ = A c, c ∈ L'⟩` where
//! `A ∈ GL(n, ℚ)` and `L'` is a finite-index sublattice of `ℤⁿ ∩ A⁻¹ℤⁿ`.
//! The crate decides the CAT(0), biautomatic and residually-finite status of
//! such groups, solves their word problem through Britton-reduced normal
//! forms, builds non-Hopf and Wise-property certificates, embeds them into
//! index-two amalgams, and computes the (finite) boundary of automatic
//! structures on free abelian groups given by labelled automata.
//!
//! Everything is exact: integers are arbitrary precision and rationals are
//! kept reduced. The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod amalgam;
pub mod autbound;
pub mod catalog;
pub mod criteria;
pub mod exactlin;
pub mod hnn;
pub mod witness;

pub use criteria::{analyze, AnalysisReport, MatrixOrder, NonHopfVerdict};
pub use exactlin::{Int, IntMatrix, IntVector, Lattice, Polynomial, RatMatrix, Rational};
pub use hnn::{GroupSpec, NormalForm, Word};
