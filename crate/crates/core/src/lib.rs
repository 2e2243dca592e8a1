//! Special functions of a matrix argument over the real normed division
//! algebras ℝ, ℂ, ℍ (and exact-arithmetic support for 𝕆).
//!
//! The crate provides:
//!
//! - [`algebra`]: dense matrices with real, complex or quaternion entries,
//!   conjugate transpose, real trace forms, Gaussian sampling, modified
//!   Gram–Schmidt orthonormalization and Hermitian eigenvalues;
//! - [`partitions`]: integer partitions in descending lexicographic order,
//!   conjugation and the dominance order;
//! - [`jack`]: exact-rational Jack polynomials `C_κ^β` in C-normalization
//!   (`Σ_κ C_κ = (tr B)^k`), generalized Pochhammer symbols and the
//!   multivariate gamma function;
//! - [`hyper`]: truncated hypergeometric series `pFq` of one matrix
//!   argument and Stiefel-manifold volumes;
//! - [`montecarlo`]: reproducible chunked Monte Carlo over Haar-distributed
//!   Stiefel frames `H₁` with `H₁*H₁ = I`;
//! - [`verify`]: exact partition sums `Σ_κ (½)_k/[βn/2]_κ · C_κ(XX*)` for
//!   the even trace moments `∫ (tr XH₁)^{2k} (dH₁)` and z-score reports
//!   comparing them against the sampled estimates.
//!
//! The crate is `no_std` (with `alloc`); all IO, CLI and parallel campaign
//! drivers live in the companion `matfn-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
mod error;
pub mod hyper;
pub mod jack;
pub mod montecarlo;
pub mod partitions;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
