//! Exact partition-sum sides of the moment identities and structured
//! comparison reports against Monte Carlo estimates.
//!
//! The central identity being checked is
//! `∫ (tr XH₁)^{2k} (dH₁) = Σ_{κ⊢k} (½)_k / [βn/2]^β_κ · C^β_κ(XX*)`
//! over the normalized invariant measure of the Stiefel manifold, for
//! β ∈ {1, 2, 4} (sampling side) and exact-side only for β = 8.

use crate::algebra::{self, AlgebraTag, MatrixF};
use crate::hyper;
use crate::jack::{self, JackTable};
use crate::montecarlo::{self, MomentEstimate};
use crate::partitions::partitions_of;
use crate::{Error, Result};

/// Default z-score gate: false-alarm rate ≈ 6e-5 per cell under the CLT.
pub const DEFAULT_THRESHOLD: f64 = 4.0;

/// Shell bound required before a truncated series may stand in for an
/// infinite sum in a comparison.
pub const SHELL_BOUND: f64 = 1e-10;

/// One identity check: exact side, sampled side, and the z-score gate.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub beta: u32,
    pub m: usize,
    pub n: usize,
    pub k: u32,
    pub samples: u64,
    pub seed: u64,
    pub lhs_mean: f64,
    pub lhs_stderr: f64,
    pub rhs_exact: f64,
    pub z_score: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Wall-clock cost, filled in by callers that track time (the core
    /// crate has no clock).
    pub runtime_ms: u64,
}

impl VerificationReport {
    /// Assembles a report from an exact value and an estimate, with an
    /// optional additive inflation of the error bar (used for series
    /// truncation tails).
    pub fn from_estimate(
        x: &MatrixF,
        k: u32,
        rhs_exact: f64,
        estimate: &MomentEstimate,
        seed: u64,
        threshold: f64,
        stderr_inflation: f64,
    ) -> VerificationReport {
        let denom = estimate.stderr + stderr_inflation;
        let diff = estimate.mean - rhs_exact;
        let z_score = if denom > 0.0 {
            diff / denom
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        VerificationReport {
            beta: x.tag().beta(),
            m: x.rows(),
            n: x.cols(),
            k,
            samples: estimate.samples,
            seed,
            lhs_mean: estimate.mean,
            lhs_stderr: estimate.stderr,
            rhs_exact,
            z_score,
            threshold,
            pass: z_score.abs() <= threshold,
            runtime_ms: 0,
        }
    }
}

/// Exact right-hand side `Σ_{κ⊢k} (½)_k / [βn/2]^β_κ · C^β_κ(XX*)`.
///
/// Partitions of length greater than `m` contribute zero and are skipped
/// at enumeration.
pub fn theorem_rhs(x: &MatrixF, k: u32, table: &JackTable) -> Result<f64> {
    let tag = x.tag();
    let (m, n) = (x.rows(), x.cols());
    if n < m {
        return Err(Error::ShapeMismatch { left: (m, n), right: (n, n) });
    }
    let gram = x.matmul(&x.conj_transpose())?;
    let eigs = algebra::hermitian_eigenvalues(&gram)?;
    theorem_rhs_from_eigenvalues(eigs.values(), k, n, tag, table)
}

/// Same sum, starting from the eigenvalues of `XX*` directly.
pub fn theorem_rhs_from_eigenvalues(
    eigs: &[f64],
    k: u32,
    n: usize,
    tag: AlgebraTag,
    table: &JackTable,
) -> Result<f64> {
    let a = tag.beta() as f64 * n as f64 / 2.0;
    let half_k = jack::rising_factorial(0.5, k);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for kappa in partitions_of(k, (k as usize).min(eigs.len())) {
        let term = half_k / jack::gen_pochhammer_denominator(a, &kappa, tag)? * jack::jack_c(table, &kappa, eigs)?;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Compares the Monte Carlo estimate of `∫ (tr XH₁)^{2k} (dH₁)` against
/// the exact partition sum.
pub fn verify_moment_identity(
    x: &MatrixF,
    k: u32,
    table: &JackTable,
    samples: u64,
    seed: u64,
    chunk_size: u64,
    threshold: f64,
) -> Result<VerificationReport> {
    let rhs = theorem_rhs(x, k, table)?;
    let est = montecarlo::moment_estimate(x, 2 * k, samples, seed, chunk_size)?;
    Ok(VerificationReport::from_estimate(x, k, rhs, &est, seed, threshold, 0.0))
}

/// Odd trace powers integrate to zero; the gate is `|mean| ≤ t·stderr`.
pub fn odd_moment_check(
    x: &MatrixF,
    power: u32,
    samples: u64,
    seed: u64,
    chunk_size: u64,
    threshold: f64,
) -> Result<VerificationReport> {
    if power % 2 == 0 {
        return Err(Error::InvalidArgument("odd-moment check needs an odd power"));
    }
    let est = montecarlo::moment_estimate(x, power, samples, seed, chunk_size)?;
    Ok(VerificationReport::from_estimate(x, power, 0.0, &est, seed, threshold, 0.0))
}

/// Compares `∫ etr(XH₁) (dH₁)` against the truncated
/// `₀F₁^β(βn/2; XX*/4)`, inflating the error bar by the series tail.
/// Errors out when the final shell exceeds [`SHELL_BOUND`].
pub fn bessel_consistency(
    x: &MatrixF,
    table: &JackTable,
    max_degree: u32,
    samples: u64,
    seed: u64,
    chunk_size: u64,
    threshold: f64,
) -> Result<VerificationReport> {
    let tag = x.tag();
    let n = x.cols();
    let gram = x.matmul(&x.conj_transpose())?;
    let eigs = algebra::hermitian_eigenvalues(&gram)?;
    let quarter: alloc::vec::Vec<f64> = eigs.values().iter().map(|v| v / 4.0).collect();
    let series = hyper::hyper_0f1(tag.beta() as f64 * n as f64 / 2.0, &quarter, tag, table, max_degree)?;
    if series.last_shell > SHELL_BOUND {
        return Err(Error::TruncationTooCoarse { last_shell: series.last_shell });
    }
    let est = montecarlo::etr_estimate(x, samples, seed, chunk_size)?;
    Ok(VerificationReport::from_estimate(x, 0, series.value, &est, seed, threshold, series.last_shell))
}
