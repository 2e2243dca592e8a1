//! Truncated hypergeometric functions of one matrix argument and
//! Stiefel-manifold volumes.
//!
//! `pFq^β(a; b; X) = Σ_k Σ_{κ⊢k} (Π[aᵢ]^β_κ / Π[bⱼ]^β_κ) · C_κ^β(X)/k!`,
//! summed degree by degree in the fixed partition enumeration order.
//! Truncation is controlled by an explicit `max_degree` and reported via
//! the magnitude of the final degree shell; there is no adaptive
//! stopping, which keeps results reproducible.

use crate::algebra::AlgebraTag;
use crate::jack::{self, JackTable};
use crate::partitions::partitions_of;
use crate::{Error, Result};

/// A truncated series value plus its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub max_degree: u32,
    /// Sum of `|term|` over the final degree shell.
    pub last_shell: f64,
    /// Number of κ-terms actually evaluated.
    pub terms_evaluated: u64,
}

/// Truncated `pFq` of one matrix argument, evaluated on the eigenvalue
/// list `x`.
pub fn hyper_pfq(
    a: &[f64],
    b: &[f64],
    x: &[f64],
    tag: AlgebraTag,
    table: &JackTable,
    max_degree: u32,
) -> Result<SeriesResult> {
    if max_degree > table.max_weight() {
        return Err(Error::TableTooSmall {
            needed: max_degree as usize,
            have: table.max_weight() as usize,
        });
    }
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut last_shell = 0.0;
    let mut terms_evaluated = 0u64;
    let mut k_factorial = 1.0;
    for k in 0..=max_degree {
        if k > 0 {
            k_factorial *= k as f64;
        }
        let mut shell_abs = 0.0;
        // Partitions longer than the variable count evaluate to zero and
        // are skipped at enumeration.
        for kappa in partitions_of(k, (k as usize).min(x.len())) {
            let mut term = jack::jack_c(table, &kappa, x)? / k_factorial;
            for &ai in a {
                term *= jack::gen_pochhammer_product(ai, &kappa, tag);
            }
            for &bj in b {
                term /= jack::gen_pochhammer_denominator(bj, &kappa, tag)?;
            }
            terms_evaluated += 1;
            shell_abs += term.abs();
            let y = term - comp;
            let t = value + y;
            comp = (t - value) - y;
            value = t;
        }
        last_shell = shell_abs;
    }
    Ok(SeriesResult {
        value,
        max_degree,
        last_shell,
        terms_evaluated,
    })
}

/// `₀F₁^β(b; X)`: the Bessel-type special case.
pub fn hyper_0f1(b: f64, x: &[f64], tag: AlgebraTag, table: &JackTable, max_degree: u32) -> Result<SeriesResult> {
    hyper_pfq(&[], &[b], x, tag, table, max_degree)
}

/// `log Vol(V^β_{m,n}) = m·log2 + (mnβ/2)·logπ − log Γ^β_m[nβ/2]`.
pub fn stiefel_log_volume(m: usize, n: usize, tag: AlgebraTag) -> Result<f64> {
    if m < 1 || n < m {
        return Err(Error::InvalidArgument("need n >= m >= 1"));
    }
    let beta = tag.beta() as f64;
    let gamma = jack::mv_log_gamma(m, tag, n as f64 * beta / 2.0)?;
    Ok(m as f64 * libm::log(2.0) + (m * n) as f64 * beta / 2.0 * libm::log(core::f64::consts::PI) - gamma)
}
