//! Reproducible Monte Carlo over Haar-distributed Stiefel frames.
//!
//! Sampling is split into fixed-size chunks; chunk `i` draws from the
//! dedicated substream `(seed, i)` and partial sums are combined in chunk
//! order. Estimates are therefore bit-identical no matter how many
//! workers evaluate the chunks, which is the contract the CLI's parallel
//! campaign driver relies on.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{self, AlgebraTag, MatrixF};
use crate::{Error, Result};

/// Samples per substream chunk unless the caller overrides it. Part of
/// the determinism contract: changing it changes the estimates.
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// A seeded, indexed source of randomness. Distinct `(seed, stream)`
/// pairs are independent substreams; the same pair replays identically.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        RandomStream { seed, stream_index, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    #[inline]
    fn next_unit_open(&mut self) -> f64 {
        // (0, 1]: the +1 keeps the logarithm finite.
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    fn next_unit_half_open(&mut self) -> f64 {
        // [0, 1)
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Two independent standard normal draws (Box–Muller).
    #[inline]
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let r = libm::sqrt(-2.0 * libm::log(self.next_unit_open()));
        let theta = core::f64::consts::TAU * self.next_unit_half_open();
        (r * libm::cos(theta), r * libm::sin(theta))
    }
}

/// Mean, standard error and sample count of a Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Partial sums of one chunk: combined strictly in chunk order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChunkSums {
    pub sum: f64,
    pub sum_sq: f64,
    pub count: u64,
}

impl ChunkSums {
    /// In-order accumulation; the left operand must be the earlier chunk.
    pub fn merge(self, later: ChunkSums) -> ChunkSums {
        ChunkSums {
            sum: self.sum + later.sum,
            sum_sq: self.sum_sq + later.sum_sq,
            count: self.count + later.count,
        }
    }
}

impl MomentEstimate {
    /// Finalizes merged chunk sums into mean and standard error.
    pub fn from_sums(total: ChunkSums) -> Result<MomentEstimate> {
        if total.count < 2 {
            return Err(Error::InvalidArgument("need at least 2 samples"));
        }
        let n = total.count as f64;
        let mean = total.sum / n;
        let var = ((total.sum_sq - total.sum * total.sum / n) / (n - 1.0)).max(0.0);
        Ok(MomentEstimate {
            mean,
            stderr: libm::sqrt(var / n),
            samples: total.count,
        })
    }
}

/// The scalar functional of `tr(XH₁)` being averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// `(tr XH₁)^p`
    TracePower(u32),
    /// `exp(tr XH₁)`, the etr kernel
    ExpTrace,
}

#[inline]
fn int_pow(x: f64, mut p: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while p > 0 {
        if p & 1 == 1 {
            acc *= base;
        }
        base *= base;
        p >>= 1;
    }
    acc
}

/// One Haar draw `H₁ = orthonormalize(G)`, `G` Gaussian `n×m`. The
/// left-isometry invariance of the Gaussian ensemble pushes forward to
/// the normalized invariant measure on the Stiefel manifold.
pub fn haar_sample(m: usize, n: usize, tag: AlgebraTag, stream: &mut RandomStream) -> Result<MatrixF> {
    if n < m {
        return Err(Error::ShapeMismatch { left: (n, m), right: (m, m) });
    }
    let g = algebra::gaussian_matrix(n, m, tag, stream)?;
    algebra::orthonormalize(&g)
}

/// Chunk boundaries for `samples` total draws: `(chunk_index, chunk_len)`
/// in stream order, the last chunk possibly short.
pub fn chunk_layout(samples: u64, chunk_size: u64) -> Vec<(u64, u64)> {
    assert!(chunk_size > 0, "chunk size must be positive");
    let mut out = Vec::new();
    let mut index = 0u64;
    let mut remaining = samples;
    while remaining > 0 {
        let len = remaining.min(chunk_size);
        out.push((index, len));
        index += 1;
        remaining -= len;
    }
    out
}

/// Evaluates one chunk of `chunk_len` Haar samples on substream
/// `(seed, chunk_index)`. Pure: the same arguments always reproduce the
/// same sums, so chunks may be farmed out to any number of workers.
pub fn integrand_chunk(
    x: &MatrixF,
    integrand: Integrand,
    seed: u64,
    chunk_index: u64,
    chunk_len: u64,
) -> Result<ChunkSums> {
    let tag = x.tag();
    if !tag.sampling_capable() {
        return Err(Error::UnsupportedAlgebra { beta: tag.beta() });
    }
    let (m, n) = (x.rows(), x.cols());
    if n < m {
        return Err(Error::ShapeMismatch { left: (m, n), right: (n, n) });
    }
    let mut stream = RandomStream::new(seed, chunk_index);
    let mut frame = MatrixF::zeros(n, m, tag);
    let mut sums = ChunkSums::default();
    for _ in 0..chunk_len {
        algebra::fill_gaussian(&mut frame, &mut stream);
        algebra::orthonormalize_in_place(&mut frame)?;
        let t = algebra::trace_inner(x, &frame)?;
        let v = match integrand {
            Integrand::TracePower(p) => int_pow(t, p),
            Integrand::ExpTrace => libm::exp(t),
        };
        sums.sum += v;
        sums.sum_sq += v * v;
        sums.count += 1;
    }
    Ok(sums)
}

/// Sequential reference estimator: all chunks in order on one thread.
pub fn estimate(
    x: &MatrixF,
    integrand: Integrand,
    samples: u64,
    seed: u64,
    chunk_size: u64,
) -> Result<MomentEstimate> {
    let mut total = ChunkSums::default();
    for (index, len) in chunk_layout(samples, chunk_size) {
        total = total.merge(integrand_chunk(x, integrand, seed, index, len)?);
    }
    MomentEstimate::from_sums(total)
}

/// Monte Carlo estimate of `∫ (tr XH₁)^power (dH₁)` against the
/// normalized Haar measure.
pub fn moment_estimate(x: &MatrixF, power: u32, samples: u64, seed: u64, chunk_size: u64) -> Result<MomentEstimate> {
    estimate(x, Integrand::TracePower(power), samples, seed, chunk_size)
}

/// Monte Carlo estimate of `∫ etr(XH₁) (dH₁)`.
pub fn etr_estimate(x: &MatrixF, samples: u64, seed: u64, chunk_size: u64) -> Result<MomentEstimate> {
    estimate(x, Integrand::ExpTrace, samples, seed, chunk_size)
}
