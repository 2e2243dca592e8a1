//! Integer partitions: the index set of every κ-sum in the crate.
//!
//! All enumerations are in descending lexicographic order, which is a
//! linear extension of the dominance order and is part of the public
//! contract (coefficient tables and reports are byte-stable across runs).

use alloc::vec::Vec;

use crate::{Error, Result};

/// A partition of a non-negative integer: weakly decreasing positive
/// parts. The empty partition is the unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from its parts, validating monotonicity and
    /// positivity.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be weakly decreasing"));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Weight `k = Σ parts`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let rows = match self.parts.first() {
            Some(&first) => first as usize,
            None => return Partition::empty(),
        };
        let mut parts = Vec::with_capacity(rows);
        for col in 0..rows as u32 {
            parts.push(self.parts.iter().take_while(|&&p| p > col).count() as u32);
        }
        Partition { parts }
    }

    /// Multiplicity of the part value `v`.
    pub fn multiplicity(&self, v: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == v).count() as u32
    }
}

/// All partitions of `k` with at most `max_parts` parts, in descending
/// lexicographic order.
pub fn partitions_of(k: u32, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(k, k, max_parts, &mut current, &mut out);
    out
}

fn descend(remaining: u32, largest: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    let hi = remaining.min(largest);
    // Smallest admissible first part: the remaining slots must absorb the rest.
    let lo = remaining.div_ceil(slots as u32);
    let mut part = hi;
    while part >= lo {
        current.push(part);
        descend(remaining - part, part, slots - 1, current, out);
        current.pop();
        if part == 0 {
            break;
        }
        part -= 1;
    }
}

/// Dominance order on partitions of equal weight: `a ≤ b` iff every prefix
/// sum of `a` is at most the corresponding prefix sum of `b`.
pub fn dominance_leq(a: &Partition, b: &Partition) -> Result<bool> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch);
    }
    let mut sum_a = 0u32;
    let mut sum_b = 0u32;
    for i in 0..a.len().max(b.len()) {
        sum_a += a.parts.get(i).copied().unwrap_or(0);
        sum_b += b.parts.get(i).copied().unwrap_or(0);
        if sum_a > sum_b {
            return Ok(false);
        }
    }
    Ok(true)
}
