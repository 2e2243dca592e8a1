//! Exact-rational Jack polynomials `C_κ^β` with parameter `α = 2/β`,
//! generalized Pochhammer symbols and the multivariate gamma function.
//!
//! The C-normalization is pinned without transcribed hook constants:
//! first the monic polynomials `P_κ` (leading monomial coefficient 1,
//! triangular in dominance order) are built by Gram–Schmidt against the
//! α-deformed power-sum inner product `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ α^{ℓ(λ)}`,
//! then the triangular system `Σ_{κ⊢k} d_κ P_κ = (p₁)^k` is solved in
//! exact rationals and `C_κ = d_κ P_κ`. The defining sum identity
//! `Σ_{κ⊢k} C_κ = (tr B)^k` therefore holds exactly by construction and
//! is asserted at build time.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::AlgebraTag;
use crate::partitions::{dominance_leq, partitions_of, Partition};
use crate::{Error, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

/// Small-integer rational literal.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Jack parameter `α = 2/β` for the algebra.
pub fn jack_alpha(tag: AlgebraTag) -> Rational {
    rat(2, tag.beta() as i64)
}

/// Rising factorial `(a)_i = a(a+1)⋯(a+i−1)`; the empty product is 1.
pub fn rising_factorial(a: f64, i: u32) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Exact-rational rising factorial.
pub fn rising_factorial_exact(a: &Rational, i: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i {
        acc *= a + Rational::from(BigInt::from(j));
    }
    acc
}

/// Exact factorial `k!`.
pub fn factorial_exact(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Generalized Pochhammer symbol `[a]^β_κ = Π_i (a − (i−1)β/2)_{k_i}`.
///
/// The domain condition `a > (ℓ−1)β/2 − k_ℓ` is enforced. A zero value
/// is legitimate in numerators; callers dividing by the symbol must
/// treat it as a pole (see [`gen_pochhammer_denominator`]).
pub fn gen_pochhammer(a: f64, kappa: &Partition, tag: AlgebraTag) -> Result<f64> {
    let half_beta = tag.beta() as f64 / 2.0;
    let parts = kappa.parts();
    if let Some(&last) = parts.last() {
        let bound = (parts.len() as f64 - 1.0) * half_beta - last as f64;
        if a <= bound {
            return Err(Error::PochhammerDomain { a });
        }
    }
    Ok(gen_pochhammer_product(a, kappa, tag))
}

/// The bare product `Π_i (a − (i−1)β/2)_{k_i}` without the domain check,
/// for numerator parameters where the finite product is always defined.
pub fn gen_pochhammer_product(a: f64, kappa: &Partition, tag: AlgebraTag) -> f64 {
    let half_beta = tag.beta() as f64 / 2.0;
    let mut acc = 1.0;
    for (i, &k_i) in kappa.parts().iter().enumerate() {
        let base = a - i as f64 * half_beta;
        for j in 0..k_i {
            acc *= base + j as f64;
        }
    }
    acc
}

/// [`gen_pochhammer`] with the additional requirement that the value is
/// nonzero, for use in denominators.
pub fn gen_pochhammer_denominator(a: f64, kappa: &Partition, tag: AlgebraTag) -> Result<f64> {
    let v = gen_pochhammer(a, kappa, tag)?;
    if v == 0.0 {
        return Err(Error::PochhammerDomain { a });
    }
    Ok(v)
}

/// `log Γ^β_m[a] = (m(m−1)β/4)·log π + Σ_i log Γ(a − (i−1)β/2)`.
pub fn mv_log_gamma(m: usize, tag: AlgebraTag, a: f64) -> Result<f64> {
    let half_beta = tag.beta() as f64 / 2.0;
    if m == 0 {
        return Err(Error::InvalidArgument("multivariate gamma needs m >= 1"));
    }
    if a <= (m as f64 - 1.0) * half_beta {
        return Err(Error::GammaDomain { a });
    }
    let mut acc = (m * (m - 1)) as f64 * half_beta / 2.0 * libm::log(core::f64::consts::PI);
    for i in 0..m {
        acc += libm::lgamma(a - i as f64 * half_beta);
    }
    Ok(acc)
}

/// Monomial symmetric polynomial `m_λ(x)`: zero when `ℓ(λ) > len(x)`.
pub fn monomial_eval(lambda: &Partition, x: &[f64]) -> f64 {
    if lambda.len() > x.len() {
        return 0.0;
    }
    if lambda.is_empty() {
        return 1.0;
    }
    // Group equal parts; sum over assignments of disjoint index sets.
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in lambda.parts() {
        match groups.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => groups.push((p, 1)),
        }
    }
    fn recurse(groups: &[(u32, usize)], x: &[f64], used: u64, acc: f64) -> f64 {
        let Some(&(value, count)) = groups.first() else {
            return acc;
        };
        let rest = &groups[1..];
        let mut total = 0.0;
        // Choose `count` ascending unused indices for this part value.
        let mut choice = vec![0usize; count];
        fn pick(
            slot: usize,
            start: usize,
            value: u32,
            choice: &mut [usize],
            rest: &[(u32, usize)],
            x: &[f64],
            used: u64,
            acc: f64,
            total: &mut f64,
        ) {
            if slot == choice.len() {
                *total += recurse(rest, x, used, acc);
                return;
            }
            for i in start..x.len() {
                if used & (1 << i) != 0 {
                    continue;
                }
                let mut pow = 1.0;
                for _ in 0..value {
                    pow *= x[i];
                }
                choice[slot] = i;
                pick(slot + 1, i + 1, value, choice, rest, x, used | (1 << i), acc * pow, total);
            }
        }
        pick(0, 0, value, &mut choice, rest, x, used, acc, &mut total);
        total
    }
    recurse(&groups, x, 0, 1.0)
}

/// Exact monomial-expansion table of the Jack polynomials `C_κ^β` for all
/// weights up to `max_weight`. Immutable and shareable once built.
#[derive(Debug, Clone)]
pub struct JackTable {
    tag: AlgebraTag,
    alpha: Rational,
    max_weight: u32,
    /// κ → sparse m-expansion, λ in descending lexicographic order.
    coeffs: BTreeMap<Partition, Vec<(Partition, Rational)>>,
    /// κ → (λ, coefficient as f64) sorted by descending |coefficient|,
    /// the evaluation order of the compensated sum.
    eval: BTreeMap<Partition, Vec<(Partition, f64)>>,
}

impl JackTable {
    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Exact m-expansion of `C_κ`, or `None` if κ exceeds the table.
    pub fn coefficients(&self, kappa: &Partition) -> Option<&[(Partition, Rational)]> {
        self.coeffs.get(kappa).map(|v| v.as_slice())
    }
}

/// Builds the exact coefficient table for all partitions of weight at
/// most `max_weight` (desk scale: `max_weight ≤ 12`).
pub fn build_jack_table(max_weight: u32, tag: AlgebraTag) -> JackTable {
    let alpha = jack_alpha(tag);
    let mut coeffs = BTreeMap::new();
    let mut eval = BTreeMap::new();
    for k in 0..=max_weight {
        for (kappa, expansion) in build_weight(k, &alpha) {
            let mut by_magnitude: Vec<(Partition, f64)> = expansion
                .iter()
                .map(|(l, c)| (l.clone(), c.to_f64().expect("coefficient fits in f64")))
                .collect();
            by_magnitude.sort_by(|a, b| b.1.abs().partial_cmp(&a.1.abs()).unwrap());
            eval.insert(kappa.clone(), by_magnitude);
            coeffs.insert(kappa, expansion);
        }
    }
    JackTable {
        tag,
        alpha,
        max_weight,
        coeffs,
        eval,
    }
}

/// `C_κ^β` evaluated at the eigenvalue list `x`, by compensated
/// summation over the monomial expansion. Zero when `ℓ(κ) > len(x)`.
pub fn jack_c(table: &JackTable, kappa: &Partition, x: &[f64]) -> Result<f64> {
    if kappa.weight() > table.max_weight {
        return Err(Error::TableTooSmall {
            needed: kappa.weight() as usize,
            have: table.max_weight as usize,
        });
    }
    if kappa.len() > x.len() {
        return Ok(0.0);
    }
    let terms = table.eval.get(kappa).expect("weight covered by table");
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (lambda, coeff) in terms {
        if lambda.len() > x.len() {
            continue;
        }
        let term = coeff * monomial_eval(lambda, x);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------
// Symmetric-function machinery (private): everything below works with
// coordinate vectors over the fixed descending-lex partition list of one
// weight.

type MExpansion = BTreeMap<Partition, Rational>;

/// `p_r · f` for an m-expansion `f`: each monomial gains `r` on one
/// distinct part value (or a fresh part), with multiplicity equal to the
/// count of the grown value in the result.
fn mul_power_sum(f: &MExpansion, r: u32) -> MExpansion {
    let mut out = MExpansion::new();
    for (mu, coeff) in f {
        let mut targets: Vec<u32> = mu.parts().to_vec();
        targets.dedup();
        targets.push(0); // fresh part
        for &u in &targets {
            let mut parts: Vec<u32> = mu.parts().to_vec();
            if u == 0 {
                parts.push(r);
            } else {
                let pos = parts.iter().position(|&p| p == u).unwrap();
                parts[pos] = u + r;
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let nu = Partition::new(parts).unwrap();
            let mult = Rational::from(BigInt::from(nu.multiplicity(u + r)));
            *out.entry(nu).or_insert_with(Rational::zero) += coeff * mult;
        }
    }
    out
}

/// `p_λ` in the monomial basis.
fn power_sum_in_monomials(lambda: &Partition) -> MExpansion {
    let mut f = MExpansion::new();
    f.insert(Partition::empty(), Rational::one());
    for &r in lambda.parts() {
        f = mul_power_sum(&f, r);
    }
    f
}

/// `z_λ = Π_j j^{m_j} m_j!` over distinct part values `j`.
fn z_lambda(lambda: &Partition) -> Rational {
    let mut acc = BigInt::one();
    let mut parts = lambda.parts().to_vec();
    parts.dedup();
    for v in parts {
        let m = lambda.multiplicity(v);
        for _ in 0..m {
            acc *= BigInt::from(v);
        }
        acc *= factorial_exact(m);
    }
    Rational::from(acc)
}

/// Gauss–Jordan inverse of a square rational matrix.
fn invert(mut a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrix is invertible");
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] -= t;
                let t = &factor * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    inv
}

/// All `C_κ` of weight `k` as sparse m-expansions, κ in descending lex
/// order.
fn build_weight(k: u32, alpha: &Rational) -> Vec<(Partition, Vec<(Partition, Rational)>)> {
    let parts_list = partitions_of(k, k as usize);
    let n = parts_list.len();
    let index: BTreeMap<&Partition, usize> = parts_list.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Transition matrix: p_λ = Σ_μ a[λ][μ] m_μ, then m in p by inversion.
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (i, lambda) in parts_list.iter().enumerate() {
        for (mu, c) in power_sum_in_monomials(lambda) {
            a[i][index[&mu]] = c;
        }
    }
    let m_in_p = invert(a.clone());

    // Diagonal Gram weights of the α-deformed power-sum inner product.
    let weights: Vec<Rational> = parts_list
        .iter()
        .map(|l| {
            let mut w = z_lambda(l);
            for _ in 0..l.len() {
                w *= alpha;
            }
            w
        })
        .collect();
    let inner = |f: &[Rational], g: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..f.len() {
            if !f[i].is_zero() && !g[i].is_zero() {
                acc += &f[i] * &g[i] * &weights[i];
            }
        }
        acc
    };

    // Gram–Schmidt in ascending lex order (a linear extension of
    // dominance from below) yields the monic dominance-triangular
    // orthogonal family.
    struct Monic {
        idx: usize,
        in_m: Vec<Rational>,
        in_p: Vec<Rational>,
        norm_sq: Rational,
    }
    let mut family: Vec<Monic> = Vec::with_capacity(n);
    for idx in (0..n).rev() {
        let mut in_m = vec![Rational::zero(); n];
        in_m[idx] = Rational::one();
        let mut in_p = m_in_p[idx].clone();
        for prev in &family {
            let num = inner(&in_p, &prev.in_p);
            if num.is_zero() {
                continue;
            }
            let c = num / &prev.norm_sq;
            for j in 0..n {
                let t = &c * &prev.in_m[j];
                in_m[j] -= t;
                let t = &c * &prev.in_p[j];
                in_p[j] -= t;
            }
        }
        let norm_sq = inner(&in_p, &in_p);
        assert!(norm_sq.is_positive(), "inner product must be positive definite");
        family.push(Monic { idx, in_m, in_p, norm_sq });
    }
    family.reverse(); // descending lex, same as parts_list

    // Solve Σ_κ d_κ P_κ = (p₁)^k by back-substitution down the lex order.
    let ones = Partition::new(vec![1; k as usize]).unwrap();
    let mut target = match k {
        0 => vec![Rational::one()],
        _ => power_sum_in_monomials(&ones)
            .into_iter()
            .fold(vec![Rational::zero(); n], |mut acc, (mu, c)| {
                acc[index[&mu]] = c;
                acc
            }),
    };
    let mut out = Vec::with_capacity(n);
    for (pos, monic) in family.iter().enumerate() {
        debug_assert_eq!(monic.idx, pos);
        let d = target[pos].clone();
        let mut expansion = Vec::new();
        for j in 0..n {
            if monic.in_m[j].is_zero() {
                continue;
            }
            let coeff = &d * &monic.in_m[j];
            target[j] -= &coeff;
            // Dominance triangularity of the monic family.
            debug_assert!(dominance_leq(&parts_list[j], &parts_list[pos]).unwrap());
            if !coeff.is_zero() {
                expansion.push((parts_list[j].clone(), coeff));
            }
        }
        out.push((parts_list[pos].clone(), expansion));
    }
    assert!(target.iter().all(Rational::is_zero), "sum normalization must close exactly");
    out
}
