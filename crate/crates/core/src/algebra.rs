//! Scalar and matrix arithmetic over ℝ, ℂ and ℍ (with storage-only
//! support for 𝕆).
//!
//! Scalars are stored as `β` consecutive `f64` components; the Hamilton
//! product specializes to complex and real multiplication when the higher
//! components are absent. Only the associative algebras (β ≤ 4) support
//! matrix products, Gram–Schmidt and sampling.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::montecarlo::RandomStream;
use crate::{Error, Result};

/// Selects one of the four real normed division algebras by its real
/// dimension β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraTag {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl AlgebraTag {
    pub fn from_beta(beta: u32) -> Option<Self> {
        match beta {
            1 => Some(AlgebraTag::Real),
            2 => Some(AlgebraTag::Complex),
            4 => Some(AlgebraTag::Quaternion),
            8 => Some(AlgebraTag::Octonion),
            _ => None,
        }
    }

    /// Real dimension of the algebra: 1, 2, 4 or 8.
    pub fn beta(self) -> u32 {
        match self {
            AlgebraTag::Real => 1,
            AlgebraTag::Complex => 2,
            AlgebraTag::Quaternion => 4,
            AlgebraTag::Octonion => 8,
        }
    }

    /// Components per stored scalar.
    pub fn components(self) -> usize {
        self.beta() as usize
    }

    /// Haar sampling and matrix products need associativity; the octonions
    /// only get exact-side (symmetric function) support.
    pub fn sampling_capable(self) -> bool {
        self != AlgebraTag::Octonion
    }
}

// Scalar helpers over `&[f64]` slices of length β.

#[inline]
fn s_conj(a: &mut [f64]) {
    for c in &mut a[1..] {
        *c = -*c;
    }
}

/// Real part of the product `a·b`: `a₀b₀ − Σ_{c≥1} a_c b_c`.
#[inline]
fn s_re_mul(a: &[f64], b: &[f64]) -> f64 {
    let mut re = a[0] * b[0];
    for c in 1..a.len() {
        re -= a[c] * b[c];
    }
    re
}

/// Hamilton product `out = a·b`, specialized by component count.
#[inline]
fn s_mul(a: &[f64], b: &[f64], out: &mut [f64]) {
    match a.len() {
        1 => out[0] = a[0] * b[0],
        2 => {
            out[0] = a[0] * b[0] - a[1] * b[1];
            out[1] = a[0] * b[1] + a[1] * b[0];
        }
        4 => {
            out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
            out[1] = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
            out[2] = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
            out[3] = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
        }
        _ => unreachable!("no product for this algebra"),
    }
}

/// `out = conj(a)·b`, the pointwise term of the Hermitian inner product.
#[inline]
fn s_conj_mul(a: &[f64], b: &[f64], out: &mut [f64]) {
    match a.len() {
        1 => out[0] = a[0] * b[0],
        2 => {
            out[0] = a[0] * b[0] + a[1] * b[1];
            out[1] = a[0] * b[1] - a[1] * b[0];
        }
        4 => {
            out[0] = a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
            out[1] = a[0] * b[1] - a[1] * b[0] - a[2] * b[3] + a[3] * b[2];
            out[2] = a[0] * b[2] + a[1] * b[3] - a[2] * b[0] - a[3] * b[1];
            out[3] = a[0] * b[3] - a[1] * b[2] + a[2] * b[1] - a[3] * b[0];
        }
        _ => unreachable!("no product for this algebra"),
    }
}

#[inline]
fn s_norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|c| c * c).sum()
}

/// Dense matrix over the selected algebra, row-major with β real
/// components per entry. Immutable in all public pipelines once built.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    tag: AlgebraTag,
    data: Vec<f64>,
}

impl MatrixF {
    pub fn zeros(rows: usize, cols: usize, tag: AlgebraTag) -> Self {
        MatrixF {
            rows,
            cols,
            tag,
            data: vec![0.0; rows * cols * tag.components()],
        }
    }

    /// Builds a matrix from row-major per-entry component vectors. Every
    /// entry must carry exactly β components.
    pub fn from_entries(rows: usize, cols: usize, tag: AlgebraTag, entries: &[Vec<f64>]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument("entry count must be rows*cols"));
        }
        let beta = tag.components();
        let mut m = MatrixF::zeros(rows, cols, tag);
        for (e, chunk) in entries.iter().zip(m.data.chunks_mut(beta)) {
            if e.len() != beta {
                return Err(Error::InvalidArgument("entry component count must equal beta"));
            }
            chunk.copy_from_slice(e);
        }
        if !m.data.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidArgument("matrix components must be finite"));
        }
        Ok(m)
    }

    /// Real matrix from plain values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        let entries: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
        MatrixF::from_entries(rows, cols, AlgebraTag::Real, &entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[f64] {
        let b = self.tag.components();
        let off = (i * self.cols + j) * b;
        &self.data[off..off + b]
    }

    #[inline]
    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let b = self.tag.components();
        let off = (i * self.cols + j) * b;
        &mut self.data[off..off + b]
    }

    /// `A*`: transpose with entrywise conjugation.
    pub fn conj_transpose(&self) -> MatrixF {
        let mut out = MatrixF::zeros(self.cols, self.rows, self.tag);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = out.entry_mut(j, i);
                e.copy_from_slice(self.entry(i, j));
                s_conj(e);
            }
        }
        out
    }

    /// Plain matrix product over the algebra (β ≤ 4).
    pub fn matmul(&self, rhs: &MatrixF) -> Result<MatrixF> {
        if self.tag != rhs.tag {
            return Err(Error::AlgebraMismatch);
        }
        if !self.tag.sampling_capable() {
            return Err(Error::UnsupportedAlgebra { beta: self.tag.beta() });
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let b = self.tag.components();
        let mut out = MatrixF::zeros(self.rows, rhs.cols, self.tag);
        let mut prod = [0.0; 8];
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                for k in 0..self.cols {
                    s_mul(self.entry(i, k), rhs.entry(k, j), &mut prod[..b]);
                    let e = out.entry_mut(i, j);
                    for c in 0..b {
                        e[c] += prod[c];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplies every component by the real scalar `a`.
    pub fn scale(&self, a: f64) -> MatrixF {
        let mut out = self.clone();
        for c in &mut out.data {
            *c *= a;
        }
        out
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// Frobenius norm over all real components.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|c| c * c).sum())
    }

    /// Max-norm of `self − other`, entrywise over components.
    pub fn max_abs_diff(&self, other: &MatrixF) -> f64 {
        debug_assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// Raw component storage, row-major, β components per entry.
    pub fn components(&self) -> &[f64] {
        &self.data
    }
}

/// `Re tr(X·H)`: the real trace form used as the scalar `tr(XH₁)` for
/// every β (for β = 1 this is exactly the trace).
pub fn trace_inner(x: &MatrixF, h: &MatrixF) -> Result<f64> {
    if x.tag != h.tag {
        return Err(Error::AlgebraMismatch);
    }
    if x.cols != h.rows || x.rows != h.cols {
        return Err(Error::ShapeMismatch {
            left: (x.rows, x.cols),
            right: (h.rows, h.cols),
        });
    }
    let mut acc = 0.0;
    for i in 0..x.rows {
        for k in 0..x.cols {
            acc += s_re_mul(x.entry(i, k), h.entry(k, i));
        }
    }
    Ok(acc)
}

/// Convenience alias for `A*` as a free function.
pub fn conj_transpose(a: &MatrixF) -> MatrixF {
    a.conj_transpose()
}

/// Fills `m` with i.i.d. standard normal components drawn from `stream`.
pub fn fill_gaussian(m: &mut MatrixF, stream: &mut RandomStream) {
    let len = m.data.len();
    let mut i = 0;
    while i + 1 < len {
        let (a, b) = stream.next_normal_pair();
        m.data[i] = a;
        m.data[i + 1] = b;
        i += 2;
    }
    if i < len {
        m.data[i] = stream.next_normal_pair().0;
    }
}

/// Matrix with every real component an i.i.d. standard normal draw.
pub fn gaussian_matrix(rows: usize, cols: usize, tag: AlgebraTag, stream: &mut RandomStream) -> Result<MatrixF> {
    if !tag.sampling_capable() {
        return Err(Error::UnsupportedAlgebra { beta: tag.beta() });
    }
    let mut m = MatrixF::zeros(rows, cols, tag);
    fill_gaussian(&mut m, stream);
    Ok(m)
}

const PIVOT_TOL: f64 = 1e-10;

/// Modified Gram–Schmidt over the algebra, in place, with one
/// reorthogonalization pass per column so that `‖Q*Q − I‖_max` stays at
/// the 1e-15 level even for ill-conditioned inputs.
pub fn orthonormalize_in_place(g: &mut MatrixF) -> Result<()> {
    if !g.tag.sampling_capable() {
        return Err(Error::UnsupportedAlgebra { beta: g.tag.beta() });
    }
    let (n, m, b) = (g.rows, g.cols, g.tag.components());
    if n < m {
        return Err(Error::ShapeMismatch { left: (n, m), right: (m, m) });
    }
    let mut coef = [0.0; 8];
    let mut prod = [0.0; 8];
    for j in 0..m {
        for _pass in 0..2 {
            for i in 0..j {
                // coef = <q_i, g_j> = Σ_k conj(q_i[k])·g_j[k]
                coef[..b].fill(0.0);
                for k in 0..n {
                    s_conj_mul(g.entry(k, i), g.entry(k, j), &mut prod[..b]);
                    for c in 0..b {
                        coef[c] += prod[c];
                    }
                }
                // g_j -= q_i · coef (right coefficient keeps <q_i, ·> linear)
                for k in 0..n {
                    s_mul(g.entry(k, i), &coef[..b], &mut prod[..b]);
                    let e = g.entry_mut(k, j);
                    for c in 0..b {
                        e[c] -= prod[c];
                    }
                }
            }
        }
        let mut norm_sq = 0.0;
        for k in 0..n {
            norm_sq += s_norm_sq(g.entry(k, j));
        }
        let norm = libm::sqrt(norm_sq);
        if norm < PIVOT_TOL {
            return Err(Error::DegenerateInput);
        }
        let inv = 1.0 / norm;
        for k in 0..n {
            for c in g.entry_mut(k, j) {
                *c *= inv;
            }
        }
    }
    Ok(())
}

/// Returns `H₁` with `H₁*H₁ = I` and the column span of `g`.
pub fn orthonormalize(g: &MatrixF) -> Result<MatrixF> {
    let mut out = g.clone();
    orthonormalize_in_place(&mut out)?;
    Ok(out)
}

/// Real eigenvalues of a self-adjoint matrix, weakly decreasing. For β = 4
/// the even-multiplicity spectrum of the 2m×2m complex adjoint is
/// deduplicated to `m` values.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenList {
    values: Vec<f64>,
}

impl EigenList {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

const HERMITIAN_TOL: f64 = 1e-10;
const QUATERNION_PAIR_TOL: f64 = 1e-8;

/// Eigenvalues of a Hermitian matrix over the algebra (β ≤ 4).
///
/// Real and complex matrices are solved directly by cyclic complex Jacobi;
/// quaternion matrices go through their complex adjoint representation,
/// whose spectrum has even multiplicity — each pair is checked and
/// returned once.
pub fn hermitian_eigenvalues(b: &MatrixF) -> Result<EigenList> {
    if !b.tag.sampling_capable() {
        return Err(Error::UnsupportedAlgebra { beta: b.tag.beta() });
    }
    if b.rows != b.cols {
        return Err(Error::ShapeMismatch { left: (b.rows, b.cols), right: (b.cols, b.rows) });
    }
    let deviation = b.max_abs_diff(&b.conj_transpose());
    if deviation > HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    let m = b.rows;
    let (d, a) = match b.tag {
        AlgebraTag::Real | AlgebraTag::Complex => {
            let mut a = vec![Complex64::new(0.0, 0.0); m * m];
            for i in 0..m {
                for j in 0..m {
                    let e = b.entry(i, j);
                    a[i * m + j] = Complex64::new(e[0], if b.tag == AlgebraTag::Complex { e[1] } else { 0.0 });
                }
            }
            (m, a)
        }
        AlgebraTag::Quaternion => (2 * m, complex_adjoint(b)),
        AlgebraTag::Octonion => unreachable!(),
    };
    let mut values = jacobi_hermitian(a, d);
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    if b.tag == AlgebraTag::Quaternion {
        // Adjoint eigenvalues come in equal pairs; keep one per pair.
        let mut dedup = Vec::with_capacity(m);
        for pair in values.chunks(2) {
            let scale = pair[0].abs().max(1.0);
            if (pair[0] - pair[1]).abs() > QUATERNION_PAIR_TOL * scale {
                return Err(Error::InvalidArgument("quaternion adjoint spectrum failed to pair"));
            }
            dedup.push(pair[0]);
        }
        values = dedup;
    }
    Ok(EigenList { values })
}

/// Complex 2m×2m adjoint of a quaternion m×m matrix: the entry
/// `a + bi + cj + dk` maps to the block `[[a+bi, c+di], [−c+di, a−bi]]`.
fn complex_adjoint(b: &MatrixF) -> Vec<Complex64> {
    let m = b.rows;
    let d = 2 * m;
    let mut a = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..m {
        for j in 0..m {
            let e = b.entry(i, j);
            let (r0, r1) = (2 * i, 2 * i + 1);
            let (c0, c1) = (2 * j, 2 * j + 1);
            a[r0 * d + c0] = Complex64::new(e[0], e[1]);
            a[r0 * d + c1] = Complex64::new(e[2], e[3]);
            a[r1 * d + c0] = Complex64::new(-e[2], e[3]);
            a[r1 * d + c1] = Complex64::new(e[0], -e[1]);
        }
    }
    a
}

/// Cyclic Jacobi for complex Hermitian matrices; returns the unordered
/// real spectrum. Sizes here are tiny (≤ 2m), so convergence is cheap.
fn jacobi_hermitian(mut a: Vec<Complex64>, d: usize) -> Vec<f64> {
    if d == 0 {
        return Vec::new();
    }
    let scale = a.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..d {
            for q in p + 1..d {
                off = off.max(a[p * d + q].norm());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let ab = apq.norm();
                if ab <= 1e-300 {
                    continue;
                }
                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let tau = (app - aqq) / (2.0 * ab);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let phase = apq / ab; // e^{iφ}
                for k in 0..d {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    let new_kp = c * akp + s * phase.conj() * akq;
                    let new_kq = -s * phase * akp + c * akq;
                    a[k * d + p] = new_kp;
                    a[k * d + q] = new_kq;
                    a[p * d + k] = new_kp.conj();
                    a[q * d + k] = new_kq.conj();
                }
                let shift = 2.0 * c * s * ab;
                a[p * d + p] = Complex64::new(app * c * c + aqq * s * s + shift, 0.0);
                a[q * d + q] = Complex64::new(app * s * s + aqq * c * c - shift, 0.0);
                a[p * d + q] = Complex64::new(0.0, 0.0);
                a[q * d + p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    (0..d).map(|i| a[i * d + i].re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn stream(seed: u64) -> RandomStream {
        RandomStream::new(seed, 0)
    }

    #[test]
    fn conj_transpose_examples() {
        let a = MatrixF::from_real(2, 1, &[1.0, 2.0]).unwrap();
        let t = a.conj_transpose();
        assert_eq!((t.rows(), t.cols()), (1, 2));
        assert_eq!(t.entry(0, 0), &[1.0]);
        assert_eq!(t.entry(0, 1), &[2.0]);

        let z = MatrixF::from_entries(1, 1, AlgebraTag::Complex, &[vec![3.0, 4.0]]).unwrap();
        assert_eq!(z.conj_transpose().entry(0, 0), &[3.0, -4.0]);

        let q = MatrixF::from_entries(1, 1, AlgebraTag::Quaternion, &[vec![1.0, 2.0, 3.0, 4.0]]).unwrap();
        assert_eq!(q.conj_transpose().entry(0, 0), &[1.0, -2.0, -3.0, -4.0]);
    }

    #[test]
    fn conj_transpose_is_involution() {
        let mut s = stream(11);
        for tag in [AlgebraTag::Real, AlgebraTag::Complex, AlgebraTag::Quaternion] {
            let a = gaussian_matrix(3, 2, tag, &mut s).unwrap();
            assert_eq!(a.conj_transpose().conj_transpose(), a);
        }
    }

    #[test]
    fn trace_inner_real_projection() {
        let theta = 0.7f64;
        let x = MatrixF::from_real(1, 2, &[1.0, 0.0]).unwrap();
        let h = MatrixF::from_real(2, 1, &[libm::cos(theta), libm::sin(theta)]).unwrap();
        assert!((trace_inner(&x, &h).unwrap() - libm::cos(theta)).abs() < 1e-15);
    }

    #[test]
    fn trace_inner_complex_phase() {
        // X = x, H = e^{iθ}: Re(x e^{iθ}) = |x| cos(θ + arg x)
        let (xr, xi, theta) = (1.2f64, -0.5f64, 0.3f64);
        let x = MatrixF::from_entries(1, 1, AlgebraTag::Complex, &[vec![xr, xi]]).unwrap();
        let h = MatrixF::from_entries(1, 1, AlgebraTag::Complex, &[vec![libm::cos(theta), libm::sin(theta)]]).unwrap();
        let expect = libm::sqrt(xr * xr + xi * xi) * libm::cos(theta + libm::atan2(xi, xr));
        assert!((trace_inner(&x, &h).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn trace_inner_quaternion_real_part() {
        let h = MatrixF::from_entries(1, 1, AlgebraTag::Quaternion, &[vec![0.5, 0.5, 0.5, 0.5]]).unwrap();
        let x = MatrixF::from_entries(1, 1, AlgebraTag::Quaternion, &[vec![1.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!((trace_inner(&x, &h).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn trace_inner_shape_mismatch() {
        let x = MatrixF::from_real(1, 2, &[1.0, 0.0]).unwrap();
        let h = MatrixF::from_real(1, 2, &[1.0, 0.0]).unwrap();
        assert!(matches!(trace_inner(&x, &h), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn trace_inner_is_bilinear() {
        let mut s = stream(5);
        for tag in [AlgebraTag::Real, AlgebraTag::Complex, AlgebraTag::Quaternion] {
            let x1 = gaussian_matrix(2, 3, tag, &mut s).unwrap();
            let x2 = gaussian_matrix(2, 3, tag, &mut s).unwrap();
            let h = gaussian_matrix(3, 2, tag, &mut s).unwrap();
            let mut sum = x1.clone();
            for i in 0..2 {
                for j in 0..3 {
                    let e2 = x2.entry(i, j).to_vec();
                    let e = sum.entry_mut(i, j);
                    for c in 0..e.len() {
                        e[c] = 2.0 * e[c] + 3.0 * e2[c];
                    }
                }
            }
            let lhs = trace_inner(&sum, &h).unwrap();
            let rhs = 2.0 * trace_inner(&x1, &h).unwrap() + 3.0 * trace_inner(&x2, &h).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_is_deterministic_per_stream() {
        let a = gaussian_matrix(3, 2, AlgebraTag::Quaternion, &mut stream(42)).unwrap();
        let b = gaussian_matrix(3, 2, AlgebraTag::Quaternion, &mut stream(42)).unwrap();
        assert_eq!(a, b);
        let c = gaussian_matrix(3, 2, AlgebraTag::Quaternion, &mut stream(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gaussian_rejects_octonion() {
        assert!(matches!(
            gaussian_matrix(1, 1, AlgebraTag::Octonion, &mut stream(1)),
            Err(Error::UnsupportedAlgebra { beta: 8 })
        ));
    }

    #[test]
    fn gaussian_component_mean_clt() {
        // Sample mean over 1e6 draws stays within the 4/sqrt(N) CLT band.
        let mut s = stream(7);
        let n = 1_000_000usize;
        let mut sum = 0.0;
        for _ in 0..n / 2 {
            let (a, b) = s.next_normal_pair();
            sum += a + b;
        }
        assert!((sum / n as f64).abs() < 4e-3);
    }

    #[test]
    fn orthonormalize_normalizes_real_vector() {
        let g = MatrixF::from_real(2, 1, &[3.0, 4.0]).unwrap();
        let h = orthonormalize(&g).unwrap();
        assert!((h.entry(0, 0)[0] - 0.6).abs() < 1e-15);
        assert!((h.entry(1, 0)[0] - 0.8).abs() < 1e-15);
    }

    fn orthonormality_defect(h: &MatrixF) -> f64 {
        let gram = h.conj_transpose().matmul(h).unwrap();
        let mut eye = MatrixF::zeros(h.cols(), h.cols(), h.tag());
        for i in 0..h.cols() {
            eye.entry_mut(i, i)[0] = 1.0;
        }
        gram.max_abs_diff(&eye)
    }

    #[test]
    fn orthonormalize_is_idempotent() {
        let mut s = stream(3);
        let g = gaussian_matrix(4, 2, AlgebraTag::Complex, &mut s).unwrap();
        let h = orthonormalize(&g).unwrap();
        let h2 = orthonormalize(&h).unwrap();
        assert!(h.max_abs_diff(&h2) < 1e-12);
    }

    #[test]
    fn orthonormalize_quaternion_frame() {
        let mut s = stream(9);
        let g = gaussian_matrix(4, 2, AlgebraTag::Quaternion, &mut s).unwrap();
        let h = orthonormalize(&g).unwrap();
        assert!(orthonormality_defect(&h) < 1e-12);
    }

    #[test]
    fn orthonormalize_detects_rank_deficiency() {
        let g = MatrixF::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(orthonormalize(&g), Err(Error::DegenerateInput));
    }

    #[test]
    fn orthonormality_holds_across_trial_grid() {
        // 1e4 trials per (β, m, n) would be slow in the unit suite; the
        // full count runs in the integration tests. 300 here still covers
        // the conditioning spread.
        for tag in [AlgebraTag::Real, AlgebraTag::Complex, AlgebraTag::Quaternion] {
            for (m, n) in [(1usize, 2usize), (2, 3), (2, 4)] {
                let mut s = RandomStream::new(1234, tag.beta() as u64);
                for _ in 0..300 {
                    let g = gaussian_matrix(n, m, tag, &mut s).unwrap();
                    let h = orthonormalize(&g).unwrap();
                    assert!(orthonormality_defect(&h) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn eigenvalues_diagonal_real() {
        let b = MatrixF::from_real(2, 2, &[3.0, 0.0, 0.0, 1.0]).unwrap();
        let e = hermitian_eigenvalues(&b).unwrap();
        assert_eq!(e.values(), &[3.0, 1.0]);
    }

    #[test]
    fn eigenvalues_complex_2x2() {
        // [[2, i], [−i, 2]] has eigenvalues 3 and 1.
        let b = MatrixF::from_entries(
            2,
            2,
            AlgebraTag::Complex,
            &[vec![2.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0], vec![2.0, 0.0]],
        )
        .unwrap();
        let e = hermitian_eigenvalues(&b).unwrap();
        assert!((e.values()[0] - 3.0).abs() < 1e-12);
        assert!((e.values()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_quaternion_scalar() {
        let b = MatrixF::from_entries(1, 1, AlgebraTag::Quaternion, &[vec![5.0, 0.0, 0.0, 0.0]]).unwrap();
        let e = hermitian_eigenvalues(&b).unwrap();
        assert_eq!(e.values().len(), 1);
        assert!((e.values()[0] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let b = MatrixF::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&b), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn eigenvalue_trace_identities() {
        // Σλ = Re tr(B) and Σλ² = tr(B²) pin the solver against an
        // implementation-independent oracle.
        let mut s = stream(21);
        for tag in [AlgebraTag::Real, AlgebraTag::Complex, AlgebraTag::Quaternion] {
            for m in 1..=4usize {
                let x = gaussian_matrix(m, m + 1, tag, &mut s).unwrap();
                let b = x.matmul(&x.conj_transpose()).unwrap();
                let e = hermitian_eigenvalues(&b).unwrap();
                let mut tr = 0.0;
                for i in 0..m {
                    tr += b.entry(i, i)[0];
                }
                let sum: f64 = e.values().iter().sum();
                assert!((sum - tr).abs() <= 1e-9 * tr.abs().max(1.0), "beta={} m={m}", tag.beta());

                let b2 = b.matmul(&b).unwrap();
                let mut tr2 = 0.0;
                for i in 0..m {
                    tr2 += b2.entry(i, i)[0];
                }
                let sum2: f64 = e.values().iter().map(|v| v * v).sum();
                assert!((sum2 - tr2).abs() <= 1e-8 * tr2.abs().max(1.0));

                // Gram matrices are positive semidefinite.
                let norm = e.values()[0].abs().max(1.0);
                assert!(e.values().iter().all(|&v| v >= -1e-9 * norm));
            }
        }
    }

    #[test]
    fn quaternion_adjoint_pairs_are_tight() {
        let mut s = stream(33);
        for m in 1..=3usize {
            let x = gaussian_matrix(m, m + 2, AlgebraTag::Quaternion, &mut s).unwrap();
            let b = x.matmul(&x.conj_transpose()).unwrap();
            let adj = complex_adjoint(&b);
            let mut vals = jacobi_hermitian(adj, 2 * m);
            vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for pair in vals.chunks(2) {
                assert!((pair[0] - pair[1]).abs() <= 1e-8 * pair[0].abs().max(1.0));
            }
        }
    }
}
