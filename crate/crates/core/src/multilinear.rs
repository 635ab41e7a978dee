//! Exterior algebra of the complexified dual of a real vector space.
//!
//! A k-form is stored by its values on strictly increasing basis tuples,
//! enumerated lexicographically. Evaluation uses the determinant convention,
//! `(e¹∧e²)(e₁,e₂) = 1`, and the induced inner product makes
//! `e^{i₁}∧…∧e^{i_k}` orthonormal whenever the coframe is.
//!
//! Index tuples are bit masks (`u32`), so the ambient dimension is capped at
//! [`MAX_DIM`]; the Lie algebras handled here have dimension at most ~16.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{binomial, det_in_place, CMat, RMat, C64};

pub const MAX_DIM: usize = 24;

/// Increasing k-subsets of `{0..n-1}` as bit masks, in lexicographic order of
/// the sorted tuples: `(0,1), (0,2), …, (0,n-1), (1,2), …`.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(binomial(n, k));
    fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | (1 << i), out);
        }
    }
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Position of `mask` in [`subsets`]`(n, popcount(mask))`.
pub fn subset_rank(mask: u32, n: usize) -> usize {
    let k = mask.count_ones() as usize;
    let mut rank = 0;
    let mut prev: isize = -1;
    let mut j = 0;
    for i in 0..n {
        if mask & (1 << i) != 0 {
            j += 1;
            for t in (prev + 1) as usize..i {
                rank += binomial(n - 1 - t, k - j);
            }
            prev = i as isize;
        }
    }
    rank
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Sign picked up by moving index `i` to the front of the tuple `mask`.
#[inline]
pub fn insertion_sign(mask: u32, i: usize) -> f64 {
    if (mask & ((1u32 << i) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the shuffle that sorts the concatenation of `a` and `b` (disjoint).
#[inline]
pub fn merge_sign(a: u32, b: u32) -> f64 {
    let mut inversions = 0;
    let mut bb = b;
    while bb != 0 {
        let k = bb.trailing_zeros();
        inversions += (a >> (k + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sorts a tuple of indices, returning its mask and permutation sign, or
/// `None` if an index repeats.
pub fn sort_tuple(idx: &[usize]) -> Option<(u32, f64)> {
    let mut mask = 0u32;
    let mut sign = 1.0;
    for &i in idx.iter().rev() {
        if mask & (1 << i) != 0 {
            return None;
        }
        sign *= insertion_sign(mask, i);
        mask |= 1 << i;
    }
    Some((mask, sign))
}

/// A complex alternating k-form on an `N`-dimensional real space.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<C64>,
}

impl InvariantForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        InvariantForm {
            dim,
            degree,
            coeffs: vec![C64::new(0.0, 0.0); binomial(dim, degree)],
        }
    }

    pub fn scalar(dim: usize, value: C64) -> Self {
        let mut f = Self::zero(dim, 0);
        f.coeffs[0] = value;
        f
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<C64>) -> Result<Self> {
        let expected = binomial(dim, degree);
        if coeffs.len() != expected || degree > dim {
            return Err(Error::DimensionMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(InvariantForm {
            dim,
            degree,
            coeffs,
        })
    }

    /// `e^{i₁}∧…∧e^{i_k}` for 0-based indices in any order.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = Self::zero(dim, idx.len());
        if let Some((mask, sign)) = sort_tuple(idx) {
            let r = subset_rank(mask, dim);
            f.coeffs[r] = C64::new(sign, 0.0);
        }
        f
    }

    pub fn one_form(values: &[C64]) -> Self {
        InvariantForm {
            dim: values.len(),
            degree: 1,
            coeffs: values.to_vec(),
        }
    }

    pub fn real_one_form(values: &[f64]) -> Self {
        Self::one_form(&values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())
    }

    /// The 2-form with `a(eᵢ,eⱼ) = m[(i,j)]`; only the upper triangle is read.
    pub fn two_form(m: &CMat) -> Self {
        let n = m.nrows();
        let mut f = Self::zero(n, 2);
        for (r, &mask) in subsets(n, 2).iter().enumerate() {
            let ix = mask_indices(mask);
            f.coeffs[r] = m[(ix[0], ix[1])];
        }
        f
    }

    pub fn real_two_form(m: &RMat) -> Self {
        Self::two_form(&m.map(|x| C64::new(x, 0.0)))
    }

    /// Full antisymmetric matrix of a 2-form.
    pub fn to_matrix(&self) -> CMat {
        assert_eq!(self.degree, 2, "to_matrix needs a 2-form");
        let n = self.dim;
        let mut m = CMat::zeros(n, n);
        for (r, &mask) in subsets(n, 2).iter().enumerate() {
            let ix = mask_indices(mask);
            m[(ix[0], ix[1])] = self.coeffs[r];
            m[(ix[1], ix[0])] = -self.coeffs[r];
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff_mask(&self, mask: u32) -> C64 {
        self.coeffs[subset_rank(mask, self.dim)]
    }

    /// Value on basis vectors `e_{idx[0]}, …` (any order, repeats give zero).
    pub fn at(&self, idx: &[usize]) -> C64 {
        assert_eq!(idx.len(), self.degree);
        match sort_tuple(idx) {
            Some((mask, sign)) => self.coeff_mask(mask) * sign,
            None => C64::new(0.0, 0.0),
        }
    }

    /// Value on arbitrary complex vectors (columns of `v`, `N x k`).
    pub fn eval(&self, v: &CMat) -> C64 {
        assert_eq!(v.nrows(), self.dim);
        assert_eq!(v.ncols(), self.degree);
        let k = self.degree;
        if k == 0 {
            return self.coeffs[0];
        }
        let mut buf = vec![C64::new(0.0, 0.0); k * k];
        let mut total = C64::new(0.0, 0.0);
        for (r, &mask) in subsets(self.dim, k).iter().enumerate() {
            let a = self.coeffs[r];
            if a.norm() == 0.0 {
                continue;
            }
            for (row, i) in mask_indices(mask).into_iter().enumerate() {
                for col in 0..k {
                    buf[row * k + col] = v[(i, col)];
                }
            }
            total += a * det_in_place(&mut buf, k);
        }
        total
    }

    /// `a ∘ (A,…,A)`: the form `(X₁,…) ↦ a(AX₁,…,AX_k)`, for `A: N' → N`.
    pub fn pullback(&self, a: &CMat) -> InvariantForm {
        assert_eq!(a.nrows(), self.dim);
        let k = self.degree;
        let target = a.ncols();
        let mut out = InvariantForm::zero(target, k);
        if k == 0 {
            out.coeffs[0] = self.coeffs[0];
            return out;
        }
        let src = subsets(self.dim, k);
        let dst = subsets(target, k);
        let src_ix: Vec<Vec<usize>> = src.iter().map(|&m| mask_indices(m)).collect();
        let mut buf = vec![C64::new(0.0, 0.0); k * k];
        for (r_out, &mk) in dst.iter().enumerate() {
            let kx = mask_indices(mk);
            let mut acc = C64::new(0.0, 0.0);
            for (r_in, ix) in src_ix.iter().enumerate() {
                let coef = self.coeffs[r_in];
                if coef.norm() == 0.0 {
                    continue;
                }
                for (row, &i) in ix.iter().enumerate() {
                    for (col, &kk) in kx.iter().enumerate() {
                        buf[row * k + col] = a[(i, kk)];
                    }
                }
                acc += coef * det_in_place(&mut buf, k);
            }
            out.coeffs[r_out] = acc;
        }
        out
    }

    pub fn pullback_real(&self, a: &RMat) -> InvariantForm {
        self.pullback(&a.map(|x| C64::new(x, 0.0)))
    }

    /// Natural action of an endomorphism `A` of the underlying space:
    /// `(A·a)(X₁,…,X_k) = -Σᵢ a(X₁,…,AXᵢ,…,X_k)`.
    pub fn lie_action(&self, endo: &CMat) -> InvariantForm {
        let n = self.dim;
        assert_eq!(endo.nrows(), n);
        let mut out = InvariantForm::zero(n, self.degree);
        let masks = subsets(n, self.degree);
        for (r, &mask) in masks.iter().enumerate() {
            let ix = mask_indices(mask);
            let mut acc = C64::new(0.0, 0.0);
            for pos in 0..ix.len() {
                let mut tuple = ix.clone();
                for m in 0..n {
                    let a = endo[(m, ix[pos])];
                    if a.norm() == 0.0 {
                        continue;
                    }
                    tuple[pos] = m;
                    acc -= a * self.at(&tuple);
                }
            }
            out.coeffs[r] = acc;
        }
        out
    }

    pub fn conj(&self) -> InvariantForm {
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> InvariantForm {
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|z| z * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |a, z| a.max(z.im.abs()))
    }

    /// Largest coefficient difference; forms of different shape compare as infinite.
    pub fn distance(&self, other: &InvariantForm) -> f64 {
        if self.dim != other.dim || self.degree != other.degree {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |a, (x, y)| a.max((x - y).norm()))
    }

    fn check_same_shape(&self, other: &InvariantForm) {
        assert!(
            self.dim == other.dim && self.degree == other.degree,
            "form shape mismatch: ({}, {}) vs ({}, {})",
            self.dim,
            self.degree,
            other.dim,
            other.degree
        );
    }
}

impl Add<&InvariantForm> for &InvariantForm {
    type Output = InvariantForm;
    fn add(self, rhs: &InvariantForm) -> InvariantForm {
        self.check_same_shape(rhs);
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&InvariantForm> for &InvariantForm {
    type Output = InvariantForm;
    fn sub(self, rhs: &InvariantForm) -> InvariantForm {
        self.check_same_shape(rhs);
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl AddAssign<&InvariantForm> for InvariantForm {
    fn add_assign(&mut self, rhs: &InvariantForm) {
        self.check_same_shape(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Mul<f64> for &InvariantForm {
    type Output = InvariantForm;
    fn mul(self, s: f64) -> InvariantForm {
        self.scale(C64::new(s, 0.0))
    }
}

impl Mul<C64> for &InvariantForm {
    type Output = InvariantForm;
    fn mul(self, s: C64) -> InvariantForm {
        self.scale(s)
    }
}

impl Neg for &InvariantForm {
    type Output = InvariantForm;
    fn neg(self) -> InvariantForm {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Alternating product. If `deg a + deg b > N` the result has no
/// coefficients at all.
pub fn wedge(a: &InvariantForm, b: &InvariantForm) -> Result<InvariantForm> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            got: b.dim,
        });
    }
    let n = a.dim;
    let mut out = InvariantForm::zero(n, a.degree + b.degree);
    if a.degree + b.degree > n {
        return Ok(out);
    }
    let am = subsets(n, a.degree);
    let bm = subsets(n, b.degree);
    for (ra, &ma) in am.iter().enumerate() {
        let x = a.coeffs[ra];
        if x.norm() == 0.0 {
            continue;
        }
        for (rb, &mb) in bm.iter().enumerate() {
            if ma & mb != 0 {
                continue;
            }
            let y = b.coeffs[rb];
            if y.norm() == 0.0 {
                continue;
            }
            let r = subset_rank(ma | mb, n);
            out.coeffs[r] += x * y * merge_sign(ma, mb);
        }
    }
    Ok(out)
}

/// Interior product `ι_v a` with a complex vector `v` (coordinates in the
/// real basis). Contracting a 0-form gives the zero 0-form.
pub fn contract(v: &[C64], a: &InvariantForm) -> Result<InvariantForm> {
    if v.len() != a.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            got: v.len(),
        });
    }
    let n = a.dim;
    if a.degree == 0 {
        return Ok(InvariantForm::zero(n, 0));
    }
    let mut out = InvariantForm::zero(n, a.degree - 1);
    for (r, &mask) in subsets(n, a.degree - 1).iter().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (i, vi) in v.iter().enumerate() {
            if mask & (1 << i) != 0 || vi.norm() == 0.0 {
                continue;
            }
            acc += vi * insertion_sign(mask, i) * a.coeff_mask(mask | (1 << i));
        }
        out.coeffs[r] = acc;
    }
    Ok(out)
}

/// A positive-definite symmetric bilinear form on the real space, with its
/// inverse cached for raising indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    g: RMat,
    inv: RMat,
    orthonormal: bool,
}

impl Metric {
    pub fn new(g: RMat) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::DimensionMismatch {
                expected: g.nrows(),
                got: g.ncols(),
            });
        }
        let asym = crate::linalg::max_abs_real(&(&g - g.transpose()));
        if asym > 1e-12 * (1.0 + crate::linalg::max_abs_real(&g)) {
            return Err(Error::InvalidInput(format!(
                "metric is not symmetric (residual {asym:.3e})"
            )));
        }
        let g = (&g + g.transpose()) * 0.5;
        let chol = g.clone().cholesky().ok_or(Error::MetricNotPositive)?;
        let inv = chol.inverse();
        let n = g.nrows();
        let orthonormal = crate::linalg::max_abs_real(&(&g - RMat::identity(n, n))) < 1e-15;
        Ok(Metric {
            g,
            inv,
            orthonormal,
        })
    }

    pub fn identity(n: usize) -> Self {
        Metric {
            g: RMat::identity(n, n),
            inv: RMat::identity(n, n),
            orthonormal: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn matrix(&self) -> &RMat {
        &self.g
    }

    pub fn inverse(&self) -> &RMat {
        &self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.orthonormal
    }

    /// Complex-bilinear extension `g(u, v)`.
    pub fn bilinear(&self, u: &[C64], v: &[C64]) -> C64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let gij = self.g[(i, j)];
                if gij != 0.0 {
                    acc += u[i] * gij * v[j];
                }
            }
        }
        acc
    }

    /// The vector `α^♯` with `g(α^♯, ·) = α`.
    pub fn sharp(&self, alpha: &InvariantForm) -> Vec<C64> {
        assert_eq!(alpha.degree(), 1);
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| alpha.coeffs()[j] * self.inv[(i, j)]).sum())
            .collect()
    }
}

/// Hermitian inner product `⟨a, b⟩` induced by `g` (linear in `a`).
pub fn inner(a: &InvariantForm, b: &InvariantForm, g: &Metric) -> Result<C64> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(format!(
            "inner product of a {}-form with a {}-form",
            a.degree, b.degree
        )));
    }
    if a.dim != b.dim || a.dim != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: a.dim.max(b.dim),
        });
    }
    if g.is_identity() {
        return Ok(a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x * y.conj())
            .sum());
    }
    // ⟨e^I, e^K⟩ = det(g⁻¹[I, K])
    let k = a.degree;
    if k == 0 {
        return Ok(a.coeffs[0] * b.coeffs[0].conj());
    }
    let masks = subsets(a.dim, k);
    let idx: Vec<Vec<usize>> = masks.iter().map(|&m| mask_indices(m)).collect();
    let mut buf = vec![C64::new(0.0, 0.0); k * k];
    let mut acc = C64::new(0.0, 0.0);
    for (ri, ii) in idx.iter().enumerate() {
        let x = a.coeffs[ri];
        if x.norm() == 0.0 {
            continue;
        }
        for (rk, kk) in idx.iter().enumerate() {
            let y = b.coeffs[rk];
            if y.norm() == 0.0 {
                continue;
            }
            for (r, &i) in ii.iter().enumerate() {
                for (s, &j) in kk.iter().enumerate() {
                    buf[r * k + s] = C64::new(g.inv[(i, j)], 0.0);
                }
            }
            acc += x * y.conj() * det_in_place(&mut buf, k);
        }
    }
    Ok(acc)
}

pub fn norm_sq(a: &InvariantForm, g: &Metric) -> f64 {
    inner(a, a, g).map(|z| z.re).unwrap_or(f64::NAN)
}

/// `Jα = -α∘J` on a 1-form.
pub fn j_one_form(j: &RMat, alpha: &InvariantForm) -> InvariantForm {
    assert_eq!(alpha.degree(), 1);
    -&alpha.pullback_real(j)
}

/// Residual of `J² = -Id`.
pub fn complex_structure_residual(j: &RMat) -> f64 {
    let n = j.nrows();
    crate::linalg::max_abs_real(&(j * j + RMat::identity(n, n)))
}

/// Components of a form by type, keyed by `(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedForm {
    pub components: BTreeMap<(usize, usize), InvariantForm>,
}

impl BigradedForm {
    pub fn component(&self, p: usize, q: usize) -> Option<&InvariantForm> {
        self.components.get(&(p, q))
    }

    pub fn sum(&self) -> Option<InvariantForm> {
        let mut it = self.components.values();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, f| {
            acc += f;
            acc
        }))
    }

    /// Sum of the `(p,q)` components with `p ≠ q`, i.e. the `(2,0)+(0,2)` part
    /// for a 2-form.
    pub fn off_diagonal(&self) -> Option<InvariantForm> {
        let (&(p0, q0), f0) = self.components.iter().next()?;
        let mut acc = InvariantForm::zero(f0.dim(), p0 + q0);
        for (&(p, q), f) in &self.components {
            if p != q {
                acc += f;
            }
        }
        Some(acc)
    }
}

fn rotation(j: &RMat, t: f64) -> RMat {
    let n = j.nrows();
    RMat::identity(n, n) * t.cos() + j * t.sin()
}

/// Splits `a` into its `(p,q)` components with respect to `J`.
///
/// Uses `a∘e^{tJ} = Σ e^{it(p-q)} a^{(p,q)}`: sampling `t` at `k+1` points
/// separates the `k+1` weights `p - q ∈ {k, k-2, …, -k}` exactly.
pub fn bigrade(a: &InvariantForm, j: &RMat) -> Result<BigradedForm> {
    let res = complex_structure_residual(j);
    if res > 1e-10 {
        return Err(Error::NotComplexStructure(res));
    }
    if j.nrows() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: j.nrows(),
        });
    }
    let k = a.degree();
    let samples = k + 1;
    let rotated: Vec<(f64, InvariantForm)> = (0..samples)
        .map(|m| {
            let t = std::f64::consts::PI * m as f64 / samples as f64;
            (t, a.pullback_real(&rotation(j, t)))
        })
        .collect();
    let mut components = BTreeMap::new();
    for q in 0..=k {
        let p = k - q;
        let w = p as f64 - q as f64;
        let mut acc = InvariantForm::zero(a.dim(), k);
        for (t, f) in &rotated {
            let phase = C64::from_polar(1.0 / samples as f64, -w * t);
            acc += &f.scale(phase);
        }
        components.insert((p, q), acc);
    }
    Ok(BigradedForm { components })
}

/// The `(p,q)` component of `a`.
pub fn pq_project(a: &InvariantForm, j: &RMat, p: usize, q: usize) -> Result<InvariantForm> {
    if p + q != a.degree() {
        return Err(Error::DegreeMismatch(format!(
            "({p},{q}) projection of a {}-form",
            a.degree()
        )));
    }
    let parts = bigrade(a, j)?;
    Ok(parts.components[&(p, q)].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn std_j(n: usize) -> RMat {
        let mut j = RMat::zeros(2 * n, 2 * n);
        for k in 0..n {
            j[(2 * k + 1, 2 * k)] = 1.0;
            j[(2 * k, 2 * k + 1)] = -1.0;
        }
        j
    }

    #[test]
    fn subset_rank_inverts_enumeration() {
        for n in 0..9 {
            for k in 0..=n {
                for (r, &m) in subsets(n, k).iter().enumerate() {
                    assert_eq!(subset_rank(m, n), r);
                }
            }
        }
        assert_eq!(
            subsets(4, 2),
            vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]
        );
    }

    #[test]
    fn wedge_of_basis_one_forms() {
        let e1 = InvariantForm::basis(4, &[0]);
        let e2 = InvariantForm::basis(4, &[1]);
        let w = wedge(&e1, &e2).unwrap();
        assert_eq!(w.degree(), 2);
        assert_eq!(w.at(&[0, 1]), c(1.0, 0.0));
        assert_eq!(w.at(&[1, 0]), c(-1.0, 0.0));
        assert_eq!(w.coeffs().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn odd_form_squares_to_zero() {
        let a = InvariantForm::real_one_form(&[1.0, -2.0, 0.5, 3.0]);
        assert!(wedge(&a, &a).unwrap().max_abs() < 1e-15);
        let e = InvariantForm::basis(5, &[0, 2, 4]);
        let f = &e + &InvariantForm::basis(5, &[1, 2, 3]);
        assert!(wedge(&f, &f).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn wedge_rejects_mismatched_dimensions() {
        let a = InvariantForm::basis(3, &[0]);
        let b = InvariantForm::basis(4, &[0]);
        assert!(matches!(
            wedge(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn overflowing_wedge_is_zero() {
        let a = InvariantForm::basis(3, &[0, 1]);
        let b = InvariantForm::basis(3, &[1, 2]);
        let w = wedge(&a, &b).unwrap();
        assert_eq!(w.degree(), 4);
        assert!(w.coeffs().is_empty());
    }

    #[test]
    fn contraction_basics() {
        let e12 = InvariantForm::basis(3, &[0, 1]);
        let v = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let r = contract(&v, &e12).unwrap();
        assert_eq!(r, InvariantForm::basis(3, &[1]));
        let zero = contract(&v, &InvariantForm::scalar(3, c(2.0, 0.0))).unwrap();
        assert_eq!(zero.degree(), 0);
        assert_eq!(zero.coeffs()[0], c(0.0, 0.0));
    }

    #[test]
    fn eval_matches_at_on_basis_vectors() {
        let f = &InvariantForm::basis(4, &[0, 1, 3]) * 2.0;
        let mut v = CMat::zeros(4, 3);
        v[(3, 0)] = c(1.0, 0.0);
        v[(0, 1)] = c(1.0, 0.0);
        v[(1, 2)] = c(1.0, 0.0);
        assert_eq!(f.eval(&v), f.at(&[3, 0, 1]));
        assert_eq!(f.at(&[3, 0, 1]), c(2.0, 0.0));
    }

    #[test]
    fn omega_norm_is_n() {
        for n in 1..5 {
            let om = InvariantForm::real_two_form(&std_j(n));
            let g = Metric::identity(2 * n);
            assert!((norm_sq(&om, &g) - n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn omega_is_type_11() {
        let j = std_j(2);
        let om = InvariantForm::real_two_form(&j);
        let p20 = pq_project(&om, &j, 2, 0).unwrap();
        let p11 = pq_project(&om, &j, 1, 1).unwrap();
        assert!(p20.max_abs() < 1e-14);
        assert!(p11.distance(&om) < 1e-14);
        assert!(matches!(
            pq_project(&om, &j, 2, 1),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn gram_corrected_inner_product() {
        // g = diag(4, 1): |e¹|² = 1/4, |e¹∧e²|² = 1/4
        let g = Metric::new(RMat::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 1.0])).unwrap();
        let e1 = InvariantForm::basis(2, &[0]);
        assert!((norm_sq(&e1, &g) - 0.25).abs() < 1e-15);
        let e12 = InvariantForm::basis(2, &[0, 1]);
        assert!((norm_sq(&e12, &g) - 0.25).abs() < 1e-15);
    }
}
