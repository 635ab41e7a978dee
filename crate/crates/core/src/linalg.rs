//! Dense linear-algebra helpers shared by the geometry modules.
//!
//! Everything here is small: matrices are at most a few hundred rows, so the
//! routines favour clarity over blocking or sparsity.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;
pub type CVec = DVector<C64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn to_complex(m: &RMat) -> CMat {
    m.map(|x| C64::new(x, 0.0))
}

pub fn real_part(m: &CMat) -> RMat {
    m.map(|z| z.re)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_real(m: &RMat) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_imag(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.im.abs()))
}

/// Largest singular value; zero for empty matrices.
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s))
}

pub fn min_singular_value(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(f64::INFINITY, |acc, &s| acc.min(s))
}

/// Determinant of a row-major `k x k` complex matrix stored in `a`, by
/// Gaussian elimination with partial pivoting. `a` is clobbered.
pub fn det_in_place(a: &mut [C64], k: usize) -> C64 {
    debug_assert_eq!(a.len(), k * k);
    let mut det = C64::new(1.0, 0.0);
    for col in 0..k {
        let mut piv = col;
        let mut best = a[col * k + col].norm();
        for row in col + 1..k {
            let v = a[row * k + col].norm();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if piv != col {
            for t in 0..k {
                a.swap(col * k + t, piv * k + t);
            }
            det = -det;
        }
        let p = a[col * k + col];
        det *= p;
        for row in col + 1..k {
            let f = a[row * k + col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for t in col..k {
                let v = a[col * k + t];
                a[row * k + t] -= f * v;
            }
        }
    }
    det
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// The input is symmetrised first so rounding noise in the lower triangle
/// does not leak into the result.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Orthonormal basis of the null space of a real matrix, as columns.
/// Uses the eigen-decomposition of `mᵀm`; `tol` is relative to the largest
/// singular value (absolute when the matrix vanishes).
pub fn real_null_space(m: &RMat, tol: f64) -> RMat {
    let n = m.ncols();
    // pad to at least n rows so the SVD returns a full right basis
    let rows = m.nrows().max(n);
    let mut sq = RMat::zeros(rows, n);
    sq.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().fold(0.0_f64, |a, &x| a.max(x));
    let cutoff = tol * smax.max(1.0);
    let cols: Vec<usize> = (0..n)
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .collect();
    let mut out = RMat::zeros(n, cols.len());
    for (dst, &src) in cols.iter().enumerate() {
        out.set_column(dst, &vt.row(src).transpose());
    }
    out
}

/// Modified Gram-Schmidt of the columns of `v` with respect to the inner
/// product `xᵀ g y`. Fails (returns `None`) on a numerically dependent column.
pub fn gram_schmidt(v: &RMat, g: &RMat) -> Option<RMat> {
    let mut out = v.clone();
    for j in 0..v.ncols() {
        let mut col = out.column(j).into_owned();
        for i in 0..j {
            let prev = out.column(i).into_owned();
            let proj = (prev.transpose() * g * &col)[(0, 0)];
            col -= prev * proj;
        }
        let norm = (col.transpose() * g * &col)[(0, 0)].sqrt();
        if !(norm > 1e-10) {
            return None;
        }
        out.set_column(j, &(col / norm));
    }
    Some(out)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_nalgebra() {
        let m = CMat::from_fn(4, 4, |i, j| {
            c(
                (i * 3 + j * j) as f64 * 0.1 + 1.0 / (1.0 + i as f64 + j as f64),
                (i as f64 - j as f64) * 0.3,
            )
        });
        let mut flat: Vec<C64> = (0..16).map(|t| m[(t / 4, t % 4)]).collect();
        let mine = det_in_place(&mut flat, 4);
        let theirs = m.determinant();
        assert!((mine - theirs).norm() < 1e-12, "{mine} vs {theirs}");
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = RMat::from_row_slice(1, 3, &[1.0, 2.0, 3.0]);
        let k = real_null_space(&m, 1e-10);
        assert_eq!(k.ncols(), 2);
        assert!(max_abs_real(&(&m * &k)) < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn hermitian_eigen_sorted_and_reconstructs() {
        let a = CMat::from_fn(3, 3, |i, j| c((i + j) as f64, i as f64 - j as f64));
        let (vals, vecs) = hermitian_eigen(&a);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let d = CMat::from_diagonal(&CVec::from_iterator(3, vals.iter().map(|&x| c(x, 0.0))));
        let rec = &vecs * d * vecs.adjoint();
        assert!(max_abs(&(rec - a)) < 1e-12);
    }
}
