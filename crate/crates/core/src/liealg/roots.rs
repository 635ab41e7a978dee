//! Maximal tori, root-space decomposition of `𝔤^c`, and the complex
//! structure attached to a choice of positive roots and a complex structure
//! on the torus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{
    gram_schmidt, hermitian_eigen, max_abs, max_imag, min_singular_value, real_null_space,
    real_part, to_complex, CMat, RMat, C64, I,
};
use crate::multilinear::Metric;

/// Seed of the weights used for the generic torus element.
pub const GENERIC_SEED: u64 = 0x5a3e_1502;

/// Relative gap separating eigenvalue clusters of the generic element.
pub const CLUSTER_GAP: f64 = 1e-7;

const RELATION_TOL: f64 = 1e-10;

fn generic_weights(len: usize, salt: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED ^ salt);
    (0..len)
        .map(|_| {
            let w: f64 = rng.random_range(0.5..1.5);
            if rng.random_bool(0.5) {
                w
            } else {
                -w
            }
        })
        .collect()
}

/// How a root is declared positive.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum PositivityRule {
    /// First nonzero value among `β(X_1), …, β(X_t)` is positive.
    #[default]
    Lexicographic,
    /// `Σ_s w_s β(X_s) > 0`.
    Weights(Vec<f64>),
}

/// Complex structure on the torus: which g-orthonormalized torus vectors are
/// paired into `(X_a - iX_b)/√2`.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum ToralPairing {
    /// `(X_1, X_2), (X_3, X_4), …`
    #[default]
    Sequential,
    /// Explicit 0-based positions in the torus basis.
    Pairs(Vec<(usize, usize)>),
}

#[derive(Clone, Debug)]
pub struct TorusCheck {
    pub dimension: usize,
    pub bracket_residual: f64,
    pub centralizer_dimension: usize,
    pub abelian: bool,
    pub maximal: bool,
}

/// Checks that the columns of `torus` span a maximal abelian subalgebra.
pub fn torus_check(alg: &LieAlgebra, torus: &RMat) -> TorusCheck {
    let n = alg.dim();
    let t = torus.ncols();
    let ads: Vec<RMat> = (0..t)
        .map(|s| alg.ad_vector(torus.column(s).as_slice()))
        .collect();
    let mut res: f64 = 0.0;
    for (s, ad) in ads.iter().enumerate() {
        for u in s + 1..t {
            let b = ad * torus.column(u);
            res = res.max(b.amax());
        }
    }
    let mut stacked = RMat::zeros(n * t.max(1), n);
    for (s, ad) in ads.iter().enumerate() {
        stacked.view_mut((s * n, 0), (n, n)).copy_from(ad);
    }
    let centralizer = real_null_space(&stacked, 1e-9).ncols();
    let independent = t == 0 || n - real_null_space(&torus.transpose(), 1e-10).ncols() == t;
    TorusCheck {
        dimension: t,
        bracket_residual: res,
        centralizer_dimension: centralizer,
        abelian: res < 1e-10 && independent,
        maximal: res < 1e-10 && independent && centralizer == t,
    }
}

/// A maximal torus, found as the centralizer of a generic element, iterated
/// until it stops shrinking. Columns are orthonormal in `g`.
pub fn find_maximal_torus(alg: &LieAlgebra, g: &Metric) -> Result<RMat> {
    let n = alg.dim();
    let mut space = RMat::identity(n, n);
    for round in 0..=n {
        let w = generic_weights(space.ncols(), round as u64 + 1);
        let x = &space * nalgebra::DVector::from_vec(w);
        let cent = real_null_space(&alg.ad_vector(x.as_slice()), 1e-9);
        if cent.ncols() == space.ncols() {
            let check = torus_check(alg, &cent);
            if check.maximal {
                return gram_schmidt(&cent, g.matrix())
                    .ok_or_else(|| Error::BadTorus("degenerate torus basis".into()));
            }
            return Err(Error::BadTorus(format!(
                "centralizer iteration stalled at dimension {} without an abelian fixpoint",
                cent.ncols()
            )));
        }
        space = cent;
    }
    Err(Error::BadTorus(
        "centralizer iteration did not converge".into(),
    ))
}

/// Simultaneous eigendata of `ad(𝔱)` on `𝔤^c`.
///
/// `roots[j][s] = β_j(X_s)` with `[X_s, Z_j] = i β_j(X_s) Z_j`; the `2π` of
/// the usual normalization is absorbed into `β`.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub torus: RMat,
    pub roots: Vec<Vec<f64>>,
    /// `N x 2m`, one column per root, with `g(Z_j, conj Z_k) = δ_{jk}`.
    pub vectors: CMat,
    pub eigen_residual: f64,
}

impl RootDecomposition {
    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    /// Whether `β_j + β_k` is again a root (within `tol`).
    pub fn sum_is_root(&self, j: usize, k: usize, tol: f64) -> bool {
        let s: Vec<f64> = self.roots[j]
            .iter()
            .zip(&self.roots[k])
            .map(|(a, b)| a + b)
            .collect();
        self.roots
            .iter()
            .any(|r| r.iter().zip(&s).all(|(a, b)| (a - b).abs() < tol))
    }
}

/// `L` with `Lᵀ G L = I`, for passing to g-orthonormal coordinates.
fn orthonormalizer(g: &Metric) -> (RMat, RMat) {
    let chol = g
        .matrix()
        .clone()
        .cholesky()
        .expect("metric checked positive");
    let l = chol.l();
    let l_inv_t = l
        .clone()
        .try_inverse()
        .expect("triangular factor invertible")
        .transpose();
    // x = L y with L = C^{-T};  y = Cᵀ x
    (l_inv_t, l.transpose())
}

/// Splits sorted eigenvalues into clusters by relative gap.
fn clusters(vals: &[f64], scale: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        match out.last_mut() {
            Some(last) if (v - vals[*last.last().unwrap()]).abs() <= CLUSTER_GAP * scale => {
                last.push(i)
            }
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Root decomposition relative to the torus spanned by the columns of `torus`.
pub fn root_decomposition(alg: &LieAlgebra, g: &Metric, torus: &RMat) -> Result<RootDecomposition> {
    let n = alg.dim();
    if torus.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: torus.nrows(),
        });
    }
    let check = torus_check(alg, torus);
    if !check.abelian {
        return Err(Error::BadTorus(format!(
            "torus is not abelian (bracket residual {:.3e})",
            check.bracket_residual
        )));
    }
    if !check.maximal {
        return Err(Error::BadTorus(format!(
            "torus of dimension {} is not maximal: its centralizer has dimension {}",
            check.dimension, check.centralizer_dimension
        )));
    }
    let t = torus.ncols();
    let (l, l_inv) = orthonormalizer(g);
    // i·ad(X_s) in g-orthonormal coordinates; Hermitian iff g is ad(𝔱)-invariant
    let mut herm = Vec::with_capacity(t);
    for s in 0..t {
        let ad = &l_inv * alg.ad_vector(torus.column(s).as_slice()) * &l;
        let skew = crate::linalg::max_abs_real(&(&ad + ad.transpose()));
        if skew > 1e-10 * (1.0 + ad.amax()) {
            return Err(Error::BadTorus(format!(
                "metric is not ad-invariant under torus vector {} (residual {skew:.3e})",
                s + 1
            )));
        }
        herm.push(to_complex(&ad) * I);
    }
    let w = generic_weights(t, 0);
    let mut generic = CMat::zeros(n, n);
    for (s, h) in herm.iter().enumerate() {
        generic += h * C64::new(w[s], 0.0);
    }
    let (mu, vecs) = hermitian_eigen(&generic);
    let scale = mu.iter().fold(0.0_f64, |a, x| a.max(x.abs())).max(1e-300);

    let mut roots = Vec::new();
    let mut columns: Vec<nalgebra::DVector<C64>> = Vec::new();
    let mut toral_dim = 0;
    for cl in clusters(&mu, scale) {
        let centre = mu[cl[0]];
        if centre.abs() <= CLUSTER_GAP * scale {
            toral_dim += cl.len();
            continue;
        }
        let mut basis = CMat::zeros(n, cl.len());
        for (c, &i) in cl.iter().enumerate() {
            basis.set_column(c, &vecs.column(i));
        }
        for v in refine(&basis, &herm) {
            // i ad v = μ v  ⇒  [X, v] = -i μ v, so β = -μ
            let beta: Vec<f64> = herm
                .iter()
                .map(|h| -(v.adjoint() * h * &v)[(0, 0)].re)
                .collect();
            roots.push(beta);
            columns.push(v);
        }
    }
    if toral_dim != t {
        return Err(Error::BadTorus(format!(
            "zero weight space has dimension {toral_dim}, torus has dimension {t}"
        )));
    }
    // back to the original basis
    let lc = to_complex(&l);
    let mut vectors = CMat::zeros(n, columns.len());
    for (c, v) in columns.iter().enumerate() {
        vectors.set_column(c, &(&lc * v));
    }
    let mut worst: f64 = 0.0;
    for (j, beta) in roots.iter().enumerate() {
        let z = vectors.column(j).into_owned();
        for s in 0..t {
            let ad = to_complex(&alg.ad_vector(torus.column(s).as_slice()));
            let r = &ad * &z - &z * (I * beta[s]);
            worst = worst.max(r.camax());
        }
    }
    if worst > RELATION_TOL {
        return Err(Error::Samelson(format!(
            "root eigen-relation residual {worst:.3e}"
        )));
    }
    for beta in &roots {
        let paired = roots.iter().any(|b| {
            b.iter()
                .zip(beta)
                .all(|(x, y)| (x + y).abs() < 1e-8 * scale.max(1.0))
        });
        if !paired {
            return Err(Error::Samelson("root without a negative partner".into()));
        }
    }
    Ok(RootDecomposition {
        torus: torus.clone(),
        roots,
        vectors,
        eigen_residual: worst,
    })
}

/// Diagonalizes every torus generator on a cluster of the generic element.
fn refine(basis: &CMat, herm: &[CMat]) -> Vec<nalgebra::DVector<C64>> {
    let mut blocks = vec![basis.clone()];
    for h in herm {
        let mut next = Vec::new();
        for b in blocks {
            if b.ncols() == 1 {
                next.push(b);
                continue;
            }
            let restricted = b.adjoint() * h * &b;
            let (vals, vecs) = hermitian_eigen(&restricted);
            let sc = vals.iter().fold(0.0_f64, |a, x| a.max(x.abs())).max(1.0);
            for cl in clusters(&vals, sc) {
                let mut sub = CMat::zeros(b.nrows(), cl.len());
                for (c, &i) in cl.iter().enumerate() {
                    sub.set_column(c, &(&b * vecs.column(i)));
                }
                next.push(sub);
            }
        }
        blocks = next;
    }
    blocks
        .into_iter()
        .flat_map(|b| {
            (0..b.ncols())
                .map(move |c| b.column(c).into_owned())
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The Samelson data: positive roots, root and toral vectors spanning the
/// `(1,0)`-space `𝔰`, its dual coframe and the induced complex structure.
#[derive(Clone, Debug)]
pub struct SamelsonFrame {
    pub torus_basis: RMat,
    pub torus_indices: Option<Vec<usize>>,
    /// `β_j(X_s)` on the supplied torus basis, positive roots only.
    pub roots: Vec<Vec<f64>>,
    /// `N x m`.
    pub root_vectors: CMat,
    /// `N x r`.
    pub toral_vectors: CMat,
    /// `n x N`: row `a` is `ζ^a`, dual to `Z_a` on `𝔤^c = 𝔰 ⊕ conj(𝔰)`.
    pub coframe: CMat,
    pub j: RMat,
    pub diagnostics: FrameDiagnostics,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct FrameDiagnostics {
    pub eigen_residual: f64,
    pub orthonormality: f64,
    pub isotropy: f64,
    pub splitting: f64,
    pub closure: f64,
    pub j_imaginary: f64,
}

/// Builds `𝔰 = ⊕_{α>0} 𝔰_α ⊕ 𝔞` from a torus given by basis vectors.
pub fn samelson_frame(
    alg: &LieAlgebra,
    g: &Metric,
    torus: &RMat,
    rule: &PositivityRule,
    pairing: &ToralPairing,
) -> Result<SamelsonFrame> {
    let n_real = alg.dim();
    if n_real % 2 != 0 {
        return Err(Error::Samelson(format!(
            "odd dimension {n_real}: no complex structure"
        )));
    }
    let t = torus.ncols();
    if t % 2 != 0 {
        return Err(Error::Samelson(format!(
            "torus has odd dimension {t}: no complex structure on it"
        )));
    }
    let rd = root_decomposition(alg, g, torus)?;
    let mut pos_roots = Vec::new();
    let mut pos_cols = Vec::new();
    for (j, beta) in rd.roots.iter().enumerate() {
        let positive = match rule {
            PositivityRule::Lexicographic => {
                let sc = beta.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
                let first = beta.iter().find(|x| x.abs() > 1e-9 * sc.max(1.0));
                matches!(first, Some(&x) if x > 0.0)
            }
            PositivityRule::Weights(w) => {
                if w.len() != t {
                    return Err(Error::DimensionMismatch {
                        expected: t,
                        got: w.len(),
                    });
                }
                let s: f64 = w.iter().zip(beta).map(|(a, b)| a * b).sum();
                if s.abs() < 1e-9 {
                    return Err(Error::Samelson(format!(
                        "positivity weights vanish on root {}",
                        j + 1
                    )));
                }
                s > 0.0
            }
        };
        if positive {
            pos_roots.push(beta.clone());
            pos_cols.push(rd.vectors.column(j).into_owned());
        }
    }
    if 2 * pos_roots.len() != rd.roots.len() {
        return Err(Error::Samelson(
            "positivity rule does not select exactly one root of each ± pair".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = match pairing {
        ToralPairing::Sequential => (0..t / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
        ToralPairing::Pairs(p) => p.clone(),
    };
    let mut seen = vec![false; t];
    for &(a, b) in &pairs {
        if a >= t || b >= t || a == b || seen[a] || seen[b] {
            return Err(Error::Samelson(format!(
                "toral pairing ({}, {}) is not a partition of the torus basis",
                a + 1,
                b + 1
            )));
        }
        seen[a] = true;
        seen[b] = true;
    }
    if pairs.len() * 2 != t {
        return Err(Error::Samelson(
            "toral pairing does not cover the torus".into(),
        ));
    }
    // g-orthonormalize in pairing order
    let order: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let ordered = RMat::from_fn(n_real, t, |r, c| torus[(r, order[c])]);
    let ortho = gram_schmidt(&ordered, g.matrix())
        .ok_or_else(|| Error::BadTorus("torus basis is linearly dependent".into()))?;
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut toral = CMat::zeros(n_real, t / 2);
    for k in 0..t / 2 {
        for r in 0..n_real {
            toral[(r, k)] = C64::new(ortho[(r, 2 * k)] * s2, -ortho[(r, 2 * k + 1)] * s2);
        }
    }
    let mut root_vectors = CMat::zeros(n_real, pos_cols.len());
    for (c, v) in pos_cols.iter().enumerate() {
        root_vectors.set_column(c, v);
    }
    let indices = coordinate_indices(torus);
    let mut frame = SamelsonFrame {
        torus_basis: torus.clone(),
        torus_indices: indices,
        roots: pos_roots,
        root_vectors,
        toral_vectors: toral,
        coframe: CMat::zeros(0, 0),
        j: RMat::zeros(0, 0),
        diagnostics: FrameDiagnostics {
            eigen_residual: rd.eigen_residual,
            ..Default::default()
        },
    };
    frame.finish(alg, g)?;
    Ok(frame)
}

fn coordinate_indices(torus: &RMat) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for c in 0..torus.ncols() {
        let col = torus.column(c);
        let nz: Vec<usize> = (0..col.len()).filter(|&r| col[r] != 0.0).collect();
        if nz.len() != 1 {
            return None;
        }
        out.push(nz[0]);
    }
    Some(out)
}

impl SamelsonFrame {
    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.root_vectors.ncols() + self.toral_vectors.ncols()
    }

    /// Number of positive roots.
    pub fn m(&self) -> usize {
        self.root_vectors.ncols()
    }

    /// Half the torus dimension.
    pub fn r(&self) -> usize {
        self.toral_vectors.ncols()
    }

    /// `Z_1..Z_n` as columns: root vectors first, then toral vectors.
    pub fn z(&self) -> CMat {
        let (nr, m, r) = (self.root_vectors.nrows(), self.m(), self.r());
        let mut z = CMat::zeros(nr, m + r);
        z.view_mut((0, 0), (nr, m)).copy_from(&self.root_vectors);
        z.view_mut((0, m), (nr, r)).copy_from(&self.toral_vectors);
        z
    }

    /// `B = [Z, conj Z]`, a basis of `𝔤^c`.
    pub fn full_basis(&self) -> CMat {
        let z = self.z();
        let (nr, n) = (z.nrows(), z.ncols());
        let mut b = CMat::zeros(nr, 2 * n);
        b.view_mut((0, 0), (nr, n)).copy_from(&z);
        b.view_mut((0, n), (nr, n)).copy_from(&z.map(|x| x.conj()));
        b
    }

    /// `D[(c, a, b)] = coefficient of B_c in [B_a, B_b]`, flattened as
    /// `(c * 2n + a) * 2n + b`.
    pub fn frame_constants(&self, alg: &LieAlgebra) -> Vec<C64> {
        let b = self.full_basis();
        let dim = b.ncols();
        let binv = b.clone().try_inverse().expect("frame basis invertible");
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|a| b.column(a).iter().copied().collect())
            .collect();
        let mut d = vec![C64::new(0.0, 0.0); dim * dim * dim];
        for a in 0..dim {
            for bb in 0..dim {
                let br = nalgebra::DVector::from_vec(alg.bracket(&cols[a], &cols[bb]));
                let coords = &binv * br;
                for c in 0..dim {
                    d[(c * dim + a) * dim + bb] = coords[c];
                }
            }
        }
        d
    }

    /// Real `g`-orthonormal frame adapted to `J`:
    /// `f_{2j-1} = √2 Re Z_j`, `f_{2j} = -√2 Im Z_j = J f_{2j-1}` (columns).
    pub fn real_frame(&self) -> RMat {
        let z = self.z();
        let (nr, n) = (z.nrows(), z.ncols());
        let s = std::f64::consts::SQRT_2;
        RMat::from_fn(nr, 2 * n, |r, c| {
            let v = z[(r, c / 2)];
            if c % 2 == 0 {
                s * v.re
            } else {
                -s * v.im
            }
        })
    }

    /// Copy with `Z_j ↦ e^{iφ_j} Z_j` (all `n` vectors).
    pub fn rephased(&self, alg: &LieAlgebra, g: &Metric, phases: &[f64]) -> Result<SamelsonFrame> {
        if phases.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: phases.len(),
            });
        }
        let mut out = self.clone();
        let m = self.m();
        for (j, &phi) in phases.iter().enumerate() {
            let ph = C64::from_polar(1.0, phi);
            if j < m {
                let col = out.root_vectors.column(j) * ph;
                out.root_vectors.set_column(j, &col);
            } else {
                let col = out.toral_vectors.column(j - m) * ph;
                out.toral_vectors.set_column(j - m, &col);
            }
        }
        out.finish(alg, g)?;
        Ok(out)
    }

    /// Copy with the positive roots reordered: new root `k` is old root `perm[k]`.
    pub fn permuted(&self, alg: &LieAlgebra, g: &Metric, perm: &[usize]) -> Result<SamelsonFrame> {
        let m = self.m();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(Error::InvalidInput(
                "not a permutation of the positive roots".into(),
            ));
        }
        let mut out = self.clone();
        for (k, &p) in perm.iter().enumerate() {
            out.roots[k] = self.roots[p].clone();
            out.root_vectors.set_column(k, &self.root_vectors.column(p));
        }
        out.finish(alg, g)?;
        Ok(out)
    }

    /// Recomputes coframe and `J`, and checks every frame invariant.
    fn finish(&mut self, alg: &LieAlgebra, g: &Metric) -> Result<()> {
        let n = self.n();
        let b = self.full_basis();
        let split = min_singular_value(&b);
        if split < 1e-8 {
            return Err(Error::Samelson(format!(
                "𝔰 ⊕ conj(𝔰) does not span 𝔤^c (smallest singular value {split:.3e})"
            )));
        }
        let binv = b
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Samelson("singular frame".into()))?;
        let mut diag = CMat::zeros(2 * n, 2 * n);
        for a in 0..n {
            diag[(a, a)] = I;
            diag[(n + a, n + a)] = -I;
        }
        let jc = &b * diag * &binv;
        let j_im = max_imag(&jc);
        let gm = to_complex(g.matrix());
        let z = self.z();
        let gram = z.transpose() * &gm * z.map(|x| x.conj());
        let ortho = max_abs(&(gram - CMat::identity(n, n)));
        let iso = max_abs(&(z.transpose() * &gm * &z));
        let d = self.frame_constants(alg);
        let dim = 2 * n;
        let mut closure: f64 = 0.0;
        for c in n..dim {
            for a in 0..n {
                for bb in 0..n {
                    closure = closure.max(d[(c * dim + a) * dim + bb].norm());
                }
            }
        }
        self.diagnostics.orthonormality = ortho;
        self.diagnostics.isotropy = iso;
        self.diagnostics.splitting = split;
        self.diagnostics.closure = closure;
        self.diagnostics.j_imaginary = j_im;
        self.coframe = binv.rows(0, n).into_owned();
        self.j = real_part(&jc);
        if closure > RELATION_TOL {
            return Err(Error::Samelson(format!(
                "[𝔰, 𝔰] ⊄ 𝔰: closure residual {closure:.3e}"
            )));
        }
        if ortho > RELATION_TOL || iso > RELATION_TOL {
            return Err(Error::Samelson(format!(
                "frame not unitary: orthonormality {ortho:.3e}, isotropy {iso:.3e}"
            )));
        }
        if j_im > RELATION_TOL {
            return Err(Error::Samelson(format!("induced J not real ({j_im:.3e})")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_su2() -> LieAlgebra {
        let e = [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)];
        LieAlgebra::from_sparse(3, &e, true, None).unwrap()
    }

    fn unit(n: usize, idx: &[usize]) -> RMat {
        RMat::from_fn(n, idx.len(), |r, c| if r == idx[c] { 1.0 } else { 0.0 })
    }

    #[test]
    fn su2_has_one_pair_of_roots() {
        let alg = eps_su2();
        let rd = root_decomposition(&alg, &Metric::identity(3), &unit(3, &[2])).unwrap();
        assert_eq!(rd.roots.len(), 2);
        assert_eq!(rd.positive_count(), 1);
        assert!((rd.roots[0][0] + rd.roots[1][0]).abs() < 1e-12);
        assert!(rd.roots[0][0].abs() > 0.5);
    }

    #[test]
    fn non_maximal_torus_rejected() {
        let alg = eps_su2().direct_sum(&LieAlgebra::abelian(1));
        let err = root_decomposition(&alg, &Metric::identity(4), &unit(4, &[3])).unwrap_err();
        assert!(matches!(err, Error::BadTorus(_)));
        let err = root_decomposition(&alg, &Metric::identity(4), &unit(4, &[0, 1])).unwrap_err();
        assert!(matches!(err, Error::BadTorus(_)));
    }

    #[test]
    fn frame_on_u2() {
        let alg = eps_su2().direct_sum(&LieAlgebra::abelian(1));
        let g = Metric::identity(4);
        let f = samelson_frame(
            &alg,
            &g,
            &unit(4, &[2, 3]),
            &PositivityRule::Lexicographic,
            &ToralPairing::Sequential,
        )
        .unwrap();
        assert_eq!((f.n(), f.m(), f.r()), (2, 1, 1));
        assert!(f.diagnostics.closure < 1e-12);
        let herm = super::super::HermitianStructure::new(&alg, g, f.j.clone()).unwrap();
        assert!(herm.compatible && herm.bi_invariant);
        assert!(herm.nijenhuis_residual(&alg) < 1e-12);
    }

    #[test]
    fn torus_discovery_on_u2() {
        let alg = eps_su2().direct_sum(&LieAlgebra::abelian(1));
        let t = find_maximal_torus(&alg, &Metric::identity(4)).unwrap();
        assert_eq!(t.ncols(), 2);
        assert!(torus_check(&alg, &t).maximal);
    }

    #[test]
    fn odd_dimension_rejected() {
        let alg = eps_su2();
        let err = samelson_frame(
            &alg,
            &Metric::identity(3),
            &unit(3, &[2]),
            &PositivityRule::Lexicographic,
            &ToralPairing::Sequential,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Samelson(_)));
    }
}
