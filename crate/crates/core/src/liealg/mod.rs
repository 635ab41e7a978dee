//! Real Lie algebras given by structure constants, left-invariant metrics and
//! almost complex structures on them, and the Chevalley–Eilenberg complex.

mod roots;

pub use roots::{
    find_maximal_torus, root_decomposition, samelson_frame, torus_check, FrameDiagnostics,
    PositivityRule, RootDecomposition, SamelsonFrame, ToralPairing, TorusCheck, GENERIC_SEED,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{max_abs_real, real_null_space, RMat, C64};
use crate::multilinear::{bigrade, mask_indices, subsets, InvariantForm, Metric};

/// Residual threshold for [`LieAlgebra::validate`].
pub const VALIDATION_TOL: f64 = 1e-12;

/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<f64>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub dimension: usize,
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub unimodularity: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl LieAlgebra {
    /// `c[(k * N + i) * N + j] = c^k_{ij}`.
    pub fn new(dim: usize, c: Vec<f64>, labels: Option<Vec<String>>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: c.len(),
            });
        }
        if dim > crate::multilinear::MAX_DIM {
            return Err(Error::InvalidInput(format!(
                "dimension {dim} exceeds the supported maximum {}",
                crate::multilinear::MAX_DIM
            )));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite structure constant".into()));
        }
        let labels = match labels {
            Some(l) if l.len() == dim => l,
            Some(l) => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: l.len(),
                })
            }
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        Ok(LieAlgebra { dim, c, labels })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::new(dim, vec![0.0; dim * dim * dim], None).expect("valid shape")
    }

    /// Builds constants from `(i, j, k, c^k_{ij})` entries (0-based). When
    /// `complete` is set, `c^k_{ji} = -c^k_{ij}` is filled in wherever the
    /// transposed entry was not given explicitly.
    pub fn from_sparse(
        dim: usize,
        entries: &[(usize, usize, usize, f64)],
        complete: bool,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut c = vec![0.0; dim * dim * dim];
        let mut given = vec![false; dim * dim * dim];
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure constant index ({}, {}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            let at = (k * dim + i) * dim + j;
            c[at] += v;
            given[at] = true;
        }
        if complete {
            for k in 0..dim {
                for i in 0..dim {
                    for j in 0..dim {
                        let at = (k * dim + i) * dim + j;
                        let tr = (k * dim + j) * dim + i;
                        if given[at] && !given[tr] {
                            c[tr] = -c[at];
                        }
                    }
                }
            }
        }
        LieAlgebra::new(dim, c, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn structure(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.dim + i) * self.dim + j]
    }

    pub fn constants(&self) -> &[f64] {
        &self.c
    }

    /// Matrix of `ad(e_i)`: `(ad e_i)_{kj} = c^k_{ij}`.
    pub fn ad(&self, i: usize) -> RMat {
        let n = self.dim;
        RMat::from_fn(n, n, |k, j| self.structure(k, i, j))
    }

    pub fn ad_vector(&self, x: &[f64]) -> RMat {
        let n = self.dim;
        let mut m = RMat::zeros(n, n);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0.0 {
                m += self.ad(i) * xi;
            }
        }
        m
    }

    pub fn bracket_real(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += u[i] * v[j] * self.structure(k, i, j);
                }
            }
        }
        out
    }

    /// Complex-bilinear bracket on `𝔤^c`.
    pub fn bracket(&self, u: &[C64], v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            if u[i].norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                if v[j].norm() == 0.0 {
                    continue;
                }
                let uv = u[i] * v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = self.structure(k, i, j);
                    if ck != 0.0 {
                        *o += uv * ck;
                    }
                }
            }
        }
        out
    }

    /// `B(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing(&self) -> RMat {
        let n = self.dim;
        let ads: Vec<RMat> = (0..n).map(|i| self.ad(i)).collect();
        RMat::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace())
    }

    /// Orthonormal (Euclidean) basis of the center, as columns.
    pub fn center(&self) -> RMat {
        let n = self.dim;
        // X central iff ad(e_j) X = 0 for every j
        let mut stacked = RMat::zeros(n * n, n);
        for j in 0..n {
            stacked.view_mut((j * n, 0), (n, n)).copy_from(&self.ad(j));
        }
        real_null_space(&stacked, 1e-10)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|&x| x.abs() < 1e-14)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let mut c = vec![0.0; n * n * n];
        for k in 0..a {
            for i in 0..a {
                for j in 0..a {
                    c[(k * n + i) * n + j] = self.structure(k, i, j);
                }
            }
        }
        for k in 0..b {
            for i in 0..b {
                for j in 0..b {
                    c[((k + a) * n + i + a) * n + j + a] = other.structure(k, i, j);
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .chain(other.labels.iter())
            .cloned()
            .collect();
        LieAlgebra::new(n, c, Some(labels)).expect("valid shape")
    }

    /// Constants in the rescaled basis `e'_i = s_i e_i`.
    pub fn rescaled(&self, s: &[f64]) -> LieAlgebra {
        let n = self.dim;
        assert_eq!(s.len(), n);
        let mut c = self.c.clone();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    c[(k * n + i) * n + j] *= s[i] * s[j] / s[k];
                }
            }
        }
        LieAlgebra::new(n, c, Some(self.labels.clone())).expect("valid shape")
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut anti: f64 = 0.0;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    anti = anti.max((self.structure(k, i, j) + self.structure(k, j, i)).abs());
                }
            }
        }
        let mut jac: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.structure(m, i, j) * self.structure(l, m, k)
                                + self.structure(m, j, k) * self.structure(l, m, i)
                                + self.structure(m, k, i) * self.structure(l, m, j);
                        }
                        jac = jac.max(s.abs());
                    }
                }
            }
        }
        let mut uni: f64 = 0.0;
        for j in 0..n {
            let s: f64 = (0..n).map(|i| self.structure(i, i, j)).sum();
            uni = uni.max(s.abs());
        }
        let pass = anti < VALIDATION_TOL && jac < VALIDATION_TOL && uni < VALIDATION_TOL;
        ValidationReport {
            dimension: n,
            antisymmetry: anti,
            jacobi: jac,
            unimodularity: uni,
            tolerance: VALIDATION_TOL,
            pass,
        }
    }

    /// Largest `|tr ad(e_j)|`.
    pub fn unimodularity_residual(&self) -> f64 {
        (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|i| self.structure(i, i, j))
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Chevalley–Eilenberg differential on left-invariant forms:
/// `(da)(X_0..X_k) = Σ_{i<j} (-1)^{i+j} a([X_i,X_j], X_0..X̂_i..X̂_j..X_k)`.
pub fn ce_differential(a: &InvariantForm, alg: &LieAlgebra) -> Result<InvariantForm> {
    let n = alg.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.dim(),
        });
    }
    let k = a.degree();
    if k + 1 > n {
        return Ok(InvariantForm::zero(n, k + 1));
    }
    let mut coeffs = Vec::with_capacity(crate::linalg::binomial(n, k + 1));
    let mut tuple = vec![0usize; k];
    for &mask in &subsets(n, k + 1) {
        let x = mask_indices(mask);
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..=k {
            for j in i + 1..=k {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let mut t = 1;
                for (pos, &xm) in x.iter().enumerate() {
                    if pos != i && pos != j {
                        tuple[t] = xm;
                        t += 1;
                    }
                }
                for m in 0..n {
                    let cm = alg.structure(m, x[i], x[j]);
                    if cm == 0.0 {
                        continue;
                    }
                    tuple[0] = m;
                    acc += a.at(&tuple[..k]) * (sign * cm);
                }
            }
        }
        coeffs.push(acc);
    }
    InvariantForm::from_coeffs(n, k + 1, coeffs)
}

/// Levi-Civita coefficient matrices `(Γ_i)_{kj} = Γ^k_{ij}` from the Koszul
/// formula `2g(∇_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)`.
pub fn levi_civita(alg: &LieAlgebra, g: &Metric) -> Vec<RMat> {
    let n = alg.dim();
    let gm = g.matrix();
    // low[i][j][k] = g([e_i,e_j],e_k)
    let low = |i: usize, j: usize, k: usize| -> f64 {
        (0..n).map(|m| alg.structure(m, i, j) * gm[(m, k)]).sum()
    };
    let mut lowered = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                lowered[(i * n + j) * n + k] = 0.5 * (low(i, j, k) - low(j, k, i) + low(k, i, j));
            }
        }
    }
    raise_connection(&lowered, g)
}

/// Converts `L[i][j][k] = g(∇_i e_j, e_k)` into matrices `(Γ_i)_{kj}`.
pub fn raise_connection(lowered: &[f64], g: &Metric) -> Vec<RMat> {
    let n = g.dim();
    let ginv = g.inverse();
    (0..n)
        .map(|i| {
            RMat::from_fn(n, n, |k, j| {
                (0..n)
                    .map(|l| ginv[(k, l)] * lowered[(i * n + j) * n + l])
                    .sum()
            })
        })
        .collect()
}

/// Codifferential `d*a = -Σ_{jk} g^{jk} ι_{e_j} ∇^L_{e_k} a`, the formal adjoint of
/// [`ce_differential`] on a unimodular algebra.
pub fn codifferential(a: &InvariantForm, alg: &LieAlgebra, g: &Metric) -> Result<InvariantForm> {
    let n = alg.dim();
    if a.dim() != n || g.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.dim(),
        });
    }
    if a.degree() == 0 {
        return Err(Error::DegreeMismatch("codifferential of a 0-form".into()));
    }
    let uni = alg.unimodularity_residual();
    if uni > 1e-10 {
        return Err(Error::NotUnimodular(uni));
    }
    let gammas = levi_civita(alg, g);
    let ginv = g.inverse();
    let mut out = InvariantForm::zero(n, a.degree() - 1);
    for (k, gk) in gammas.iter().enumerate() {
        let nabla = a.lie_action(&crate::linalg::to_complex(gk));
        // raise with g^{jk}
        let v: Vec<C64> = (0..n).map(|j| C64::new(-ginv[(j, k)], 0.0)).collect();
        out += &crate::multilinear::contract(&v, &nabla)?;
    }
    Ok(out)
}

/// `d^c = i(∂̄ - ∂)`, computed by splitting `a` by type and `da` by type.
pub fn dc_differential(a: &InvariantForm, alg: &LieAlgebra, j: &RMat) -> Result<InvariantForm> {
    let parts = bigrade(a, j)?;
    let mut out = InvariantForm::zero(a.dim(), a.degree() + 1);
    for (&(p, q), comp) in &parts.components {
        let d = ce_differential(comp, alg)?;
        let dparts = bigrade(&d, j)?;
        if let Some(dbar) = dparts.component(p, q + 1) {
            out += &dbar.scale(C64::new(0.0, 1.0));
        }
        if let Some(del) = dparts.component(p + 1, q) {
            out += &del.scale(C64::new(0.0, -1.0));
        }
    }
    Ok(out)
}

/// A left-invariant metric with a compatible almost complex structure.
#[derive(Clone, Debug)]
pub struct HermitianStructure {
    metric: Metric,
    j: RMat,
    pub bi_invariant: bool,
    pub compatible: bool,
    pub compatibility_residual: f64,
    pub bi_invariance_residual: f64,
}

impl HermitianStructure {
    pub fn new(alg: &LieAlgebra, metric: Metric, j: RMat) -> Result<Self> {
        let n = alg.dim();
        if metric.dim() != n || j.nrows() != n || j.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: j.nrows(),
            });
        }
        let res = crate::multilinear::complex_structure_residual(&j);
        if res > 1e-10 {
            return Err(Error::NotComplexStructure(res));
        }
        let gm = metric.matrix();
        let compat = max_abs_real(&(j.transpose() * gm * &j - gm));
        let bi = bi_invariance_residual(alg, &metric);
        Ok(HermitianStructure {
            compatible: compat < 1e-10,
            bi_invariant: bi < 1e-10,
            compatibility_residual: compat,
            bi_invariance_residual: bi,
            metric,
            j,
        })
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn j(&self) -> &RMat {
        &self.j
    }

    pub fn real_dim(&self) -> usize {
        self.j.nrows()
    }

    /// Complex dimension `n = N/2`.
    pub fn n(&self) -> usize {
        self.j.nrows() / 2
    }

    /// `Ω(X,Y) = g(X,JY)`, i.e. the matrix `G J`.
    pub fn omega(&self) -> InvariantForm {
        InvariantForm::real_two_form(&(self.metric.matrix() * &self.j))
    }

    /// Largest entry of the Nijenhuis tensor
    /// `[JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]` on basis pairs.
    pub fn nijenhuis_residual(&self, alg: &LieAlgebra) -> f64 {
        let n = alg.dim();
        let col = |m: &RMat, i: usize| -> Vec<f64> { m.column(i).iter().copied().collect() };
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|r| (0..n).map(|s| self.j[(r, s)] * v[s]).sum())
                .collect()
        };
        let id = RMat::identity(n, n);
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = (col(&id, a), col(&id, b));
                let (jx, jy) = (col(&self.j, a), col(&self.j, b));
                let t1 = alg.bracket_real(&jx, &jy);
                let t2 = apply(&alg.bracket_real(&jx, &y));
                let t3 = apply(&alg.bracket_real(&x, &jy));
                let t4 = alg.bracket_real(&x, &y);
                for r in 0..n {
                    worst = worst.max((t1[r] - t2[r] - t3[r] - t4[r]).abs());
                }
            }
        }
        worst
    }
}

/// Largest `|g([X,Y],Z) + g(Y,[X,Z])|` on basis triples.
pub fn bi_invariance_residual(alg: &LieAlgebra, g: &Metric) -> f64 {
    let n = alg.dim();
    let gm = g.matrix();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        // g ad_x + (g ad_x)ᵀ = 0
        let m = gm * alg.ad(x);
        worst = worst.max(max_abs_real(&(&m + m.transpose())));
    }
    worst
}
