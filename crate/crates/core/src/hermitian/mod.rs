//! Canonical connections of a left-invariant Hermitian structure, their
//! curvature and Ricci forms, and the Lee form.
//!
//! Every object is a constant array on the left-invariant frame. Connection
//! matrices follow `(Γ_i)_{kj} = Γ^k_{ij}`, i.e. `∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k`.

mod suites;

pub use suites::{
    anticanonical_suite, anticanonical_suite_geo, flatness_suite, flatness_suite_geo,
    generalized_hopf_check, generalized_hopf_geo, identity_suite, identity_suite_geo, weyl_suite,
    weyl_suite_geo, CONNECTION_TOL, DEFAULT_TOL, FLATNESS_TOL, PARALLEL_TOL,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{
    ce_differential, codifferential, dc_differential, levi_civita, raise_connection,
    HermitianStructure, LieAlgebra,
};
use crate::linalg::{max_abs_real, to_complex, RMat, C64};
use crate::multilinear::{inner, j_one_form, norm_sq, InvariantForm, Metric};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    LeviCivita,
    Chern,
    Bismut,
    Weyl,
}

impl ConnectionKind {
    pub const ALL: [ConnectionKind; 4] = [
        ConnectionKind::LeviCivita,
        ConnectionKind::Chern,
        ConnectionKind::Bismut,
        ConnectionKind::Weyl,
    ];
}

#[derive(Clone, Debug)]
pub struct ConnectionCoefficients {
    pub kind: ConnectionKind,
    pub gammas: Vec<RMat>,
}

impl ConnectionCoefficients {
    /// `Γ^k_{ij}`.
    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gammas[i][(k, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.gammas.iter().map(max_abs_real).fold(0.0, f64::max)
    }

    /// Largest `|g(∇_X Y, Z) + g(Y, ∇_X Z)|` on basis triples.
    pub fn metric_residual(&self, g: &Metric) -> f64 {
        self.gammas
            .iter()
            .map(|gi| {
                let m = g.matrix() * gi;
                max_abs_real(&(&m + m.transpose()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry of `(∇_X g)(Y,Z) - θ(X) g(Y,Z)`.
    pub fn weyl_residual(&self, g: &Metric, theta: &[f64]) -> f64 {
        self.gammas
            .iter()
            .enumerate()
            .map(|(i, gi)| {
                let m = g.matrix() * gi;
                let nabla_g = -(&m + m.transpose());
                max_abs_real(&(nabla_g - g.matrix() * theta[i]))
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry of `[Γ_i, J]`.
    pub fn hermitian_residual(&self, j: &RMat) -> f64 {
        self.gammas
            .iter()
            .map(|gi| max_abs_real(&(gi * j - j * gi)))
            .fold(0.0, f64::max)
    }

    /// Torsion `T(e_i,e_j) = ∇_i e_j - ∇_j e_i - [e_i,e_j]`, flattened as
    /// `T[(i * N + j) * N + k]`.
    pub fn torsion(&self, alg: &LieAlgebra) -> Vec<f64> {
        let n = alg.dim();
        let mut t = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t[(i * n + j) * n + k] = self.coefficient(k, i, j)
                        - self.coefficient(k, j, i)
                        - alg.structure(k, i, j);
                }
            }
        }
        t
    }

    /// `g(T(X,Y),Z)` as a trilinear array `[(i * N + j) * N + k]`.
    pub fn lowered_torsion(&self, alg: &LieAlgebra, g: &Metric) -> Vec<f64> {
        let n = alg.dim();
        let t = self.torsion(alg);
        let gm = g.matrix();
        let mut out = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[(i * n + j) * n + k] =
                        (0..n).map(|m| t[(i * n + j) * n + m] * gm[(m, k)]).sum();
                }
            }
        }
        out
    }

    /// Connection form on `K^{-1} = Λ^n T^{1,0}`: `a(X) = tr(Γ_X |_{T^{1,0}})`,
    /// computed as `tr(Γ_X ½(1 - iJ))`.
    pub fn anticanonical_form(&self, j: &RMat) -> InvariantForm {
        let vals: Vec<C64> = self
            .gammas
            .iter()
            .map(|gi| C64::new(0.5 * gi.trace(), -0.5 * (j * gi).trace()))
            .collect();
        InvariantForm::one_form(&vals)
    }

    /// `(∇_X α)(Y) = -α(∇_X Y)` for an invariant 1-form, as the matrix `[X][Y]`.
    pub fn covariant_derivative_one_form(&self, alpha: &[f64]) -> RMat {
        let n = self.gammas.len();
        RMat::from_fn(n, n, |x, y| {
            -(0..n)
                .map(|k| alpha[k] * self.gammas[x][(k, y)])
                .sum::<f64>()
        })
    }
}

/// Lee form `θ = (1/(n-1)) d*Ω ∘ J`.
#[derive(Clone, Debug)]
pub struct LeeForm {
    pub theta: InvariantForm,
    pub j_theta: InvariantForm,
    pub norm_sq: f64,
    /// Largest entry of `d*Ω - (n-1)Jθ`.
    pub residual: f64,
}

pub fn lee_form(alg: &LieAlgebra, herm: &HermitianStructure) -> Result<LeeForm> {
    let n = herm.n();
    if n <= 1 {
        return Err(Error::LeeFormDegenerate(n));
    }
    let omega = herm.omega();
    let dso = codifferential(&omega, alg, herm.metric())?;
    let theta = &dso.pullback_real(herm.j()) * (1.0 / (n as f64 - 1.0));
    let j_theta = j_one_form(herm.j(), &theta);
    let residual = dso.distance(&(&j_theta * (n as f64 - 1.0)));
    Ok(LeeForm {
        norm_sq: norm_sq(&theta, herm.metric()),
        theta,
        j_theta,
        residual,
    })
}

/// Frame coefficients of the requested connection.
pub fn connection(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    kind: ConnectionKind,
) -> Result<ConnectionCoefficients> {
    let geo = Geometry::new(alg, herm)?;
    Ok(geo.connection(kind))
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    pub kind: ConnectionKind,
    /// `R(e_i, e_j)` at index `i * N + j`.
    pub r: Vec<RMat>,
    /// `Ric(Y,Z) = tr(X ↦ R(X,Y)Z)`.
    pub ricci_tensor: RMat,
    /// `ρ(X,Y) = -½ tr(J R(X,Y))` for Levi-Civita, Chern and Bismut;
    /// `r^W(X,Y) = Ric^W_sym(X,JY)` for Weyl.
    pub ricci_form: InvariantForm,
    /// Riemannian scalar curvature.
    pub s: f64,
    /// Half the trace of `ρ^C`.
    pub u: f64,
    /// Trace of `ρ^B`.
    pub b: f64,
}

impl CurvatureData {
    pub fn at(&self, i: usize, j: usize) -> &RMat {
        let n = self.ricci_tensor.nrows();
        &self.r[i * n + j]
    }

    /// `R^l_{kij}`: the `e_l` component of `R(e_i,e_j)e_k`.
    pub fn component(&self, l: usize, k: usize, i: usize, j: usize) -> f64 {
        self.at(i, j)[(l, k)]
    }

    pub fn max_abs(&self) -> f64 {
        self.r.iter().map(max_abs_real).fold(0.0, f64::max)
    }
}

pub fn curvature(
    conn: &ConnectionCoefficients,
    alg: &LieAlgebra,
    herm: &HermitianStructure,
) -> Result<CurvatureData> {
    let geo = Geometry::new(alg, herm)?;
    Ok(geo.curvature_of(conn))
}

/// `R(e_i,e_j) = [Γ_i, Γ_j] - Σ_l c^l_{ij} Γ_l`.
pub fn curvature_matrices(gammas: &[RMat], alg: &LieAlgebra) -> Vec<RMat> {
    let n = alg.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = &gammas[i] * &gammas[j] - &gammas[j] * &gammas[i];
            for (l, gl) in gammas.iter().enumerate() {
                let c = alg.structure(l, i, j);
                if c != 0.0 {
                    r -= gl * c;
                }
            }
            out.push(r);
        }
    }
    out
}

fn ricci_tensor(r: &[RMat], n: usize) -> RMat {
    RMat::from_fn(n, n, |y, z| (0..n).map(|x| r[x * n + y][(x, z)]).sum())
}

/// `Σ_{ab} g^{ab} α(Je_a, e_b)`, which equals `2⟨α, Ω⟩` for real `α`.
pub fn two_form_trace(alpha: &InvariantForm, herm: &HermitianStructure) -> C64 {
    let n = herm.real_dim();
    let m = alpha.to_matrix();
    let j = herm.j();
    let ginv = herm.metric().inverse();
    let mut acc = C64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            let gab = ginv[(a, b)];
            if gab == 0.0 {
                continue;
            }
            for k in 0..n {
                acc += m[(k, b)] * (j[(k, a)] * gab);
            }
        }
    }
    acc
}

/// All derived quantities of a Hermitian structure used by the suites.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub alg: LieAlgebra,
    pub herm: HermitianStructure,
    pub n: usize,
    pub omega: InvariantForm,
    pub d_omega: InvariantForm,
    pub dc_omega: InvariantForm,
    pub ddc_omega: InvariantForm,
    pub d_star_omega: InvariantForm,
    pub theta: InvariantForm,
    pub j_theta: InvariantForm,
    pub theta_sq: f64,
    /// `d*θ`, a scalar on invariant data.
    pub d_star_theta: f64,
    pub d_omega_sq: f64,
    /// False when `n = 1`; then `θ` is set to zero, which is consistent only
    /// because `d*Ω` vanishes identically in real dimension 2.
    pub lee_defined: bool,
    levi_civita: Vec<RMat>,
}

impl Geometry {
    pub fn new(alg: &LieAlgebra, herm: &HermitianStructure) -> Result<Self> {
        let nr = alg.dim();
        if herm.real_dim() != nr {
            return Err(Error::DimensionMismatch {
                expected: nr,
                got: herm.real_dim(),
            });
        }
        if !herm.compatible {
            return Err(Error::InvalidInput(format!(
                "J is not g-orthogonal (residual {:.3e})",
                herm.compatibility_residual
            )));
        }
        let g = herm.metric();
        let omega = herm.omega();
        let d_omega = ce_differential(&omega, alg)?;
        let dc_omega = dc_differential(&omega, alg, herm.j())?;
        let ddc_omega = ce_differential(&dc_omega, alg)?;
        let d_star_omega = codifferential(&omega, alg, g)?;
        let (theta, j_theta, lee_defined) = match lee_form(alg, herm) {
            Ok(l) => (l.theta, l.j_theta, true),
            Err(Error::LeeFormDegenerate(_)) => {
                if d_star_omega.max_abs() > 1e-12 {
                    return Err(Error::LeeFormDegenerate(herm.n()));
                }
                (
                    InvariantForm::zero(nr, 1),
                    InvariantForm::zero(nr, 1),
                    false,
                )
            }
            Err(e) => return Err(e),
        };
        let d_star_theta = codifferential(&theta, alg, g)?.coeffs()[0].re;
        Ok(Geometry {
            n: herm.n(),
            theta_sq: norm_sq(&theta, g),
            d_omega_sq: norm_sq(&d_omega, g),
            d_star_theta,
            levi_civita: levi_civita(alg, g),
            alg: alg.clone(),
            herm: herm.clone(),
            omega,
            d_omega,
            dc_omega,
            ddc_omega,
            d_star_omega,
            theta,
            j_theta,
            lee_defined,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn metric(&self) -> &Metric {
        self.herm.metric()
    }

    pub fn j(&self) -> &RMat {
        self.herm.j()
    }

    pub fn theta_real(&self) -> Vec<f64> {
        self.theta.coeffs().iter().map(|z| z.re).collect()
    }

    pub fn connection(&self, kind: ConnectionKind) -> ConnectionCoefficients {
        let n = self.dim();
        let g = self.metric();
        let gammas = match kind {
            ConnectionKind::LeviCivita => self.levi_civita.clone(),
            ConnectionKind::Chern | ConnectionKind::Bismut => {
                let mut lowered = vec![0.0; n * n * n];
                let j = self.j();
                for i in 0..n {
                    for jj in 0..n {
                        for k in 0..n {
                            let extra = match kind {
                                // ½ dΩ(Je_i, e_j, e_k)
                                ConnectionKind::Chern => {
                                    0.5 * (0..n)
                                        .map(|m| j[(m, i)] * self.d_omega.at(&[m, jj, k]).re)
                                        .sum::<f64>()
                                }
                                // ½ d^cΩ(e_i, e_j, e_k)
                                _ => 0.5 * self.dc_omega.at(&[i, jj, k]).re,
                            };
                            lowered[(i * n + jj) * n + k] = extra;
                        }
                    }
                }
                let extra = raise_connection(&lowered, g);
                self.levi_civita
                    .iter()
                    .zip(extra)
                    .map(|(l, e)| l + e)
                    .collect()
            }
            ConnectionKind::Weyl => {
                // ∇^L_X Y - ½θ(X)Y - ½θ(Y)X + ½g(X,Y)θ^♯
                let th = self.theta_real();
                let sharp: Vec<f64> = g.sharp(&self.theta).iter().map(|z| z.re).collect();
                let gm = g.matrix();
                (0..n)
                    .map(|i| {
                        let mut m = self.levi_civita[i].clone();
                        for jj in 0..n {
                            m[(jj, jj)] -= 0.5 * th[i];
                            m[(i, jj)] -= 0.5 * th[jj];
                            for k in 0..n {
                                m[(k, jj)] += 0.5 * gm[(i, jj)] * sharp[k];
                            }
                        }
                        m
                    })
                    .collect()
            }
        };
        ConnectionCoefficients { kind, gammas }
    }

    fn raw_curvature(&self, conn: &ConnectionCoefficients) -> (Vec<RMat>, RMat) {
        let r = curvature_matrices(&conn.gammas, &self.alg);
        let ric = ricci_tensor(&r, self.dim());
        (r, ric)
    }

    fn hermitian_ricci_form(&self, r: &[RMat]) -> InvariantForm {
        let n = self.dim();
        let j = self.j();
        let m = RMat::from_fn(n, n, |a, b| -0.5 * (j * &r[a * n + b]).trace());
        InvariantForm::real_two_form(&m)
    }

    /// Metric trace of a bilinear form.
    pub fn metric_trace(&self, b: &RMat) -> f64 {
        (self.metric().inverse().transpose() * b).trace()
    }

    /// `(s, u, b)`.
    pub fn scalar_invariants(&self) -> (f64, f64, f64) {
        let (_, ricl) = self.raw_curvature(&self.connection(ConnectionKind::LeviCivita));
        let s = self.metric_trace(&ricl);
        let (rc, _) = self.raw_curvature(&self.connection(ConnectionKind::Chern));
        let (rb, _) = self.raw_curvature(&self.connection(ConnectionKind::Bismut));
        let u = 0.5 * two_form_trace(&self.hermitian_ricci_form(&rc), &self.herm).re;
        let b = two_form_trace(&self.hermitian_ricci_form(&rb), &self.herm).re;
        (s, u, b)
    }

    pub fn curvature_of(&self, conn: &ConnectionCoefficients) -> CurvatureData {
        let (r, ricci_tensor) = self.raw_curvature(conn);
        let ricci_form = match conn.kind {
            ConnectionKind::Weyl => self.weyl_ricci_form(&ricci_tensor),
            _ => self.hermitian_ricci_form(&r),
        };
        let (s, u, b) = self.scalar_invariants();
        CurvatureData {
            kind: conn.kind,
            r,
            ricci_tensor,
            ricci_form,
            s,
            u,
            b,
        }
    }

    pub fn curvature(&self, kind: ConnectionKind) -> CurvatureData {
        self.curvature_of(&self.connection(kind))
    }

    /// `r^W(X,Y) = Ric^W_sym(X, JY)`.
    fn weyl_ricci_form(&self, ric: &RMat) -> InvariantForm {
        let sym = (ric + ric.transpose()) * 0.5;
        InvariantForm::real_two_form(&(sym * self.j()))
    }

    pub fn d(&self, a: &InvariantForm) -> InvariantForm {
        ce_differential(a, &self.alg).expect("dimension checked")
    }

    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> C64 {
        inner(a, b, self.metric()).expect("shapes checked")
    }

    pub fn norm_sq(&self, a: &InvariantForm) -> f64 {
        norm_sq(a, self.metric())
    }

    pub fn trace(&self, alpha: &InvariantForm) -> C64 {
        two_form_trace(alpha, &self.herm)
    }

    /// `∇^L θ` as a matrix `[X][Y]`.
    pub fn nabla_theta(&self) -> RMat {
        self.connection(ConnectionKind::LeviCivita)
            .covariant_derivative_one_form(&self.theta_real())
    }

    pub fn complex_j(&self) -> crate::linalg::CMat {
        to_complex(self.j())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{samelson_frame, PositivityRule, ToralPairing};

    fn u2() -> (LieAlgebra, HermitianStructure) {
        let e = [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)];
        let alg = LieAlgebra::from_sparse(3, &e, true, None)
            .unwrap()
            .direct_sum(&LieAlgebra::abelian(1));
        let g = Metric::identity(4);
        let torus = RMat::from_fn(4, 2, |r, c| if r == c + 2 { 1.0 } else { 0.0 });
        let f = samelson_frame(
            &alg,
            &g,
            &torus,
            &PositivityRule::Lexicographic,
            &ToralPairing::Sequential,
        )
        .unwrap();
        let herm = HermitianStructure::new(&alg, g, f.j.clone()).unwrap();
        (alg, herm)
    }

    #[test]
    fn connection_invariants_on_u2() {
        let (alg, herm) = u2();
        let geo = Geometry::new(&alg, &herm).unwrap();
        for kind in [
            ConnectionKind::LeviCivita,
            ConnectionKind::Chern,
            ConnectionKind::Bismut,
        ] {
            let c = geo.connection(kind);
            assert!(c.metric_residual(herm.metric()) < 1e-12, "{kind:?}");
        }
        for kind in [ConnectionKind::Chern, ConnectionKind::Bismut] {
            assert!(geo.connection(kind).hermitian_residual(herm.j()) < 1e-12);
        }
        let w = geo.connection(ConnectionKind::Weyl);
        assert!(w.weyl_residual(herm.metric(), &geo.theta_real()) < 1e-12);
        // bi-invariant metric: the Bismut connection is the flat left-invariant one
        assert!(geo.connection(ConnectionKind::Bismut).max_abs() < 1e-12);
    }

    #[test]
    fn lee_form_on_u2_is_central() {
        let (alg, herm) = u2();
        let lee = lee_form(&alg, &herm).unwrap();
        assert!(lee.residual < 1e-12);
        let th = lee.theta.coeffs();
        assert!(th[0].norm() < 1e-12 && th[1].norm() < 1e-12 && th[2].norm() < 1e-12);
        assert!(th[3].norm() > 0.1);
    }

    #[test]
    fn lee_form_rejects_n1() {
        let alg = LieAlgebra::abelian(2);
        let j = RMat::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let herm = HermitianStructure::new(&alg, Metric::identity(2), j).unwrap();
        assert!(matches!(
            lee_form(&alg, &herm),
            Err(Error::LeeFormDegenerate(1))
        ));
        let geo = Geometry::new(&alg, &herm).unwrap();
        assert!(!geo.lee_defined);
    }
}
