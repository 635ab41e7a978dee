//! The Clifford module `Λ^{0,•}` and the Lichnerowicz-type formulas.
//!
//! The graded space `⊕_p Λ^{0,p}` is indexed by bit masks over `ζ̄^1..ζ̄^n`.
//! A unitary frame `Z_j` gives the adapted real frame
//! `f_{2j-1} = √2 Re Z_j`, `f_{2j} = J f_{2j-1}`, and
//! `c(f^{2j-1}) = ε_j - ι_j`, `c(f^{2j}) = i(ε_j + ι_j)` with `ε_j = ζ̄^j ∧`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::dolbeault::{DolbeaultComplex, OperatorMatrix, Space};
use crate::error::{Error, Result};
use crate::hermitian::{ConnectionKind, Geometry};
use crate::liealg::{HermitianStructure, LieAlgebra, SamelsonFrame};
use crate::linalg::{
    hermitian_eigen, max_abs, max_abs_real, op_norm, to_complex, CMat, CVec, RMat, C64,
};
use crate::multilinear::{bigrade, contract, pq_project, subsets, wedge, InvariantForm, Metric};
use crate::report::{Check, SuiteReport};

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn popcount_below(mask: usize, j: usize) -> u32 {
    (mask & ((1 << j) - 1)).count_ones()
}

/// `J` on `ℝ^{2n}` with `J e_{2j} = e_{2j+1}` (0-based).
pub fn standard_j(n: usize) -> RMat {
    let mut j = RMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

/// Generators `c(e^a)` on the graded space for the standard model
/// `(ℝ^{2n}, g = I, J = standard_j(n))`.
#[derive(Clone, Debug)]
pub struct CliffordAction {
    n: usize,
    eps: Vec<CMat>,
    iota: Vec<CMat>,
    gens: Vec<CMat>,
    /// `c(e^a) e_m = phase[a][m] e_{target[a][m]}`: each generator is monomial.
    target: Vec<Vec<usize>>,
    phase: Vec<Vec<C64>>,
}

impl CliffordAction {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 10 {
            return Err(Error::InvalidInput(format!(
                "complex dimension {n} out of range 1..=10"
            )));
        }
        let dim = 1usize << n;
        let mut eps = Vec::with_capacity(n);
        let mut iota = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = CMat::zeros(dim, dim);
            let mut io = CMat::zeros(dim, dim);
            for m in 0..dim {
                let sg = if popcount_below(m, j) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                if m >> j & 1 == 0 {
                    e[(m | 1 << j, m)] = C64::new(sg, 0.0);
                } else {
                    io[(m & !(1 << j), m)] = C64::new(sg, 0.0);
                }
            }
            eps.push(e);
            iota.push(io);
        }
        let mut gens = Vec::with_capacity(2 * n);
        for j in 0..n {
            gens.push(&eps[j] - &iota[j]);
            gens.push((&eps[j] + &iota[j]) * I);
        }
        let mut target = Vec::with_capacity(2 * n);
        let mut phase = Vec::with_capacity(2 * n);
        for g in &gens {
            let mut t = vec![0; dim];
            let mut ph = vec![C64::new(0.0, 0.0); dim];
            for m in 0..dim {
                let r = (0..dim)
                    .find(|&r| g[(r, m)].norm() > 0.0)
                    .expect("monomial");
                t[m] = r;
                ph[m] = g[(r, m)];
            }
            target.push(t);
            phase.push(ph);
        }
        Ok(CliffordAction {
            n,
            eps,
            iota,
            gens,
            target,
            phase,
        })
    }

    /// Adds `coef · c(e^{i_1})⋯c(e^{i_k})` to `out`.
    fn add_monomial(&self, idx: &[usize], coef: C64, out: &mut CMat) {
        for m in 0..self.spinor_dim() {
            let mut t = m;
            let mut ph = coef;
            for &i in idx.iter().rev() {
                ph *= self.phase[i][t];
                t = self.target[i][t];
            }
            out[(t, m)] += ph;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n`.
    pub fn spinor_dim(&self) -> usize {
        1 << self.n
    }

    /// `c(e^a)`, 0-based.
    pub fn generator(&self, a: usize) -> &CMat {
        &self.gens[a]
    }

    /// `ζ̄^j ∧`.
    pub fn epsilon(&self, j: usize) -> &CMat {
        &self.eps[j]
    }

    /// Contraction with `Z̄_j`.
    pub fn iota(&self, j: usize) -> &CMat {
        &self.iota[j]
    }

    /// `max |c_a c_b + c_b c_a + 2δ_ab|`.
    pub fn relation_residual(&self) -> f64 {
        let dim = self.spinor_dim();
        let id = CMat::identity(dim, dim);
        let mut worst: f64 = 0.0;
        for a in 0..2 * self.n {
            for b in a..2 * self.n {
                let mut ac = &self.gens[a] * &self.gens[b] + &self.gens[b] * &self.gens[a];
                if a == b {
                    ac += &id * C64::new(2.0, 0.0);
                }
                worst = worst.max(max_abs(&ac));
            }
        }
        worst
    }

    /// `Σ_I a_I c(e^{i_1})⋯c(e^{i_k})` for a form on the standard model.
    pub fn act(&self, a: &InvariantForm) -> Result<CMat> {
        if a.dim() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: a.dim(),
            });
        }
        let dim = self.spinor_dim();
        let k = a.degree();
        let mut out = CMat::zeros(dim, dim);
        for (&mask, &coef) in subsets(2 * self.n, k).iter().zip(a.coeffs()) {
            if coef.norm() == 0.0 {
                continue;
            }
            self.add_monomial(&crate::multilinear::mask_indices(mask), coef, &mut out);
        }
        Ok(out)
    }

    /// Projection onto the `Λ^{0,p}` block, as indices into the graded space.
    pub fn block(&self, p: usize) -> Vec<usize> {
        subsets(self.n, p).into_iter().map(|m| m as usize).collect()
    }
}

fn sub_block(m: &CMat, idx: &[usize]) -> CMat {
    CMat::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])])
}

/// Clifford action tied to a `g`-orthonormal, `J`-adapted real frame of `𝔤`.
#[derive(Clone, Debug)]
pub struct FramedClifford {
    pub action: CliffordAction,
    /// Frame vectors as columns.
    pub frame: RMat,
    frame_inv: RMat,
}

impl FramedClifford {
    /// Rejects frames that are not `g`-orthonormal or not adapted
    /// (`J f_{2j-1} = f_{2j}`), at `1e-10`.
    pub fn new(frame: RMat, g: &Metric, j: &RMat) -> Result<Self> {
        let nr = frame.nrows();
        if frame.ncols() != nr || nr % 2 != 0 || g.dim() != nr || j.nrows() != nr {
            return Err(Error::DimensionMismatch {
                expected: nr,
                got: frame.ncols(),
            });
        }
        let ortho =
            max_abs_real(&(frame.transpose() * g.matrix() * &frame - RMat::identity(nr, nr)));
        let adapted = max_abs_real(&(j * &frame - &frame * standard_j(nr / 2)));
        let res = ortho.max(adapted);
        if res > 1e-10 {
            return Err(Error::NotAdaptedFrame(res));
        }
        let frame_inv = frame.transpose() * g.matrix();
        Ok(FramedClifford {
            action: CliffordAction::new(nr / 2)?,
            frame,
            frame_inv,
        })
    }

    pub fn from_samelson(frame: &SamelsonFrame, herm: &HermitianStructure) -> Result<Self> {
        FramedClifford::new(frame.real_frame(), herm.metric(), herm.j())
    }

    pub fn n(&self) -> usize {
        self.action.n
    }

    /// `c(a)` after pulling `a` back to the frame.
    pub fn act(&self, a: &InvariantForm) -> Result<CMat> {
        if a.dim() != self.frame.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.frame.nrows(),
                got: a.dim(),
            });
        }
        self.action.act(&a.pullback_real(&self.frame))
    }

    pub fn operator(&self, a: &InvariantForm) -> Result<OperatorMatrix> {
        OperatorMatrix::new(self.n(), Space::Graded, Space::Graded, self.act(a)?)
    }

    /// Spin lift `S(A) = ¼ Σ_{ab} (F⁻¹AF)_{ab} c_a c_b`.
    pub fn spin_lift(&self, a: &RMat) -> CMat {
        let af = &self.frame_inv * a * &self.frame;
        let dim = self.action.spinor_dim();
        let mut out = CMat::zeros(dim, dim);
        for x in 0..af.nrows() {
            for y in 0..af.ncols() {
                if af[(x, y)] != 0.0 {
                    self.action
                        .add_monomial(&[x, y], C64::new(0.25 * af[(x, y)], 0.0), &mut out);
                }
            }
        }
        out
    }

    /// `∇^{A,K}_X = -S(Γ^A_X) + ½ a_K(X)` for each basis vector `e_X`.
    pub fn spinor_connection(&self, gammas: &[RMat], a_k: &InvariantForm) -> Vec<CMat> {
        let dim = self.action.spinor_dim();
        let id = CMat::identity(dim, dim);
        gammas
            .iter()
            .enumerate()
            .map(|(x, gm)| -self.spin_lift(gm) + &id * (a_k.coeffs()[x] * 0.5))
            .collect()
    }

    /// `Σ_a c(f^a) ∇_{f_a}` with `∇_{f_a} = Σ_X F[X,a] ∇_X`.
    pub fn dirac(&self, nabla: &[CMat]) -> CMat {
        let dim = self.action.spinor_dim();
        let mut out = CMat::zeros(dim, dim);
        for a in 0..self.frame.ncols() {
            out += &self.action.gens[a] * self.along_frame(nabla, a);
        }
        out
    }

    /// `∇_{f_a}`.
    pub fn along_frame(&self, nabla: &[CMat], a: usize) -> CMat {
        let dim = self.action.spinor_dim();
        let mut m = CMat::zeros(dim, dim);
        for (x, nx) in nabla.iter().enumerate() {
            let w = self.frame[(x, a)];
            if w != 0.0 {
                m += nx * C64::new(w, 0.0);
            }
        }
        m
    }
}

/// Connection induced on `Λ^{0,•}` by a `J`-preserving connection:
/// `-Σ_{ab} M̄_{ba} ε_a ι_b` with `M̄` the `(0,1)` block of `B⁻¹ Γ_X B`.
pub fn induced_connection(
    cl: &CliffordAction,
    frame: &SamelsonFrame,
    gammas: &[RMat],
) -> Vec<CMat> {
    let n = cl.n;
    let b = frame.full_basis();
    let binv = b.clone().try_inverse().expect("frame basis invertible");
    let dim = cl.spinor_dim();
    gammas
        .iter()
        .map(|gm| {
            let m = &binv * to_complex(gm) * &b;
            let mut out = CMat::zeros(dim, dim);
            for a in 0..n {
                for bb in 0..n {
                    let w = m[(n + bb, n + a)];
                    if w.norm() != 0.0 {
                        out -= (&cl.eps[a] * &cl.iota[bb]) * w;
                    }
                }
            }
            out
        })
        .collect()
}

/// Eigenvalues of `(a/2)Id + iα` and `(-a/2)Id + iα` on `Λ^{0,p}`.
#[derive(Clone, Debug, Serialize)]
pub struct PositivitySpectrum {
    pub p: usize,
    /// `Σ_j α(Je_j, e_j)`.
    pub a: f64,
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    /// Smallest eigenvalue of `A(X,Y) = α(JX,Y)`.
    pub min_tensor_eigenvalue: f64,
    pub pass: bool,
}

/// Spectral signs for a real (1,1)-form on the standard model.
///
/// When `A(X,Y) = α(JX,Y)` is positive definite the first operator must be
/// positive definite for `p > 0` and zero at `p = 0`, the second negative
/// definite for `p < n` and zero at `p = n`. For semidefinite `A` the
/// inequalities are weak.
pub fn positivity_spectrum(alpha: &InvariantForm, p: usize) -> Result<PositivitySpectrum> {
    let n = alpha.dim() / 2;
    if p > n {
        return Err(Error::DegreeMismatch(format!("degree {p} exceeds {n}")));
    }
    Ok(positivity_spectra(alpha)?.swap_remove(p))
}

/// [`positivity_spectrum`] for every `p = 0..=n`.
pub fn positivity_spectra(alpha: &InvariantForm) -> Result<Vec<PositivitySpectrum>> {
    if alpha.degree() != 2 || alpha.dim() % 2 != 0 || alpha.dim() == 0 {
        return Err(Error::DegreeMismatch(
            "the positivity spectrum needs a 2-form on ℝ^{2n}".into(),
        ));
    }
    let n = alpha.dim() / 2;
    let j = standard_j(n);
    let scale = alpha.max_abs().max(1.0);
    let off = bigrade(alpha, &j)?
        .off_diagonal()
        .map(|f| f.max_abs())
        .unwrap_or(0.0);
    if off > 1e-10 * scale || alpha.max_imag() > 1e-12 * scale {
        return Err(Error::InvalidInput(format!(
            "not a real (1,1)-form (off-type part {off:.3e})"
        )));
    }
    let m = alpha.to_matrix().map(|z| z.re);
    // A(X,Y) = α(JX,Y) = (Jᵀ m)_{XY}
    let tensor = j.transpose() * &m;
    let tensor = (&tensor + tensor.transpose()) * 0.5;
    let min_t = tensor
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &x| a.min(x));
    let a: f64 = (0..2 * n)
        .map(|k| (0..2 * n).map(|l| j[(l, k)] * m[(l, k)]).sum::<f64>())
        .sum();
    let cl = CliffordAction::new(n)?;
    let ica = cl.act(alpha)? * I;
    let eps = 1e-10 * scale;
    let definite = min_t > eps;
    let semidefinite = min_t > -eps;
    let zero = |v: &[f64]| v.iter().all(|x| x.abs() <= eps);
    let herm = |m: CMat| (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut out = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let idx = cl.block(p);
        let blk = sub_block(&ica, &idx);
        let id = CMat::identity(idx.len(), idx.len());
        let (plus, _) = hermitian_eigen(&herm(&blk + &id * C64::new(a / 2.0, 0.0)));
        let (minus, _) = hermitian_eigen(&herm(&blk - &id * C64::new(a / 2.0, 0.0)));
        let pass = if definite {
            (if p == 0 {
                zero(&plus)
            } else {
                plus.iter().all(|&x| x > eps)
            }) && (if p == n {
                zero(&minus)
            } else {
                minus.iter().all(|&x| x < -eps)
            })
        } else if semidefinite {
            plus.iter().all(|&x| x > -eps) && minus.iter().all(|&x| x < eps)
        } else {
            true
        };
        out.push(PositivitySpectrum {
            p,
            a,
            plus,
            minus,
            min_tensor_eigenvalue: min_t,
            pass,
        });
    }
    Ok(out)
}

/// Real (1,1)-form `α = JA` from a Hermitian matrix `h ≥ 0` on `ℂ^n`,
/// with `A` the real symmetric form of `h` commuting with `J`.
pub fn one_one_form_from_hermitian(h: &CMat) -> InvariantForm {
    let n = h.nrows();
    let mut a = RMat::zeros(2 * n, 2 * n);
    for x in 0..n {
        for y in 0..n {
            let z = h[(x, y)];
            a[(2 * x, 2 * y)] = z.re;
            a[(2 * x + 1, 2 * y + 1)] = z.re;
            a[(2 * x, 2 * y + 1)] = -z.im;
            a[(2 * x + 1, 2 * y)] = z.im;
        }
    }
    InvariantForm::real_two_form(&(standard_j(n) * a))
}

/// Random (1,1)-form whose tensor `α(J·,·)` has rank `rank` (positive
/// definite when `rank = n`).
pub fn random_nonnegative_one_one<R: Rng>(n: usize, rank: usize, rng: &mut R) -> InvariantForm {
    let mut x = CMat::zeros(n, rank);
    for v in x.iter_mut() {
        *v = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    let mut h = &x * x.adjoint();
    if rank == n {
        h += CMat::identity(n, n) * C64::new(0.1, 0.0);
    }
    one_one_form_from_hermitian(&h)
}

fn random_real_one_form<R: Rng>(dim: usize, rng: &mut R) -> InvariantForm {
    let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
    InvariantForm::real_one_form(&v)
}

fn random_spinor<R: Rng>(dim: usize, rng: &mut R) -> CVec {
    let mut v = CVec::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let nrm = v.norm();
    v /= C64::new(nrm, 0.0);
    v
}

/// `ψᴴ M ψ`.
fn quad(m: &CMat, psi: &CVec) -> C64 {
    (psi.adjoint() * (m * psi))[(0, 0)]
}

/// Checks on the standard model for `n = 2, 3, 4`: Clifford relations,
/// the action of `Ω`, `α∧Ω = (n-2p)iα + ⟨α,Ω⟩` on random (1,1)-forms,
/// positivity signs of (a/2)Id + iα, and the Hopf-type pointwise bounds.
pub fn model_suite(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("clifford_model");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=4 {
        let cl = CliffordAction::new(n)?;
        let j = standard_j(n);
        rep.push(Check::residual(
            &format!("clifford_relations_n{n}"),
            "c(e^a)c(e^b) + c(e^b)c(e^a) = -2δ_ab",
            cl.relation_residual(),
            1e-12,
        ));
        let omega = InvariantForm::real_two_form(&j);
        let co = cl.act(&omega)?;
        let mut cal: f64 = 0.0;
        for m in 0..cl.spinor_dim() {
            let p = m.count_ones() as f64;
            for m2 in 0..cl.spinor_dim() {
                let want = if m == m2 {
                    I * (n as f64 - 2.0 * p)
                } else {
                    C64::new(0.0, 0.0)
                };
                cal = cal.max((co[(m, m2)] - want).norm());
            }
        }
        rep.push(Check::residual(
            &format!("omega_action_n{n}"),
            "Ω acts on Λ^{0,p} as (n-2p)i",
            cal,
            1e-12,
        ));
        let g = Metric::identity(2 * n);
        let mut wedge_res: f64 = 0.0;
        let mut violations = 0usize;
        let mut weak_violations = 0usize;
        let mut hopf_res: f64 = 0.0;
        let mut hopf_violations = 0usize;
        for _ in 0..trials {
            let alpha = random_nonnegative_one_one(n, n, &mut rng);
            let aw = cl.act(&wedge(&alpha, &omega)?)?;
            let ca = cl.act(&alpha)?;
            let ip = crate::multilinear::inner(&alpha, &omega, &g)?;
            for p in 0..=n {
                let idx = cl.block(p);
                let lhs = sub_block(&aw, &idx);
                let rhs = sub_block(&ca, &idx) * (I * (n as f64 - 2.0 * p as f64))
                    + CMat::identity(idx.len(), idx.len()) * ip;
                wedge_res = wedge_res.max(max_abs(&(lhs - rhs)));
            }
            violations += positivity_spectra(&alpha)?
                .iter()
                .filter(|s| !s.pass)
                .count();
            let rank = rng.random_range(0..n);
            let beta = random_nonnegative_one_one(n, rank, &mut rng);
            weak_violations += positivity_spectra(&beta)?
                .iter()
                .filter(|s| !s.pass)
                .count();
            // d(Jθ) = |θ|²Ω + θ∧Jθ imposed on random θ
            let theta = random_real_one_form(2 * n, &mut rng);
            let jt = crate::multilinear::j_one_form(&j, &theta);
            let t2 = crate::multilinear::norm_sq(&theta, &g);
            let djt = &(&omega * t2) + &wedge(&theta, &jt)?;
            let jtt = wedge(&jt, &theta)?;
            let lhs = cl.act(&(&djt - &jtt))? * I;
            let cjtt = cl.act(&jtt)? * I;
            for p in 0..=n {
                let idx = cl.block(p);
                let k = idx.len();
                let want = CMat::identity(k, k) * C64::new(-(n as f64 - 2.0 * p as f64) * t2, 0.0)
                    - sub_block(&cjtt, &idx) * C64::new(2.0, 0.0);
                hopf_res = hopf_res.max(max_abs(&(sub_block(&lhs, &idx) - want)) / t2.max(1.0));
                let blk = sub_block(&cjtt, &idx);
                let (ev, _) = hermitian_eigen(&((&blk + blk.adjoint()) * C64::new(0.5, 0.0)));
                let tol = 1e-10 * t2.max(1.0);
                if ev.iter().any(|&x| x < -t2 - tol || x > t2 + tol) {
                    hopf_violations += 1;
                }
            }
        }
        rep.push(Check::residual(
            &format!("omega_wedge_action_n{n}"),
            "(α∧Ω)ψ_p = (n-2p)i αψ_p + ⟨α,Ω⟩ψ_p for (1,1)-forms α",
            wedge_res,
            1e-10,
        ));
        rep.push(Check::boolean(
            &format!("positivity_signs_n{n}"),
            "α > 0: (a/2)Id + iα > 0 for p > 0, = 0 at p = 0; (-a/2)Id + iα < 0 for p < n, = 0 at p = n",
            violations == 0,
            Some(format!("{trials} random forms, {violations} violations")),
        ));
        rep.push(Check::boolean(
            &format!("nonnegative_signs_n{n}"),
            "α ≥ 0: (a/2)Id + iα ≥ 0 and (-a/2)Id + iα ≤ 0",
            weak_violations == 0,
            Some(format!(
                "{trials} random forms, {weak_violations} violations"
            )),
        ));
        rep.push(Check::residual(
            &format!("hopf_clifford_identity_n{n}"),
            "i(dJθ - Jθ∧θ) = -(n-2p)|θ|² - 2i(Jθ∧θ) on Λ^{0,p}",
            hopf_res,
            1e-10,
        ));
        rep.push(Check::boolean(
            &format!("hopf_clifford_bounds_n{n}"),
            "-|θ|² ≤ i(Jθ∧θ) ≤ |θ|² on Λ^{0,p}",
            hopf_violations == 0,
            Some(format!("{trials} random θ, {hopf_violations} violations")),
        ));
    }
    Ok(rep)
}

/// Everything needed to compare spinor operators on one Hermitian group.
pub struct SpinorData {
    pub cl: FramedClifford,
    pub geo: Geometry,
    /// `□ = √2(∂̄ + ∂̄*)`.
    pub dirac: CMat,
    pub complex: DolbeaultComplex,
    /// `∇^{B,C}_X`, `∇^{L,C}_X`, `∇^{B,B}_X` for basis vectors `e_X`.
    pub nabla_bc: Vec<CMat>,
    pub nabla_lc: Vec<CMat>,
    pub nabla_bb: Vec<CMat>,
}

impl SpinorData {
    pub fn new(
        alg: &LieAlgebra,
        herm: &HermitianStructure,
        frame: &SamelsonFrame,
    ) -> Result<SpinorData> {
        let j_gap = max_abs_real(&(herm.j() - &frame.j));
        if j_gap > 1e-10 {
            return Err(Error::InvalidInput(format!(
                "frame and Hermitian structure carry different J (gap {j_gap:.3e})"
            )));
        }
        let geo = Geometry::new(alg, herm)?;
        let cl = FramedClifford::from_samelson(frame, herm)?;
        let complex = DolbeaultComplex::new(alg, frame);
        let dirac = complex.dirac()?.entries;
        let lc = geo.connection(ConnectionKind::LeviCivita);
        let bi = geo.connection(ConnectionKind::Bismut);
        let a_c = geo
            .connection(ConnectionKind::Chern)
            .anticanonical_form(geo.j());
        let nabla_bc = cl.spinor_connection(&bi.gammas, &a_c);
        let nabla_lc = cl.spinor_connection(&lc.gammas, &a_c);
        let nabla_bb = induced_connection(&cl.action, frame, &bi.gammas);
        Ok(SpinorData {
            cl,
            geo,
            dirac,
            complex,
            nabla_bc,
            nabla_lc,
            nabla_bb,
        })
    }

    pub fn n(&self) -> usize {
        self.cl.n()
    }

    fn frame_ops(&self, nabla: &[CMat]) -> Vec<CMat> {
        (0..2 * self.n())
            .map(|a| self.cl.along_frame(nabla, a))
            .collect()
    }

    /// `Σ_a ∇_{f_a}ᴴ ∇_{f_a}`.
    pub fn connection_laplacian(&self, nabla: &[CMat]) -> CMat {
        let dim = self.cl.action.spinor_dim();
        let mut out = CMat::zeros(dim, dim);
        for a in self.frame_ops(nabla) {
            out += a.adjoint() * &a;
        }
        out
    }
}

/// Spinor-connection relations and the Dirac decomposition on any
/// Hermitian group with a Samelson frame.
pub fn spinor_suite(data: &SpinorData, tol: f64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("spinor");
    let geo = &data.geo;
    let n = data.n();
    let dim = data.cl.action.spinor_dim();
    let id = CMat::identity(dim, dim);
    let mut r14: f64 = 0.0;
    let mut r15: f64 = 0.0;
    for x in 0..geo.dim() {
        let shift = &id * (I * ((n as f64 - 1.0) / 2.0) * geo.j_theta.coeffs()[x]);
        r14 = r14.max(max_abs(&(&data.nabla_bc[x] - &data.nabla_bb[x] - shift)));
        let mut e = vec![C64::new(0.0, 0.0); geo.dim()];
        e[x] = one();
        let ix = contract(&e, &geo.dc_omega)?;
        let rhs = &data.nabla_lc[x] + data.cl.act(&ix)? * C64::new(0.25, 0.0);
        r15 = r15.max(max_abs(&(&data.nabla_bc[x] - rhs)));
    }
    rep.push(Check::residual(
        "bismut_spinor_shift",
        "∇^{B,C}_X = ∇^{B,B}_X + ((n-1)/2) iJθ(X)",
        r14,
        tol,
    ));
    rep.push(Check::residual(
        "bismut_levi_civita_spinor",
        "∇^{B,C}_X = ∇^{L,C}_X + ¼ ι_X d^cΩ",
        r15,
        tol,
    ));
    let ct = data.cl.act(&geo.dc_omega)?;
    let d_lc = data.cl.dirac(&data.nabla_lc);
    let d_bc = data.cl.dirac(&data.nabla_bc);
    rep.push(Check::residual(
        "dirac_levi_civita",
        "□ = D^{L,C} + ¼ d^cΩ",
        op_norm(&(&data.dirac - d_lc - &ct * C64::new(0.25, 0.0))),
        tol,
    ));
    rep.push(Check::residual(
        "dirac_bismut",
        "□ = D^{B,C} - ½ d^cΩ",
        op_norm(&(&data.dirac - d_bc + &ct * C64::new(0.5, 0.0))),
        tol,
    ));
    let sq = &data.dirac * &data.dirac;
    let lap = {
        let d = data.complex.graded_dbar()?.entries;
        (&d * d.adjoint() + d.adjoint() * &d) * C64::new(2.0, 0.0)
    };
    rep.push(Check::residual(
        "dirac_square_laplacian",
        "□² = 2(∂̄∂̄* + ∂̄*∂̄)",
        op_norm(&(sq - lap)),
        tol,
    ));
    Ok(rep)
}

fn require_bi_invariant(herm: &HermitianStructure) -> Result<()> {
    if herm.bi_invariant {
        Ok(())
    } else {
        Err(Error::NotBiInvariant(herm.bi_invariance_residual))
    }
}

/// Right-hand side of
/// `□² = (∇^{B,C})*∇^{B,C} + s/4 + (i/2)ρ^C + ¼dd^cΩ - |d^cΩ|²/8`.
pub fn lichnerowicz_rhs(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    frame: &SamelsonFrame,
) -> Result<OperatorMatrix> {
    require_bi_invariant(herm)?;
    let data = SpinorData::new(alg, herm, frame)?;
    let terms = lichnerowicz_terms(&data)?;
    OperatorMatrix::new(data.n(), Space::Graded, Space::Graded, terms.total())
}

/// The five terms of the Bismut formula for `□²`.
#[derive(Clone, Debug)]
pub struct LichnerowiczTerms {
    pub connection: CMat,
    pub scalar: CMat,
    pub torsion_norm: CMat,
    pub chern_ricci: CMat,
    pub ddc: CMat,
}

impl LichnerowiczTerms {
    pub fn total(&self) -> CMat {
        &self.connection + &self.scalar + &self.torsion_norm + &self.chern_ricci + &self.ddc
    }
}

pub fn lichnerowicz_terms(data: &SpinorData) -> Result<LichnerowiczTerms> {
    let geo = &data.geo;
    let dim = data.cl.action.spinor_dim();
    let id = CMat::identity(dim, dim);
    let rc = geo.curvature(ConnectionKind::Chern);
    Ok(LichnerowiczTerms {
        connection: data.connection_laplacian(&data.nabla_bc),
        scalar: &id * C64::new(rc.s / 4.0, 0.0),
        torsion_norm: &id * C64::new(-geo.d_omega_sq / 8.0, 0.0),
        chern_ricci: data.cl.act(&rc.ricci_form)? * (I * 0.5),
        ddc: data.cl.act(&geo.ddc_omega)? * C64::new(0.25, 0.0),
    })
}

/// Operator, quadratic-form and harmonic checks of the Lichnerowicz formulas.
pub fn lichnerowicz_verify(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    frame: &SamelsonFrame,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport> {
    require_bi_invariant(herm)?;
    let data = SpinorData::new(alg, herm, frame)?;
    let geo = &data.geo;
    let n = data.n();
    let nm1 = n as f64 - 1.0;
    let dim = data.cl.action.spinor_dim();
    let mut rep = SuiteReport::new("lichnerowicz");
    rep.premise(
        "bi-invariant metric",
        true,
        Some(herm.bi_invariance_residual),
    );

    let terms = lichnerowicz_terms(&data)?;
    let sq = &data.dirac * &data.dirac;
    let c = Check::residual(
        "bismut_lichnerowicz",
        "□² = (∇^{B,C})*∇^{B,C} + s/4 + (i/2)ρ^C + ¼dd^cΩ - |d^cΩ|²/8",
        op_norm(&(&sq - terms.total())),
        1e-8,
    );
    rep.push(c.with_note(format!(
        "term norms: connection {:.3e}, s/4 {:.3e}, |d^cΩ|²/8 {:.3e}, ρ^C {:.3e}, dd^cΩ {:.3e}",
        op_norm(&terms.connection),
        op_norm(&terms.scalar),
        op_norm(&terms.torsion_norm),
        op_norm(&terms.chern_ricci),
        op_norm(&terms.ddc)
    )));
    let shift = CMat::identity(dim, dim) * C64::new(nm1 * nm1 / 4.0 * geo.theta_sq, 0.0);
    rep.push(Check::residual(
        "bismut_connection_laplacian",
        "(∇^{B,C})*∇^{B,C} = ((n-1)²/4)|θ|² on invariant spinors",
        op_norm(&(&terms.connection - shift)),
        1e-8,
    ));

    let rb = geo.curvature(ConnectionKind::Bismut);
    let b = rb.b;
    let cjt = data.cl.act(&geo.j_theta)?;
    let crb = data.cl.act(&rb.ricci_form)?;
    let cddc = data.cl.act(&geo.ddc_omega)?;
    let bb_ops = data.frame_ops(&data.nabla_bb);
    let scalar =
        0.25 * (b + 3.0 * nm1 * geo.d_star_theta + nm1 * nm1 * geo.theta_sq - geo.d_omega_sq);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let psi = random_spinor(dim, &mut rng);
        let bpsi = &data.dirac * &psi;
        let lhs = bpsi.norm_squared();
        let nabla_sq: f64 = bb_ops.iter().map(|a| (a * &psi).norm_squared()).sum();
        let cross = nm1 * quad(&(&cjt * &data.dirac * I), &psi).re;
        let rhs = nabla_sq
            + cross
            + scalar * psi.norm_squared()
            + (quad(&crb, &psi) * (I * 0.5)).re
            + 0.25 * quad(&cddc, &psi).re;
        worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }
    rep.push(
        Check::residual(
            "quadratic_form_identity",
            "‖□ψ‖² = ‖∇^Bψ‖² + (n-1)Re(iJθ□ψ,ψ) + ¼(b + 3(n-1)d*θ + (n-1)²|θ|² - |dΩ|²)|ψ|² + (i/2)(ρ^Bψ,ψ) + ¼(dd^cΩψ,ψ)",
            worst,
            1e-8,
        )
        .with_note(format!("{samples} random unit spinors, relative residual")),
    );

    let rb11 = pq_project(&rb.ricci_form, geo.j(), 1, 1)?;
    let c11 = data.cl.act(&rb11)?;
    let mut t_nabla: f64 = 0.0;
    let mut t_b: f64 = 0.0;
    let mut t_rho: f64 = 0.0;
    let mut count = 0usize;
    for p in 0..=n {
        let idx = data.cl.action.block(p);
        for h in data.complex.harmonic_basis(p)? {
            let mut psi = CVec::zeros(dim);
            for (k, &m) in idx.iter().enumerate() {
                psi[m] = h[k];
            }
            let nb: f64 = bb_ops.iter().map(|a| (a * &psi).norm_squared()).sum();
            t_nabla = t_nabla.max(nb);
            t_b = t_b.max((b / 4.0 * psi.norm_squared()).abs());
            t_rho = t_rho.max((quad(&c11, &psi) * (I * 0.5)).norm());
            count += 1;
        }
    }
    let note = format!("{count} harmonic forms");
    rep.push(
        Check::residual(
            "harmonic_bismut_gradient",
            "‖∇^Bψ_p‖² = 0 for harmonic ψ_p",
            t_nabla,
            1e-8,
        )
        .with_note(note.clone()),
    );
    rep.push(
        Check::residual(
            "harmonic_bismut_trace",
            "(b/4)(ψ_p,ψ_p) = 0 for harmonic ψ_p",
            t_b,
            1e-8,
        )
        .with_note(note.clone()),
    );
    rep.push(
        Check::residual(
            "harmonic_bismut_ricci",
            "(i/2)((ρ^B)^{(1,1)}ψ_p,ψ_p) = 0 for harmonic ψ_p",
            t_rho,
            1e-8,
        )
        .with_note(note),
    );
    Ok(rep)
}

/// Convenience: `ψ` in the graded space from degree-`p` coefficients.
pub fn embed_degree(n: usize, p: usize, coeffs: &CVec) -> CVec {
    let mut psi = CVec::zeros(1 << n);
    for (k, m) in subsets(n, p).into_iter().enumerate() {
        psi[m as usize] = coeffs[k];
    }
    psi
}
