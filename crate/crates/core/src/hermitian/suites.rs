//! Verification suites over a [`Geometry`]. Each returns a [`SuiteReport`]
//! with one entry per identity, evaluated as `|lhs - rhs|`.

use super::{ConnectionKind, Geometry};
use crate::error::Result;
use crate::liealg::{HermitianStructure, LieAlgebra};
use crate::linalg::{max_abs_real, C64};
use crate::multilinear::{bigrade, wedge, InvariantForm};
use crate::report::{Check, SuiteReport};

/// Default tolerance for scalar and form identities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for connection invariants.
pub const CONNECTION_TOL: f64 = 1e-12;

/// Tolerance for the flatness facts of bi-invariant metrics.
pub const FLATNESS_TOL: f64 = 1e-10;

/// Threshold below which `∇^Lθ` counts as zero.
pub const PARALLEL_TOL: f64 = 1e-10;

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn wedge_ok(a: &InvariantForm, b: &InvariantForm) -> InvariantForm {
    wedge(a, b).expect("same ambient dimension")
}

fn off_diagonal(a: &InvariantForm, geo: &Geometry) -> InvariantForm {
    bigrade(a, geo.j())
        .expect("J checked")
        .off_diagonal()
        .expect("nonempty")
}

fn scalar_gap(a: f64, b: f64) -> f64 {
    (a - b).abs()
}

/// Scalar and form identities of a Hermitian structure, plus connection
/// invariants.
pub fn identity_suite(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    tol: f64,
) -> Result<SuiteReport> {
    let geo = Geometry::new(alg, herm)?;
    Ok(identity_suite_geo(&geo, tol))
}

pub fn identity_suite_geo(geo: &Geometry, tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("identities");
    let n = geo.n as f64;
    let nm1 = n - 1.0;
    let g = geo.metric();

    let mut lc = geo.connection(ConnectionKind::LeviCivita);
    let ch = geo.connection(ConnectionKind::Chern);
    let bi = geo.connection(ConnectionKind::Bismut);
    let we = geo.connection(ConnectionKind::Weyl);
    for (conn, id) in [
        (&lc, "levi_civita_metric"),
        (&ch, "chern_metric"),
        (&bi, "bismut_metric"),
    ] {
        rep.push(Check::residual(
            id,
            "g(∇_X Y, Z) + g(Y, ∇_X Z) = 0",
            conn.metric_residual(g),
            CONNECTION_TOL,
        ));
    }
    rep.push(Check::residual(
        "weyl_conformal",
        "∇^W g = θ ⊗ g",
        we.weyl_residual(g, &geo.theta_real()),
        CONNECTION_TOL,
    ));
    rep.push(Check::residual(
        "chern_hermitian",
        "∇^C J = 0",
        ch.hermitian_residual(geo.j()),
        CONNECTION_TOL,
    ));
    rep.push(Check::residual(
        "bismut_hermitian",
        "∇^B J = 0",
        bi.hermitian_residual(geo.j()),
        CONNECTION_TOL,
    ));
    let tor_l = lc
        .torsion(&geo.alg)
        .iter()
        .fold(0.0_f64, |a, x| a.max(x.abs()));
    let tor_w = we
        .torsion(&geo.alg)
        .iter()
        .fold(0.0_f64, |a, x| a.max(x.abs()));
    rep.push(Check::residual(
        "levi_civita_torsion_free",
        "T^L = 0",
        tor_l,
        CONNECTION_TOL,
    ));
    rep.push(Check::residual(
        "weyl_torsion_free",
        "T^W = 0",
        tor_w,
        CONNECTION_TOL,
    ));
    let nr = geo.dim();
    let tb = bi.lowered_torsion(&geo.alg, g);
    let mut skew: f64 = 0.0;
    for i in 0..nr {
        for j in 0..nr {
            for k in 0..nr {
                let v = tb[(i * nr + j) * nr + k];
                skew = skew.max((v - geo.dc_omega.at(&[i, j, k]).re).abs());
                skew = skew.max((v + tb[(i * nr + k) * nr + j]).abs());
            }
        }
    }
    rep.push(Check::residual(
        "bismut_torsion",
        "g(T^B(X,Y),Z) is totally skew and equals d^cΩ(X,Y,Z)",
        skew,
        CONNECTION_TOL,
    ));
    rep.push(Check::residual(
        "dc_convention",
        "d^cΩ(X,Y,Z) = -dΩ(JX,JY,JZ)",
        geo.dc_omega
            .distance(&(-&geo.d_omega.pullback_real(geo.j()))),
        tol,
    ));
    lc.gammas.clear();

    let lee_res = geo.d_star_omega.distance(&(&geo.j_theta * nm1));
    let lee = Check::residual("lee_form", "d*Ω = (n-1)Jθ", lee_res, tol);
    rep.push(if geo.lee_defined {
        lee
    } else {
        lee.with_note("n = 1: θ set to 0, consistent since d*Ω = 0")
    });

    let rc = geo.curvature(ConnectionKind::Chern);
    let rb = geo.curvature(ConnectionKind::Bismut);
    let (s, u, b) = (rc.s, rc.u, rc.b);
    let djt = geo.d(&geo.j_theta);
    let th2 = geo.theta_sq;
    let dst = geo.d_star_theta;
    let do2 = geo.d_omega_sq;
    let tr_djt = geo.trace(&djt).re;

    rep.push(Check::residual(
        "chern_bismut_ricci",
        "ρ^C = ρ^B + (n-1) dJθ",
        rc.ricci_form.distance(&(&rb.ricci_form + &(&djt * nm1))),
        tol,
    ));
    rep.push(Check::residual(
        "trace_chern_ricci",
        "2u = 2⟨ρ^C, Ω⟩",
        scalar_gap(2.0 * u, 2.0 * geo.inner(&rc.ricci_form, &geo.omega).re),
        tol,
    ));
    rep.push(Check::residual(
        "trace_bismut_ricci",
        "b = 2⟨ρ^B, Ω⟩",
        scalar_gap(b, 2.0 * geo.inner(&rb.ricci_form, &geo.omega).re),
        tol,
    ));
    rep.push(Check::residual(
        "u_scalar",
        "2u = s - (n-1)d*θ + ½|dΩ|²",
        scalar_gap(2.0 * u, s - nm1 * dst + 0.5 * do2),
        tol,
    ));
    rep.push(Check::residual(
        "u_b_trace",
        "2u = b + (n-1) Σ dJθ(Je_j, e_j)",
        scalar_gap(2.0 * u, b + nm1 * tr_djt),
        tol,
    ));
    if geo.n > 1 {
        let dds = geo.d(&geo.d_star_omega);
        rep.push(Check::residual(
            "trace_djtheta_laplacian",
            "Σ dJθ(Je_j, e_j) = (2/(n-1))⟨dd*Ω, Ω⟩",
            scalar_gap(tr_djt, 2.0 / nm1 * geo.inner(&dds, &geo.omega).re),
            tol,
        ));
    } else {
        rep.push(Check::not_applicable(
            "trace_djtheta_laplacian",
            "Σ dJθ(Je_j, e_j) = (2/(n-1))⟨dd*Ω, Ω⟩",
            "n = 1",
        ));
    }
    rep.push(Check::residual(
        "trace_djtheta",
        "Σ dJθ(Je_j, e_j) = 2(n-1)|θ|² + 2d*θ",
        scalar_gap(tr_djt, 2.0 * nm1 * th2 + 2.0 * dst),
        tol,
    ));
    rep.push(Check::residual(
        "u_b_theta",
        "2u = b + 2(n-1)d*θ + 2(n-1)²|θ|²",
        scalar_gap(2.0 * u, b + 2.0 * nm1 * dst + 2.0 * nm1 * nm1 * th2),
        tol,
    ));
    rep.push(Check::residual(
        "b_scalar",
        "b = s - 3(n-1)d*θ - 2(n-1)²|θ|² + ½|dΩ|²",
        scalar_gap(b, s - 3.0 * nm1 * dst - 2.0 * nm1 * nm1 * th2 + 0.5 * do2),
        tol,
    ));
    let oo = wedge_ok(&geo.omega, &geo.omega);
    let lhs10 = geo.inner(&geo.ddc_omega, &oo);
    let rhs10 = 2.0 * nm1 * nm1 * th2 - 2.0 * do2 + 2.0 * nm1 * dst;
    rep.push(Check::residual(
        "ddc_omega_pairing",
        "⟨dd^cΩ, Ω∧Ω⟩ = 2(n-1)²|θ|² - 2|dΩ|² + 2(n-1)d*θ",
        (lhs10 - C64::new(rhs10, 0.0)).norm(),
        tol,
    ));
    let to = wedge_ok(&geo.theta, &geo.omega);
    rep.push(Check::residual(
        "theta_wedge_omega",
        "|θ∧Ω|² = (n-1)|θ|²",
        scalar_gap(geo.norm_sq(&to), nm1 * th2),
        tol,
    ));
    let jtt = wedge_ok(&geo.j_theta, &geo.theta);
    rep.push(Check::residual(
        "jtheta_theta_omega",
        "⟨Jθ∧θ, Ω⟩ = |θ|²",
        (geo.inner(&jtt, &geo.omega) - C64::new(th2, 0.0)).norm(),
        tol,
    ));
    rep.push(Check::residual(
        "omega_norm",
        "|Ω|² = n",
        scalar_gap(geo.norm_sq(&geo.omega), n),
        tol,
    ));
    rep.push(Check::residual(
        "d_squared_omega",
        "d(dΩ) = 0",
        geo.d(&geo.d_omega).max_abs(),
        tol,
    ));

    let balanced = th2.sqrt() < tol;
    let strong = geo.ddc_omega.max_abs() < tol;
    let stmt = "θ = 0 and dd^cΩ = 0 imply dΩ = 0";
    if balanced && strong {
        rep.push(Check::residual(
            "balanced_strong_kahler",
            stmt,
            geo.d_omega.max_abs(),
            tol,
        ));
    } else {
        let why = match (balanced, strong) {
            (false, false) => "θ ≠ 0 and dd^cΩ ≠ 0",
            (false, true) => "θ ≠ 0",
            _ => "dd^cΩ ≠ 0",
        };
        rep.push(Check::not_applicable("balanced_strong_kahler", stmt, why));
    }
    rep
}

/// `Γ^B = 0`, `ρ^B = 0`, `dd^cΩ = 0`, `d*θ = 0` for bi-invariant metrics.
pub fn flatness_suite(alg: &LieAlgebra, herm: &HermitianStructure) -> Result<SuiteReport> {
    let geo = Geometry::new(alg, herm)?;
    Ok(flatness_suite_geo(&geo))
}

pub fn flatness_suite_geo(geo: &Geometry) -> SuiteReport {
    let mut rep = SuiteReport::new("flatness");
    let bi = geo.herm.bi_invariant;
    rep.premise(
        "bi-invariant metric",
        bi,
        Some(geo.herm.bi_invariance_residual),
    );
    let bc = geo.connection(ConnectionKind::Bismut);
    let rb = geo.curvature_of(&bc);
    let checks = [
        ("bismut_flat_connection", "Γ^B = 0", bc.max_abs()),
        ("bismut_ricci_zero", "ρ^B = 0", rb.ricci_form.max_abs()),
        ("bismut_curvature_zero", "R^B = 0", rb.max_abs()),
        ("ddc_omega_zero", "dd^cΩ = 0", geo.ddc_omega.max_abs()),
        (
            "codifferential_theta_zero",
            "d*θ = 0",
            geo.d_star_theta.abs(),
        ),
    ];
    for (id, stmt, res) in checks {
        let c = Check::residual(id, stmt, res, FLATNESS_TOL);
        rep.push(if bi {
            c
        } else {
            c.demote("metric is not bi-invariant")
        });
    }
    rep
}

/// Connection forms `a^X` induced on `K^{-1}` and their curvatures.
pub fn anticanonical_suite(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    tol: f64,
) -> Result<SuiteReport> {
    let geo = Geometry::new(alg, herm)?;
    Ok(anticanonical_suite_geo(&geo, tol))
}

pub fn anticanonical_suite_geo(geo: &Geometry, tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("anticanonical");
    let n = geo.n as f64;
    let j = geo.j();
    let ac = geo.connection(ConnectionKind::Chern).anticanonical_form(j);
    let ab = geo.connection(ConnectionKind::Bismut).anticanonical_form(j);
    let aw = geo.connection(ConnectionKind::Weyl).anticanonical_form(j);
    rep.push(Check::residual(
        "chern_bismut_anticanonical",
        "a^C - a^B = (n-1) iJθ on K^{-1}",
        (&ac - &ab).distance(&geo.j_theta.scale(I * (n - 1.0))),
        tol,
    ));
    let rc = geo.curvature(ConnectionKind::Chern).ricci_form;
    let rb = geo.curvature(ConnectionKind::Bismut).ricci_form;
    rep.push(Check::residual(
        "chern_curvature_anticanonical",
        "iρ^C = d a^C",
        rc.scale(I).distance(&geo.d(&ac)),
        tol,
    ));
    rep.push(Check::residual(
        "bismut_curvature_anticanonical",
        "iρ^B = d a^B",
        rb.scale(I).distance(&geo.d(&ab)),
        tol,
    ));
    let expected = &geo.j_theta.scale(I * (-(n - 2.0) / 2.0)) + &(&geo.theta * (n / 2.0));
    let c = Check::residual(
        "bismut_weyl_anticanonical",
        "a^B - a^W = -((n-2)/2) iJθ + (n/2)θ",
        (&ab - &aw).distance(&expected),
        tol,
    );
    let lck_res = geo.d_omega.distance(&wedge_ok(&geo.theta, &geo.omega));
    rep.push(if lck_res < tol {
        c
    } else {
        c.demote("dΩ ≠ θ∧Ω: ∇^W does not preserve J")
    });
    rep
}

/// Relations for the canonical Weyl connection with premise tracking.
pub fn weyl_suite(alg: &LieAlgebra, herm: &HermitianStructure, tol: f64) -> Result<SuiteReport> {
    let geo = Geometry::new(alg, herm)?;
    Ok(weyl_suite_geo(&geo, tol))
}

pub fn weyl_suite_geo(geo: &Geometry, tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("weyl");
    let n = geo.n as f64;
    let dim4 = geo.dim() == 4;
    let d101 = geo.d_omega.distance(&wedge_ok(&geo.theta, &geo.omega));
    let dtheta = geo.d(&geo.theta);
    let closed = dtheta.max_abs() < tol;
    let preserves = d101 < tol;
    let lck = preserves && closed && geo.n > 1;
    rep.premise("real dimension 4", dim4, None);
    rep.premise("dΩ = θ∧Ω", preserves, Some(d101));
    rep.premise("dθ = 0", closed, Some(dtheta.max_abs()));
    rep.premise("locally conformally Kähler", lck, None);

    if dim4 {
        rep.push(Check::residual(
            "dim4_weyl_preserves_j",
            "dΩ = θ∧Ω in real dimension 4",
            d101,
            tol,
        ));
    }
    let wc = geo.connection(ConnectionKind::Weyl);
    let wj = wc.hermitian_residual(geo.j());
    rep.push(Check::boolean(
        "weyl_j_equivalence",
        "∇^W J = 0 exactly when dΩ = θ∧Ω",
        (wj < tol) == preserves,
        Some(format!("|∇^W J| = {wj:.3e}, |dΩ - θ∧Ω| = {d101:.3e}")),
    ));
    let rw = geo.curvature_of(&wc);
    let ric = &rw.ricci_tensor;
    let skew = (ric - ric.transpose()) * 0.5;
    let dth = dtheta.to_matrix().map(|z| z.re) * (n / 2.0);
    rep.push(Check::residual(
        "weyl_ricci_skew",
        "skew part of Ric^W = (n/2) dθ",
        max_abs_real(&(skew - dth)),
        tol,
    ));

    let r_w = &rw.ricci_form;
    let off = off_diagonal(r_w, geo).max_abs();
    let c = Check::residual("weyl_ricci_type", "r^W is a (1,1)-form", off, tol);
    rep.push(if preserves && geo.n > 1 {
        c
    } else {
        c.demote("premise ∇^W J = 0 fails")
    });

    let rb = geo.curvature(ConnectionKind::Bismut).ricci_form;
    let djt = geo.d(&geo.j_theta);
    let c = Check::residual(
        "bismut_weyl_lck",
        "ρ^B = r^W - ((n-2)/2) d(Jθ)",
        rb.distance(&(r_w - &(&djt * ((n - 2.0) / 2.0)))),
        tol,
    );
    rep.push(if lck {
        c
    } else {
        let why = if !preserves {
            "not locally conformally Kähler: dΩ ≠ θ∧Ω"
        } else {
            "not locally conformally Kähler: dθ ≠ 0"
        };
        c.demote(why)
    });

    let djt_off = off_diagonal(&djt, geo);
    let c = Check::residual(
        "bismut_weyl_dim4",
        "ρ^B = r^W - (dJθ)^{(2,0)+(0,2)}",
        rb.distance(&(r_w - &djt_off)),
        tol,
    );
    rep.push(if dim4 {
        c
    } else {
        c.demote("real dimension is not 4")
    });

    // curvature of ∇^W on K^{-1}: iρ^W = ½ tr R^W - (i/2) tr(J R^W)
    let nr = geo.dim();
    let j = geo.j();
    let fw = crate::linalg::CMat::from_fn(nr, nr, |a, b| {
        let r = rw.at(a, b);
        C64::new(0.5 * r.trace(), -0.5 * (j * r).trace())
    });
    let fw = InvariantForm::two_form(&fw);
    let rhs = &(&fw - &djt.scale(I * ((n - 2.0) / 2.0))) + &(&dtheta * (n / 2.0));
    let c = Check::residual(
        "weyl_anticanonical_curvature",
        "iρ^B = iρ^W - ((n-2)/2) i dJθ + (n/2) dθ",
        rb.scale(I).distance(&rhs),
        tol,
    );
    rep.push(if preserves {
        c
    } else {
        c.demote("premise ∇^W J = 0 fails")
    });
    let rhs4 = &(&r_w.scale(I) - &dtheta) - &djt_off.scale(I);
    let c = Check::residual(
        "weyl_anticanonical_dim4",
        "iρ^W = i r^W - dθ - i(dJθ)^{(2,0)+(0,2)}",
        fw.distance(&rhs4),
        tol,
    );
    rep.push(if dim4 {
        c
    } else {
        c.demote("real dimension is not 4")
    });
    rep
}

/// Lee form parallel for Levi-Civita and nonzero: the generalized Hopf case.
pub fn generalized_hopf_check(
    alg: &LieAlgebra,
    herm: &HermitianStructure,
    tol: f64,
) -> Result<SuiteReport> {
    let geo = Geometry::new(alg, herm)?;
    Ok(generalized_hopf_geo(&geo, tol))
}

pub fn generalized_hopf_geo(geo: &Geometry, tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("hopf");
    let nabla = max_abs_real(&geo.nabla_theta());
    let nonzero = geo.theta_sq.sqrt() > PARALLEL_TOL;
    let parallel = nabla < PARALLEL_TOL;
    rep.premise("θ ≠ 0", nonzero, Some(geo.theta_sq.sqrt()));
    rep.premise("∇^L θ = 0", parallel, Some(nabla));
    let applicable = nonzero && parallel;
    let why = if !nonzero {
        "θ = 0: not a generalized Hopf structure"
    } else {
        "Lee form is not parallel"
    };
    let c = Check::residual("lee_parallel", "∇^L θ = 0", nabla, PARALLEL_TOL);
    rep.push(if applicable { c } else { c.demote(why) });
    let djt = geo.d(&geo.j_theta);
    let rhs = &(&geo.omega * geo.theta_sq) + &wedge_ok(&geo.theta, &geo.j_theta);
    let c = Check::residual(
        "hopf_djtheta",
        "d(Jθ) = |θ|²Ω + θ∧Jθ",
        djt.distance(&rhs),
        tol,
    );
    rep.push(if applicable { c } else { c.demote(why) });
    let c = Check::residual(
        "hopf_lck",
        "dΩ = θ∧Ω",
        geo.d_omega.distance(&wedge_ok(&geo.theta, &geo.omega)),
        tol,
    );
    rep.push(if applicable { c } else { c.demote(why) });
    let c = Check::residual("hopf_closed", "dθ = 0", geo.d(&geo.theta).max_abs(), tol);
    rep.push(if applicable { c } else { c.demote(why) });
    rep
}
