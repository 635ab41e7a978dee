use hermlie::cli::presets;
use hermlie::cli::presets::ResolvedGroup;
use hermlie::cli::spec::GroupSpec;
use hermlie::hermitian::{
    flatness_suite_geo, generalized_hopf_geo, identity_suite_geo, weyl_suite_geo, ConnectionKind,
    Geometry, DEFAULT_TOL,
};
use hermlie::liealg::LieAlgebra;
use hermlie::linalg::RMat;
use hermlie::report::Status;

const EVEN: &[&str] = &["t2", "t4", "u2", "su2xu1", "su2xsu2", "su3", "su3xt2"];

fn berger(scale: f64) -> ResolvedGroup {
    let json = format!(
        r#"{{"preset": "su2xu1", "metric": {{"killing_negative": {{"toral_scale": [{scale}, 1.0]}}}}, "torus_basis": [3, 4]}}"#
    );
    GroupSpec::from_json(&json).unwrap().resolve().unwrap()
}

fn gram_schmidt(g: &RMat) -> Vec<Vec<f64>> {
    let n = g.nrows();
    let ip = |u: &[f64], v: &[f64]| -> f64 {
        (0..n)
            .map(|i| (0..n).map(|j| u[i] * g[(i, j)] * v[j]).sum::<f64>())
            .sum()
    };
    let mut out: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
        for u in &out {
            let c = ip(&v, u);
            for i in 0..n {
                v[i] -= c * u[i];
            }
        }
        let nv = ip(&v, &v).sqrt();
        out.push(v.into_iter().map(|x| x / nv).collect());
    }
    out
}

/// Scalar curvature as the sum of sectional curvatures of an orthonormal
/// basis, with `K(u,v)` from the left-invariant formula
/// `-¾|[u,v]|² - ½g([u,[u,v]],v) - ½g([v,[v,u]],u) + |U(u,v)|² - g(U(u,u),U(v,v))`,
/// `g(U(x,y),z) = ½(g([z,x],y) + g(x,[z,y]))`.
fn scalar_oracle(alg: &LieAlgebra, g: &RMat) -> f64 {
    let n = alg.dim();
    let ip = |u: &[f64], v: &[f64]| -> f64 {
        (0..n)
            .map(|i| (0..n).map(|j| u[i] * g[(i, j)] * v[j]).sum::<f64>())
            .sum()
    };
    let e = gram_schmidt(g);
    let br = |u: &[f64], v: &[f64]| alg.bracket_real(u, v);
    // U(x,y) expanded in the orthonormal basis
    let u_op = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for z in &e {
            let c = 0.5 * (ip(&br(z, x), y) + ip(x, &br(z, y)));
            for i in 0..n {
                out[i] += c * z[i];
            }
        }
        out
    };
    let mut s = 0.0;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (u, v) = (&e[a], &e[b]);
            let uv = br(u, v);
            let uu = u_op(u, u);
            let vv = u_op(v, v);
            let uvs = u_op(u, v);
            s += -0.75 * ip(&uv, &uv) - 0.5 * ip(&br(u, &uv), v) - 0.5 * ip(&br(v, &br(v, u)), u)
                + ip(&uvs, &uvs)
                - ip(&uu, &vv);
        }
    }
    s
}

#[test]
fn scalar_curvature_matches_sectional_sum() {
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let s = geo.curvature(ConnectionKind::LeviCivita).s;
        let oracle = scalar_oracle(&g.alg, g.metric.matrix());
        assert!((s - oracle).abs() < 1e-12, "{id}: {s} vs {oracle}");
    }
    for scale in [0.4, 1.7, 3.0] {
        let g = berger(scale);
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let s = geo.curvature(ConnectionKind::LeviCivita).s;
        let oracle = scalar_oracle(&g.alg, g.metric.matrix());
        assert!(
            (s - oracle).abs() < 1e-11,
            "berger {scale}: {s} vs {oracle}"
        );
    }
}

#[test]
fn bi_invariant_connections_have_closed_forms() {
    // ∇^L_X Y = ½[X,Y] and ∇^B = 0 on the left-invariant frame
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let lc = geo.connection(ConnectionKind::LeviCivita);
        let b = geo.connection(ConnectionKind::Bismut);
        let n = g.alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(
                        (lc.coefficient(k, i, j) - 0.5 * g.alg.structure(k, i, j)).abs() < 1e-13
                    );
                }
            }
        }
        assert!(b.max_abs() < 1e-12, "{id}");
    }
}

#[test]
fn levi_civita_is_characterized_by_torsion_and_metric() {
    for scale in [0.5, 2.5] {
        let g = berger(scale);
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let lc = geo.connection(ConnectionKind::LeviCivita);
        let t = lc.torsion(&g.alg);
        assert!(t.iter().all(|x| x.abs() < 1e-12));
        assert!(lc.metric_residual(&g.metric) < 1e-12);
    }
}

#[test]
fn identity_suite_passes_everywhere() {
    let mut groups: Vec<ResolvedGroup> =
        EVEN.iter().map(|id| presets::build(id).unwrap()).collect();
    groups.push(berger(1.7));
    groups.push(berger(0.3));
    for g in &groups {
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let rep = identity_suite_geo(&geo, DEFAULT_TOL);
        for c in &rep.checks {
            assert_ne!(
                c.status,
                Status::Fail,
                "{}: {} residual {:?}",
                g.name,
                c.id,
                c.residual
            );
        }
    }
}

#[test]
fn flatness_on_bi_invariant_presets_only() {
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let rep = flatness_suite_geo(&geo);
        assert!(rep.checks.iter().all(|c| c.status == Status::Pass), "{id}");
    }
    let g = berger(1.7);
    let geo = Geometry::new(&g.alg, &g.herm).unwrap();
    let rep = flatness_suite_geo(&geo);
    assert!(rep.checks.iter().all(|c| c.status == Status::NotApplicable));
}

#[test]
fn hopf_surface_is_generalized_hopf() {
    for g in [presets::build("su2xu1").unwrap(), berger(1.7)] {
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let rep = generalized_hopf_geo(&geo, DEFAULT_TOL);
        assert!(
            rep.checks.iter().all(|c| c.status == Status::Pass),
            "{}: {:?}",
            g.name,
            rep.checks
        );
        assert!(geo.theta_sq > 0.0);
    }
}

#[test]
fn weyl_relation_not_applicable_on_su2xsu2() {
    let g = presets::build("su2xsu2").unwrap();
    let geo = Geometry::new(&g.alg, &g.herm).unwrap();
    let rep = weyl_suite_geo(&geo, DEFAULT_TOL);
    let lck = rep.check("bismut_weyl_lck").unwrap();
    assert_eq!(lck.status, Status::NotApplicable);
    assert!(lck.note.is_some());
    assert!(!rep.premises.is_empty());
    assert!(rep.checks.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn torus_is_kahler() {
    let g = presets::build("t4").unwrap();
    let geo = Geometry::new(&g.alg, &g.herm).unwrap();
    assert!(geo.d_omega.max_abs() < 1e-14);
    assert!(geo.theta.max_abs() < 1e-14);
    let rep = identity_suite_geo(&geo, DEFAULT_TOL);
    assert_eq!(
        rep.check("balanced_strong_kahler").unwrap().status,
        Status::Pass
    );
}
