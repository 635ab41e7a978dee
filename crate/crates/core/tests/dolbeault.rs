use hermlie::cli::presets;
use hermlie::dolbeault::{hodge_numbers, robustness_trials, DolbeaultComplex};
use hermlie::linalg::{binomial, op_norm};

const EVEN: &[&str] = &["t2", "t4", "u2", "su2xu1", "su2xsu2", "su3", "su3xt2"];

#[test]
fn adjoint_formula_is_conjugate_transpose() {
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let cx = DolbeaultComplex::new(&g.alg, &g.frame);
        for p in 0..cx.n() {
            let d = cx.dbar(p).unwrap();
            let ds = cx.dbar_star(p + 1).unwrap();
            let r = op_norm(&(&ds.entries - d.entries.adjoint()));
            assert!(r < 1e-12, "{id} p = {p}: {r:.3e}");
        }
    }
}

#[test]
fn dbar_squares_to_zero() {
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let cx = DolbeaultComplex::new(&g.alg, &g.frame);
        for p in 0..cx.n().saturating_sub(1) {
            let dd = cx
                .dbar(p + 1)
                .unwrap()
                .compose(&cx.dbar(p).unwrap())
                .unwrap();
            assert!(dd.norm() < 1e-12, "{id} p = {p}");
        }
        let gd = cx.graded_dbar().unwrap();
        assert!(gd.compose(&gd).unwrap().norm() < 1e-12, "{id}");
    }
}

#[test]
fn dirac_square_is_twice_the_laplacian() {
    for id in ["su2xu1", "su2xsu2", "su3"] {
        let g = presets::build(id).unwrap();
        let cx = DolbeaultComplex::new(&g.alg, &g.frame);
        let dirac = cx.dirac().unwrap();
        let sq = dirac.compose(&dirac).unwrap();
        let n = cx.n();
        let masks_by_degree: Vec<_> = (0..=n)
            .map(|p| hermlie::multilinear::subsets(n, p))
            .collect();
        for (p, masks) in masks_by_degree.iter().enumerate() {
            let lap = cx.laplacian(p).unwrap();
            for (i, &mi) in masks.iter().enumerate() {
                for (j, &mj) in masks.iter().enumerate() {
                    let lhs = sq.entries[(mi as usize, mj as usize)];
                    let rhs = lap.entries[(i, j)] * 2.0;
                    assert!((lhs - rhs).norm() < 1e-12, "{id} p = {p}");
                }
            }
        }
    }
}

#[test]
fn hodge_numbers_are_binomial() {
    let expected: &[(&str, &[usize])] = &[
        ("t2", &[1, 1]),
        ("t4", &[1, 2, 1]),
        ("u2", &[1, 1, 0]),
        ("su2xu1", &[1, 1, 0]),
        ("su2xsu2", &[1, 1, 0, 0]),
        ("su3", &[1, 1, 0, 0, 0]),
        ("su3xt2", &[1, 2, 1, 0, 0, 0]),
    ];
    for (id, want) in expected {
        let g = presets::build(id).unwrap();
        let h = hodge_numbers(&g.alg, &g.frame).unwrap();
        assert_eq!(&h.numbers[..], *want, "{id}");
        let r = g.torus_dim() / 2;
        let binom: Vec<usize> = (0..=g.n()).map(|p| binomial(r, p)).collect();
        assert_eq!(h.numbers, binom, "{id}");
        assert!(h.matches_prediction() && h.conclusive(), "{id}");
        let chi: i64 = h
            .numbers
            .iter()
            .enumerate()
            .map(|(p, &v)| if p % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum();
        assert_eq!(chi, h.euler_characteristic);
    }
}

#[test]
fn hodge_numbers_survive_rephasing_and_reordering() {
    for id in EVEN {
        let g = presets::build(id).unwrap();
        let trials = robustness_trials(&g.alg, &g.metric, &g.frame, 10, 5).unwrap();
        assert_eq!(trials.len(), 10);
        assert!(trials.iter().all(|t| t.matches), "{id}");
    }
}

#[test]
fn rephased_frame_gives_unitarily_equivalent_dbar() {
    let g = presets::build("su2xsu2").unwrap();
    let phases = [0.3, 1.1, 2.0];
    let f2 = g.frame.rephased(&g.alg, &g.metric, &phases).unwrap();
    let a = DolbeaultComplex::new(&g.alg, &g.frame);
    let b = DolbeaultComplex::new(&g.alg, &f2);
    for p in 0..3 {
        let la = a.laplacian(p).unwrap();
        let lb = b.laplacian(p).unwrap();
        let spectrum = |m| {
            let mut v: Vec<f64> = hermlie::linalg::hermitian_eigen(m)
                .0
                .iter()
                .copied()
                .collect();
            v.sort_by(f64::total_cmp);
            v
        };
        let (ea, eb) = (spectrum(&la.entries), spectrum(&lb.entries));
        for (x, y) in ea.iter().zip(eb.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
