use hermlie::cli::presets;
use hermlie::liealg::{ce_differential, codifferential, LieAlgebra};
use hermlie::linalg::{CMat, C64};
use hermlie::multilinear::{contract, inner, wedge, InvariantForm, Metric};
use proptest::prelude::*;

const DIM: usize = 5;

fn form(dim: usize, k: usize) -> impl Strategy<Value = InvariantForm> {
    let len = hermlie::linalg::binomial(dim, k);
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len).prop_map(move |v| {
        let c = v.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        InvariantForm::from_coeffs(dim, k, c).unwrap()
    })
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

/// `a(v_1..v_k)` as a sum over every ordered index tuple.
fn eval_oracle(a: &InvariantForm, v: &[Vec<C64>]) -> C64 {
    fn rec(pos: usize, tuple: &mut Vec<usize>, a: &InvariantForm, v: &[Vec<C64>], total: &mut C64) {
        if pos == tuple.len() {
            let mut prod = a.at(tuple);
            for (slot, &i) in tuple.iter().enumerate() {
                prod *= v[slot][i];
            }
            *total += prod;
            return;
        }
        for i in 0..a.dim() {
            tuple[pos] = i;
            rec(pos + 1, tuple, a, v, total);
        }
    }
    let mut total = C64::new(0.0, 0.0);
    rec(0, &mut vec![0; v.len()], a, v, &mut total);
    total
}

fn as_columns(v: &[Vec<C64>]) -> CMat {
    CMat::from_fn(v[0].len(), v.len(), |i, j| v[j][i])
}

/// `(da)(X_0..X_k) = Σ_{i<j} (-1)^{i+j} a([X_i,X_j], X_0..X̂_i..X̂_j..X_k)` on arbitrary vectors.
fn d_oracle(a: &InvariantForm, alg: &LieAlgebra, x: &[Vec<C64>]) -> C64 {
    let k1 = x.len();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..k1 {
        for j in i + 1..k1 {
            let mut args = vec![alg.bracket(&x[i], &x[j])];
            args.extend(
                x.iter()
                    .enumerate()
                    .filter(|(m, _)| *m != i && *m != j)
                    .map(|(_, v)| v.clone()),
            );
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            acc += eval_oracle(a, &args) * sign;
        }
    }
    acc
}

fn close(a: &InvariantForm, b: &InvariantForm) -> f64 {
    a.distance(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wedge_is_associative(a in form(DIM, 1), b in form(DIM, 2), c in form(DIM, 1)) {
        let l = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let r = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        prop_assert!(close(&l, &r) < 1e-12);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(DIM, 1), b in form(DIM, 2), c in form(DIM, 1)) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        prop_assert!(close(&ab, &ba) < 1e-12);
        let ac = wedge(&a, &c).unwrap();
        let ca = wedge(&c, &a).unwrap();
        prop_assert!(close(&ac, &(-&ca)) < 1e-12);
        prop_assert!(wedge(&a, &a).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn contraction_is_an_antiderivation(v in vector(DIM), a in form(DIM, 2), b in form(DIM, 2)) {
        let lhs = contract(&v, &wedge(&a, &b).unwrap()).unwrap();
        let rhs = &wedge(&contract(&v, &a).unwrap(), &b).unwrap()
            + &wedge(&a, &contract(&v, &b).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs) < 1e-12);
        let twice = contract(&v, &contract(&v, &a).unwrap()).unwrap();
        prop_assert!(twice.max_abs() < 1e-12);
    }

    #[test]
    fn evaluation_matches_permutation_sum(
        a in form(DIM, 3),
        v in prop::collection::vec(vector(DIM), 3),
    ) {
        let fast = a.eval(&as_columns(&v));
        let slow = eval_oracle(&a, &v);
        prop_assert!((fast - slow).norm() < 1e-12);
    }

    #[test]
    fn contraction_matches_evaluation(v in vector(DIM), a in form(DIM, 3), w in prop::collection::vec(vector(DIM), 2)) {
        let c = contract(&v, &a).unwrap();
        let args = vec![v.clone(), w[0].clone(), w[1].clone()];
        prop_assert!((c.eval(&as_columns(&w)) - eval_oracle(&a, &args)).norm() < 1e-12);
    }
}

fn random_algebras() -> Vec<LieAlgebra> {
    ["su2xu1", "su2xsu2", "su3"]
        .iter()
        .map(|id| presets::algebra(id).unwrap().alg)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn differential_matches_bracket_formula(
        coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 15),
        x in prop::collection::vec(vector(6), 3),
    ) {
        let alg = presets::algebra("su2xsu2").unwrap().alg;
        let c = coeffs.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        let a = InvariantForm::from_coeffs(6, 2, c).unwrap();
        let da = ce_differential(&a, &alg).unwrap();
        prop_assert!((da.eval(&as_columns(&x)) - d_oracle(&a, &alg, &x)).norm() < 1e-11);
    }

    #[test]
    fn differential_squares_to_zero(seed in 0u64..1000, k in 0usize..4) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for alg in random_algebras() {
            let n = alg.dim();
            let len = hermlie::linalg::binomial(n, k);
            let c = (0..len).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let a = InvariantForm::from_coeffs(n, k, c).unwrap();
            let dd = ce_differential(&ce_differential(&a, &alg).unwrap(), &alg).unwrap();
            prop_assert!(dd.max_abs() < 1e-12, "{}", dd.max_abs());
        }
    }
}

fn berger_metric() -> Metric {
    let mut g = hermlie::linalg::RMat::identity(4, 4);
    g[(2, 2)] = 1.7;
    g[(0, 1)] = 0.2;
    g[(1, 0)] = 0.2;
    Metric::new(g).unwrap()
}

#[test]
fn codifferential_is_the_metric_adjoint() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let alg = presets::algebra("su2xu1").unwrap().alg;
    for g in [Metric::identity(4), berger_metric()] {
        for k in 0..4 {
            let rand_form = |rng: &mut rand_chacha::ChaCha8Rng, deg: usize| {
                let len = hermlie::linalg::binomial(4, deg);
                let c = (0..len)
                    .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                InvariantForm::from_coeffs(4, deg, c).unwrap()
            };
            let a = rand_form(&mut rng, k);
            let b = rand_form(&mut rng, k + 1);
            let lhs = inner(&ce_differential(&a, &alg).unwrap(), &b, &g).unwrap();
            let rhs = inner(&a, &codifferential(&b, &alg, &g).unwrap(), &g).unwrap();
            assert!((lhs - rhs).norm() < 1e-12, "k = {k}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn codifferential_gram_oracle() {
    // d* = M_k^{-1} D^T M_{k+1} with M the Gram matrices of the coordinate basis
    let alg = presets::algebra("su2xu1").unwrap().alg;
    let g = berger_metric();
    let k = 1;
    let basis = |deg: usize| -> Vec<InvariantForm> {
        let len = hermlie::linalg::binomial(4, deg);
        (0..len)
            .map(|i| {
                let mut c = vec![C64::new(0.0, 0.0); len];
                c[i] = C64::new(1.0, 0.0);
                InvariantForm::from_coeffs(4, deg, c).unwrap()
            })
            .collect()
    };
    let lo = basis(k);
    let hi = basis(k + 1);
    let gram = |b: &[InvariantForm]| {
        CMat::from_fn(b.len(), b.len(), |i, j| inner(&b[j], &b[i], &g).unwrap())
    };
    let mk = gram(&lo);
    let mk1 = gram(&hi);
    let d = CMat::from_fn(hi.len(), lo.len(), |r, c| {
        ce_differential(&lo[c], &alg).unwrap().coeffs()[r]
    });
    let oracle = mk.try_inverse().unwrap() * d.adjoint() * mk1;
    for (c, b) in hi.iter().enumerate() {
        let ds = codifferential(b, &alg, &g).unwrap();
        for r in 0..lo.len() {
            assert!((ds.coeffs()[r] - oracle[(r, c)]).norm() < 1e-12);
        }
    }
}
