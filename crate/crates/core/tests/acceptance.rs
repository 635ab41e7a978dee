//! One PASS/FAIL line per acceptance criterion.

use hermlie::cli::presets::{self, ResolvedGroup};
use hermlie::clifford::{lichnerowicz_rhs, lichnerowicz_verify, model_suite};
use hermlie::dolbeault::{hodge_numbers, robustness_trials, DolbeaultComplex};
use hermlie::hermitian::{
    flatness_suite_geo, generalized_hopf_geo, identity_suite_geo, weyl_suite_geo, Geometry,
};
use hermlie::linalg::{binomial, op_norm};
use hermlie::report::{Status, SuiteReport};
use hermlie::Error;

const HERMITIAN: &[&str] = &["t2", "t4", "u2", "su2xu1", "su2xsu2", "su3", "su3xt2"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    /// Parts of the criterion that cannot be met by any implementation.
    unattainable: Option<String>,
}

impl Outcome {
    fn new(id: &'static str, pass: bool, detail: String) -> Self {
        Outcome {
            id,
            pass,
            detail,
            unattainable: None,
        }
    }

    fn print(&self) {
        let status = if self.pass && self.unattainable.is_none() {
            "PASS"
        } else {
            "FAIL"
        };
        match &self.unattainable {
            Some(why) => println!("{status} {}: {}; unattainable: {why}", self.id, self.detail),
            None => println!("{status} {}: {}", self.id, self.detail),
        }
    }
}

fn groups(ids: &[&str]) -> Vec<ResolvedGroup> {
    ids.iter()
        .map(|id| presets::build(id).expect("preset resolves"))
        .collect()
}

fn worst(rep: &SuiteReport, ids: &[&str]) -> (bool, f64) {
    let mut ok = true;
    let mut w: f64 = 0.0;
    for id in ids {
        match rep.check(id) {
            Some(c) if c.status == Status::Pass => w = w.max(c.residual.unwrap_or(0.0)),
            _ => ok = false,
        }
    }
    (ok, w)
}

fn hodge_reproduction() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in groups(&["t2", "t4", "su2xu1", "u2", "su2xsu2", "su3", "su3xt2"]) {
        let h = hodge_numbers(&g.alg, &g.frame).unwrap();
        let r = g.torus_dim() / 2;
        let pred: Vec<usize> = (0..=g.n()).map(|p| binomial(r, p)).collect();
        let good = h.numbers == pred && h.warnings.is_empty();
        ok &= good;
        parts.push(format!("{} {:?}", g.name, h.numbers));
    }
    let odd = matches!(presets::build("su3xu1"), Err(Error::Samelson(_)));
    ok &= odd;
    let mut o = Outcome::new("hodge_numbers_equal_binomial_r_p", ok, parts.join(", "));
    o.unattainable = Some(
        "su3xu1 has odd real dimension 9 and admits no complex structure (rejected as expected)"
            .into(),
    );
    o
}

fn dbar_cross_validation() -> Outcome {
    let mut adj: f64 = 0.0;
    let mut sq: f64 = 0.0;
    for g in groups(HERMITIAN) {
        let cx = DolbeaultComplex::new(&g.alg, &g.frame);
        for p in 0..cx.n() {
            let d = cx.dbar(p).unwrap();
            let ds = cx.dbar_star(p + 1).unwrap();
            adj = adj.max(op_norm(&(&ds.entries - d.entries.adjoint())));
            if p + 1 < cx.n() {
                let d2 = cx.dbar(p + 1).unwrap().compose(&d).unwrap();
                sq = sq.max(op_norm(&d2.entries));
            }
        }
    }
    Outcome::new(
        "dbar_star_is_adjoint_and_dbar_squared_zero",
        adj < 1e-12 && sq < 1e-12,
        format!("max |∂̄* - (∂̄)ᴴ| = {adj:.2e}, max |∂̄²| = {sq:.2e}, tol 1e-12"),
    )
}

fn bismut_flatness() -> Outcome {
    let ids = [
        "bismut_ricci_zero",
        "ddc_omega_zero",
        "codifferential_theta_zero",
    ];
    let mut ok = true;
    let mut w: f64 = 0.0;
    for g in groups(HERMITIAN) {
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let rep = flatness_suite_geo(&geo);
        let (good, r) = worst(&rep, &ids);
        ok &= good && r < 1e-10;
        w = w.max(r);
    }
    Outcome::new(
        "bismut_ricci_ddc_omega_codiff_theta_vanish",
        ok,
        format!("max entry {w:.2e} over 7 bi-invariant presets, tol 1e-10"),
    )
}

fn identity_suite() -> Outcome {
    let ids = [
        "chern_bismut_ricci",
        "trace_chern_ricci",
        "trace_bismut_ricci",
        "u_scalar",
        "u_b_trace",
        "trace_djtheta",
        "u_b_theta",
        "b_scalar",
        "ddc_omega_pairing",
        "theta_wedge_omega",
        "jtheta_theta_omega",
    ];
    let mut ok = true;
    let mut w: f64 = 0.0;
    let mut count = 0;
    for g in groups(HERMITIAN) {
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let rep = identity_suite_geo(&geo, 1e-9);
        // n = 1 has no Lee form and the θ-dependent identities are reported not applicable
        let applicable: Vec<&str> = ids
            .iter()
            .copied()
            .filter(|id| {
                rep.check(id)
                    .is_some_and(|c| c.status != Status::NotApplicable)
            })
            .collect();
        let (good, r) = worst(&rep, &applicable);
        ok &= good && r < 1e-9 && rep.checks.iter().all(|c| c.status != Status::Fail);
        w = w.max(r);
        count += applicable.len();
    }
    Outcome::new(
        "hermitian_ricci_and_trace_identities",
        ok,
        format!("{count} identity evaluations on 7 presets, max residual {w:.2e}, tol 1e-9"),
    )
}

fn lichnerowicz() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in groups(&["su2xu1", "su2xsu2"]) {
        let dirac = DolbeaultComplex::new(&g.alg, &g.frame).dirac().unwrap();
        let sq = dirac.compose(&dirac).unwrap();
        let rhs = lichnerowicz_rhs(&g.alg, &g.herm, &g.frame).unwrap();
        let r = op_norm(&(&sq.entries - &rhs.entries));
        let rep = lichnerowicz_verify(&g.alg, &g.herm, &g.frame, 50, 1).unwrap();
        let q = rep.check("quadratic_form_identity").unwrap();
        let qr = q.residual.unwrap_or(f64::INFINITY);
        ok &= r < 1e-8 && qr < 1e-8 && q.status == Status::Pass;
        let d = rhs.entries.nrows();
        parts.push(format!(
            "{} {d}x{d} operator {r:.2e}, quadratic form {qr:.2e}",
            g.name
        ));
    }
    Outcome::new(
        "dirac_square_equals_bismut_lichnerowicz",
        ok,
        format!("{}; tol 1e-8", parts.join("; ")),
    )
}

fn clifford_calibration() -> Outcome {
    let rep = model_suite(100, 1).unwrap();
    let mut ok = true;
    let mut omega: f64 = 0.0;
    let mut wedge: f64 = 0.0;
    for n in 2..=4 {
        let (a, ra) = worst(&rep, &[&format!("omega_action_n{n}")]);
        let (b, rb) = worst(&rep, &[&format!("omega_wedge_action_n{n}")]);
        let (c, _) = worst(&rep, &[&format!("positivity_signs_n{n}")]);
        ok &= a && b && c && ra < 1e-12 && rb < 1e-10;
        omega = omega.max(ra);
        wedge = wedge.max(rb);
    }
    Outcome::new(
        "omega_eigenvalues_positivity_and_wedge_action",
        ok,
        format!("Ω eigenvalue residual {omega:.2e} (tol 1e-12), 100 positive forms per n with no sign violations, α∧Ω residual {wedge:.2e} (tol 1e-10)"),
    )
}

fn generalized_hopf() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for g in groups(&["u2", "su2xu1"]) {
        let geo = Geometry::new(&g.alg, &g.herm).unwrap();
        let hopf = generalized_hopf_geo(&geo, 1e-9);
        let weyl = weyl_suite_geo(&geo, 1e-9);
        let (a, lee) = worst(&hopf, &["lee_parallel"]);
        let (b, dj) = worst(&hopf, &["hopf_djtheta"]);
        let (c, weyl_res) = worst(&weyl, &["bismut_weyl_dim4"]);
        let h = hodge_numbers(&g.alg, &g.frame).unwrap();
        ok &= a && b && c && lee < 1e-10 && dj < 1e-9 && weyl_res < 1e-9 && h.numbers[1] == 1;
        parts.push(format!(
            "{}: ∇θ {lee:.1e}, dJθ {dj:.1e}, ρ^B - r^W {weyl_res:.1e}, h01 {}",
            g.name, h.numbers[1]
        ));
    }
    Outcome::new(
        "hopf_surface_lee_parallel_and_weyl_relation",
        ok,
        parts.join("; "),
    )
}

fn robustness() -> Outcome {
    let mut ok = true;
    let mut trials = 0;
    for g in groups(HERMITIAN) {
        let t = robustness_trials(&g.alg, &g.metric, &g.frame, 10, 2024).unwrap();
        trials += t.len();
        ok &= t.len() == 10 && t.iter().all(|x| x.matches);
    }
    let run = || {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = [
            "hermlie", "verify", "--preset", "su2xu1", "--suites", "all", "--format", "json",
            "--seed", "9",
        ];
        hermlie::cli::run(argv, &mut out, &mut err);
        out
    };
    let a = run();
    let same = !a.is_empty() && a == run();
    Outcome::new(
        "hodge_invariant_under_rephasing_and_reports_deterministic",
        ok && same,
        format!("{trials} randomized frames matched; repeated JSON report byte-identical: {same}"),
    )
}

fn main() {
    let outcomes = [
        hodge_reproduction(),
        dbar_cross_validation(),
        bismut_flatness(),
        identity_suite(),
        lichnerowicz(),
        clifford_calibration(),
        generalized_hopf(),
        robustness(),
    ];
    for o in &outcomes {
        o.print();
    }
    let broken: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if !broken.is_empty() {
        eprintln!("failed: {broken:?}");
        std::process::exit(1);
    }
}
