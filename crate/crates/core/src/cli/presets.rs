//! Built-in groups. Semisimple factors are normalized so that `-B = I` in
//! the standard basis; centers carry the identity metric.

use crate::error::{Error, Result};
use crate::liealg::{
    samelson_frame, HermitianStructure, LieAlgebra, PositivityRule, SamelsonFrame, ToralPairing,
};
use crate::linalg::{CMat, RMat, C64};
use crate::multilinear::Metric;

/// Bumped whenever a preset's constants, metric or torus change.
pub const PRESET_VERSION: u32 = 1;

pub const PRESETS: &[&str] = &[
    "t2", "t4", "su2", "u2", "su2xu1", "su2xsu2", "su3", "su3xu1", "su3xt2",
];

/// Algebra, metric and torus of a preset, before any complex structure.
#[derive(Clone, Debug)]
pub struct PresetAlgebra {
    pub name: String,
    pub alg: LieAlgebra,
    pub metric: Metric,
    /// 0-based basis indices spanning the maximal torus.
    pub torus: Vec<usize>,
}

/// A fully resolved Hermitian Lie algebra.
#[derive(Clone, Debug)]
pub struct ResolvedGroup {
    pub name: String,
    pub alg: LieAlgebra,
    pub metric: Metric,
    pub herm: HermitianStructure,
    pub frame: SamelsonFrame,
}

impl ResolvedGroup {
    /// Runs the Samelson construction and attaches its `J` to `metric`.
    pub fn new(
        name: &str,
        alg: LieAlgebra,
        metric: Metric,
        torus: &RMat,
        rule: &PositivityRule,
        pairing: &ToralPairing,
    ) -> Result<Self> {
        let frame = samelson_frame(&alg, &metric, torus, rule, pairing)?;
        let herm = HermitianStructure::new(&alg, metric.clone(), frame.j.clone())?;
        Ok(ResolvedGroup {
            name: name.into(),
            alg,
            metric,
            herm,
            frame,
        })
    }

    pub fn real_dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn torus_dim(&self) -> usize {
        self.frame.torus_basis.ncols()
    }
}

/// Columns `e_i` for the given indices.
pub fn coordinate_torus(dim: usize, idx: &[usize]) -> RMat {
    let mut t = RMat::zeros(dim, idx.len());
    for (c, &i) in idx.iter().enumerate() {
        t[(i, c)] = 1.0;
    }
    t
}

/// Structure constants of the real span of anti-Hermitian matrices `x_a`,
/// assumed trace-orthogonal and closed under commutators.
fn matrix_algebra(basis: &[CMat], labels: Vec<String>) -> Result<LieAlgebra> {
    let d = basis.len();
    let norms: Vec<f64> = basis.iter().map(|x| (x * x.adjoint()).trace().re).collect();
    let mut c = vec![0.0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let br = &basis[i] * &basis[j] - &basis[j] * &basis[i];
            for k in 0..d {
                c[(k * d + i) * d + j] = (&br * basis[k].adjoint()).trace().re / norms[k];
            }
        }
    }
    LieAlgebra::new(d, c, Some(labels))
}

/// Rescales the basis so that the Killing form becomes `-I`.
fn killing_normalized(alg: &LieAlgebra) -> LieAlgebra {
    let k = alg.killing();
    let s = 1.0 / (-k[(0, 0)]).sqrt();
    alg.rescaled(&vec![s; alg.dim()])
}

/// `su(2)` with `c^k_{ij} = -ε_{ijk}/√2`.
pub fn su2() -> LieAlgebra {
    let i = C64::new(0.0, 1.0);
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let sigma = [
        CMat::from_row_slice(2, 2, &[z, o, o, z]),
        CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    ];
    let basis: Vec<CMat> = sigma.iter().map(|s| s * i).collect();
    let alg = matrix_algebra(&basis, vec!["X1".into(), "X2".into(), "X3".into()]).expect("su(2)");
    killing_normalized(&alg)
}

/// `su(3)` from the Gell-Mann matrices; the torus is spanned by `λ_3, λ_8`.
pub fn su3() -> LieAlgebra {
    let i = C64::new(0.0, 1.0);
    let r = |x: f64| C64::new(x, 0.0);
    let mut lam = vec![CMat::zeros(3, 3); 8];
    lam[0][(0, 1)] = r(1.0);
    lam[0][(1, 0)] = r(1.0);
    lam[1][(0, 1)] = -i;
    lam[1][(1, 0)] = i;
    lam[2][(0, 0)] = r(1.0);
    lam[2][(1, 1)] = r(-1.0);
    lam[3][(0, 2)] = r(1.0);
    lam[3][(2, 0)] = r(1.0);
    lam[4][(0, 2)] = -i;
    lam[4][(2, 0)] = i;
    lam[5][(1, 2)] = r(1.0);
    lam[5][(2, 1)] = r(1.0);
    lam[6][(1, 2)] = -i;
    lam[6][(2, 1)] = i;
    let s = 1.0 / 3f64.sqrt();
    lam[7][(0, 0)] = r(s);
    lam[7][(1, 1)] = r(s);
    lam[7][(2, 2)] = r(-2.0 * s);
    let basis: Vec<CMat> = lam.iter().map(|l| l * i).collect();
    let labels = (1..=8).map(|k| format!("L{k}")).collect();
    let alg = matrix_algebra(&basis, labels).expect("su(3)");
    killing_normalized(&alg)
}

fn abelian(dim: usize, prefix: &str) -> LieAlgebra {
    let labels = (1..=dim).map(|k| format!("{prefix}{k}")).collect();
    LieAlgebra::new(dim, vec![0.0; dim * dim * dim], Some(labels)).expect("valid shape")
}

/// Algebra, default metric and torus indices of a preset.
pub fn algebra(id: &str) -> Result<PresetAlgebra> {
    let (alg, torus): (LieAlgebra, Vec<usize>) = match id {
        "t2" => (abelian(2, "T"), vec![0, 1]),
        "t4" => (abelian(4, "T"), vec![0, 1, 2, 3]),
        "su2" => (su2(), vec![2]),
        "u2" | "su2xu1" => (su2().direct_sum(&abelian(1, "T")), vec![2, 3]),
        "su2xsu2" => {
            let b = su2();
            let labels = ["X1", "X2", "X3", "Y1", "Y2", "Y3"]
                .map(String::from)
                .to_vec();
            let s = b.direct_sum(&b);
            (
                LieAlgebra::new(6, s.constants().to_vec(), Some(labels))?,
                vec![2, 5],
            )
        }
        "su3" => (su3(), vec![2, 7]),
        "su3xu1" => (su3().direct_sum(&abelian(1, "T")), vec![2, 7, 8]),
        "su3xt2" => (su3().direct_sum(&abelian(2, "T")), vec![2, 7, 8, 9]),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown preset '{other}' (available: {})",
                PRESETS.join(", ")
            )))
        }
    };
    let metric = Metric::identity(alg.dim());
    Ok(PresetAlgebra {
        name: id.into(),
        alg,
        metric,
        torus,
    })
}

/// Resolves a preset with lexicographic positivity and sequential toral pairing.
pub fn build(id: &str) -> Result<ResolvedGroup> {
    let p = algebra(id)?;
    let torus = coordinate_torus(p.alg.dim(), &p.torus);
    ResolvedGroup::new(
        &p.name,
        p.alg,
        p.metric,
        &torus,
        &PositivityRule::Lexicographic,
        &ToralPairing::Sequential,
    )
}
