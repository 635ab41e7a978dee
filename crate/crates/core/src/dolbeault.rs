//! The invariant Dolbeault complex `Λ^{0,•}` of a Samelson frame.
//!
//! `Λ^{0,p}` has the orthonormal basis `ζ̄^I = ζ̄^{i_1}∧…∧ζ̄^{i_p}`, `I`
//! increasing. Per-degree matrices index `I` lexicographically; the graded
//! space `⊕_p Λ^{0,p}` indexes basis elements by the bit mask of `I`.

use std::ops::{Add, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, SamelsonFrame};
use crate::linalg::{binomial, hermitian_eigen, max_abs, CMat, CVec, C64};
use crate::multilinear::{insertion_sign, subset_rank, subsets, wedge, InvariantForm, Metric};

/// Kernel threshold relative to the largest Laplacian eigenvalue.
pub const KERNEL_REL_TOL: f64 = 1e-8;

/// Which part of `⊕_p Λ^{0,p}` an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    Degree(usize),
    Graded,
}

impl Space {
    pub fn dim(&self, n: usize) -> usize {
        match *self {
            Space::Degree(p) => binomial(n, p),
            Space::Graded => 1 << n,
        }
    }
}

/// A dense operator between two spaces of `(0,•)`-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub n: usize,
    pub domain: Space,
    pub codomain: Space,
    pub entries: CMat,
}

impl OperatorMatrix {
    pub fn new(n: usize, domain: Space, codomain: Space, entries: CMat) -> Result<Self> {
        if entries.nrows() != codomain.dim(n) || entries.ncols() != domain.dim(n) {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(n) * domain.dim(n),
                got: entries.nrows() * entries.ncols(),
            });
        }
        Ok(OperatorMatrix {
            n,
            domain,
            codomain,
            entries,
        })
    }

    pub fn zero(n: usize, domain: Space, codomain: Space) -> Self {
        OperatorMatrix {
            n,
            domain,
            codomain,
            entries: CMat::zeros(codomain.dim(n), domain.dim(n)),
        }
    }

    pub fn identity(n: usize, space: Space) -> Self {
        let d = space.dim(n);
        OperatorMatrix {
            n,
            domain: space,
            codomain: space,
            entries: CMat::identity(d, d),
        }
    }

    /// `self ∘ rhs`; rejected unless `rhs` lands where `self` starts.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.n != rhs.n || self.domain != rhs.codomain {
            return Err(Error::InvalidInput(format!(
                "cannot compose {:?}→{:?} after {:?}→{:?}",
                self.domain, self.codomain, rhs.domain, rhs.codomain
            )));
        }
        Ok(OperatorMatrix {
            n: self.n,
            domain: rhs.domain,
            codomain: self.codomain,
            entries: &self.entries * &rhs.entries,
        })
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            n: self.n,
            domain: self.codomain,
            codomain: self.domain,
            entries: self.entries.adjoint(),
        }
    }

    /// Largest singular value.
    pub fn norm(&self) -> f64 {
        crate::linalg::op_norm(&self.entries)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    fn same_shape(&self, rhs: &OperatorMatrix) {
        assert!(
            self.n == rhs.n && self.domain == rhs.domain && self.codomain == rhs.codomain,
            "operator shape mismatch"
        );
    }
}

impl Add<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.same_shape(rhs);
        OperatorMatrix {
            entries: &self.entries + &rhs.entries,
            ..self.clone()
        }
    }
}

impl Sub<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.same_shape(rhs);
        OperatorMatrix {
            entries: &self.entries - &rhs.entries,
            ..self.clone()
        }
    }
}

impl Mul<C64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, s: C64) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries * s,
            ..self.clone()
        }
    }
}

/// Frame structure constants together with the complex dimension.
#[derive(Clone, Debug)]
pub struct DolbeaultComplex {
    n: usize,
    toral_start: usize,
    d: Vec<C64>,
}

impl DolbeaultComplex {
    pub fn new(alg: &LieAlgebra, frame: &SamelsonFrame) -> Self {
        DolbeaultComplex {
            n: frame.n(),
            toral_start: frame.m(),
            d: frame.frame_constants(alg),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `B_c` in `[B_a, B_b]`, `B = [Z, conj Z]`.
    #[inline]
    fn dc(&self, c: usize, a: usize, b: usize) -> C64 {
        let dim = 2 * self.n;
        self.d[(c * dim + a) * dim + b]
    }

    /// `∂̄: Λ^{0,p} → Λ^{0,p+1}` from
    /// `(∂̄φ)(W̄_0..W̄_p) = Σ_{j<k} (-1)^{j+k} φ(p̄[W̄_j,W̄_k], W̄_0..Ŵ_j..Ŵ_k..W̄_p)`.
    pub fn dbar(&self, p: usize) -> Result<OperatorMatrix> {
        let n = self.n;
        if p >= n {
            return Err(Error::DegreeMismatch(format!(
                "∂̄ is defined on Λ^{{0,p}} for p < {n}, got p = {p}"
            )));
        }
        let rows = subsets(n, p + 1);
        let mut m = CMat::zeros(rows.len(), binomial(n, p));
        for (ri, &kmask) in rows.iter().enumerate() {
            let k: Vec<usize> = crate::multilinear::mask_indices(kmask);
            for a in 0..=p {
                for b in a + 1..=p {
                    let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                    let rest = kmask & !(1 << k[a]) & !(1 << k[b]);
                    for c in 0..n {
                        if rest & (1 << c) != 0 {
                            continue;
                        }
                        let coef = self.dc(n + c, n + k[a], n + k[b]);
                        if coef.norm() == 0.0 {
                            continue;
                        }
                        let col = subset_rank(rest | (1 << c), n);
                        m[(ri, col)] += coef * (sign * insertion_sign(rest, c));
                    }
                }
            }
        }
        OperatorMatrix::new(n, Space::Degree(p), Space::Degree(p + 1), m)
    }

    /// `∂̄*: Λ^{0,p} → Λ^{0,p-1}` from the frame formula
    /// `(∂̄*φ)(W̄_1..W̄_{p-1}) = ½ Σ_j (-1)^j Σ_k φ(Z̄_k, p̄[Z_k, W̄_j], W̄_1..Ŵ_j..W̄_{p-1})`.
    pub fn dbar_star(&self, p: usize) -> Result<OperatorMatrix> {
        let n = self.n;
        if p == 0 || p > n {
            return Err(Error::DegreeMismatch(format!(
                "∂̄* is defined on Λ^{{0,p}} for 1 ≤ p ≤ {n}, got p = {p}"
            )));
        }
        let rows = subsets(n, p - 1);
        let mut m = CMat::zeros(rows.len(), binomial(n, p));
        for (ri, &lmask) in rows.iter().enumerate() {
            let l = crate::multilinear::mask_indices(lmask);
            for (j, &lj) in l.iter().enumerate() {
                let sign = if j % 2 == 0 { 0.5 } else { -0.5 };
                let rest = lmask & !(1 << lj);
                for k in 0..n {
                    if rest & (1 << k) != 0 {
                        continue;
                    }
                    for c in 0..n {
                        if c == k || rest & (1 << c) != 0 {
                            continue;
                        }
                        let coef = self.dc(n + c, k, n + lj);
                        if coef.norm() == 0.0 {
                            continue;
                        }
                        let s = insertion_sign(rest, c) * insertion_sign(rest | (1 << c), k);
                        let col = subset_rank(rest | (1 << c) | (1 << k), n);
                        m[(ri, col)] += coef * (sign * s);
                    }
                }
            }
        }
        OperatorMatrix::new(n, Space::Degree(p), Space::Degree(p - 1), m)
    }

    /// `∂̄*∂̄ + ∂̄∂̄*` on `Λ^{0,p}`, with `∂̄*` the adjoint of `∂̄`.
    pub fn laplacian(&self, p: usize) -> Result<OperatorMatrix> {
        let n = self.n;
        if p > n {
            return Err(Error::DegreeMismatch(format!("degree {p} exceeds {n}")));
        }
        let mut lap = OperatorMatrix::zero(n, Space::Degree(p), Space::Degree(p));
        if p < n {
            let d = self.dbar(p)?;
            lap = &lap + &d.adjoint().compose(&d)?;
        }
        if p > 0 {
            let d = self.dbar(p - 1)?;
            lap = &lap + &d.compose(&d.adjoint())?;
        }
        Ok(lap)
    }

    /// `∂̄` on the graded space, bit-mask indexed.
    pub fn graded_dbar(&self) -> Result<OperatorMatrix> {
        let n = self.n;
        let mut g = CMat::zeros(1 << n, 1 << n);
        for p in 0..n {
            let d = self.dbar(p)?;
            let rows = subsets(n, p + 1);
            let cols = subsets(n, p);
            for (ri, &r) in rows.iter().enumerate() {
                for (ci, &c) in cols.iter().enumerate() {
                    g[(r as usize, c as usize)] = d.entries[(ri, ci)];
                }
            }
        }
        OperatorMatrix::new(n, Space::Graded, Space::Graded, g)
    }

    /// `□ = √2(∂̄ + ∂̄*)` on the graded space.
    pub fn dirac(&self) -> Result<OperatorMatrix> {
        let d = self.graded_dbar()?;
        Ok(&(&d + &d.adjoint()) * C64::new(std::f64::consts::SQRT_2, 0.0))
    }

    /// Kernel of the Laplacian on `Λ^{0,p}`, as orthonormal coefficient vectors.
    pub fn harmonic_basis(&self, p: usize) -> Result<Vec<CVec>> {
        let tau = self.kernel_threshold()?;
        let lap = self.laplacian(p)?;
        let (vals, vecs) = hermitian_eigen(&lap.entries);
        Ok(vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < tau)
            .map(|(i, _)| vecs.column(i).into_owned())
            .collect())
    }

    fn spectra(&self) -> Result<Vec<Vec<f64>>> {
        (0..=self.n)
            .map(|p| Ok(hermitian_eigen(&self.laplacian(p)?.entries).0))
            .collect()
    }

    /// `τ = 1e-8 · λ_max` over all degrees, `1e-8` if the Laplacian vanishes.
    pub fn kernel_threshold(&self) -> Result<f64> {
        let lmax = self
            .spectra()?
            .iter()
            .flatten()
            .fold(0.0_f64, |a, &v| a.max(v));
        Ok(KERNEL_REL_TOL * if lmax > 0.0 { lmax } else { 1.0 })
    }

    /// Share of the norm of each harmonic form carried by `Λ^p conj(𝔞)*`.
    pub fn harmonic_structure_check(&self, p: usize) -> Result<HarmonicCheck> {
        let n = self.n;
        let basis = self.harmonic_basis(p)?;
        let masks = subsets(n, p);
        let toral_mask: u32 = ((1u32 << n) - 1) & !((1u32 << self.toral_start) - 1);
        let mut worst: f64 = 1.0;
        for h in &basis {
            let total: f64 = h.iter().map(|z| z.norm_sqr()).sum();
            let toral: f64 = masks
                .iter()
                .zip(h.iter())
                .filter(|(&m, _)| m & !toral_mask == 0)
                .map(|(_, z)| z.norm_sqr())
                .sum();
            worst = worst.min(toral / total);
        }
        Ok(HarmonicCheck {
            p,
            harmonic_dimension: basis.len(),
            min_toral_fraction: worst,
            pass: worst >= 1.0 - 1e-8,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicCheck {
    pub p: usize,
    pub harmonic_dimension: usize,
    pub min_toral_fraction: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralWarning {
    pub p: usize,
    pub eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeNumbers {
    pub n: usize,
    pub r: usize,
    pub numbers: Vec<usize>,
    /// `C(r, p)`.
    pub prediction: Vec<usize>,
    pub threshold: f64,
    pub warnings: Vec<SpectralWarning>,
    pub euler_characteristic: i64,
}

impl HodgeNumbers {
    pub fn matches_prediction(&self) -> bool {
        self.numbers == self.prediction
    }

    pub fn conclusive(&self) -> bool {
        self.warnings.is_empty()
    }
}

pub fn hodge_numbers(alg: &LieAlgebra, frame: &SamelsonFrame) -> Result<HodgeNumbers> {
    hodge_from_complex(&DolbeaultComplex::new(alg, frame), frame.r())
}

pub fn hodge_from_complex(cx: &DolbeaultComplex, r: usize) -> Result<HodgeNumbers> {
    let n = cx.n();
    let spectra = cx.spectra()?;
    let tau = cx.kernel_threshold()?;
    let mut numbers = Vec::with_capacity(n + 1);
    let mut warnings = Vec::new();
    for (p, vals) in spectra.iter().enumerate() {
        numbers.push(vals.iter().filter(|&&v| v < tau).count());
        for &v in vals {
            if v >= tau / 10.0 && v <= tau * 10.0 {
                warnings.push(SpectralWarning { p, eigenvalue: v });
            }
        }
    }
    let euler = numbers
        .iter()
        .enumerate()
        .map(|(p, &h)| if p % 2 == 0 { h as i64 } else { -(h as i64) })
        .sum();
    Ok(HodgeNumbers {
        n,
        r,
        prediction: (0..=n).map(|p| binomial(r, p)).collect(),
        numbers,
        threshold: tau,
        warnings,
        euler_characteristic: euler,
    })
}

/// Matrix of `∂̄` on `Λ^{0,p}`.
pub fn dbar_matrix(alg: &LieAlgebra, frame: &SamelsonFrame, p: usize) -> Result<OperatorMatrix> {
    DolbeaultComplex::new(alg, frame).dbar(p)
}

/// Matrix of `∂̄*` on `Λ^{0,p}` from the frame formula.
pub fn dbar_star_matrix(
    alg: &LieAlgebra,
    frame: &SamelsonFrame,
    p: usize,
) -> Result<OperatorMatrix> {
    DolbeaultComplex::new(alg, frame).dbar_star(p)
}

/// `ζ̄^I` as a form on the real basis of `𝔤`.
pub fn zeta_bar_form(frame: &SamelsonFrame, idx: &[usize]) -> InvariantForm {
    let nr = frame.coframe.ncols();
    let mut out = InvariantForm::scalar(nr, C64::new(1.0, 0.0));
    for &a in idx {
        let row: Vec<C64> = frame.coframe.row(a).iter().map(|z| z.conj()).collect();
        out = wedge(&out, &InvariantForm::one_form(&row)).expect("same dimension");
    }
    out
}

/// The form on `𝔤` with coefficients `coeffs` in the `ζ̄^I` basis of `Λ^{0,p}`.
pub fn form_from_coeffs(frame: &SamelsonFrame, p: usize, coeffs: &CVec) -> InvariantForm {
    let nr = frame.coframe.ncols();
    let mut out = InvariantForm::zero(nr, p);
    for (&mask, &z) in subsets(frame.n(), p).iter().zip(coeffs.iter()) {
        if z.norm() == 0.0 {
            continue;
        }
        out += &zeta_bar_form(frame, &crate::multilinear::mask_indices(mask)).scale(z);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RobustnessTrial {
    pub trial: usize,
    pub phases: Vec<f64>,
    pub permutation: Vec<usize>,
    pub numbers: Vec<usize>,
    pub matches: bool,
}

/// Recomputes `h^{0,•}` after random re-phasing `Z_j ↦ e^{iφ_j}Z_j` and a
/// random reordering of the positive roots.
pub fn robustness_trials(
    alg: &LieAlgebra,
    g: &Metric,
    frame: &SamelsonFrame,
    trials: usize,
    seed: u64,
) -> Result<Vec<RobustnessTrial>> {
    let reference = hodge_numbers(alg, frame)?.numbers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let phases: Vec<f64> = (0..frame.n())
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        let mut perm: Vec<usize> = (0..frame.m()).collect();
        for i in (1..perm.len()).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        let f = frame.rephased(alg, g, &phases)?.permuted(alg, g, &perm)?;
        let numbers = hodge_numbers(alg, &f)?.numbers;
        out.push(RobustnessTrial {
            trial,
            matches: numbers == reference,
            phases,
            permutation: perm,
            numbers,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_checks_descriptors() {
        let a = OperatorMatrix::zero(3, Space::Degree(0), Space::Degree(1));
        let b = OperatorMatrix::zero(3, Space::Degree(1), Space::Degree(2));
        assert!(b.compose(&a).is_ok());
        assert!(a.compose(&b).is_err());
        assert_eq!(b.compose(&a).unwrap().entries.shape(), (3, 1));
    }

    #[test]
    fn wrong_shape_rejected() {
        assert!(
            OperatorMatrix::new(2, Space::Degree(1), Space::Degree(1), CMat::zeros(2, 3)).is_err()
        );
        assert_eq!(Space::Graded.dim(4), 16);
    }
}
