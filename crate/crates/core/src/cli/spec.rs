//! Group-spec files: a preset reference or explicit structure constants,
//! metric, torus and Samelson choices. Indices in files are 1-based.

use serde::Deserialize;

use super::presets::{self, coordinate_torus, ResolvedGroup};
use crate::error::{Error, Result};
use crate::liealg::{find_maximal_torus, LieAlgebra, PositivityRule, ToralPairing};
use crate::linalg::{real_null_space, RMat};
use crate::multilinear::Metric;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: Option<String>,
    pub preset: Option<String>,
    pub dimension: Option<usize>,
    pub structure_constants: Option<Vec<Constant>>,
    pub metric: Option<MetricSpec>,
    pub torus_basis: Option<Vec<usize>>,
    pub positivity_rule: Option<PositivitySpec>,
    pub toral_pairing: Option<PairingSpec>,
    pub labels: Option<Vec<String>>,
}

/// `c^k_{ij} = v`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Matrix(Vec<Vec<f64>>),
    Named(String),
    Killing { killing_negative: KillingOptions },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KillingOptions {
    /// One factor per torus basis vector, multiplying `g(t, t)`.
    pub toral_scale: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PositivitySpec {
    Named(String),
    Weights { weights: Vec<f64> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PairingSpec {
    Named(String),
    Pairs(Vec<[usize; 2]>),
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Spec(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn from_preset(id: &str) -> Self {
        GroupSpec {
            name: Some(id.into()),
            preset: Some(id.into()),
            dimension: None,
            structure_constants: None,
            metric: None,
            torus_basis: None,
            positivity_rule: None,
            toral_pairing: None,
            labels: None,
        }
    }

    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .or_else(|| self.preset.clone())
            .unwrap_or_else(|| "unnamed".into())
    }

    /// The Lie algebra alone, with the torus indices a preset ships.
    pub fn algebra(&self) -> Result<(LieAlgebra, Option<Vec<usize>>)> {
        if let Some(p) = &self.preset {
            if self.dimension.is_some()
                || self.structure_constants.is_some()
                || self.labels.is_some()
            {
                return Err(Error::Spec(
                    "'preset' cannot be combined with 'dimension', 'structure_constants' or 'labels'".into(),
                ));
            }
            let p = presets::algebra(p)?;
            return Ok((p.alg, Some(p.torus)));
        }
        let dim = self
            .dimension
            .ok_or_else(|| Error::Spec("missing 'dimension' (or 'preset')".into()))?;
        if dim == 0 {
            return Err(Error::Spec("'dimension' must be positive".into()));
        }
        let mut entries = Vec::new();
        for (n, c) in self.structure_constants.iter().flatten().enumerate() {
            if c.i == 0 || c.j == 0 || c.k == 0 || c.i > dim || c.j > dim || c.k > dim {
                return Err(Error::Spec(format!(
                    "structure_constants[{n}]: index ({}, {}, {}) outside 1..={dim}",
                    c.i, c.j, c.k
                )));
            }
            entries.push((c.i - 1, c.j - 1, c.k - 1, c.v));
        }
        let alg = LieAlgebra::from_sparse(dim, &entries, true, self.labels.clone())?;
        Ok((alg, None))
    }

    fn torus_indices(&self, dim: usize, preset: Option<Vec<usize>>) -> Result<Option<Vec<usize>>> {
        match &self.torus_basis {
            Some(t) => {
                let mut out = Vec::with_capacity(t.len());
                for (n, &i) in t.iter().enumerate() {
                    if i == 0 || i > dim {
                        return Err(Error::Spec(format!(
                            "torus_basis[{n}] = {i} outside 1..={dim}"
                        )));
                    }
                    out.push(i - 1);
                }
                Ok(Some(out))
            }
            None => Ok(preset),
        }
    }

    fn positivity(&self) -> Result<PositivityRule> {
        match &self.positivity_rule {
            None => Ok(PositivityRule::Lexicographic),
            Some(PositivitySpec::Named(s)) if s == "lexicographic" => {
                Ok(PositivityRule::Lexicographic)
            }
            Some(PositivitySpec::Named(s)) => Err(Error::Spec(format!(
                "positivity_rule '{s}': expected \"lexicographic\" or {{\"weights\": [...]}}"
            ))),
            Some(PositivitySpec::Weights { weights }) => {
                Ok(PositivityRule::Weights(weights.clone()))
            }
        }
    }

    fn pairing(&self) -> Result<ToralPairing> {
        match &self.toral_pairing {
            None => Ok(ToralPairing::Sequential),
            Some(PairingSpec::Named(s)) if s == "sequential" => Ok(ToralPairing::Sequential),
            Some(PairingSpec::Named(s)) => Err(Error::Spec(format!(
                "toral_pairing '{s}': expected \"sequential\" or a list of pairs"
            ))),
            Some(PairingSpec::Pairs(p)) => {
                let mut out = Vec::with_capacity(p.len());
                for (n, &[a, b]) in p.iter().enumerate() {
                    if a == 0 || b == 0 {
                        return Err(Error::Spec(format!(
                            "toral_pairing[{n}]: positions are 1-based"
                        )));
                    }
                    out.push((a - 1, b - 1));
                }
                Ok(ToralPairing::Pairs(out))
            }
        }
    }

    fn metric(&self, alg: &LieAlgebra, torus: Option<&[usize]>) -> Result<Metric> {
        let dim = alg.dim();
        match &self.metric {
            None => {
                if self.preset.is_some() {
                    Ok(Metric::identity(dim))
                } else {
                    killing_negative(alg)
                }
            }
            Some(MetricSpec::Named(s)) if s == "killing_negative" => killing_negative(alg),
            Some(MetricSpec::Named(s)) => Err(Error::Spec(format!(
                "metric '{s}': expected a matrix, \"killing_negative\" or {{\"killing_negative\": {{...}}}}"
            ))),
            Some(MetricSpec::Matrix(rows)) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Spec(format!("metric must be a {dim}×{dim} matrix")));
                }
                let m = RMat::from_fn(dim, dim, |r, c| rows[r][c]);
                Metric::new(m)
            }
            Some(MetricSpec::Killing { killing_negative: opts }) => {
                let base = killing_negative(alg)?;
                match &opts.toral_scale {
                    None => Ok(base),
                    Some(s) => {
                        let t = torus.ok_or_else(|| {
                            Error::Spec("toral_scale needs an explicit torus_basis".into())
                        })?;
                        if s.len() != t.len() {
                            return Err(Error::Spec(format!(
                                "toral_scale has {} entries, torus has {}",
                                s.len(),
                                t.len()
                            )));
                        }
                        if s.iter().any(|&x| !(x > 0.0)) {
                            return Err(Error::Spec("toral_scale entries must be positive".into()));
                        }
                        let mut d = RMat::identity(dim, dim);
                        for (&i, &x) in t.iter().zip(s) {
                            d[(i, i)] = x.sqrt();
                        }
                        Metric::new(&d * base.matrix() * &d)
                    }
                }
            }
        }
    }

    /// Algebra, metric and Samelson frame.
    pub fn resolve(&self) -> Result<ResolvedGroup> {
        let (alg, preset_torus) = self.algebra()?;
        let report = alg.validate();
        if !report.pass {
            return Err(Error::InvalidInput(format!(
                "not a unimodular Lie algebra: antisymmetry {:.3e}, Jacobi {:.3e}, unimodularity {:.3e}",
                report.antisymmetry, report.jacobi, report.unimodularity
            )));
        }
        let dim = alg.dim();
        let torus_idx = self.torus_indices(dim, preset_torus)?;
        let metric = self.metric(&alg, torus_idx.as_deref())?;
        let torus = match &torus_idx {
            Some(t) => coordinate_torus(dim, t),
            None => find_maximal_torus(&alg, &metric)?,
        };
        ResolvedGroup::new(
            &self.display_name(),
            alg,
            metric,
            &torus,
            &self.positivity()?,
            &self.pairing()?,
        )
    }
}

/// `-B` on `[𝔤,𝔤]` orthogonally summed with the identity on the center.
pub fn killing_negative(alg: &LieAlgebra) -> Result<Metric> {
    let dim = alg.dim();
    let center = alg.center();
    // derived algebra = orthogonal complement of the common kernel of the
    // transposed brackets, i.e. the range of the bracket map
    let mut images = RMat::zeros(dim, dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                images[(k, i * dim + j)] = alg.structure(k, i, j);
            }
        }
    }
    let derived = real_null_space(
        &real_null_space(&images.transpose(), 1e-10).transpose(),
        1e-10,
    );
    if derived.ncols() + center.ncols() != dim {
        return Err(Error::InvalidInput(format!(
            "killing_negative needs a reductive algebra: [g,g] has dimension {}, center {}",
            derived.ncols(),
            center.ncols()
        )));
    }
    let mut q = RMat::zeros(dim, dim);
    q.view_mut((0, 0), (dim, derived.ncols()))
        .copy_from(&derived);
    q.view_mut((0, derived.ncols()), (dim, center.ncols()))
        .copy_from(&center);
    let qinv = q
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidInput("[g,g] and the center are not complementary".into()))?;
    let k = -(derived.transpose() * alg.killing() * &derived);
    let mut block = RMat::identity(dim, dim);
    block
        .view_mut((0, 0), (derived.ncols(), derived.ncols()))
        .copy_from(&k);
    let g = qinv.transpose() * block * &qinv;
    let g = (&g + g.transpose()) * 0.5;
    Metric::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn killing_negative_of_preset_is_identity() {
        let p = presets::algebra("su2xsu2").unwrap();
        let g = killing_negative(&p.alg).unwrap();
        assert!(crate::linalg::max_abs_real(&(g.matrix() - RMat::identity(6, 6))) < 1e-12);
        let p = presets::algebra("su2xu1").unwrap();
        let g = killing_negative(&p.alg).unwrap();
        assert!(crate::linalg::max_abs_real(&(g.matrix() - RMat::identity(4, 4))) < 1e-12);
    }

    #[test]
    fn explicit_spec_matches_preset() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!(
            r#"{{"name": "hopf", "dimension": 4,
                "structure_constants": [{{"i":1,"j":2,"k":3,"v":{m}}}, {{"i":2,"j":3,"k":1,"v":{m}}}, {{"i":3,"j":1,"k":2,"v":{m}}}],
                "metric": "killing_negative", "torus_basis": [3, 4]}}"#,
            m = -r
        );
        let g = GroupSpec::from_json(&text).unwrap().resolve().unwrap();
        let p = presets::build("su2xu1").unwrap();
        let gap = g
            .alg
            .constants()
            .iter()
            .zip(p.alg.constants())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(gap < 1e-15);
        assert_eq!(g.n(), 2);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(
            GroupSpec::from_json(r#"{"presett": "t4"}"#),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn out_of_range_index_is_located() {
        let e = GroupSpec::from_json(
            r#"{"dimension": 2, "structure_constants": [{"i":1,"j":3,"k":1,"v":1.0}]}"#,
        )
        .unwrap()
        .resolve()
        .unwrap_err();
        assert!(e.to_string().contains("structure_constants[0]"), "{e}");
    }
}
