//! Experiment drivers: exact counts against the shapes of the known bounds.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use dgc_core::detmethod::{aux_polynomial, bezout_check, AuxMode, AuxOptions};
use dgc_core::irreducibility::{bad_primes, badness_value, form_absolutely_irreducible, BadnessOptions, Field};
use dgc_core::pointcount::enumerate_affine;
use dgc_core::poly::parse_poly;
use dgc_core::witness::build_witness;
use dgc_core::{IntPoly, WorkLimit};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ConfigError, KeyValues};
use crate::corpus::{generate_corpus, CorpusError, CorpusSpec};
use crate::regression::RegressionFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    CurveBound,
    AffineCurveBound,
    SurfaceLinear,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CurveBound => "curve-bound",
            ExperimentKind::AffineCurveBound => "affine-curve-bound",
            ExperimentKind::SurfaceLinear => "surface-linear",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Self::CurveBound, Self::AffineCurveBound, Self::SurfaceLinear].into_iter().find(|k| k.name() == s)
    }

    fn vars(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::CurveBound => &["x0", "x1", "x2"],
            ExperimentKind::AffineCurveBound => &["x", "y"],
            ExperimentKind::SurfaceLinear => &["x", "y", "z"],
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Core(#[from] dgc_core::Error),
    #[error("precondition: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub corpus: Option<CorpusSpec>,
    pub extra: Vec<IntPoly>,
    pub bounds: Vec<u64>,
    pub witness_degrees: Option<RangeInclusive<u32>>,
    pub inputs: BTreeMap<String, String>,
}

const KEYS: &[&str] = &["experiment", "seed", "count", "degrees", "coeff_bound", "density", "bounds", "witness_degrees", "polys"];

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let kv = KeyValues::parse(text)?;
        kv.check_keys(KEYS)?;
        let name = kv.require("experiment")?;
        let kind = ExperimentKind::parse(name)
            .ok_or_else(|| ConfigError::Invalid { key: "experiment".into(), value: name.into() })?;
        let seed = kv.parse_value("seed")?.unwrap_or(0);
        let bounds: Vec<u64> = kv.parse_list("bounds")?.ok_or_else(|| ConfigError::Missing("bounds".into()))?;
        let count: usize = kv.parse_value("count")?.unwrap_or(0);
        let corpus = if count > 0 {
            let degrees = kv.parse_range("degrees")?.ok_or_else(|| ConfigError::Missing("degrees".into()))?;
            let coeff_bound = kv.parse_value("coeff_bound")?.unwrap_or(10);
            let mut spec = match kind {
                ExperimentKind::CurveBound => CorpusSpec::plane_curves(degrees, coeff_bound, count, seed),
                ExperimentKind::AffineCurveBound => CorpusSpec::affine_curves(degrees, coeff_bound, count, seed),
                ExperimentKind::SurfaceLinear => {
                    return Err(ExperimentError::Precondition("surface experiments take explicit polys".into()))
                }
            };
            if let Some(density) = kv.parse_value("density")? {
                spec.density = density;
            }
            Some(spec)
        } else {
            None
        };
        let extra = kv
            .get("polys")
            .map(|s| {
                s.split(';')
                    .map(str::trim)
                    .filter(|p| !p.is_empty())
                    .map(|p| parse_poly(p, kind.vars()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?
            .unwrap_or_default();
        let inputs = kv.keys().map(|k| (k.to_string(), kv.get(k).unwrap_or("").to_string())).collect();
        Ok(ExperimentConfig { kind, seed, corpus, extra, bounds, witness_degrees: kv.parse_range("witness_degrees")?, inputs })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub source: &'static str,
    pub poly: String,
    pub degree: u32,
    pub bound: u64,
    pub count: Option<u64>,
    /// Count divided by the main term of the bound being probed.
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bezout_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub inputs: BTreeMap<String, String>,
    pub records: Vec<InstanceRecord>,
    pub aggregate: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ExperimentReport {
    fn new(kind: ExperimentKind, seed: u64, inputs: BTreeMap<String, String>, records: Vec<InstanceRecord>) -> Self {
        let failed = records.iter().filter(|r| !r.pass).count();
        let checks = vec![Check {
            name: "instances".into(),
            pass: failed == 0,
            detail: format!("{} of {} instances pass", records.len() - failed, records.len()),
        }];
        let mut rep = ExperimentReport {
            schema_version: SCHEMA_VERSION,
            experiment: kind,
            seed,
            inputs,
            records,
            aggregate: BTreeMap::new(),
            checks,
            pass: false,
        };
        rep.refresh_pass();
        rep
    }

    fn refresh_pass(&mut self) {
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    fn set_max_ratio(&mut self) {
        let best = self
            .records
            .iter()
            .filter_map(|r| r.ratio.map(|x| (x, r.id)))
            .fold(None, |acc: Option<(f64, usize)>, (x, id)| match acc {
                Some((y, _)) if y >= x => acc,
                _ => Some((x, id)),
            });
        if let Some((x, id)) = best {
            self.aggregate.insert("max_ratio".into(), x);
            self.aggregate.insert("argmax".into(), id as f64);
        }
    }

    /// Compares every frozen value under this experiment's name bit for bit.
    pub fn check_regression(&mut self, frozen: &RegressionFile) {
        let prefix = self.experiment.name();
        let mut seen = 0;
        for (key, want) in frozen.with_prefix(prefix) {
            seen += 1;
            let got = self.aggregate.get(key).copied();
            self.checks.push(Check {
                name: format!("regression {key}"),
                pass: got.is_some_and(|g| g.to_bits() == want.to_bits()),
                detail: format!("recorded {want:?}, observed {}", got.map_or("none".into(), |g| format!("{g:?}"))),
            });
        }
        if seen == 0 {
            self.checks.push(Check {
                name: "regression".into(),
                pass: false,
                detail: format!("no recorded values for {prefix}"),
            });
        }
        self.refresh_pass();
    }
}

struct Instance {
    source: &'static str,
    f: IntPoly,
    bounds: Vec<u64>,
}

fn render(f: &IntPoly, kind: ExperimentKind) -> String {
    f.display(kind.vars()).to_string()
}

fn flatten(instances: &[Instance]) -> Vec<(usize, &Instance, u64)> {
    let mut jobs = Vec::new();
    for inst in instances {
        for &b in &inst.bounds {
            jobs.push((jobs.len(), inst, b));
        }
    }
    jobs
}

/// Projective plane curves: exact `N(f, B)`, a minimal auxiliary polynomial
/// with its Bezout check, and the ratio `N / (d^4 B^(2/d))`.
pub fn experiment_curve_bound(
    corpus: &[IntPoly],
    witness_degrees: Option<RangeInclusive<u32>>,
    bounds: &[u64],
    limit: WorkLimit,
) -> Result<Vec<InstanceRecord>, ExperimentError> {
    let mut instances: Vec<Instance> =
        corpus.iter().map(|f| Instance { source: "corpus", f: f.clone(), bounds: bounds.to_vec() }).collect();
    for d in witness_degrees.into_iter().flatten() {
        let w = build_witness(d, 2)?;
        instances.push(Instance { source: "witness", f: w.f.homogenize(2), bounds: vec![w.bound] });
    }
    let opts = AuxOptions { limit, ..AuxOptions::default() };
    Ok(flatten(&instances)
        .par_iter()
        .map(|&(id, inst, b)| {
            let d = inst.f.degree().unwrap_or(0);
            let mut rec = InstanceRecord {
                id,
                source: inst.source,
                poly: render(&inst.f, ExperimentKind::CurveBound),
                degree: d,
                bound: b,
                count: None,
                ratio: None,
                aux_degree: None,
                bezout_ok: None,
                shape: None,
                error: None,
                pass: false,
            };
            match aux_polynomial(&inst.f, b, AuxMode::Projective, &opts).and_then(|c| Ok((bezout_check(&c)?, c))) {
                Ok((ok, cert)) => {
                    let n = cert.s_points() as u64;
                    rec.count = Some(n);
                    rec.ratio = Some(n as f64 / ((d as f64).powi(4) * (b as f64).powf(2.0 / d as f64)));
                    rec.aux_degree = Some(cert.degree);
                    rec.bezout_ok = Some(ok);
                    rec.pass = ok;
                    if inst.source == "witness" {
                        // the floor d^2 B^(2/d) / 5, compared exactly
                        let floor = (5 * n as u128).pow(d) >= (d as u128).pow(2 * d) * (b as u128).pow(2);
                        rec.pass &= floor;
                    }
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect())
}

/// `B^(1/d) min(d^2 log|f_d| + d^3 log B + d^4, d^4 b(f)) / |f_d|^(1/d^2) + d log B + d^4`.
pub fn affine_shape(d: u32, b: u64, norm_fd: f64, badness: Option<f64>) -> f64 {
    let (d, lb) = (d as f64, (b as f64).ln());
    let first = d * d * norm_fd.ln() + d.powi(3) * lb + d.powi(4);
    let m = badness.map_or(first, |bf| first.min(d.powi(4) * bf));
    (b as f64).powf(1.0 / d) * m / norm_fd.powf(1.0 / (d * d)) + d * lb + d.powi(4)
}

/// Affine plane curves: exact `N_aff(f, B)`, the ratio
/// `N / (d^3 B^(1/d) (log B + d))`, and the refined shape with `c = 1`.
pub fn experiment_affine_curve_bound(
    corpus: &[IntPoly],
    bounds: &[u64],
    limit: WorkLimit,
) -> Result<Vec<InstanceRecord>, ExperimentError> {
    let badness: Vec<Option<f64>> = corpus
        .par_iter()
        .map(|f| {
            let rep = bad_primes(f, &BadnessOptions::default()).ok()?;
            if rep.unfactored.is_some() || !rep.absolutely_irreducible {
                return None;
            }
            Some(badness_value(&rep).value())
        })
        .collect();
    let instances: Vec<Instance> =
        corpus.iter().map(|f| Instance { source: "corpus", f: f.clone(), bounds: bounds.to_vec() }).collect();
    let index_of = |inst: &Instance| instances.iter().position(|i| std::ptr::eq(i, inst)).expect("member");
    Ok(flatten(&instances)
        .par_iter()
        .map(|&(id, inst, b)| {
            let d = inst.f.degree().unwrap_or(0);
            let norm_fd = inst.f.degree_part(d).coeff_norm().to_f64().unwrap_or(f64::INFINITY);
            let mut rec = InstanceRecord {
                id,
                source: inst.source,
                poly: render(&inst.f, ExperimentKind::AffineCurveBound),
                degree: d,
                bound: b,
                count: None,
                ratio: None,
                aux_degree: None,
                bezout_ok: None,
                shape: Some(affine_shape(d, b, norm_fd, badness[index_of(inst)])),
                error: None,
                pass: false,
            };
            match enumerate_affine(&inst.f, b, limit, false) {
                Ok(c) => {
                    let (df, bf) = (d as f64, b as f64);
                    rec.count = Some(c.count);
                    rec.ratio = Some(c.count as f64 / (df.powi(3) * bf.powf(1.0 / df) * (bf.ln() + df)));
                    rec.pass = true;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect())
}

/// Affine surfaces of degree at least 5 with absolutely irreducible top
/// part: `N_aff(f, B)` against `d^14 B`.
pub fn experiment_surface_linear(
    f: &IntPoly,
    bounds: &[u64],
    limit: WorkLimit,
) -> Result<Vec<InstanceRecord>, ExperimentError> {
    if f.nvars() != 3 {
        return Err(ExperimentError::Precondition("surface must be in 3 variables".into()));
    }
    let d = f.degree().unwrap_or(0);
    if d < 5 {
        return Err(ExperimentError::Precondition(format!("degree {d} < 5")));
    }
    if !form_absolutely_irreducible(&f.degree_part(d), Field::Rational)? {
        return Err(ExperimentError::Precondition("top-degree part is not absolutely irreducible".into()));
    }
    let poly = render(f, ExperimentKind::SurfaceLinear);
    Ok(bounds
        .par_iter()
        .enumerate()
        .map(|(id, &b)| {
            let mut rec = InstanceRecord {
                id,
                source: "surface",
                poly: poly.clone(),
                degree: d,
                bound: b,
                count: None,
                ratio: None,
                aux_degree: None,
                bezout_ok: None,
                shape: None,
                error: None,
                pass: false,
            };
            match enumerate_affine(f, b, limit, false) {
                Ok(c) => {
                    rec.count = Some(c.count);
                    rec.ratio = Some(c.count as f64 / ((d as f64).powi(14) * b as f64));
                    rec.pass = true;
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect())
}

pub fn run_experiment(cfg: &ExperimentConfig, limit: WorkLimit) -> Result<ExperimentReport, ExperimentError> {
    let mut polys = match &cfg.corpus {
        Some(spec) => generate_corpus(spec)?,
        None => Vec::new(),
    };
    polys.extend(cfg.extra.iter().cloned());
    let records = match cfg.kind {
        ExperimentKind::CurveBound => experiment_curve_bound(&polys, cfg.witness_degrees.clone(), &cfg.bounds, limit)?,
        ExperimentKind::AffineCurveBound => experiment_affine_curve_bound(&polys, &cfg.bounds, limit)?,
        ExperimentKind::SurfaceLinear => {
            let mut all = Vec::new();
            for f in &polys {
                let mut recs = experiment_surface_linear(f, &cfg.bounds, limit)?;
                for r in &mut recs {
                    r.id += all.len();
                }
                all.extend(recs);
            }
            all
        }
    };
    let mut rep = ExperimentReport::new(cfg.kind, cfg.seed, cfg.inputs.clone(), records);
    rep.set_max_ratio();
    rep.aggregate.insert("instances".into(), rep.records.len() as f64);
    match cfg.kind {
        ExperimentKind::CurveBound => {
            let bad = rep.records.iter().filter(|r| r.bezout_ok == Some(false)).count();
            rep.checks.push(Check {
                name: "bezout".into(),
                pass: bad == 0,
                detail: format!("{bad} Bezout violations"),
            });
        }
        ExperimentKind::AffineCurveBound => {
            let max_shape = rep
                .records
                .iter()
                .filter_map(|r| Some(r.count? as f64 / r.shape?))
                .fold(0.0, f64::max);
            rep.aggregate.insert("max_shape_ratio".into(), max_shape);
        }
        ExperimentKind::SurfaceLinear => {
            let (num, den) = rep
                .records
                .iter()
                .filter_map(|r| Some((r.count? as f64 * r.bound as f64, (r.bound as f64).powi(2))))
                .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
            if den > 0.0 {
                rep.aggregate.insert("slope".into(), num / den);
            }
        }
    }
    rep.refresh_pass();
    Ok(rep)
}
