//! Seeded random polynomial corpora.

use std::ops::RangeInclusive;

use dgc_core::irreducibility::{absolutely_irreducible, form_absolutely_irreducible, Field};
use dgc_core::poly::{monomials_of_degree, monomials_up_to};
use dgc_core::IntPoly;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    AbsolutelyIrreducible,
    Reducible,
    Primitive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub degrees: RangeInclusive<u32>,
    pub coeff_bound: u64,
    /// 3 homogeneous variables for plane projective curves, 2 for affine ones.
    pub nvars: usize,
    pub homogeneous: bool,
    pub count: usize,
    pub seed: u64,
    pub filters: Vec<Filter>,
    /// Probability that a given monomial gets a nonzero coefficient.
    pub density: f64,
    pub attempt_cap: usize,
}

impl CorpusSpec {
    pub fn plane_curves(degrees: RangeInclusive<u32>, coeff_bound: u64, count: usize, seed: u64) -> Self {
        CorpusSpec {
            degrees,
            coeff_bound,
            nvars: 3,
            homogeneous: true,
            count,
            seed,
            filters: vec![Filter::AbsolutelyIrreducible, Filter::Primitive],
            density: 0.6,
            attempt_cap: 200 * count.max(1),
        }
    }

    pub fn affine_curves(degrees: RangeInclusive<u32>, coeff_bound: u64, count: usize, seed: u64) -> Self {
        CorpusSpec { nvars: 2, homogeneous: false, ..Self::plane_curves(degrees, coeff_bound, count, seed) }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("attempt cap {cap} reached with {found} of {wanted} polynomials")]
    AttemptCap { cap: usize, found: usize, wanted: usize },
}

fn random_coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

/// One random polynomial of exact degree `d`.
pub fn random_poly(rng: &mut ChaCha8Rng, spec: &CorpusSpec, d: u32) -> IntPoly {
    let bound = spec.coeff_bound as i64;
    let top = monomials_of_degree(spec.nvars, d);
    let all = if spec.homogeneous { top.clone() } else { monomials_up_to(spec.nvars, d) };
    let mut f = IntPoly::zero(spec.nvars);
    for m in &all {
        if rng.gen_bool(spec.density) {
            f.add_term(m.clone(), BigInt::from(random_coeff(rng, bound)));
        }
    }
    if f.degree() != Some(d) {
        let m = top.choose(rng).expect("nonempty").clone();
        f.add_term(m, BigInt::from(random_coeff(rng, bound)));
    }
    f
}

fn passes(f: &IntPoly, spec: &CorpusSpec, filter: Filter) -> bool {
    let irreducible = || {
        if spec.homogeneous && spec.nvars == 3 {
            form_absolutely_irreducible(f, Field::Rational).unwrap_or(false)
        } else {
            absolutely_irreducible(f, Field::Rational).unwrap_or(false)
        }
    };
    match filter {
        Filter::Primitive => f.is_primitive(),
        Filter::AbsolutelyIrreducible => irreducible(),
        Filter::Reducible => !irreducible(),
    }
}

/// Rejection sampling: deterministic in `spec.seed`.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<IntPoly>, CorpusError> {
    if spec.degrees.is_empty() || *spec.degrees.start() == 0 {
        return Err(CorpusError::Spec("degrees must be a nonempty range of positive integers".into()));
    }
    if spec.coeff_bound == 0 || spec.nvars == 0 || !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(CorpusError::Spec("need coeff_bound > 0, nvars > 0, density in (0, 1]".into()));
    }
    if spec.filters.iter().any(|&f| matches!(f, Filter::AbsolutelyIrreducible | Filter::Reducible))
        && !(spec.nvars == 2 && !spec.homogeneous || spec.nvars == 3 && spec.homogeneous)
    {
        return Err(CorpusError::Spec("irreducibility filters need plane curves".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let mut attempts = 0;
    while out.len() < spec.count {
        if attempts == spec.attempt_cap {
            return Err(CorpusError::AttemptCap { cap: spec.attempt_cap, found: out.len(), wanted: spec.count });
        }
        attempts += 1;
        let d = rng.gen_range(spec.degrees.clone());
        let f = random_poly(&mut rng, spec, d);
        if spec.filters.iter().all(|&flt| passes(&f, spec, flt)) {
            out.push(f);
        }
    }
    Ok(out)
}
