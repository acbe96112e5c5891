use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gao::{gao_matrix, leading_x_coeff, normalize, squarefree, Normalized};
use super::{factor_count, reduction_absolutely_irreducible, Factorization, Field};
use crate::arith::factor_partial;
use crate::error::{Error, Result};
use crate::linalg::{det_int, nullspace_int, PrimeMatrix};
use crate::poly::IntPoly;
use crate::resultant::{resultant_int, specialize_second};

#[derive(Clone, Debug)]
pub struct BadnessOptions {
    /// Trial-division bound used when factoring the candidate product.
    pub trial_limit: u64,
    /// Number of random row combinations whose determinants are gcd'ed with
    /// the first maximal minor.
    pub extra_minors: usize,
    pub seed: u64,
}

impl Default for BadnessOptions {
    fn default() -> Self {
        BadnessOptions { trial_limit: 1_000_000, extra_minors: 2, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadnessReport {
    pub f: IntPoly,
    pub d: u32,
    /// `27 d^4`.
    pub threshold: u64,
    pub absolutely_irreducible: bool,
    /// Prime divisors of the candidate product, ascending.
    pub candidate_primes: Vec<u64>,
    /// Part of the candidate product left unfactored (its primes all exceed
    /// the trial limit and could not be split); `None` when factoring finished.
    pub unfactored: Option<BigUint>,
    /// Candidates above the threshold whose reduction is not absolutely irreducible.
    pub bad_primes: Vec<u64>,
}

/// `b(f)` as a formal product over bad primes.
#[derive(Clone, Debug, PartialEq)]
pub enum BadnessValue {
    Zero,
    Product { primes: Vec<u64>, log: f64, value: f64 },
}

impl BadnessValue {
    /// Exponent weights `1/p`, so that `log b = sum (1/p) log p`.
    pub fn weights(&self) -> Vec<(u64, BigRational)> {
        match self {
            BadnessValue::Zero => Vec::new(),
            BadnessValue::Product { primes, .. } => primes
                .iter()
                .map(|&p| (p, BigRational::new(BigInt::one(), BigInt::from(p))))
                .collect(),
        }
    }

    pub fn log(&self) -> Option<f64> {
        match self {
            BadnessValue::Zero => None,
            BadnessValue::Product { log, .. } => Some(*log),
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            BadnessValue::Zero => 0.0,
            BadnessValue::Product { value, .. } => *value,
        }
    }
}

pub fn badness_value(report: &BadnessReport) -> BadnessValue {
    if !report.absolutely_irreducible {
        return BadnessValue::Zero;
    }
    let log: f64 = report.bad_primes.iter().map(|&p| libm::log(p as f64) / p as f64).sum();
    BadnessValue::Product { primes: report.bad_primes.clone(), log, value: libm::exp(log) }
}

fn gcd_fold(acc: BigInt, v: &BigInt) -> BigInt {
    acc.gcd(v)
}

/// Discriminant values `Res_x(g, g_x)` at `y = 0..=(2m-1)n`; any prime for
/// which the reduction is not squarefree divides their gcd.
fn discriminant_gcd(nz: &Normalized) -> BigInt {
    let m = nz.m as usize;
    if m == 1 {
        return BigInt::one();
    }
    let gx = nz.g.derivative(0);
    let dbound = (2 * nz.m as u64 - 1) * nz.n as u64;
    (0..=dbound).fold(BigInt::zero(), |acc, y0| {
        let y0 = BigInt::from(y0);
        let a = specialize_second(&nz.g, &y0, m);
        let b = specialize_second(&gx, &y0, m - 1);
        gcd_fold(acc, &resultant_int(&a, &b))
    })
}

/// Content of the coefficient of `y^n`, a polynomial in `x`.
fn y_leading_content(nz: &Normalized) -> BigInt {
    nz.g
        .terms()
        .filter(|(m, _)| m.0[1] == nz.n)
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
}

/// Gcd of several nonzero maximal minors (and integer combinations of them)
/// of the Gao matrix with one kernel-supporting column removed. Every prime
/// at which the rank drops divides it.
fn minor_gcd(nz: &Normalized, opts: &BadnessOptions) -> Result<BigInt> {
    let mat = gao_matrix(nz);
    let cols = mat.first().map_or(0, |r| r.len());
    let kernel = nullspace_int(&mat, cols);
    if kernel.len() != 1 {
        return Err(Error::Internal("Gao system of an absolutely irreducible polynomial must have corank 1".into()));
    }
    let j = kernel[0].iter().position(|v| !v.is_zero()).expect("nonzero kernel vector");
    let reduced: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect())
        .collect();
    let r = cols - 1;
    if r == 0 {
        return Ok(BigInt::one());
    }
    let mut g = BigInt::zero();
    for q in [2_305_843_009_213_693_951u64, 4_611_686_018_427_387_847] {
        let mut pm = PrimeMatrix::from_rows_big(q, &reduced).clone();
        let t = transpose(&reduced);
        let mut tm = PrimeMatrix::from_rows_big(q, &t);
        let _ = pm.echelon();
        let piv = tm.echelon();
        if piv.len() == r {
            // pivot columns of the transpose are independent rows of `reduced`
            let rows: Vec<Vec<BigInt>> = piv.iter().map(|&(_, c)| reduced[c].clone()).collect();
            g = det_int(&rows);
            break;
        }
    }
    if g.is_zero() {
        return Err(Error::Internal("no nonzero maximal minor found".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tries = 0;
    let mut added = 0;
    while added < opts.extra_minors && tries < 4 * opts.extra_minors + 4 {
        tries += 1;
        let u: Vec<Vec<i64>> = (0..r).map(|_| (0..reduced.len()).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let prod: Vec<Vec<BigInt>> = u
            .iter()
            .map(|urow| {
                (0..r)
                    .map(|c| {
                        urow.iter()
                            .zip(&reduced)
                            .filter(|(&w, _)| w != 0)
                            .fold(BigInt::zero(), |s, (&w, row)| s + &row[c] * w)
                    })
                    .collect()
            })
            .collect();
        let d = det_int(&prod);
        if !d.is_zero() {
            g = g.gcd(&d);
            added += 1;
        }
    }
    Ok(g)
}

fn transpose(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Bad primes of a bivariate integer polynomial: primes `p > 27 d^4` whose
/// reduction is not absolutely irreducible. Candidates are the prime divisors
/// of `lc_x * cont(lc_y) * gcd(discriminant values) * gcd(maximal minors)`,
/// a product that every bad prime must divide; each candidate above the
/// threshold is then tested directly.
pub fn bad_primes(f: &IntPoly, opts: &BadnessOptions) -> Result<BadnessReport> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let threshold = 27 * (d as u64).pow(4);
    let irreducible = matches!(factor_count(f, Field::Rational)?, Factorization::Factors(1));
    let mut report = BadnessReport {
        f: f.clone(),
        d,
        threshold,
        absolutely_irreducible: irreducible,
        candidate_primes: Vec::new(),
        unfactored: None,
        bad_primes: Vec::new(),
    };
    if !irreducible {
        return Ok(report);
    }
    let nz = normalize(f, Field::Rational)?;
    debug_assert!(squarefree(&nz, Field::Rational));
    let product = leading_x_coeff(&nz) * y_leading_content(&nz) * discriminant_gcd(&nz) * minor_gcd(&nz, opts)?;
    let (primes, cofactor) = factor_partial(product.magnitude(), opts.trial_limit);
    report.candidate_primes = primes.iter().map(|p| p.to_u64().expect("factored primes fit in u64")).collect();
    if !cofactor.is_one() {
        report.unfactored = Some(cofactor);
    }
    for &p in &report.candidate_primes {
        if p > threshold && !reduction_absolutely_irreducible(f, p)? {
            report.bad_primes.push(p);
        }
    }
    Ok(report)
}
