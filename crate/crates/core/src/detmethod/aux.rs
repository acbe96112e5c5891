use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::irreducibility::{absolutely_irreducible, form_absolutely_irreducible, Field};
use crate::linalg::{nullspace_int, PrimeMatrix};
use crate::pointcount::{enumerate_affine, enumerate_projective, WorkLimit};
use crate::poly::{monomials_of_degree, monomials_up_to, IntPoly, Monomial};

const SCREEN_PRIME: u64 = 2_305_843_009_213_693_951;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxMode {
    Affine,
    Projective,
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct AuxOptions {
    /// Largest degree tried; defaults to `#points + 1`, where a product of
    /// linear forms through the points always works.
    pub max_degree: Option<u32>,
    pub limit: WorkLimit,
}


/// An auxiliary polynomial `g` of minimal degree `M` vanishing on every
/// point of height at most `B` on `f = 0` and not divisible by `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxCertificate {
    pub f: IntPoly,
    pub bound: u64,
    pub mode: AuxMode,
    pub degree: u32,
    pub g: IntPoly,
    pub points: Vec<Vec<i64>>,
    /// `deg(f) * M` for plane curves.
    pub bezout_bound: Option<u64>,
}

impl AuxCertificate {
    pub fn s_points(&self) -> usize {
        self.points.len()
    }
}

fn is_plane_curve(f: &IntPoly, mode: AuxMode) -> bool {
    matches!((mode, f.nvars()), (AuxMode::Affine, 2) | (AuxMode::Projective, 3))
}

/// Candidate monomials of degree `m` (projective) or `<= m` (affine) that are
/// not divisible by the leading monomial of `f`. Every `g` is congruent
/// modulo `f` to a unique combination of these, so a nonzero vanishing
/// combination exists exactly when some vanishing `g` is not a multiple of `f`.
fn standard_monomials(f: &IntPoly, mode: AuxMode, m: u32) -> Vec<Monomial> {
    let lm = f.leading_term().expect("nonzero").0.clone();
    let all = match mode {
        AuxMode::Projective => monomials_of_degree(f.nvars(), m),
        AuxMode::Affine => monomials_up_to(f.nvars(), m),
    };
    all.into_iter().filter(|mono| !lm.divides(mono)).collect()
}

fn to_poly(nvars: usize, monos: &[Monomial], v: &[BigInt]) -> IntPoly {
    let mut g = IntPoly::zero(nvars);
    for (m, c) in monos.iter().zip(v) {
        g.add_term(m.clone(), c.clone());
    }
    g
}

fn vanishes_on(g: &IntPoly, points: &[Vec<i64>]) -> bool {
    points.iter().all(|x| g.eval_i64(x).is_zero())
}

/// Kernel vectors of the evaluation matrix, or empty if none.
fn vanishing_combinations(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let pm = PrimeMatrix::from_rows_big(SCREEN_PRIME, rows);
    if pm.rank() == cols {
        return Vec::new();
    }
    // independent rows modulo the screening prime are independent over Q
    let transposed: Vec<Vec<BigInt>> = (0..cols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    let mut tm = PrimeMatrix::from_rows_big(SCREEN_PRIME, &transposed);
    let basis_rows: Vec<Vec<BigInt>> = tm.echelon().iter().map(|&(_, c)| rows[c].clone()).collect();
    let ns = nullspace_int(&basis_rows, cols);
    let full_ok = ns.iter().all(|v| {
        rows.iter().all(|r| r.iter().zip(v).fold(BigInt::zero(), |s, (a, b)| s + a * b).is_zero())
    });
    if full_ok {
        ns
    } else {
        nullspace_int(rows, cols)
    }
}

/// Searches `M = 0, 1, 2, ...` for the least degree admitting an auxiliary
/// polynomial, and returns it with a self-checked certificate.
pub fn aux_polynomial(f: &IntPoly, bound: u64, mode: AuxMode, opts: &AuxOptions) -> Result<AuxCertificate> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::Constant);
    }
    if !f.is_primitive() {
        return Err(Error::Precondition("f must be primitive".into()));
    }
    if mode == AuxMode::Projective && !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if is_plane_curve(f, mode) {
        let irreducible = match mode {
            AuxMode::Affine => absolutely_irreducible(f, Field::Rational).unwrap_or(false),
            AuxMode::Projective => form_absolutely_irreducible(f, Field::Rational)?,
        };
        if !irreducible {
            return Err(Error::Precondition("f must be absolutely irreducible".into()));
        }
    }
    let points = match mode {
        AuxMode::Affine => enumerate_affine(f, bound, opts.limit, true)?,
        AuxMode::Projective => enumerate_projective(f, bound, opts.limit, true)?,
    }
    .points
    .expect("retained");
    let cap = opts.max_degree.unwrap_or(points.len() as u32 + 1);
    let n = f.nvars();
    for m in 0..=cap {
        let monos = standard_monomials(f, mode, m);
        if monos.is_empty() {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = points.iter().map(|x| monos.iter().map(|mo| mo.eval_i64(x)).collect()).collect();
        let mut candidates: Vec<IntPoly> = if rows.is_empty() {
            monos.iter().map(|mo| IntPoly::term(mo.clone(), 1)).collect()
        } else {
            vanishing_combinations(&rows, monos.len()).iter().map(|v| to_poly(n, &monos, v)).collect()
        };
        if candidates.is_empty() {
            continue;
        }
        candidates.sort_by(|a, b| a.leading_term().map(|t| t.0).cmp(&b.leading_term().map(|t| t.0)));
        let g = candidates.swap_remove(0).primitive_positive();
        let cert = AuxCertificate {
            f: f.clone(),
            bound,
            mode,
            degree: m,
            g,
            bezout_bound: is_plane_curve(f, mode).then_some(d as u64 * m as u64),
            points,
        };
        validate_certificate(&cert)?;
        return Ok(cert);
    }
    Err(Error::Exhausted(format!(
        "no auxiliary polynomial of degree <= {cap} for {} points",
        points.len()
    )))
}

/// Re-checks a certificate: `g != 0`, `deg g = M`, `f` does not divide `g`,
/// and `g` vanishes at every listed point, each of which lies on `f = 0`.
pub fn validate_certificate(cert: &AuxCertificate) -> Result<()> {
    let fail = |msg: &str| Err(Error::Internal(format!("certificate check failed: {msg}")));
    if cert.g.is_zero() {
        return fail("g is zero");
    }
    if cert.g.degree() != Some(cert.degree) {
        return fail("deg g differs from M");
    }
    if cert.mode == AuxMode::Projective && !cert.g.is_homogeneous() {
        return fail("g is not homogeneous");
    }
    if cert.g.divisible_by(&cert.f) {
        return fail("f divides g");
    }
    if !vanishes_on(&cert.f, &cert.points) {
        return fail("a listed point is not on f = 0");
    }
    if !vanishes_on(&cert.g, &cert.points) {
        return fail("g does not vanish at every point");
    }
    Ok(())
}

/// `#points <= deg(f) * M`, required by Bezout for plane curves without a
/// common component.
pub fn bezout_check(cert: &AuxCertificate) -> Result<bool> {
    if !is_plane_curve(&cert.f, cert.mode) {
        return Err(Error::Precondition("Bezout check needs a plane curve".into()));
    }
    let d = cert.f.degree().unwrap_or(0) as u64;
    Ok(cert.points.len() as u64 <= d * cert.degree as u64)
}
