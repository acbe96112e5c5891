//! Brute-force point counting: N_aff(f, B) over boxes and N(X, B) over
//! canonical projective representatives, plus the trivial counting bound.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Cap on the number of candidate points a single enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkLimit(pub u128);

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit(1_000_000_000)
    }
}

impl WorkLimit {
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.0 {
            Err(Error::WorkLimit { needed, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    pub coords: Vec<i64>,
}

/// Primitive integer tuple whose first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<i64>,
}

impl ProjPoint {
    /// Canonicalizes: divides by the gcd and fixes the sign.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let g = coords.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return Err(Error::Precondition("the zero vector is not a projective point".into()));
        }
        let neg = coords.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0);
        let s = if neg { -g } else { g };
        Ok(ProjPoint { coords: coords.into_iter().map(|c| c / s).collect() })
    }

    /// Wraps coordinates already known to be canonical.
    pub fn from_canonical(coords: Vec<i64>) -> Self {
        debug_assert!(Self::new(coords.clone()).is_ok_and(|p| p.coords == coords));
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn height(&self) -> u64 {
        height(&self.coords)
    }
}

/// Max absolute coordinate.
pub fn height(coords: &[i64]) -> u64 {
    coords.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: u64,
    pub bound: u64,
    pub mode: CountMode,
    pub points: Option<Vec<Vec<i64>>>,
}

/// Number of candidates visited by an affine scan of `[-B, B]^n`.
pub fn affine_candidates(n: usize, b: u64) -> u128 {
    (2 * b as u128 + 1).saturating_pow(n as u32)
}

/// Number of candidates visited by a projective scan in `n` homogeneous
/// coordinates (before the gcd filter).
pub fn projective_candidates(n: usize, b: u64) -> u128 {
    (0..n).fold(0u128, |acc, i| acc.saturating_add((b as u128).saturating_mul(affine_candidates(n - 1 - i, b))))
}

/// Visits `[-b, b]^n` in lexicographic order.
pub fn visit_box<F>(n: usize, b: u64, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let b = b as i64;
    let mut x = vec![-b; n];
    loop {
        f(&x)?;
        let mut i = n;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
        }
    }
}

/// Visits canonical projective representatives of height at most `b` in `n`
/// homogeneous coordinates: grouped by the position of the first nonzero
/// coordinate, then lexicographically.
pub fn visit_projective<F>(n: usize, b: u64, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let mut x = vec![0i64; n];
    for lead in 0..n {
        for v in 1..=b as i64 {
            for c in x.iter_mut() {
                *c = 0;
            }
            x[lead] = v;
            let rest = n - lead - 1;
            visit_box(rest, b, |tail| {
                let g = tail.iter().fold(v, |g, &t| g.gcd(&t));
                if g != 1 {
                    return ControlFlow::Continue(());
                }
                x[lead + 1..].copy_from_slice(tail);
                f(&x)
            })?;
        }
    }
    ControlFlow::Continue(())
}

/// Exhaustive count of integer zeros of `f` in `[-B, B]^n`.
pub fn enumerate_affine(f: &IntPoly, b: u64, limit: WorkLimit, retain: bool) -> Result<CountResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    limit.check(affine_candidates(n, b))?;
    let mut count = 0u64;
    let mut pts = Vec::new();
    let _ = visit_box(n, b, |x| {
        if f.eval_i64(x).is_zero() {
            count += 1;
            if retain {
                pts.push(x.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(CountResult { count, bound: b, mode: CountMode::Affine, points: retain.then_some(pts) })
}

/// Exhaustive count of projective zeros of the form `f` with height at most `B`.
pub fn enumerate_projective(f: &IntPoly, b: u64, limit: WorkLimit, retain: bool) -> Result<CountResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    common_zeros_projective(core::slice::from_ref(f), b, limit, retain)
}

/// Projective points of height at most `B` on which every form vanishes.
pub fn common_zeros_projective(fs: &[IntPoly], b: u64, limit: WorkLimit, retain: bool) -> Result<CountResult> {
    let n = fs[0].nvars();
    limit.check(projective_candidates(n, b))?;
    let mut count = 0u64;
    let mut pts = Vec::new();
    let _ = visit_projective(n, b, |x| {
        if fs.iter().all(|f| f.eval_i64(x).is_zero()) {
            count += 1;
            if retain {
                pts.push(x.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(CountResult { count, bound: b, mode: CountMode::Projective, points: retain.then_some(pts) })
}

/// Common integer zeros of several polynomials in `[-B, B]^n`.
pub fn common_zeros_affine(fs: &[IntPoly], b: u64, limit: WorkLimit, retain: bool) -> Result<CountResult> {
    let n = fs[0].nvars();
    limit.check(affine_candidates(n, b))?;
    let mut count = 0u64;
    let mut pts = Vec::new();
    let _ = visit_box(n, b, |x| {
        if fs.iter().all(|f| f.eval_i64(x).is_zero()) {
            count += 1;
            if retain {
                pts.push(x.to_vec());
            }
        }
        ControlFlow::Continue(())
    });
    Ok(CountResult { count, bound: b, mode: CountMode::Affine, points: retain.then_some(pts) })
}

/// `d (2B+1)^m`.
pub fn schwarz_zippel_bound(d: u32, m: u32, b: u64) -> BigUint {
    BigUint::from(d) * num_traits::pow(BigUint::from(2 * b + 1), m as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzZippelReport {
    pub bound: BigUint,
    pub count: u64,
    pub holds: bool,
}

/// Counts zeros of the hypersurface `f = 0` in the box and compares with
/// `d (2B+1)^(n-1)`.
pub fn check_schwarz_zippel(f: &IntPoly, b: u64, limit: WorkLimit) -> Result<SchwarzZippelReport> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let bound = schwarz_zippel_bound(d, f.nvars() as u32 - 1, b);
    let count = enumerate_affine(f, b, limit, false)?.count;
    Ok(SchwarzZippelReport { holds: BigUint::from(count) <= bound, bound, count })
}

/// An integer point with `|a_i| <= d` where `f` does not vanish. Coordinates
/// are tried in the order 0, 1, -1, 2, -2, ...
pub fn find_point_off_variety(f: &IntPoly, d: u32) -> Result<AffinePoint> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vals: Vec<i64> = core::iter::once(0)
        .chain((1..=d as i64).flat_map(|k| [k, -k]))
        .collect();
    let n = f.nvars();
    let mut idx = vec![0usize; n];
    let mut x = vec![0i64; n];
    loop {
        for (xi, &k) in x.iter_mut().zip(&idx) {
            *xi = vals[k];
        }
        if !f.eval_i64(&x).is_zero() {
            return Ok(AffinePoint { coords: x });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Err(Error::Internal("no point off the variety within the box".into()));
            }
            i -= 1;
            if idx[i] + 1 < vals.len() {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
        }
    }
}
