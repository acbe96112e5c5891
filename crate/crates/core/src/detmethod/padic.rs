use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use super::stalk::StalkProfile;
use crate::arith::{inv_mod, is_prime, mul_mod, valuation};
use crate::error::{Error, Result};
use crate::linalg::det_int;
use crate::poly::IntPoly;
use crate::pointcount::ProjPoint;

/// Points of a hypersurface that all reduce to one F_p-point, together with
/// `s` forms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantInstance {
    pub p: u64,
    pub f: IntPoly,
    pub points: Vec<ProjPoint>,
    pub forms: Vec<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicReport {
    pub s: usize,
    pub n: u32,
    pub mu: u32,
    /// The common reduction, scaled so its first nonzero coordinate is 1.
    pub reduction: Vec<u64>,
    pub det: BigInt,
    /// `None` when the determinant vanishes.
    pub valuation: Option<u32>,
    pub predicted: u64,
    pub pass: bool,
}

fn reduce_point(x: &[i64], p: u64) -> Option<Vec<u64>> {
    let r: Vec<u64> = x.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let lead = *r.iter().find(|&&c| c != 0)?;
    let inv = inv_mod(lead, p);
    Some(r.iter().map(|&c| mul_mod(c, inv, p)).collect())
}

/// Multiplicity of the hypersurface `f mod p` at the F_p-point `pt`: the
/// lowest degree of the expansion at `pt` in the affine chart of its first
/// nonzero coordinate. Zero when the point is off the reduction.
pub fn multiplicity_mod_p(f: &IntPoly, pt: &[u64], p: u64) -> Result<u32> {
    let fp = f.reduce_mod_p(p)?;
    if fp.is_zero() {
        return Err(Error::Precondition(format!("f vanishes identically modulo {p}")));
    }
    let n = f.nvars();
    let chart = pt.iter().position(|&c| c != 0).ok_or_else(|| Error::Precondition("zero point".into()))?;
    let inv = inv_mod(pt[chart], p);
    let subs: Vec<IntPoly> = (0..n)
        .map(|i| {
            let c = BigInt::from(mul_mod(pt[i], inv, p));
            if i == chart {
                IntPoly::constant(n, 1)
            } else {
                &IntPoly::var(n, i) + &IntPoly::constant(n, c)
            }
        })
        .collect();
    let local = fp.lift().compose(&subs).reduce_mod_p(p)?;
    Ok(local.terms().map(|(m, _)| m.degree()).min().unwrap_or(0))
}

/// Checks that `p^A(s)` divides `det(F_j(xi_i))`, where `A` comes from the
/// multiplicity of the common reduction point.
pub fn verify_padic_divisibility(inst: &DeterminantInstance) -> Result<PadicReport> {
    let p = inst.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let s = inst.points.len();
    if s == 0 || inst.forms.len() != s {
        return Err(Error::Precondition(format!("{} points but {} forms", s, inst.forms.len())));
    }
    let nv = inst.f.nvars();
    if nv < 3 || !inst.f.is_homogeneous() {
        return Err(Error::Precondition("f must be a form in at least 3 variables".into()));
    }
    let deg = inst.forms[0].degree();
    for g in &inst.forms {
        if g.nvars() != nv || !g.is_homogeneous() || g.degree() != deg {
            return Err(Error::Precondition("forms must be homogeneous of one common degree".into()));
        }
    }
    let mut reduction: Option<Vec<u64>> = None;
    for pt in &inst.points {
        if pt.coords().len() != nv {
            return Err(Error::VariableCount { expected: nv, got: pt.coords().len() });
        }
        if !inst.f.eval_i64(pt.coords()).is_zero() {
            return Err(Error::Precondition(format!("point {:?} is not on f = 0", pt.coords())));
        }
        let r = reduce_point(pt.coords(), p).ok_or_else(|| Error::Precondition("point vanishes mod p".into()))?;
        match &reduction {
            None => reduction = Some(r),
            Some(r0) if *r0 != r => {
                return Err(Error::Precondition(format!("points {:?} do not share one reduction mod {p}", pt.coords())))
            }
            _ => {}
        }
    }
    let reduction = reduction.expect("s >= 1");
    let mu = multiplicity_mod_p(&inst.f, &reduction, p)?;
    debug_assert!(mu >= 1);
    let n = (nv - 2) as u32;
    let predicted = StalkProfile::new(n, mu).partial_sum(s as u64);
    let rows: Vec<Vec<BigInt>> = inst
        .points
        .iter()
        .map(|pt| inst.forms.iter().map(|g| g.eval_i64(pt.coords())).collect())
        .collect();
    let det = det_int(&rows);
    let v = valuation(&det, p);
    let pass = v.is_none_or(|v| v as u64 >= predicted);
    Ok(PadicReport { s, n, mu, reduction, det, valuation: v, predicted, pass })
}
