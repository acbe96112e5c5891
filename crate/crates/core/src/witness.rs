//! Curves with many integral points of small height.

use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::irreducibility::gao_edge_criterion;
use crate::linalg::{det_int, nullspace_int};
use crate::pointcount::{enumerate_affine, enumerate_projective, visit_box, WorkLimit};
use crate::poly::{parse_poly, IntPoly, Monomial};

/// `x_1^d + ... + x_{n-1}^d + x_n^(d-1) + sum a_i x^i` with exponents
/// `i in [0, q]^n`, `q = (d-1) div n`, vanishing on the grid
/// `[r - q, r]^n` with `r = (d-1) div 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCurve {
    pub d: u32,
    pub n: usize,
    pub f: IntPoly,
    pub grid_radius: i64,
    pub grid_low: i64,
    /// Largest absolute grid coordinate; the height bound used for counting.
    pub bound: u64,
    /// Number of grid points, `(q + 1)^n`.
    pub claimed_count: u64,
    /// Factor by which the structural terms were scaled to clear denominators.
    pub scale: BigInt,
    pub interpolation_det: BigInt,
    pub newton_ok: Option<bool>,
}

fn grid_points(n: usize, low: i64, high: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let w = (high - low) as u64;
    let _ = visit_box(n, w, |x| {
        if x.iter().all(|&c| c >= 0) {
            out.push(x.iter().map(|&c| c + low).collect());
        }
        ControlFlow::Continue(())
    });
    out
}

pub fn build_witness(d: u32, n: usize) -> Result<WitnessCurve> {
    if d < 2 || n < 2 {
        return Err(Error::Precondition(format!("need d >= 2 and n >= 2, got d = {d}, n = {n}")));
    }
    let q = ((d - 1) / n as u32) as i64;
    let r = ((d - 1) / (2 * n as u32)) as i64;
    let low = r - q;
    let grid = grid_points(n, low, r);
    let exps: Vec<Monomial> = grid_points(n, 0, q).into_iter().map(|e| Monomial(e.iter().map(|&c| c as u32).collect())).collect();
    let mut structural = IntPoly::zero(n);
    for i in 0..n - 1 {
        let mut m = Monomial::one(n);
        m.0[i] = d;
        structural.add_term(m, BigInt::from(1));
    }
    let mut m = Monomial::one(n);
    m.0[n - 1] = d - 1;
    structural.add_term(m, BigInt::from(1));

    let vander: Vec<Vec<BigInt>> = grid.iter().map(|x| exps.iter().map(|e| e.eval_i64(x)).collect()).collect();
    let det = det_int(&vander);
    if det.is_zero() {
        return Err(Error::Internal("interpolation matrix is singular".into()));
    }
    let rows: Vec<Vec<BigInt>> = vander
        .iter()
        .zip(&grid)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(structural.eval_i64(x));
            r
        })
        .collect();
    let ns = nullspace_int(&rows, exps.len() + 1);
    let [sol] = ns.as_slice() else {
        return Err(Error::Internal("interpolation system is not uniquely solvable".into()));
    };
    let scale = sol[exps.len()].clone();
    let mut f = structural.scale(&scale);
    for (e, c) in exps.iter().zip(sol) {
        f.add_term(e.clone(), c.clone());
    }
    let f = f.primitive_positive();
    if !grid.iter().all(|x| f.eval_i64(x).is_zero()) {
        return Err(Error::Internal("witness does not vanish on the grid".into()));
    }
    Ok(WitnessCurve {
        d,
        n,
        newton_ok: (n == 2).then(|| gao_edge_criterion(&f)),
        f,
        grid_radius: r,
        grid_low: low,
        bound: (-low).max(r) as u64,
        claimed_count: grid.len() as u64,
        scale,
        interpolation_det: det,
    })
}

/// Plane curves for degrees 1 and 2: the line `x2 = 0` and the conic
/// `x0 x2 = x1^2`, both through coordinate points, counted at height 1.
pub fn special_projective_curve(d: u32) -> Option<IntPoly> {
    let v = ["x0", "x1", "x2"];
    match d {
        1 => parse_poly("x2", &v).ok(),
        2 => parse_poly("x0*x2 - x1^2", &v).ok(),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundReport {
    pub d: u32,
    pub bound: u64,
    pub count: u64,
    /// The real lower bound being checked.
    pub required: f64,
    pub floor_ok: bool,
    /// `(floor((d-1)/2) + 1)^2 + 1` in the projective case with `d >= 3`.
    pub grid_required: Option<u64>,
    pub pass: bool,
}

/// Counts the projective closure of the witness (or the special line or
/// conic for `d <= 2`) and checks `N >= d^2 B^(2/d) / 5`, tested exactly as
/// `(5N)^d >= d^(2d) B^2`.
pub fn verify_projective_lower_bound(d: u32, limit: WorkLimit) -> Result<LowerBoundReport> {
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let (form, bound) = match special_projective_curve(d) {
        Some(c) => (c, 1),
        None => {
            let w = build_witness(d, 2)?;
            (w.f.homogenize(2), w.bound)
        }
    };
    let count = enumerate_projective(&form, bound, limit, false)?.count;
    let lhs = num_traits::pow(BigInt::from(5 * count), d as usize);
    let rhs = num_traits::pow(BigInt::from(d), 2 * d as usize) * BigInt::from(bound) * BigInt::from(bound);
    let floor_ok = lhs >= rhs;
    let grid_required = (d >= 3).then(|| {
        let g = ((d - 1) / 2) as u64 + 1;
        g * g + 1
    });
    let pass = floor_ok && grid_required.is_none_or(|g| count >= g);
    Ok(LowerBoundReport {
        d,
        bound,
        count,
        required: (d * d) as f64 * libm::pow(bound as f64, 2.0 / d as f64) / 5.0,
        floor_ok,
        grid_required,
        pass,
    })
}

/// Affine count of the bivariate witness against
/// `d^2 B^(1/d) log B / (4 log d)`.
pub fn verify_affine_lower_bound(w: &WitnessCurve, limit: WorkLimit) -> Result<LowerBoundReport> {
    if w.n != 2 || w.d < 3 {
        return Err(Error::Precondition("affine lower bound needs n = 2 and d >= 3".into()));
    }
    let count = enumerate_affine(&w.f, w.bound, limit, false)?.count;
    let (d, b) = (w.d as f64, w.bound as f64);
    let required = d * d * libm::pow(b, 1.0 / d) * libm::log(b) / (4.0 * libm::log(d));
    let floor_ok = count as f64 >= required;
    let grid_required = Some(w.claimed_count);
    Ok(LowerBoundReport {
        d: w.d,
        bound: w.bound,
        count,
        required,
        floor_ok,
        grid_required,
        pass: floor_ok && count >= w.claimed_count,
    })
}
