use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::poly::{IntPoly, Monomial};

/// Result of the shift `x_i -> x_i + a_i x_last` (`i < last`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingCoeffShift {
    pub shift: Vec<u32>,
    pub shifted: IntPoly,
    /// Coefficient of `x_last^d` in the shifted form, equal to `f(a, 1)`.
    pub lead: BigInt,
    /// `3^((n+1)d) |lead| >= ||f||`.
    pub lead_bound_ok: bool,
    /// `||f'|| <= C(n+d+1, n+1) d^(n+1) ||f||`.
    pub norm_bound_ok: bool,
}

/// Finds the first shift vector `a` in `[0, d]^(n+1)`, ordered by max entry
/// then lexicographically, whose value `|f(a, 1)|` is at least
/// `3^(-(n+1)d) ||f||`, and applies it.
pub fn normalize_leading_coeff(f: &IntPoly) -> Result<LeadingCoeffShift> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let nv = f.nvars();
    if nv < 2 {
        return Err(Error::VariableCount { expected: 2, got: nv });
    }
    let k = nv - 1;
    let norm = BigInt::from(f.coeff_norm());
    let scale = num_traits::pow(BigInt::from(3), k * d as usize);
    let mut found = None;
    'outer: for t in 0..=d {
        let mut a = vec![0u32; k];
        loop {
            if a.contains(&t) {
                let mut pt: Vec<i64> = a.iter().map(|&x| x as i64).collect();
                pt.push(1);
                let v = f.eval_i64(&pt);
                if &scale * v.abs() >= norm {
                    found = Some((a.clone(), v));
                    break 'outer;
                }
            }
            let Some(i) = (0..k).rev().find(|&i| a[i] < t) else { break };
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
        }
    }
    let (shift, lead) = found.ok_or_else(|| Error::Internal("no admissible shift in [0, d]".into()))?;
    let subs: Vec<IntPoly> = (0..nv)
        .map(|i| {
            let mut p = IntPoly::var(nv, i);
            if i < k && shift[i] > 0 {
                p.add_term(Monomial::var(nv, k), BigInt::from(shift[i]));
            }
            p
        })
        .collect();
    let shifted = f.compose(&subs);
    debug_assert_eq!(shifted.coeff(&Monomial(((0..nv).map(|i| if i == k { d } else { 0 })).collect())), lead);
    let n1 = k as u64;
    let growth = binomial(n1 + d as u64, n1) * num_traits::pow(BigUint::from(d), k) * f.coeff_norm();
    Ok(LeadingCoeffShift {
        lead_bound_ok: scale * lead.abs() >= norm,
        norm_bound_ok: shifted.coeff_norm() <= growth,
        shift,
        shifted,
        lead,
    })
}
