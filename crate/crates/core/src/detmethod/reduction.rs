use alloc::vec;
use alloc::vec::Vec;

use super::padic::multiplicity_mod_p;
use crate::error::{Error, Result};
use crate::irreducibility::{form_absolutely_irreducible, Field};
use crate::pointcount::WorkLimit;
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStats {
    pub p: u64,
    /// F_p-points counted with multiplicity.
    pub n_p: u64,
    /// F_p-points counted once.
    pub points: u64,
    /// Absolute irreducibility of the reduction; `None` when `p` is below the
    /// validity range of the test.
    pub geometrically_integral: Option<bool>,
}

/// Scans `P^2(F_p)` for points of the plane curve `f mod p`.
pub fn reduction_stats(f: &IntPoly, p: u64, limit: WorkLimit) -> Result<ReductionStats> {
    if f.nvars() != 3 {
        return Err(Error::VariableCount { expected: 3, got: f.nvars() });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    limit.check(p as u128 * p as u128 + p as u128 + 1)?;
    let fp = f.reduce_mod_p(p)?;
    if fp.is_zero() {
        return Err(Error::Precondition("f vanishes identically modulo p".into()));
    }
    let mut reps: Vec<Vec<u64>> = vec![vec![0, 0, 1]];
    for b in 0..p {
        reps.push(vec![0, 1, b]);
    }
    for a in 0..p {
        for b in 0..p {
            reps.push(vec![1, a, b]);
        }
    }
    let (mut n_p, mut points) = (0u64, 0u64);
    for pt in &reps {
        if fp.eval(pt) == 0 {
            points += 1;
            n_p += multiplicity_mod_p(f, pt, p)? as u64;
        }
    }
    let geometrically_integral = match form_absolutely_irreducible(f, Field::Prime(p)) {
        Ok(b) => Some(b),
        Err(Error::CharacteristicTooSmall { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ReductionStats { p, n_p, points, geometrically_integral })
}
