use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{factorial, isqrt};
use crate::error::{Error, Result};
use crate::linalg::{det_int, normalize_vector, rank_int};
use crate::pointcount::visit_box;
use core::ops::ControlFlow;

/// Maximal minors of the matrix whose rows are `points`, over column subsets
/// in lexicographic order, made primitive with first nonzero entry positive.
pub fn pluecker(points: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let k = points.len();
    let cols = points.first().map_or(0, |p| p.len());
    if k == 0 || k > cols || points.iter().any(|p| p.len() != cols) {
        return Err(Error::Precondition("need 1..=n+1 points of equal length".into()));
    }
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let m: Vec<Vec<BigInt>> = points.iter().map(|p| subset.iter().map(|&c| BigInt::from(p[c])).collect()).collect();
        out.push(det_int(&m));
        // next k-subset of 0..cols in lex order
        let Some(i) = (0..k).rev().find(|&i| subset[i] < cols - k + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    if out.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("points are linearly dependent".into()));
    }
    normalize_vector(&mut out);
    Ok(out)
}

/// `s` linearly independent integer equations in `r > s` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub rows: Vec<Vec<i64>>,
}

impl LinearSystem {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let s = rows.len();
        let r = rows.first().map_or(0, |row| row.len());
        if s == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(Error::Precondition("equations must be nonempty and of equal length".into()));
        }
        if r <= s {
            return Err(Error::Precondition(format!("need more unknowns than equations, got {r} <= {s}")));
        }
        let big: Vec<Vec<BigInt>> = rows.iter().map(|row| row.iter().map(|&a| BigInt::from(a)).collect()).collect();
        if rank_int(&big) != s {
            return Err(Error::Precondition("equations are linearly dependent".into()));
        }
        Ok(LinearSystem { rows })
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    pub fn unknowns(&self) -> usize {
        self.rows[0].len()
    }

    /// Largest absolute coefficient.
    pub fn coeff_bound(&self) -> u64 {
        self.rows.iter().flatten().map(|a| a.unsigned_abs()).max().unwrap_or(0)
    }

    /// Integer part of `sqrt((s-1)! r) * B^(s-1)`.
    pub fn solution_bound(&self) -> BigUint {
        let s = self.equations() as u64;
        let b = BigUint::from(self.coeff_bound());
        let sq = factorial(s - 1) * BigUint::from(self.unknowns()) * num_traits::pow(b, 2 * (s as usize - 1));
        isqrt(&sq)
    }

    fn dot(&self, i: usize, x: &[i64]) -> i128 {
        self.rows[i].iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
    }

    fn is_violating(&self, x: &[i64]) -> bool {
        self.dot(0, x) != 0 && (1..self.equations()).all(|i| self.dot(i, x) == 0)
    }
}

const SHELL_BUDGET: u128 = 1_000_000;

/// A vector violating the first equation, satisfying the others, with every
/// coordinate at most `sqrt((s-1)! r) * B^(s-1)` in absolute value.
///
/// Small boxes are searched shell by shell (by max norm, then by L1 norm,
/// then lexicographically from the top); beyond that a cofactor vector is
/// built from the minors of the satisfied equations.
pub fn small_violating_solution(sys: &LinearSystem) -> Result<Vec<i64>> {
    let r = sys.unknowns();
    let bound = sys.solution_bound();
    let radius = bound.to_u64().unwrap_or(u64::MAX);
    let mut rho = 1u64;
    while rho <= radius && (2 * rho as u128 + 1).checked_pow(r as u32).is_some_and(|c| c <= SHELL_BUDGET) {
        let mut shell: Vec<Vec<i64>> = Vec::new();
        let _ = visit_box(r, rho, |x| {
            if x.iter().any(|c| c.unsigned_abs() == rho) && sys.is_violating(x) {
                shell.push(x.to_vec());
            }
            ControlFlow::Continue(())
        });
        if !shell.is_empty() {
            shell.sort_by(|a, b| {
                let l1 = |v: &[i64]| v.iter().map(|c| c.unsigned_abs()).sum::<u64>();
                l1(a).cmp(&l1(b)).then_with(|| b.cmp(a))
            });
            return Ok(shell.swap_remove(0));
        }
        rho += 1;
    }
    let x = cofactor_solution(sys)?;
    let within = x.iter().all(|c| BigUint::from(c.unsigned_abs()) <= bound);
    if !within || !sys.is_violating(&x) {
        return Err(Error::Internal("cofactor vector misses the guaranteed bound".into()));
    }
    Ok(x)
}

fn cofactor_solution(sys: &LinearSystem) -> Result<Vec<i64>> {
    let s = sys.equations();
    let r = sys.unknowns();
    let big: Vec<Vec<BigInt>> = sys.rows.iter().map(|row| row.iter().map(|&a| BigInt::from(a)).collect()).collect();
    let mut cols: Vec<usize> = (0..s).collect();
    loop {
        let m: Vec<Vec<BigInt>> = big.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        if !det_int(&m).is_zero() {
            // expand along the first row: x_{cols[j]} = (-1)^j * minor(0, j)
            let mut x = vec![BigInt::zero(); r];
            for j in 0..s {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let v = det_int(&minor);
                x[cols[j]] = if j % 2 == 0 { v } else { -v };
            }
            normalize_vector(&mut x);
            return x
                .iter()
                .map(|v| v.to_i64().filter(|c| c.abs() < i64::MAX).ok_or_else(|| Error::Internal("overflow".into())))
                .collect();
        }
        let Some(i) = (0..s).rev().find(|&i| cols[i] < r - s + i) else {
            return Err(Error::Internal("no nonsingular maximal minor".into()));
        };
        cols[i] += 1;
        for j in i + 1..s {
            cols[j] = cols[j - 1] + 1;
        }
    }
}
