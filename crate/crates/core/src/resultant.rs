//! Sylvester resultants, over polynomial rings and numerically.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::{det_int, det_poly, PrimeMatrix};
use crate::poly::{IntPoly, Monomial};

/// Coefficients of `f` as a polynomial in `var`, lowest degree first; each
/// coefficient lives in the same ring with `var` absent.
pub fn coefficients_in(f: &IntPoly, var: usize) -> Vec<IntPoly> {
    let deg = f.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![IntPoly::zero(f.nvars()); deg + 1];
    for (m, c) in f.terms() {
        let k = m.0[var] as usize;
        let mut e = m.clone();
        e.0[var] = 0;
        out[k].add_term(e, c.clone());
    }
    out
}

fn sylvester<T: Clone>(a: &[T], b: &[T], zero: T) -> Vec<Vec<T>> {
    // a, b lowest degree first
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    rows
}

/// Resultant of `f` and `g` with respect to `var`. The result has the same
/// number of variables, with `var` absent.
pub fn resultant(f: &IntPoly, g: &IntPoly, var: usize) -> IntPoly {
    let a = coefficients_in(f, var);
    let b = coefficients_in(g, var);
    let nv = f.nvars();
    if f.is_zero() || g.is_zero() {
        return IntPoly::zero(nv);
    }
    if a.len() == 1 && b.len() == 1 {
        return IntPoly::one(nv);
    }
    det_poly(&sylvester(&a, &b, IntPoly::zero(nv)))
}

/// Resultant of two univariate integer polynomials (coefficients lowest first,
/// leading coefficients taken as given).
pub fn resultant_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    if a.len() <= 1 && b.len() <= 1 {
        return BigInt::from(1);
    }
    det_int(&sylvester(a, b, BigInt::zero()))
}

/// Resultant modulo p of two univariate polynomials given by residues.
pub fn resultant_mod_p(a: &[u64], b: &[u64], p: u64) -> u64 {
    if a.len() <= 1 && b.len() <= 1 {
        return 1 % p;
    }
    let rows = sylvester(a, b, 0u64);
    let mut m = PrimeMatrix::zeros(p, rows.len(), rows.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m.det()
}

/// Univariate coefficient list of a bivariate `f(x, y0)` in `x` (variable 0)
/// after fixing `y = y0`, lowest degree first, padded to `deg_x + 1` entries.
pub fn specialize_second(f: &IntPoly, y0: &BigInt, deg_x: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); deg_x + 1];
    for (m, c) in f.terms() {
        out[m.0[0] as usize] += c * num_traits::pow(y0.clone(), m.0[1] as usize);
    }
    out
}

/// Same as [`specialize_second`] but modulo p.
pub fn specialize_second_mod(f: &IntPoly, y0: u64, deg_x: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; deg_x + 1];
    for (m, c) in f.terms() {
        let v = crate::arith::mul_mod(crate::arith::mod_u64(c, p), crate::arith::pow_mod(y0, m.0[1] as u64, p), p);
        let slot = &mut out[m.0[0] as usize];
        *slot = (*slot + v) % p;
    }
    out
}

/// Univariate polynomial in variable `var` with integer coefficients as an
/// `IntPoly` in `nvars` variables.
pub fn univariate(nvars: usize, var: usize, coeffs: &[BigInt]) -> IntPoly {
    let mut p = IntPoly::zero(nvars);
    for (k, c) in coeffs.iter().enumerate() {
        let mut m = Monomial::one(nvars);
        m.0[var] = k as u32;
        p.add_term(m, c.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn circle_line() {
        let v = ["x", "y"];
        let f = parse_poly("x^2 + y^2 - 1", &v).unwrap();
        let g = parse_poly("x - y", &v).unwrap();
        let r = resultant(&f, &g, 0);
        // substitute x = y: 2y^2 - 1
        assert_eq!(r, parse_poly("2*y^2 - 1", &v).unwrap());
    }

    #[test]
    fn numeric_matches_symbolic() {
        let a: Vec<BigInt> = [-2, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        let b: Vec<BigInt> = [-3, 1].iter().map(|&v| BigInt::from(v)).collect();
        // Res(x^2 - 2, x - 3) = 3^2 - 2 = 7 up to sign
        assert_eq!(resultant_int(&a, &b), BigInt::from(7));
        assert_eq!(resultant_mod_p(&[3, 0, 1], &[2, 1], 5), 2);
    }
}
