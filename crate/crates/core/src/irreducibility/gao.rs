use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use super::Field;
use crate::error::{Error, Result};
use crate::linalg::{rank_int, PrimeMatrix};
use crate::poly::{IntPoly, Monomial};
use crate::resultant::{resultant_int, resultant_mod_p, specialize_second, specialize_second_mod};

/// Moduli for the fast rank certificate over Q: a corank of 1 modulo any
/// prime already forces corank 1 over Q.
const SCREEN_PRIMES: [u64; 2] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847];

/// `f(x, y + shift*x)`, chosen so that the `x`-leading coefficient is a
/// nonzero constant and `deg_x = deg f = m`.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub g: IntPoly,
    pub shift: u64,
    pub m: u32,
    pub n: u32,
}

fn eval_top(top: &IntPoly, a: u64, field: Field) -> bool {
    match field {
        Field::Rational => !top.eval_i64(&[1, a as i64]).is_zero(),
        Field::Prime(p) => top.eval_mod(&[1, a % p], p) != 0,
    }
}

/// Applies the smallest shift `y -> y + a x` (`a >= 0`) making the degree-`d`
/// part nonzero at `(1, a)`. `f` must already be reduced for the field.
pub fn normalize(f: &IntPoly, field: Field) -> Result<Normalized> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let top = f.degree_part(d);
    let limit = match field {
        Field::Rational => d as u64 + 1,
        Field::Prime(p) => p.min(d as u64 + 1),
    };
    let a = (0..limit)
        .find(|&a| eval_top(&top, a, field))
        .ok_or(Error::CharacteristicTooSmall { p: match field { Field::Prime(p) => p, _ => 0 }, bound: d as u64 })?;
    let g = if a == 0 {
        f.clone()
    } else {
        let x = IntPoly::var(2, 0);
        let y = &IntPoly::var(2, 1) + &x.scale(&BigInt::from(a));
        let g = f.compose(&[x, y]);
        match field {
            Field::Rational => g,
            Field::Prime(p) => g.reduce_mod_p(p)?.lift(),
        }
    };
    let m = g.degree_in(0).unwrap_or(0);
    let n = g.degree_in(1).unwrap_or(0);
    debug_assert_eq!(m, d);
    Ok(Normalized { g, shift: a, m, n })
}

/// `gcd(g, g_x) = 1`, decided through `Res_x(g, g_x)` as a polynomial in `y`
/// of degree at most `(2m-1)n`, evaluated at that many points plus one.
pub(super) fn squarefree(nz: &Normalized, field: Field) -> bool {
    let m = nz.m as usize;
    if m == 1 {
        return true;
    }
    let gx = nz.g.derivative(0);
    let dbound = (2 * nz.m as u64 - 1) * nz.n as u64;
    match field {
        Field::Rational => (0..=dbound).any(|y0| {
            let y0 = BigInt::from(y0);
            let a = specialize_second(&nz.g, &y0, m);
            let b = specialize_second(&gx, &y0, m - 1);
            !resultant_int(&a, &b).is_zero()
        }),
        Field::Prime(p) => (0..=dbound).any(|y0| {
            let a = specialize_second_mod(&nz.g, y0, m, p);
            let b = specialize_second_mod(&gx, y0, m - 1, p);
            resultant_mod_p(&a, &b, p) != 0
        }),
    }
}

/// The linear system `f g_y - g f_y - f h_x + h f_x = 0` for unknown
/// coefficients of `g` (bidegree `<= (m-1, n)`) followed by those of `h`
/// (bidegree `<= (m, n-1)`). Returns the integer matrix with zero rows dropped.
pub fn gao_matrix(nz: &Normalized) -> Vec<Vec<BigInt>> {
    let (m, n) = (nz.m, nz.n);
    let mut cols: Vec<(bool, u32, u32)> = Vec::new();
    for i in 0..m {
        for j in 0..=n {
            cols.push((true, i, j));
        }
    }
    if n > 0 {
        for i in 0..=m {
            for j in 0..n {
                cols.push((false, i, j));
            }
        }
    }
    let mut rows: BTreeMap<(u32, u32), Vec<BigInt>> = BTreeMap::new();
    let ncols = cols.len();
    for (k, &(is_g, i, j)) in cols.iter().enumerate() {
        for (mono, c) in nz.g.terms() {
            let (a, b) = (mono.0[0], mono.0[1]);
            let (factor, key) = if is_g {
                if b + j == 0 {
                    continue;
                }
                (j as i64 - b as i64, (a + i, b + j - 1))
            } else {
                if a + i == 0 {
                    continue;
                }
                (a as i64 - i as i64, (a + i - 1, b + j))
            };
            if factor == 0 {
                continue;
            }
            let row = rows.entry(key).or_insert_with(|| vec![BigInt::zero(); ncols]);
            row[k] += c * BigInt::from(factor);
        }
    }
    rows.into_values().filter(|r| r.iter().any(|v| !v.is_zero())).collect()
}

pub(super) fn corank(nz: &Normalized, field: Field) -> usize {
    let mat = gao_matrix(nz);
    let cols = gao_cols(nz);
    match field {
        Field::Prime(p) => cols - PrimeMatrix::from_rows_big(p, &mat).rank(),
        Field::Rational => {
            for q in SCREEN_PRIMES {
                if cols - PrimeMatrix::from_rows_big(q, &mat).rank() == 1 {
                    return 1;
                }
            }
            cols - rank_int(&mat)
        }
    }
}

pub(super) fn gao_cols(nz: &Normalized) -> usize {
    let (m, n) = (nz.m as usize, nz.n as usize);
    m * (n + 1) + (m + 1) * n
}

/// Residue of the normalized polynomial's `x^m` coefficient, used to detect
/// primes where the normalization degenerates.
pub(super) fn leading_x_coeff(nz: &Normalized) -> BigInt {
    let mut e = Monomial::one(2);
    e.0[0] = nz.m;
    nz.g.coeff(&e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use crate::poly::parse_poly;

    #[test]
    fn screening_moduli_are_prime() {
        assert!(SCREEN_PRIMES.iter().all(|&q| is_prime(q)));
    }

    #[test]
    fn normalization_makes_x_leading_constant() {
        let f = parse_poly("x*y + y^2 + 1", &["x", "y"]).unwrap();
        let nz = normalize(&f, Field::Rational).unwrap();
        // top part xy + y^2 vanishes at (1, 0): shift a = 1 gives x(y+x) + (y+x)^2
        assert_eq!(nz.shift, 1);
        assert_eq!(nz.m, 2);
        assert_eq!(leading_x_coeff(&nz), BigInt::from(2));
    }

    #[test]
    fn product_has_two_solutions() {
        let f = parse_poly("(x - y)*(x + y + 1)", &["x", "y"]).unwrap();
        let nz = normalize(&f, Field::Rational).unwrap();
        assert!(squarefree(&nz, Field::Rational));
        assert_eq!(corank(&nz, Field::Rational), 2);
    }
}
