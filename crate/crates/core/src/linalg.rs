//! Exact linear algebra: elimination mod p, fraction-free (Bareiss)
//! elimination over the integers and over polynomial rings, and rational
//! nullspaces returned as primitive integer vectors.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{inv_mod, mod_u64, mul_mod};
use crate::poly::IntPoly;

/// Dense matrix over F_p with canonical residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        PrimeMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows_i64(p: u64, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u64);
            }
        }
        m
    }

    pub fn from_rows_big(p: u64, rows: &[Vec<BigInt>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, mod_u64(v, p));
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Row echelon form in place. Returns `(original row index, pivot column)`
    /// for each pivot; those original rows are linearly independent.
    pub fn echelon(&mut self) -> Vec<(usize, usize)> {
        let (p, cols) = (self.p, self.cols);
        let mut perm: Vec<usize> = (0..self.rows).collect();
        let mut out = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
                perm.swap(piv, r);
            }
            let inv = inv_mod(self.get(r, c), p);
            for k in c..cols {
                let v = mul_mod(self.get(r, k), inv, p);
                self.set(r, k, v);
            }
            for i in r + 1..self.rows {
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for k in c..cols {
                    let v = (self.get(i, k) + p - mul_mod(factor, self.get(r, k), p)) % p;
                    self.data[i * cols + k] = v;
                }
            }
            out.push((perm[r], c));
            r += 1;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let (p, n) = (self.p, self.rows);
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                for k in 0..n {
                    m.data.swap(piv * n + k, c * n + k);
                }
                det = (p - det) % p;
            }
            let pv = m.get(c, c);
            det = mul_mod(det, pv, p);
            let inv = inv_mod(pv, p);
            for i in c + 1..n {
                let f = mul_mod(m.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for k in c..n {
                    let v = (m.get(i, k) + p - mul_mod(f, m.get(c, k), p)) % p;
                    m.data[i * n + k] = v;
                }
            }
        }
        det
    }
}

/// Rank of a matrix over F_p.
pub fn rank_mod_p(m: &PrimeMatrix) -> usize {
    m.rank()
}

/// Dense matrix over Q with entries in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RationalMatrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flatten().map(|v| BigRational::from_integer(v.clone())).collect();
        RationalMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    /// Clears denominators row by row.
    pub fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect()
    }
}

/// Basis of the kernel over Q, each vector primitive with first nonzero entry positive.
pub fn nullspace_rational(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    nullspace_int(&m.to_integer_rows(), m.cols)
}

/// Fraction-free row echelon form in place. Returns the pivot columns and
/// whether an odd number of row swaps occurred.
pub fn bareiss_echelon(a: &mut [Vec<BigInt>]) -> (Vec<usize>, bool) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if piv != r {
            a.swap(piv, r);
            odd = !odd;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let pv = prow[c].clone();
        for row in rest.iter_mut() {
            let f = core::mem::take(&mut row[c]);
            for k in c + 1..cols {
                let mut v = &pv * &row[k];
                if !f.is_zero() && !prow[k].is_zero() {
                    v -= &f * &prow[k];
                }
                if !prev.is_one() {
                    v /= &prev;
                }
                row[k] = v;
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

pub fn rank_int(m: &[Vec<BigInt>]) -> usize {
    let mut a = m.to_vec();
    bareiss_echelon(&mut a).0.len()
}

pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert_eq!(m[0].len(), n);
    let mut a = m.to_vec();
    let (piv, odd) = bareiss_echelon(&mut a);
    if piv.len() < n {
        return BigInt::zero();
    }
    let d = a[n - 1][n - 1].clone();
    if odd {
        -d
    } else {
        d
    }
}

/// Determinant modulo p of an integer matrix.
pub fn det_mod_p(m: &[Vec<BigInt>], p: u64) -> u64 {
    PrimeMatrix::from_rows_big(p, m).det()
}

/// Makes an integer vector primitive with first nonzero entry positive.
pub fn normalize_vector(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if neg {
            *x = -core::mem::take(x);
        }
    }
}

/// Kernel basis of an integer matrix with `cols` columns, one vector per free
/// column, each primitive with first nonzero entry positive.
pub fn nullspace_int(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a = m.to_vec();
    let (pivots, _) = bareiss_echelon(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter().map(|&j| kernel_vector_for_free(&a, &pivots, j, cols)).collect()
}

fn kernel_vector_for_free(e: &[Vec<BigInt>], pivots: &[usize], j: usize, cols: usize) -> Vec<BigInt> {
    let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
    x[j] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let mut s = BigRational::zero();
        for k in pc + 1..cols {
            if !x[k].is_zero() && !e[i][k].is_zero() {
                s += &x[k] * &e[i][k];
            }
        }
        x[pc] = -s / &e[i][pc];
    }
    let l = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut v: Vec<BigInt> = x.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    normalize_vector(&mut v);
    v
}

/// One kernel vector using the given free column, or `None` if that column
/// is a pivot column.
pub fn kernel_vector(m: &[Vec<BigInt>], cols: usize, free_col: usize) -> Option<Vec<BigInt>> {
    let mut a = m.to_vec();
    let (pivots, _) = bareiss_echelon(&mut a);
    if pivots.contains(&free_col) {
        return None;
    }
    Some(kernel_vector_for_free(&a, &pivots, free_col, cols))
}

/// Determinant of a square matrix with polynomial entries (fraction-free).
pub fn det_poly(m: &[Vec<IntPoly>]) -> IntPoly {
    let n = m.len();
    let nv = m.first().and_then(|r| r.first()).map_or(0, |p| p.nvars());
    if n == 0 {
        return IntPoly::one(nv);
    }
    let mut a = m.to_vec();
    let mut prev = IntPoly::one(nv);
    let mut neg = false;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return IntPoly::zero(nv);
        };
        if piv != c {
            a.swap(piv, c);
            neg = !neg;
        }
        for i in c + 1..n {
            for k in c + 1..n {
                let v = &(&a[c][c] * &a[i][k]) - &(&a[i][c] * &a[c][k]);
                a[i][k] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = IntPoly::zero(nv);
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// Matrix-vector product check `m * v == 0`.
pub fn is_kernel_vector(m: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    m.iter().all(|row| row.iter().zip(v).fold(BigInt::zero(), |s, (a, b)| s + a * b).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn spec_examples() {
        let id = PrimeMatrix::from_rows_i64(7, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(rank_mod_p(&id), 3);
        let m = RationalMatrix::from_int_rows(&big(&[&[1, 1], &[2, 2]]));
        assert_eq!(nullspace_rational(&m), vec![vec![BigInt::from(1), BigInt::from(-1)]]);
        let m = RationalMatrix::from_int_rows(&big(&[&[1, 2], &[3, 4]]));
        assert!(nullspace_rational(&m).is_empty());
    }

    #[test]
    fn rational_entries() {
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::one();
        let m = RationalMatrix::new(1, 2, vec![h, one]);
        assert_eq!(nullspace_rational(&m), vec![vec![BigInt::from(2), BigInt::from(-1)]]);
    }

    #[test]
    fn determinants() {
        let m = big(&[&[2, 3, 1], &[4, 1, -2], &[0, 5, 7]]);
        assert_eq!(det_int(&m), BigInt::from(2 * (7 + 10) - 3 * 28 + 20));
        assert_eq!(det_mod_p(&m, 7), (BigInt::from(-30i64)).mod_floor(&BigInt::from(7)).try_into().unwrap());
        let swapped = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_int(&swapped), BigInt::from(-1));
    }

    #[test]
    fn poly_determinant() {
        let x = IntPoly::var(1, 0);
        let one = IntPoly::one(1);
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        assert_eq!(det_poly(&m), &(&x * &x) - &one);
    }

    fn int_matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i64..5, c), r)
                .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in int_matrix()) {
            let cols = m[0].len();
            let ns = nullspace_int(&m, cols);
            prop_assert_eq!(ns.len() + rank_int(&m), cols);
            for v in &ns {
                prop_assert!(is_kernel_vector(&m, v));
                let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                prop_assert!(g.is_one());
            }
        }

        #[test]
        fn mod_p_rank_matches_when_det_unit(m in int_matrix()) {
            let n = m.len().min(m[0].len());
            let sq: Vec<Vec<BigInt>> = m.iter().take(n).map(|r| r[..n].to_vec()).collect();
            let p = 10007;
            let d = det_int(&sq);
            if !(&d % BigInt::from(p)).is_zero() {
                prop_assert_eq!(PrimeMatrix::from_rows_big(p, &sq).rank(), rank_int(&sq));
            }
            prop_assert_eq!(det_mod_p(&sq, p), mod_u64(&d, p));
        }
    }
}
