//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are keyed by exponent vectors and kept in graded-lex order
//! (total degree first, then lexicographic with `x0 > x1 > ...`).

mod modp;
mod parse;

pub use modp::ModPoly;
pub use parse::{parse_poly, PolyDisplay};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn eval_i64(&self, x: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        for (&e, &v) in self.0.iter().zip(x) {
            if e > 0 {
                acc *= num_traits::pow(BigInt::from(v), e as usize);
            }
        }
        acc
    }

    pub fn eval_big(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::one();
        for (&e, v) in self.0.iter().zip(x) {
            if e > 0 {
                acc *= num_traits::pow(v.clone(), e as usize);
            }
        }
        acc
    }

    pub fn eval_mod(&self, x: &[u64], p: u64) -> u64 {
        let mut acc = 1 % p;
        for (&e, &v) in self.0.iter().zip(x) {
            if e > 0 {
                acc = crate::arith::mul_mod(acc, crate::arith::pow_mod(v, e as u64, p), p);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `deg`,
/// in descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// All monomials of total degree at most `deg`, descending graded-lex.
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    (0..=deg)
        .rev()
        .flat_map(|k| monomials_of_degree(nvars, k))
        .collect()
}

/// Sparse polynomial in `nvars` variables over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = IntPoly::zero(m.nvars());
        p.add_term(m, c.into());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging duplicates.
    pub fn from_terms<I, C>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = IntPoly::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `h` with `h^e == self` and integer coefficients, if one exists.
    pub fn exact_root(&self, e: u32) -> Option<IntPoly> {
        assert!(e >= 1);
        if e == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading_term()?;
        if lc.is_negative() {
            return if e.is_multiple_of(2) { None } else { (-self.clone()).exact_root(e).map(|h| -h) };
        }
        if lm.0.iter().any(|&k| k % e != 0) {
            return None;
        }
        let h0 = lc.nth_root(e);
        if &num_traits::pow(h0.clone(), e as usize) != lc {
            return None;
        }
        let hm = Monomial(lm.0.iter().map(|k| k / e).collect());
        let lead = BigInt::from(e) * num_traits::pow(h0.clone(), e as usize - 1);
        let lead_m = Monomial(hm.0.iter().map(|k| k * (e - 1)).collect());
        let mut h = IntPoly::term(hm.clone(), h0);
        loop {
            let res = self - &h.pow(e);
            let Some((m, c)) = res.leading_term() else {
                return Some(h);
            };
            if !lead_m.divides(m) {
                return None;
            }
            let t = lead_m.quotient_of(m);
            if t >= hm {
                return None;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            h.add_term(t, q);
        }
    }

    /// Maximum absolute value of the coefficients (0 for the zero polynomial).
    pub fn coeff_norm(&self) -> BigUint {
        self.terms.values().map(|c| c.magnitude().clone()).max().unwrap_or_default()
    }

    /// Positive gcd of the coefficients and the primitive part. The sign stays
    /// on the primitive part.
    pub fn content_and_primitive(&self) -> Result<(BigUint, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.content();
        let gi = BigInt::from(g.clone());
        let prim = IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &gi)).collect(),
        };
        Ok((g, prim))
    }

    pub fn content(&self) -> BigUint {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
            .magnitude()
            .clone()
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Primitive part normalised so the leading (graded-lex) coefficient is positive.
    pub fn primitive_positive(&self) -> IntPoly {
        match self.content_and_primitive() {
            Err(_) => self.clone(),
            Ok((_, p)) => {
                if p.leading_term().is_some_and(|(_, c)| c.is_negative()) {
                    -p
                } else {
                    p
                }
            }
        }
    }

    /// Homogeneous part of total degree `i`.
    pub fn degree_part(&self, i: u32) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == i)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<ModPoly> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ModPoly::from_int(self, p))
    }

    pub fn derivative(&self, var: usize) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                out.add_term(m2, c * BigInt::from(e));
            }
        }
        out
    }

    /// Evaluates at a small integer point, with an `i128` fast path when the
    /// result provably fits.
    pub fn eval_i64(&self, x: &[i64]) -> BigInt {
        debug_assert_eq!(x.len(), self.nvars);
        if let Some(v) = self.eval_i128(x) {
            return BigInt::from(v);
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * m.eval_i64(x);
        }
        acc
    }

    fn eval_i128(&self, x: &[i64]) -> Option<i128> {
        let h = x.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0).max(1) as u128;
        let mut bound: u128 = 0;
        for (m, c) in &self.terms {
            let mut t = c.magnitude().to_u128()?;
            for _ in 0..m.degree() {
                t = t.checked_mul(h)?;
            }
            bound = bound.checked_add(t)?;
        }
        if bound >= 1 << 126 {
            return None;
        }
        let mut acc: i128 = 0;
        for (m, c) in &self.terms {
            let mut t = c.to_i128()?;
            for (&e, &v) in m.0.iter().zip(x) {
                for _ in 0..e {
                    t *= v as i128;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn eval_big(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * m.eval_big(x);
        }
        acc
    }

    pub fn eval_mod(&self, x: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let cm = crate::arith::mod_u64(c, p);
            acc = (acc + crate::arith::mul_mod(cm, m.eval_mod(x, p), p)) % p;
        }
        acc
    }

    /// Substitutes `subs[i]` for variable `i`; all substitutes share one ring.
    pub fn compose(&self, subs: &[IntPoly]) -> IntPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut out = IntPoly::zero(target);
        let mut cache: Vec<Vec<IntPoly>> = subs.iter().map(|s| vec![IntPoly::one(target), s.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = IntPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &subs[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Applies the linear change of variables `x_i -> sum_j a[i][j] x_j`.
    pub fn linear_substitute(&self, a: &[Vec<BigInt>]) -> IntPoly {
        let subs: Vec<IntPoly> = a
            .iter()
            .map(|row| {
                let mut p = IntPoly::zero(self.nvars);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(self.nvars, j), c.clone());
                }
                p
            })
            .collect();
        self.compose(&subs)
    }

    /// Homogenizes with a new variable inserted at position `at`.
    pub fn homogenize(&self, at: usize) -> IntPoly {
        let d = self.degree().unwrap_or(0);
        let mut out = IntPoly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(at, d - m.degree());
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets variable `var` to 1 and removes it.
    pub fn dehomogenize(&self, var: usize) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets variable `var` to the constant `v`, keeping the variable count.
    pub fn specialize(&self, var: usize, v: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            out.add_term(Monomial(e), c * num_traits::pow(v.clone(), k as usize));
        }
        out
    }

    /// Embeds into a ring with more variables; variable `i` goes to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> IntPoly {
        let mut out = IntPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor` over the rationals, returned when it
    /// exists and has integer coefficients. For primitive divisors this is
    /// exactly divisibility in Q[x] (Gauss's lemma).
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero());
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = IntPoly::zero(self.nvars);
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let (qc, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let qm = lm.quotient_of(&m);
            r = &r - &divisor.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Whether `divisor` divides `self` in Q[x].
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        match divisor.content_and_primitive() {
            Err(_) => self.is_zero(),
            Ok((_, prim)) => {
                let c = self.content();
                if c.is_zero() {
                    return true;
                }
                let (_, sp) = self.content_and_primitive().expect("nonzero");
                sp.div_exact(&prim).is_some()
            }
        }
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, vars: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, vars }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = IntPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(mut self) -> IntPoly {
        for c in self.terms.values_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}
