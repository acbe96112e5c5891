use alloc::collections::BTreeMap;
use num_bigint::BigInt;

use super::{IntPoly, Monomial};
use crate::arith::{mod_u64, mul_mod};

/// Polynomial with coefficients in F_p, canonical residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl ModPoly {
    pub(crate) fn from_int(f: &IntPoly, p: u64) -> Self {
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let r = mod_u64(c, p);
                (r != 0).then(|| (m.clone(), r))
            })
            .collect();
        ModPoly { p, nvars: f.nvars(), terms }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p;
        self.terms
            .iter()
            .fold(0, |acc, (m, &c)| (acc + mul_mod(c, m.eval_mod(x, p), p)) % p)
    }

    /// Lift with representatives in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::from_terms(self.nvars, self.terms.iter().map(|(m, &c)| (m.0.clone(), BigInt::from(c))))
    }

    /// Lift with symmetric representatives in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self) -> IntPoly {
        let p = self.p;
        IntPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, &c)| {
                let v = if c > p / 2 { c as i128 - p as i128 } else { c as i128 };
                (m.0.clone(), BigInt::from(v))
            }),
        )
    }
}
