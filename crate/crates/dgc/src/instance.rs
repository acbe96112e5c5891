//! Random valid inputs for the p-adic divisibility check.

use dgc_core::arith::is_prime;
use dgc_core::detmethod::{verify_padic_divisibility, DeterminantInstance};
use dgc_core::linalg::nullspace_int;
use dgc_core::poly::{monomials_of_degree, Monomial};
use dgc_core::{IntPoly, ProjPoint};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub primes: (u64, u64),
    pub sizes: (usize, usize),
    pub curve_degree: u32,
    /// Points are `P0 + p w` with `|w_i| <= spread`.
    pub spread: i64,
    pub singular_probability: f64,
}

impl Default for InstanceSpec {
    fn default() -> Self {
        InstanceSpec { primes: (5, 97), sizes: (2, 4), curve_degree: 3, spread: 2, singular_probability: 0.5 }
    }
}

fn derivative_row(monos: &[Monomial], j: usize, p0: &[i64]) -> Vec<BigInt> {
    monos
        .iter()
        .map(|m| {
            if m.0[j] == 0 {
                return BigInt::zero();
            }
            let mut e = m.clone();
            e.0[j] -= 1;
            e.eval_i64(p0) * m.0[j]
        })
        .collect()
}

fn attempt(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Option<DeterminantInstance> {
    let primes: Vec<u64> = (spec.primes.0..=spec.primes.1).filter(|&p| is_prime(p)).collect();
    let p = primes[rng.gen_range(0..primes.len())];
    let s = rng.gen_range(spec.sizes.0..=spec.sizes.1);
    let p0: Vec<i64> = (0..3).map(|_| rng.gen_range(0..p as i64)).collect();
    if p0.iter().all(|&c| c == 0) {
        return None;
    }
    let mut pts: Vec<Vec<i64>> = Vec::new();
    while pts.len() < s {
        let x: Vec<i64> = p0.iter().map(|&c| c + p as i64 * rng.gen_range(-spec.spread..=spec.spread)).collect();
        let canon = ProjPoint::new(x.clone()).ok()?;
        if !pts.iter().any(|q| ProjPoint::new(q.clone()).ok().as_ref() == Some(&canon)) {
            pts.push(x);
        }
    }
    let monos = monomials_of_degree(3, spec.curve_degree);
    let mut rows: Vec<Vec<BigInt>> = pts.iter().map(|x| monos.iter().map(|m| m.eval_i64(x)).collect()).collect();
    if rng.gen_bool(spec.singular_probability) {
        rows.extend((0..3).map(|j| derivative_row(&monos, j, &p0)));
    }
    let kernel = nullspace_int(&rows, monos.len());
    if kernel.is_empty() {
        return None;
    }
    let mut f = IntPoly::zero(3);
    for v in &kernel {
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        for (m, a) in monos.iter().zip(v) {
            f.add_term(m.clone(), a * &c);
        }
    }
    if f.is_zero() {
        return None;
    }
    let f = f.primitive_positive();
    // enough monomials of the form degree for a nonsingular s x s system
    let e = (1..).find(|&e| monomials_of_degree(3, e).len() >= s).expect("exists");
    let form_monos = monomials_of_degree(3, e);
    let forms: Vec<IntPoly> = (0..s)
        .map(|_| {
            let mut g = IntPoly::zero(3);
            for m in &form_monos {
                g.add_term(m.clone(), BigInt::from(rng.gen_range(-5i64..=5)));
            }
            g
        })
        .collect();
    if forms.iter().any(IntPoly::is_zero) {
        return None;
    }
    let inst = DeterminantInstance {
        p,
        f,
        points: pts.into_iter().map(|x| ProjPoint::new(x).expect("nonzero")).collect(),
        forms,
    };
    let rep = verify_padic_divisibility(&inst).ok()?;
    (!rep.det.is_zero()).then_some(inst)
}

/// `count` valid instances with nonzero determinant, reproducible from `seed`.
pub fn random_instances(count: usize, seed: u64, spec: &InstanceSpec) -> Vec<DeterminantInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(inst) = attempt(&mut rng, spec) {
            out.push(inst);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_valid_and_reproducible() {
        let spec = InstanceSpec::default();
        let a = random_instances(12, 5, &spec);
        assert_eq!(a, random_instances(12, 5, &spec));
        let mut singular = 0;
        for inst in &a {
            let rep = verify_padic_divisibility(inst).unwrap();
            assert!(rep.pass);
            singular += usize::from(rep.mu >= 2);
        }
        assert!(singular > 0);
    }
}
