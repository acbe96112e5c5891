use dgc_core::detmethod::StalkProfile;
use dgc_core::irreducibility::{
    absolutely_irreducible, bad_primes, badness_value, gao_edge_criterion, gao_edge_criterion_mod_p,
    reduction_absolutely_irreducible, BadnessOptions, Field,
};
use dgc_core::poly::{monomials_up_to, Monomial};
use dgc_core::witness::build_witness;
use dgc_core::IntPoly;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

/// Largest `(main_term(s) - A(s)) / s` over `n <= 2`, `mu <= 4`, `s <= 2000`.
const DEFECT_MAX: f64 = 0.9986666453326539;

#[test]
fn weight_sum_defect_is_bounded() {
    let mut worst = f64::MIN;
    for n in 1..=2 {
        for mu in 1..=4 {
            let prof = StalkProfile::new(n, mu);
            for s in 1..=2000 {
                worst = worst.max(prof.defect_ratio(s));
            }
        }
    }
    assert!(worst <= DEFECT_MAX, "observed {worst:?}");
}

fn bivariate(coeffs: &[i64], d: u32) -> IntPoly {
    let mut f = IntPoly::zero(2);
    for (m, &c) in monomials_up_to(2, d).into_iter().zip(coeffs) {
        f.add_term(m, BigInt::from(c));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gao_edge_implies_irreducible(a in 1u32..=4, b in 1u32..=4, low in proptest::collection::vec(-4i64..=4, 25)) {
        let mut f = IntPoly::zero(2);
        f.add_term(Monomial(vec![a, 0]), BigInt::from(1));
        f.add_term(Monomial(vec![0, b]), BigInt::from(-2));
        let mut k = 0;
        for i in 0..a {
            for j in 0..b {
                if i * b + j * a < a * b {
                    f.add_term(Monomial(vec![i, j]), BigInt::from(low[k]));
                    k += 1;
                }
            }
        }
        if gao_edge_criterion(&f) {
            prop_assert!(absolutely_irreducible(&f, Field::Rational).unwrap());
        }
        let p = 27 * (a.max(b) as u64).pow(4) + 1;
        let p = dgc_core::arith::next_prime(p);
        if gao_edge_criterion_mod_p(&f, p) {
            prop_assert!(reduction_absolutely_irreducible(&f, p).unwrap());
        }
    }

    #[test]
    fn log_badness_is_small(coeffs in proptest::collection::vec(-100i64..=100, 10)) {
        let f = bivariate(&coeffs, 3);
        prop_assume!(f.degree().unwrap_or(0) >= 2);
        prop_assume!(absolutely_irreducible(&f, Field::Rational).unwrap_or(false));
        let rep = bad_primes(&f, &BadnessOptions::default()).unwrap();
        let log_b = badness_value(&rep).log().unwrap();
        let log_norm = f.coeff_norm().to_f64().unwrap().ln();
        prop_assert!(log_b <= log_norm.max(1.0), "log b = {log_b}, log |f| = {log_norm}");
    }
}

#[test]
fn witness_structure() {
    for d in 2..=12 {
        let w = build_witness(d, 2).unwrap();
        assert_eq!(w.f.degree(), Some(d));
        assert!(w.f.is_primitive(), "d = {d}");
        assert!(!w.interpolation_det.is_zero(), "d = {d}");
        assert!(gao_edge_criterion(&w.f), "d = {d}");
        assert_eq!(w.newton_ok, Some(true));
        for x in w.grid_low..=w.grid_radius {
            for y in w.grid_low..=w.grid_radius {
                assert!(w.f.eval_i64(&[x, y]).is_zero(), "d = {d} at ({x}, {y})");
            }
        }
        let side = (w.grid_radius - w.grid_low + 1) as u64;
        assert_eq!(w.claimed_count, side * side);
    }
}
