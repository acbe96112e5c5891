//! Absolute irreducibility of bivariate polynomials over Q and F_p.
//!
//! The test follows Gao's partial-differential-equation criterion (S. Gao,
//! "Factoring multivariate polynomials via partial differential equations",
//! Math. Comp. 72 (2003)), a linear-algebra form of Ruppert's criterion: for
//! squarefree `f` of bidegree `(m, n)` with `gcd(f, f_x) = 1`, the number of
//! absolutely irreducible factors equals the dimension of the solution space
//! of `d/dy (g/f) = d/dx (h/f)` with `deg g <= (m-1, n)`, `deg h <= (m, n-1)`.
//! Valid in characteristic 0 and for `p > (2m-1)n`.

mod badness;
mod gao;
mod newton;

pub use badness::{bad_primes, badness_value, BadnessOptions, BadnessReport, BadnessValue};
pub use gao::{gao_matrix, normalize, Normalized};
pub use newton::{gao_edge_criterion, gao_edge_criterion_mod_p, newton_polytope, NewtonPolytope};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Monomial};

/// Coefficient field of a test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// Result of the factor-count computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// Number of absolutely irreducible factors (1 means absolutely irreducible).
    Factors(usize),
    NotSquarefree,
}

fn check_bivariate(f: &IntPoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::VariableCount { expected: 2, got: f.nvars() });
    }
    Ok(())
}

/// Reduces `f` into canonical representatives for the field.
fn reduce(f: &IntPoly, field: Field) -> Result<IntPoly> {
    match field {
        Field::Rational => Ok(f.clone()),
        Field::Prime(p) => Ok(f.reduce_mod_p(p)?.lift()),
    }
}

/// Number of absolutely irreducible factors of a squarefree bivariate `f`.
pub fn factor_count(f: &IntPoly, field: Field) -> Result<Factorization> {
    check_bivariate(f)?;
    let f = reduce(f, field)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::Constant);
    }
    let nz = normalize(&f, field)?;
    if let Field::Prime(p) = field {
        let bound = ((2 * nz.m as u64).saturating_sub(1) * nz.n as u64).max(nz.m as u64);
        if p <= bound {
            return Err(Error::CharacteristicTooSmall { p, bound });
        }
    }
    if !gao::squarefree(&nz, field) {
        return Ok(Factorization::NotSquarefree);
    }
    Ok(Factorization::Factors(gao::corank(&nz, field)))
}

/// Whether `f` is irreducible over the algebraic closure of the field.
/// Non-squarefree input is rejected.
pub fn absolutely_irreducible(f: &IntPoly, field: Field) -> Result<bool> {
    match factor_count(f, field)? {
        Factorization::Factors(r) => Ok(r == 1),
        Factorization::NotSquarefree => Err(Error::NotSquarefree),
    }
}

/// Whether the reduction of an integer polynomial mod `p` is absolutely
/// irreducible; a reduction that is constant or not squarefree counts as not
/// absolutely irreducible.
pub fn reduction_absolutely_irreducible(f: &IntPoly, p: u64) -> Result<bool> {
    let r = f.reduce_mod_p(p)?.lift();
    if r.is_constant() {
        return Ok(false);
    }
    match factor_count(&r, Field::Prime(p))? {
        Factorization::Factors(k) => Ok(k == 1),
        Factorization::NotSquarefree => Ok(false),
    }
}

/// Absolute irreducibility of a ternary form (a projective plane curve):
/// lines are irreducible; otherwise `x0` must not divide the form and the
/// affine chart `x0 = 1` must be absolutely irreducible.
pub fn form_factorization(form: &IntPoly, field: Field) -> Result<Factorization> {
    if form.nvars() != 3 {
        return Err(Error::VariableCount { expected: 3, got: form.nvars() });
    }
    if !form.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let f = reduce(form, field)?;
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::Constant);
    }
    let x0_divides = f.terms().all(|(m, _)| m.0[0] > 0);
    if x0_divides {
        let q = f.div_exact(&IntPoly::term(Monomial::var(3, 0), 1)).expect("x0 divides");
        if d == 1 {
            return Ok(Factorization::Factors(1));
        }
        if q.terms().all(|(m, _)| m.0[0] > 0) {
            return Ok(Factorization::NotSquarefree);
        }
        return match form_factorization(&q, field)? {
            Factorization::Factors(k) => Ok(Factorization::Factors(k + 1)),
            nsf => Ok(nsf),
        };
    }
    if d == 1 {
        return Ok(Factorization::Factors(1));
    }
    factor_count(&f.dehomogenize(0), field)
}

pub fn form_absolutely_irreducible(form: &IntPoly, field: Field) -> Result<bool> {
    match form_factorization(form, field)? {
        Factorization::Factors(r) => Ok(r == 1),
        Factorization::NotSquarefree => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> IntPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(!absolutely_irreducible(&p("x^2 - y^2"), Field::Rational).unwrap());
        assert!(!absolutely_irreducible(&p("x^2 + y^2"), Field::Rational).unwrap());
        assert!(absolutely_irreducible(&p("y - x^2"), Field::Rational).unwrap());
    }

    #[test]
    fn factor_counts() {
        assert_eq!(factor_count(&p("x^2 - y^2"), Field::Rational).unwrap(), Factorization::Factors(2));
        assert_eq!(factor_count(&p("x^3 - y^3"), Field::Rational).unwrap(), Factorization::Factors(3));
        assert_eq!(factor_count(&p("(x - y)^2 + 0*x"), Field::Rational).unwrap(), Factorization::NotSquarefree);
        assert_eq!(factor_count(&p("x^2 - 2"), Field::Rational).unwrap(), Factorization::Factors(2));
        assert_eq!(factor_count(&p("y^2 - x^3 - x"), Field::Rational).unwrap(), Factorization::Factors(1));
        assert!(matches!(absolutely_irreducible(&p("(x + y + 1)^2"), Field::Rational), Err(Error::NotSquarefree)));
    }

    #[test]
    fn finite_fields() {
        // x^2 + y^2 splits over F_13 (13 = 1 mod 4) and also over F_7 after extension
        assert!(!absolutely_irreducible(&p("x^2 + y^2"), Field::Prime(13)).unwrap());
        assert!(absolutely_irreducible(&p("y^2 - x^3 - x - 1"), Field::Prime(101)).unwrap());
        assert!(matches!(
            absolutely_irreducible(&p("y^2 - x^3 - 1"), Field::Prime(7)),
            Err(Error::CharacteristicTooSmall { .. })
        ));
        // x^2 - 2y^2 splits over Q(sqrt 2); adding y makes the conic smooth
        assert!(!absolutely_irreducible(&p("x^2 - 2*y^2"), Field::Rational).unwrap());
        assert!(absolutely_irreducible(&p("x^2 - 2*y^2 + y"), Field::Rational).unwrap());
    }

    #[test]
    fn reduction_test() {
        let g = p("x*y - 11");
        assert!(reduction_absolutely_irreducible(&g, 13).unwrap());
        assert!(!reduction_absolutely_irreducible(&g, 11).unwrap());
    }

    #[test]
    fn forms() {
        let v = ["x0", "x1", "x2"];
        let q = |s: &str| parse_poly(s, &v).unwrap();
        assert!(form_absolutely_irreducible(&q("x0*x2 - x1^2"), Field::Rational).unwrap());
        assert!(!form_absolutely_irreducible(&q("x1^2 - x0*x1"), Field::Rational).unwrap());
        assert!(form_absolutely_irreducible(&q("x0"), Field::Rational).unwrap());
        assert!(!form_absolutely_irreducible(&q("x0^2 + x1^2"), Field::Rational).unwrap());
        assert!(form_absolutely_irreducible(&q("x0^3 + x1^3 + x2^3"), Field::Prime(101)).unwrap());
    }
}
