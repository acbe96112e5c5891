use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::linear::{pluecker, small_violating_solution, LinearSystem};
use crate::arith::{factorial, isqrt_ceil};
use crate::error::{Error, Result};
use crate::irreducibility::{factor_count, form_factorization, Factorization, Field};
use crate::pointcount::{
    affine_candidates, common_zeros_affine, common_zeros_projective, enumerate_affine, enumerate_projective, height,
    projective_candidates, visit_box, ProjPoint, WorkLimit,
};
use crate::poly::IntPoly;
use crate::resultant::resultant;

/// Centers `P_i` spanning `Lambda` and forms `L_i` cutting out `Gamma`, with
/// `L_i(P_j) = 0` for `i != j` and `L_i(P_i) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSetup {
    pub n: usize,
    pub m: usize,
    pub centers: Vec<ProjPoint>,
    pub forms: Vec<Vec<i64>>,
    pub b1: u64,
    pub b2: u64,
    /// `(n-m) ((n+1) B1 B2)^(n-m-1)`.
    pub inflation: BigUint,
}

fn dot(a: &[i64], b: &[i64]) -> BigInt {
    a.iter().zip(b).map(|(&x, &y)| BigInt::from(x) * y).sum()
}

/// `((m+1)^2 d^2)^(n-m-1) (n-m-1)!`.
pub fn center_height_cap(n: usize, m: usize, d: u32) -> BigUint {
    let s = n - m - 1;
    let base = BigUint::from(((m + 1) * (m + 1)) as u64) * BigUint::from(d) * BigUint::from(d);
    num_traits::pow(base, s) * factorial(s as u64)
}

impl ProjectionSetup {
    /// Builds the forms from the centers by solving, for each `i`, for a
    /// small vector vanishing on the other centers but not on `P_i`.
    pub fn new(n: usize, m: usize, centers: Vec<ProjPoint>, b1: u64) -> Result<Self> {
        if m + 1 >= n {
            return Err(Error::Precondition(format!("need m < n - 1, got n = {n}, m = {m}")));
        }
        let s = n - m - 1;
        if centers.len() != s || centers.iter().any(|p| p.coords().len() != n + 1) {
            return Err(Error::Precondition(format!("need {s} centers in P^{n}")));
        }
        if centers.iter().any(|p| p.height() > b1) {
            return Err(Error::Precondition("center height exceeds B1".into()));
        }
        let rows: Vec<Vec<i64>> = centers.iter().map(|p| p.coords().to_vec()).collect();
        pluecker(&rows)?;
        let sq = factorial(s as u64 - 1) * BigUint::from(n as u64 + 1) * num_traits::pow(BigUint::from(b1), 2 * (s - 1));
        let b2 = isqrt_ceil(&sq).to_u64().ok_or_else(|| Error::Internal("B2 overflow".into()))?;
        let mut forms = Vec::with_capacity(s);
        for i in 0..s {
            let mut sys = vec![rows[i].clone()];
            sys.extend(rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()));
            let l = small_violating_solution(&LinearSystem::new(sys)?)?;
            if l.iter().any(|c| c.unsigned_abs() > b2) {
                return Err(Error::Internal("form coefficient exceeds B2".into()));
            }
            forms.push(l);
        }
        let inflation = BigUint::from((n - m) as u64) * num_traits::pow(BigUint::from(n as u64 + 1) * b1 * b2, s);
        Ok(ProjectionSetup { n, m, centers, forms, b1, b2, inflation })
    }

    /// Coordinates killed by the forms when every form is a unit vector.
    pub fn dropped_coordinates(&self) -> Option<Vec<usize>> {
        self.forms
            .iter()
            .map(|l| {
                let nz: Vec<usize> = (0..l.len()).filter(|&i| l[i] != 0).collect();
                (nz.len() == 1).then(|| nz[0])
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedPoint {
    pub image: ProjPoint,
    /// Image in coordinates on `Gamma` when the forms are coordinate forms.
    pub plane: Option<Vec<i64>>,
    /// `H(image) <= inflation * H(P)`.
    pub audit_ok: bool,
}

/// `P - sum_i (L_i(P) / L_i(P_i)) P_i`, scaled to a primitive integer vector.
pub fn project_point(setup: &ProjectionSetup, p: &[i64]) -> Result<ProjectedPoint> {
    if p.len() != setup.n + 1 {
        return Err(Error::VariableCount { expected: setup.n + 1, got: p.len() });
    }
    let diag: Vec<BigInt> = setup.forms.iter().zip(&setup.centers).map(|(l, c)| dot(l, c.coords())).collect();
    let den = diag.iter().fold(BigInt::one(), |acc, v| acc.lcm(v));
    let mut v: Vec<BigInt> = p.iter().map(|&x| &den * x).collect();
    for ((l, c), li) in setup.forms.iter().zip(&setup.centers).zip(&diag) {
        let w = &den / li * dot(l, p);
        for (vi, &ci) in v.iter_mut().zip(c.coords()) {
            *vi -= &w * ci;
        }
    }
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::Precondition("point lies on the projection center".into()));
    }
    let coords: Vec<i64> = v
        .iter()
        .map(|x| (x / &g).to_i64().ok_or_else(|| Error::Internal("image coordinate overflow".into())))
        .collect::<Result<_>>()?;
    let image = ProjPoint::new(coords)?;
    let audit_ok = BigUint::from(image.height()) <= &setup.inflation * BigUint::from(height(p));
    let plane = setup.dropped_coordinates().map(|ks| {
        image.coords().iter().enumerate().filter(|(i, _)| !ks.contains(i)).map(|(_, &c)| c).collect()
    });
    Ok(ProjectedPoint { image, plane, audit_ok })
}

#[derive(Clone, Debug)]
pub struct ProjectionOptions {
    /// Search budget on center heights; defaults to the guaranteed cap.
    pub height_cap: Option<u64>,
    pub limit: WorkLimit,
    /// Largest candidate count for an exact recount on the image side.
    pub exact_budget: u128,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions { height_cap: None, limit: WorkLimit::default(), exact_budget: 20_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionResult {
    pub setup: ProjectionSetup,
    /// Plane curve in the coordinates of `Gamma`.
    pub image: IntPoly,
    /// Exponent `e` with `Res = c * image^e`.
    pub multiplicity: u32,
    pub candidates_tried: u64,
}

fn is_canonical(x: &[i64]) -> bool {
    x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) && x.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1
}

/// Canonical points in `n` coordinates by height, then lexicographically.
fn visit_by_height<F>(n: usize, cap: u64, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    for h in 1..=cap {
        visit_box(n, h, |x| if height(x) == h && is_canonical(x) { f(x) } else { ControlFlow::Continue(()) })?;
    }
    ControlFlow::Continue(())
}

fn check_space_curve(g1: &IntPoly, g2: &IntPoly, nvars: usize, homogeneous: bool) -> Result<()> {
    for g in [g1, g2] {
        if g.nvars() != nvars {
            return Err(Error::VariableCount { expected: nvars, got: g.nvars() });
        }
        match g.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::Constant),
            _ => {}
        }
        if homogeneous && !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    Ok(())
}

/// Resultant eliminating `t` from `G_i(y + t P)` with `y_k = 0`; a ternary
/// form in the remaining coordinates.
fn cone_resultant(g1: &IntPoly, g2: &IntPoly, p: &[i64], k: usize) -> IntPoly {
    let subs: Vec<IntPoly> = (0..4)
        .map(|i| {
            let mut s = IntPoly::zero(4);
            if i != k {
                s = IntPoly::var(4, if i < k { i } else { i - 1 });
            }
            &s + &IntPoly::var(4, 3).scale(&BigInt::from(p[i]))
        })
        .collect();
    resultant(&g1.compose(&subs), &g2.compose(&subs), 3).dehomogenize(3)
}

enum Candidate {
    Good(IntPoly, u32),
    Skip,
    Reducible(usize),
}

fn classify(r: &IntPoly, d: u32, plane_form: bool) -> Result<Candidate> {
    let Some(deg) = r.degree() else { return Ok(Candidate::Skip) };
    if deg == 0 || deg % d != 0 {
        return Ok(Candidate::Skip);
    }
    let e = deg / d;
    let prim = r.primitive_positive();
    let Some(h) = prim.exact_root(e).or_else(|| (-prim).exact_root(e)) else {
        return Ok(Candidate::Skip);
    };
    let h = h.primitive_positive();
    if h.degree() != Some(d) {
        return Ok(Candidate::Skip);
    }
    let fac = if plane_form { form_factorization(&h, Field::Rational)? } else { factor_count(&h, Field::Rational)? };
    Ok(match fac {
        Factorization::NotSquarefree => Candidate::Skip,
        Factorization::Factors(1) => Candidate::Good(h, e),
        Factorization::Factors(k) => Candidate::Reducible(k),
    })
}

fn is_linear(g: &IntPoly) -> bool {
    g.degree() == Some(1)
}

/// Searches centers `P` of `P^3` by height then lexicographically, up to the
/// guaranteed cap `4 d^2`, for one off the curve `V(G1, G2)` whose
/// projection is a plane curve of degree `d` again.
pub fn find_projection_center(g1: &IntPoly, g2: &IntPoly, d: u32, opts: &ProjectionOptions) -> Result<ProjectionResult> {
    check_space_curve(g1, g2, 4, true)?;
    if d == 0 {
        return Err(Error::Precondition("curve degree must be positive".into()));
    }
    let guaranteed = center_height_cap(3, 1, d).to_u64().unwrap_or(u64::MAX);
    let cap = opts.height_cap.unwrap_or(guaranteed);
    let mut tried = 0u64;
    let mut outcome: Result<Option<ProjectionResult>> = Ok(None);
    let _ = visit_by_height(4, cap, |p| {
        let on1 = g1.eval_i64(p).is_zero();
        let on2 = g2.eval_i64(p).is_zero();
        if (on1 && on2) || (on1 && is_linear(g1)) || (on2 && is_linear(g2)) {
            return ControlFlow::Continue(());
        }
        tried += 1;
        let step = (|| -> Result<Option<ProjectionResult>> {
            let setup = ProjectionSetup::new(3, 1, vec![ProjPoint::from_canonical(p.to_vec())], guaranteed.max(height(p)))?;
            let k = setup.dropped_coordinates().expect("single center gives a coordinate form")[0];
            match classify(&cone_resultant(g1, g2, p, k), d, true)? {
                Candidate::Good(image, multiplicity) => {
                    Ok(Some(ProjectionResult { setup, image, multiplicity, candidates_tried: tried }))
                }
                Candidate::Skip => Ok(None),
                Candidate::Reducible(k) => {
                    Err(Error::Precondition(format!("curve is reducible: projection has {k} components")))
                }
            }
        })();
        match step {
            Ok(None) => ControlFlow::Continue(()),
            other => {
                outcome = other;
                ControlFlow::Break(())
            }
        }
    });
    outcome?.ok_or_else(|| {
        Error::Exhausted(format!("no good center of height <= {cap} after {tried} candidates"))
    })
}

/// Degree of the curve `V(G1, G2)`, read off from the projections from the
/// first few centers as `deg Res / e` for the largest pure-power exponent `e`
/// with a squarefree base.
pub fn infer_curve_degree(g1: &IntPoly, g2: &IntPoly) -> Result<u32> {
    check_space_curve(g1, g2, 4, true)?;
    let mut best: Option<u32> = None;
    let mut seen = 0;
    let _ = visit_by_height(4, 4, |p| {
        if g1.eval_i64(p).is_zero() && g2.eval_i64(p).is_zero() {
            return ControlFlow::Continue(());
        }
        let k = p.iter().position(|&c| c != 0).expect("nonzero");
        let r = cone_resultant(g1, g2, p, k);
        let Some(deg) = r.degree().filter(|&x| x > 0) else { return ControlFlow::Continue(()) };
        let prim = r.primitive_positive();
        for e in (1..=deg).rev().filter(|e| deg % e == 0) {
            if let Some(h) = prim.exact_root(e).or_else(|| (-prim.clone()).exact_root(e)) {
                if !matches!(form_factorization(&h, Field::Rational), Ok(Factorization::NotSquarefree) | Err(_)) {
                    best = Some(best.map_or(deg / e, |b| b.max(deg / e)));
                    seen += 1;
                    break;
                }
            }
        }
        if seen >= 4 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
    });
    best.ok_or_else(|| Error::Exhausted("could not determine the curve degree".into()))
}

/// `N(X, B) <= N(X', inflation * B) + d^2`, checked through the images of
/// the points of `X`, and by a full recount on `X'` when affordable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRelation {
    pub bound: u64,
    pub inflation: BigUint,
    pub source_count: u64,
    /// Distinct images; each is a point of `X'` of height at most
    /// `inflation * B`, so this bounds `N(X', inflation * B)` from below.
    pub distinct_images: u64,
    pub exact_image_count: Option<u64>,
    pub audits_passed: bool,
    pub images_on_curve: bool,
    pub d_squared: u64,
    pub holds: bool,
}

impl CountRelation {
    fn finish(mut self) -> Self {
        let rhs = self.exact_image_count.unwrap_or(self.distinct_images) + self.d_squared;
        self.holds = self.audits_passed && self.images_on_curve && self.source_count <= rhs;
        self
    }
}

pub fn verify_count_relation(
    g1: &IntPoly,
    g2: &IntPoly,
    proj: &ProjectionResult,
    bound: u64,
    opts: &ProjectionOptions,
) -> Result<CountRelation> {
    let pts = common_zeros_projective(&[g1.clone(), g2.clone()], bound, opts.limit, true)?.points.expect("retained");
    let mut images = BTreeSet::new();
    let (mut audits, mut on_curve) = (true, true);
    for p in &pts {
        let q = project_point(&proj.setup, p)?;
        audits &= q.audit_ok;
        let plane = q.plane.expect("coordinate forms");
        on_curve &= proj.image.eval_i64(&plane).is_zero();
        images.insert(plane);
    }
    let inflated = &proj.setup.inflation * BigUint::from(bound);
    let exact_image_count = match inflated.to_u64() {
        Some(h) if projective_candidates(3, h) <= opts.exact_budget => {
            Some(enumerate_projective(&proj.image, h, opts.limit, false)?.count)
        }
        _ => None,
    };
    let d = proj.image.degree().unwrap_or(0) as u64;
    Ok(CountRelation {
        bound,
        inflation: proj.setup.inflation.clone(),
        source_count: pts.len() as u64,
        distinct_images: images.len() as u64,
        exact_image_count,
        audits_passed: audits,
        images_on_curve: on_curve,
        d_squared: d * d,
        holds: false,
    }
    .finish())
}

/// Projection of an affine space curve along a direction at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReduction {
    pub direction: Vec<i64>,
    /// Coordinate eliminated; image coordinates are `v_k a_j - a_k v_j`.
    pub pivot: usize,
    pub image: IntPoly,
    pub multiplicity: u32,
    pub relation: CountRelation,
    /// `|v_k| + max_j |v_j|`, the actual coordinate growth factor.
    pub direct_inflation: u64,
    pub notes: Vec<String>,
}

/// Direction, pivot coordinate, image curve, multiplicity.
type DirectionHit = (Vec<i64>, usize, IntPoly, u32);

fn top_form(g: &IntPoly) -> IntPoly {
    g.degree_part(g.degree().unwrap_or(0))
}

fn affine_image_point(v: &[i64], k: usize, a: &[i64]) -> Vec<i64> {
    (0..3).filter(|&j| j != k).map(|j| v[k] * a[j] - a[k] * v[j]).collect()
}

fn affine_resultant(g1: &IntPoly, g2: &IntPoly, v: &[i64], k: usize) -> IntPoly {
    // G_i((u + s v) / v_k) v_k^deg, as G_i^h(u + s v, v_k) with u_k = 0
    let subs: Vec<IntPoly> = (0..4)
        .map(|i| {
            if i == 3 {
                return IntPoly::constant(3, v[k]);
            }
            let mut s = IntPoly::zero(3);
            if i != k {
                s = IntPoly::var(3, if i < k { i } else { i - 1 });
            }
            &s + &IntPoly::var(3, 2).scale(&BigInt::from(v[i]))
        })
        .collect();
    let h1 = g1.homogenize(3).compose(&subs);
    let h2 = g2.homogenize(3).compose(&subs);
    resultant(&h1, &h2, 2).dehomogenize(2)
}

/// Projects the affine curve `G1 = G2 = 0` in `A^3` to a plane curve along
/// the first direction `v` (by height, then lexicographically) that is not
/// asymptotic to `G1 = 0` and gives an image of degree `d`, then verifies
/// `N_aff(X, B) <= N_aff(X', inflation * B) + d^2`.
pub fn affine_reduce_curve(
    g1: &IntPoly,
    g2: &IntPoly,
    d: u32,
    bound: u64,
    opts: &ProjectionOptions,
) -> Result<AffineReduction> {
    check_space_curve(g1, g2, 3, false)?;
    if d == 0 {
        return Err(Error::Precondition("curve degree must be positive".into()));
    }
    let guaranteed = center_height_cap(3, 1, d).to_u64().unwrap_or(u64::MAX);
    let cap = opts.height_cap.unwrap_or(guaranteed);
    let (t1, t2) = (top_form(g1), top_form(g2));
    let mut outcome: Result<Option<DirectionHit>> = Ok(None);
    let _ = visit_by_height(3, cap, |v| {
        let (a, b) = if !t1.eval_i64(v).is_zero() {
            (g1, g2)
        } else if !t2.eval_i64(v).is_zero() {
            (g2, g1)
        } else {
            return ControlFlow::Continue(());
        };
        let k = v.iter().position(|&c| c != 0).expect("nonzero");
        match classify(&affine_resultant(a, b, v, k), d, false) {
            Ok(Candidate::Skip) => ControlFlow::Continue(()),
            Ok(Candidate::Good(h, e)) => {
                outcome = Ok(Some((v.to_vec(), k, h, e)));
                ControlFlow::Break(())
            }
            Ok(Candidate::Reducible(r)) => {
                outcome = Err(Error::Precondition(format!("curve is reducible: projection has {r} components")));
                ControlFlow::Break(())
            }
            Err(e) => {
                outcome = Err(e);
                ControlFlow::Break(())
            }
        }
    });
    let (v, k, image, multiplicity) =
        outcome?.ok_or_else(|| Error::Exhausted(format!("no good direction of height <= {cap}")))?;

    let mut notes = Vec::new();
    let direct_inflation = v[k].unsigned_abs() + (0..3).filter(|&j| j != k).map(|j| v[j].unsigned_abs()).max().unwrap_or(0);
    if direct_inflation == 1 {
        notes.push("unit direction: the projection does not inflate coordinates".into());
    }
    let inflation = BigUint::from(2u32) * BigUint::from(4 * 2 * guaranteed);
    let pts = common_zeros_affine(&[g1.clone(), g2.clone()], bound, opts.limit, true)?.points.expect("retained");
    let mut images = BTreeSet::new();
    let (mut audits, mut on_curve) = (true, true);
    for a in &pts {
        let u = affine_image_point(&v, k, a);
        audits &= BigUint::from(height(&u)) <= &inflation * BigUint::from(bound.max(1));
        on_curve &= image.eval_i64(&u).is_zero();
        images.insert(u);
    }
    let inflated = &inflation * BigUint::from(bound);
    let exact_image_count = match inflated.to_u64() {
        Some(h) if affine_candidates(2, h) <= opts.exact_budget => Some(enumerate_affine(&image, h, opts.limit, false)?.count),
        _ => None,
    };
    let relation = CountRelation {
        bound,
        inflation,
        source_count: pts.len() as u64,
        distinct_images: images.len() as u64,
        exact_image_count,
        audits_passed: audits,
        images_on_curve: on_curve,
        d_squared: d as u64 * d as u64,
        holds: false,
    }
    .finish();
    Ok(AffineReduction { direction: v, pivot: k, image, multiplicity, relation, direct_inflation, notes })
}
