use alloc::vec::Vec;
use num_integer::Integer;

use crate::poly::IntPoly;

/// Convex hull of the exponent vectors of a bivariate polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    /// Vertices in counter-clockwise order.
    pub vertices: Vec<(i64, i64)>,
    /// Indices of consecutive vertex pairs.
    pub edges: Vec<(usize, usize)>,
}

impl NewtonPolytope {
    pub fn has_edge(&self, a: (i64, i64), b: (i64, i64)) -> bool {
        self.edges.iter().any(|&(i, j)| {
            let (u, v) = (self.vertices[i], self.vertices[j]);
            (u == a && v == b) || (u == b && v == a)
        })
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

pub fn newton_polytope(f: &IntPoly) -> NewtonPolytope {
    assert_eq!(f.nvars(), 2);
    let mut pts: Vec<(i64, i64)> = f.terms().map(|(m, _)| (m.0[0] as i64, m.0[1] as i64)).collect();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        let edges = if pts.len() == 2 { alloc::vec![(0, 1)] } else { Vec::new() };
        return NewtonPolytope { vertices: pts, edges };
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let k = lower.len();
    let edges = if k == 2 { alloc::vec![(0, 1)] } else { (0..k).map(|i| (i, (i + 1) % k)).collect() };
    NewtonPolytope { vertices: lower, edges }
}

/// Sufficient condition for absolute irreducibility in every characteristic
/// not dividing the edge coefficients: `f` has terms `x^d` and `y^d'` with
/// `gcd(d, d') = 1` and every other exponent `(i, j)` lies strictly below the
/// segment between them, `i d' + j d < d d'`. `false` means inconclusive.
pub fn gao_edge_criterion(f: &IntPoly) -> bool {
    assert_eq!(f.nvars(), 2);
    let d = f.terms().filter(|(m, _)| m.0[1] == 0).map(|(m, _)| m.0[0]).max().unwrap_or(0) as i64;
    let dp = f.terms().filter(|(m, _)| m.0[0] == 0).map(|(m, _)| m.0[1]).max().unwrap_or(0) as i64;
    if d == 0 || dp == 0 || d.gcd(&dp) != 1 {
        return false;
    }
    f.terms().all(|(m, _)| {
        let (i, j) = (m.0[0] as i64, m.0[1] as i64);
        (i, j) == (d, 0) || (i, j) == (0, dp) || i * dp + j * d < d * dp
    })
}

/// The edge criterion applied to the reduction modulo `p`.
pub fn gao_edge_criterion_mod_p(f: &IntPoly, p: u64) -> bool {
    match f.reduce_mod_p(p) {
        Ok(r) => gao_edge_criterion(&r.lift()),
        Err(_) => false,
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
    fn edge_examples() {
        assert!(gao_edge_criterion(&p("y^2 - x^5 - x - 1")));
        assert!(!gao_edge_criterion(&p("y^2 - x^4")));
        assert!(gao_edge_criterion(&p("y^3 - x^2 + x*y")));
        assert!(!gao_edge_criterion(&p("y^3 - x^2 + x*y^2")));
        assert!(!gao_edge_criterion_mod_p(&p("y^2 - 2*x^5 - 1"), 2));
        assert!(gao_edge_criterion_mod_p(&p("y^2 - 2*x^5 - 1"), 3));
    }

    #[test]
    fn hull() {
        let np = newton_polytope(&p("y^2 - x^5 - x - 1"));
        assert!(np.has_edge((5, 0), (0, 2)));
        assert_eq!(np.vertices.len(), 3);
        let sq = newton_polytope(&p("1 + x + y + x*y"));
        assert_eq!(sq.vertices.len(), 4);
        assert!(!sq.has_edge((1, 0), (0, 1)));
    }
}
