use crate::arith::primes_up_to;

/// The degree bound for the auxiliary polynomial,
/// `c B^((n+1)/(n d^(1/n))) d^(4-1/n) b / ||f_d||^((1/n) d^(-1-1/n)) + c d^(1-1/n) log B + c d^(4-1/n)`,
/// with the caller's `c` standing in for the unspecified constant.
pub fn walsh_degree_formula(n: u32, d: u32, b: f64, norm_fd: f64, b_f: f64, c: f64) -> f64 {
    let (n, d) = (n as f64, d as f64);
    let inv_n = 1.0 / n;
    let e_b = (n + 1.0) / (n * libm::pow(d, inv_n));
    let e_norm = inv_n / libm::pow(d, 1.0 + inv_n);
    let d_main = libm::pow(d, 4.0 - inv_n);
    c * libm::pow(b, e_b) * d_main * b_f / libm::pow(norm_fd, e_norm)
        + c * libm::pow(d, 1.0 - inv_n) * libm::log(b)
        + c * d_main
}

/// `theta(x) = sum over primes p <= x of log p`.
pub fn chebyshev_theta(x: u64) -> f64 {
    primes_up_to(x).iter().map(|&p| libm::log(p as f64)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChebyshevReport {
    pub x: u64,
    pub theta: f64,
    pub pass: bool,
}

/// Checks `theta(x) <= 2x`.
pub fn chebyshev_check(x: u64) -> ChebyshevReport {
    let theta = chebyshev_theta(x);
    ChebyshevReport { x, theta, pass: theta <= 2.0 * x as f64 }
}

/// Runs one sieve up to `xmax` and checks `theta(x) <= 2x + margin * x` for
/// every integer `1 <= x <= xmax`; returns the first failing `x`.
pub fn chebyshev_first_failure(xmax: u64, margin: f64) -> Option<u64> {
    let primes = primes_up_to(xmax);
    let mut theta = 0.0;
    let mut next = primes.iter().peekable();
    for x in 1..=xmax {
        while let Some(&&p) = next.peek() {
            if p > x {
                break;
            }
            theta += libm::log(p as f64);
            next.next();
        }
        if theta > 2.0 * x as f64 + margin * x as f64 {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walsh_examples() {
        assert_eq!(walsh_degree_formula(1, 2, 1.0, 1.0, 1.0, 1.0), 16.0);
        let e2 = libm::exp(2.0);
        let v = walsh_degree_formula(1, 2, e2, 1.0, 1.0, 1.0);
        // B^(2/2) * 2^3 + 2^0 * 2 + 2^3
        assert!((v - (8.0 * e2 + 10.0)).abs() < 1e-9);
        let mid_zero = walsh_degree_formula(2, 5, 1.0, 7.0, 3.0, 2.0);
        let expected = 2.0 * libm::pow(5.0, 3.5) * 3.0 / libm::pow(7.0, 0.5 / libm::pow(5.0, 1.5)) + 2.0 * libm::pow(5.0, 3.5);
        assert!((mid_zero - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn chebyshev_examples() {
        let r = chebyshev_check(10);
        assert!((r.theta - libm::log(210.0)).abs() < 1e-12 && r.pass);
        assert_eq!(chebyshev_check(1).theta, 0.0);
        assert_eq!(chebyshev_first_failure(10_000, 1e-6), None);
    }
}
