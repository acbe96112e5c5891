use num_traits::ToPrimitive;

use crate::arith::binomial;

/// `g(k)`: dimension of the degree-`k` piece of the graded ring of the
/// tangent cone at a point of multiplicity `mu` on a hypersurface in
/// `P^(n+1)`. `g(k) = C(n+k, n)` for `k < mu`, else `C(n+k, n) - C(n+k-mu, n)`.
pub fn stalk_hilbert(n: u32, mu: u32, k: u32) -> u64 {
    let full = binomial((n + k) as u64, n as u64);
    let v = if k < mu {
        full
    } else {
        full - binomial((n + k - mu) as u64, n as u64)
    };
    v.to_u64().expect("small")
}

/// `A(s) = n_1 + ... + n_s`, where each `m >= 0` occurs `g(m)` times in the
/// nondecreasing weight sequence.
pub fn weight_partial_sum(n: u32, mu: u32, s: u64) -> u64 {
    let mut left = s;
    let mut acc = 0u64;
    let mut m = 0u32;
    while left > 0 {
        let take = stalk_hilbert(n, mu, m).min(left);
        acc += take * m as u64;
        left -= take;
        m += 1;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StalkProfile {
    pub n: u32,
    pub mu: u32,
}

impl StalkProfile {
    pub fn new(n: u32, mu: u32) -> Self {
        assert!(n >= 1 && mu >= 1);
        StalkProfile { n, mu }
    }

    pub fn hilbert(&self, k: u32) -> u64 {
        stalk_hilbert(self.n, self.mu, k)
    }

    /// The first `s` weights.
    pub fn weights(&self, s: usize) -> alloc::vec::Vec<u32> {
        let mut out = alloc::vec::Vec::with_capacity(s);
        let mut m = 0;
        while out.len() < s {
            for _ in 0..self.hilbert(m) {
                if out.len() == s {
                    break;
                }
                out.push(m);
            }
            m += 1;
        }
        out
    }

    pub fn partial_sum(&self, s: u64) -> u64 {
        weight_partial_sum(self.n, self.mu, s)
    }

    /// `(n!/mu)^(1/n) * n/(n+1) * s^(1+1/n)`.
    pub fn main_term(&self, s: u64) -> f64 {
        let n = self.n as f64;
        let fact: f64 = (1..=self.n).map(|i| i as f64).product();
        libm::pow(fact / self.mu as f64, 1.0 / n) * n / (n + 1.0) * libm::pow(s as f64, 1.0 + 1.0 / n)
    }

    /// `(main_term(s) - A(s)) / s`.
    pub fn defect_ratio(&self, s: u64) -> f64 {
        (self.main_term(s) - self.partial_sum(s) as f64) / s as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_examples() {
        assert_eq!(stalk_hilbert(2, 2, 1), 3);
        assert_eq!(stalk_hilbert(2, 2, 3), 7);
        assert_eq!(stalk_hilbert(1, 1, 5), 1);
        assert_eq!(stalk_hilbert(3, 4, 0), 1);
    }

    #[test]
    fn partial_sums() {
        assert_eq!(weight_partial_sum(1, 1, 3), 3);
        assert_eq!(weight_partial_sum(1, 1, 1), 0);
        // g = 1, 2, 3, ... for a smooth surface point: weights 0, 1, 1, 2, 2, 2, ...
        assert_eq!(StalkProfile::new(2, 1).weights(6), alloc::vec![0, 1, 1, 2, 2, 2]);
        assert_eq!(weight_partial_sum(2, 1, 4), 4);
    }

    #[test]
    fn convexity() {
        for n in 1..=3 {
            for mu in 1..=4 {
                let prof = StalkProfile::new(n, mu);
                let a: alloc::vec::Vec<u64> = (0..200).map(|s| prof.partial_sum(s)).collect();
                assert!(a.windows(3).all(|w| w[2] - w[1] >= w[1] - w[0]));
            }
        }
    }
}
