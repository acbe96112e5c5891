//! Per-prime scans, parallel over primes.

use dgc_core::arith::primes_up_to;
use dgc_core::irreducibility::reduction_absolutely_irreducible;
use dgc_core::{IntPoly, Result};
use rayon::prelude::*;

/// Primes `p` in `(lo, hi]` for which `f mod p` is not absolutely
/// irreducible, by testing every prime in the interval.
pub fn exhaustive_bad_primes(f: &IntPoly, lo: u64, hi: u64) -> Result<Vec<u64>> {
    let primes: Vec<u64> = primes_up_to(hi).into_iter().filter(|&p| p > lo).collect();
    let flags: Vec<bool> = primes
        .par_iter()
        .map(|&p| reduction_absolutely_irreducible(f, p).map(|ok| !ok))
        .collect::<Result<_>>()?;
    Ok(primes.into_iter().zip(flags).filter_map(|(p, bad)| bad.then_some(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgc_core::poly::parse_poly;

    #[test]
    fn finds_the_planted_prime() {
        let f = parse_poly("x^2 - y^2 - 17389", &["x", "y"]).unwrap();
        assert_eq!(exhaustive_bad_primes(&f, 432, 20_000).unwrap(), vec![17389]);
    }
}
