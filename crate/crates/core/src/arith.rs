//! Integer helpers: primality, sieving, factoring, valuations, binomials.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        return (a % m) * (b % m) % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse for prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: all primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime")
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// p-adic valuation; `None` for zero (valuation +infinity).
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

pub fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    libm::log(top.to_f64().unwrap()) + shift as f64 * core::f64::consts::LN_2
}

/// Prime factorization of `n` (which must be positive) as far as cheaply
/// possible: trial division by primes up to `trial_limit`, then Pollard rho
/// when the cofactor fits in 64 bits. Returns sorted distinct primes and any
/// cofactor left unfactored (1 if complete).
pub fn factor_partial(n: &BigUint, trial_limit: u64) -> (Vec<BigUint>, BigUint) {
    let mut primes: Vec<BigUint> = Vec::new();
    let mut m = n.clone();
    if m.is_zero() {
        return (primes, m);
    }
    let small = primes_up_to(trial_limit.max(2));
    for &q in &small {
        if m.is_one() {
            break;
        }
        let qb = BigUint::from(q);
        if (&m % &qb).is_zero() {
            primes.push(qb.clone());
            while (&m % &qb).is_zero() {
                m /= &qb;
            }
        }
        if &qb * &qb > m {
            break;
        }
    }
    if m.is_one() {
        return (primes, m);
    }
    let limit = BigUint::from(trial_limit.max(2));
    if &limit * &limit >= m {
        primes.push(m);
        primes.sort();
        return (primes, BigUint::one());
    }
    if let Some(v) = m.to_u64() {
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if x == 1 {
                continue;
            }
            if is_prime(x) {
                let b = BigUint::from(x);
                if !primes.contains(&b) {
                    primes.push(b);
                }
                continue;
            }
            let d = pollard_rho(x);
            stack.push(d);
            stack.push(x / d);
        }
        primes.sort();
        return (primes, BigUint::one());
    }
    primes.sort();
    (primes, m)
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn abs_u(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Integer square root (floor) of a nonnegative big integer.
pub fn isqrt(x: &BigUint) -> BigUint {
    num_integer::Roots::sqrt(x)
}

/// `ceil(sqrt(x))`.
pub fn isqrt_ceil(x: &BigUint) -> BigUint {
    let r = isqrt(x);
    if &r * &r == *x {
        r
    } else {
        r + 1u32
    }
}
