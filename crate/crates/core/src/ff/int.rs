//! Integer helpers shared across the crate.

use num_integer::Integer;
use num_prime::nt_funcs::{factorize64, is_prime64};

pub fn is_prime(n: u64) -> bool {
    is_prime64(n)
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    if n <= 1 {
        return Vec::new();
    }
    factorize64(n).into_keys().collect()
}

/// Splits `q = p^k`; `None` unless `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let primes = prime_factors(q);
    if primes.len() != 1 {
        return None;
    }
    let p = primes[0];
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Multiplicative order of `q` modulo `n` (1 for `n = 1`).
pub fn multiplicative_order(q: u64, n: u64) -> u64 {
    assert!(n >= 1 && gcd(q, n) == 1);
    if n == 1 {
        return 1;
    }
    let (q, n) = (q as u128 % n as u128, n as u128);
    let mut acc = q;
    let mut t = 1;
    while acc != 1 {
        acc = acc * q % n;
        t += 1;
    }
    t
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let large: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.extend(large);
    out
}

/// 2-adic valuation; `a` must be nonzero.
pub fn nu2(a: u64) -> u32 {
    a.trailing_zeros()
}

/// `rad(n) | m`: every prime factor of `n` divides `m`.
pub fn radical_divides(n: u64, m: u64) -> bool {
    prime_factors(n).iter().all(|p| m % p == 0)
}
