//! Small exact integer helpers shared across the crate.

use alloc::vec::Vec;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest e with p^e dividing n.  Requires n > 0 and p > 1.
pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// p^e, panicking on u64 overflow.  Callers keep exponents within the
/// bounds validated by `FieldSpec`, so overflow here is a bug.
pub(crate) fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power exceeds u64 range")
}

/// Largest e with base^e <= x (zero when base > x).
pub(crate) fn ilog(base: u64, x: u64) -> u32 {
    debug_assert!(base >= 2);
    let mut e = 0;
    let mut acc = 1u64;
    while acc <= x / base {
        acc *= base;
        e += 1;
    }
    e
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Sorted list of all divisors of n > 0.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorisation of n > 0 as (prime, exponent) pairs, ascending.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    debug_assert!(n > 0);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Inverse of a modulo m for gcd(a, m) = 1, m > 1.
pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert!(r0 == 1, "arguments must be coprime");
    t0.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn valuations_and_logs() {
        assert_eq!(valuation(60, 2), 2);
        assert_eq!(valuation(60, 5), 1);
        assert_eq!(valuation(7, 5), 0);
        assert_eq!(ilog(5, 100), 2);
        assert_eq!(ilog(3, 100), 4);
        assert_eq!(ilog(7, 6), 0);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(60), [1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
        assert_eq!(divisors(1), [1]);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(900), [(2, 2), (3, 2), (5, 2)]);
        assert_eq!(factorize(1), []);
    }

    #[test]
    fn inverses() {
        for m in [5u64, 25, 27, 125] {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    assert_eq!(a * mod_inverse(a, m) % m, 1);
                }
            }
        }
    }
}
