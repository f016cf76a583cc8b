//! Small number-theoretic helpers used by base-set materialization and the
//! structure witnesses.

/// Trial-division primality test. `1` is not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Number of prime factors of `n` counted with multiplicity; 0 for `n = 1`.
pub fn prime_omega(n: u64) -> u64 {
    assert!(n >= 1, "prime_omega is defined on naturals >= 1");
    let mut n = n;
    let mut count = 0;
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// Smallest prime that does not divide `a` (with `a != 0`).
pub fn smallest_prime_not_dividing(a: i64) -> u64 {
    debug_assert!(a != 0);
    let a = a.unsigned_abs();
    let mut p = 2u64;
    loop {
        if is_prime(p) && !a.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
}
