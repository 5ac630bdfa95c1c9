//! Small number-theoretic helpers: plain trial division and prime walks.

/// Deterministic trial-division primality check.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `n` primes, ascending.
pub fn first_primes(n: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(n as usize);
    let mut candidate = 2;
    while out.len() < n as usize {
        if is_prime(candidate) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// The n-th prime, 1-based (`nth_prime(1) == 2`).
pub fn nth_prime(n: u32) -> u64 {
    assert!(n >= 1, "prime indices start at 1");
    *first_primes(n).last().expect("n >= 1")
}
