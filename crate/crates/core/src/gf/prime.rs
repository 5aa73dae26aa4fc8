//! Trial-division primality and the small amount of number theory the
//! bound calculator needs.

/// Deterministic trial division up to `sqrt(m)`.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m < 4 {
        return true;
    }
    if m.is_multiple_of(2) || m.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) || m.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime `>= m`.
///
/// Every call asserts the Bertrand cap `result < 2m` (for `m >= 2`).
pub fn next_prime_geq(m: u64) -> u64 {
    let start = m.max(2);
    let mut candidate = start;
    while !is_prime(candidate) {
        candidate += 1;
    }
    assert!(
        candidate < 2 * start,
        "Bertrand cap violated: next prime after {start} is {candidate}"
    );
    candidate
}

/// Decomposes `q = p^n` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut n = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Smallest prime power `>= m`. Never larger than [`next_prime_geq`].
pub fn next_prime_power_geq(m: u64) -> u64 {
    let mut candidate = m.max(2);
    while prime_power(candidate).is_none() {
        candidate += 1;
    }
    candidate
}

fn smallest_prime_factor(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    m
}
