//! Dense polynomials over GF(p), constant term first. Only what modulus
//! selection and table construction need.

pub(crate) type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("modulus must be nonzero");
    debug_assert_eq!(m[dm], 1);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let lead = r[dr] as u64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = (lead * c as u64) % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

/// The `index`-th monic polynomial of degree `deg`, in ascending
/// coefficient order with the constant term least significant.
pub(crate) fn monic_from_index(index: u64, deg: usize, p: u32) -> Poly {
    let mut out = Vec::with_capacity(deg + 1);
    let mut rest = index;
    for _ in 0..deg {
        out.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    out.push(1);
    out
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(a: &[u32], p: u32) -> bool {
    let Some(deg) = degree(a) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let divisor = monic_from_index(idx, d, p);
            if rem_monic(a, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of degree `deg` in ascending order.
pub(crate) fn first_irreducible(deg: usize, p: u32) -> Poly {
    let count = (p as u64).pow(deg as u32);
    (0..count)
        .map(|idx| monic_from_index(idx, deg, p))
        .find(|cand| is_irreducible(cand, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_by_x_squared_plus_one() {
        // x^3 = x * x^2 = -x mod (x^2 + 1) over GF(3)
        assert_eq!(rem_monic(&[0, 0, 0, 1], &[1, 0, 1], 3), vec![0, 2]);
    }

    #[test]
    fn ordering_of_monic_candidates() {
        assert_eq!(monic_from_index(0, 2, 3), vec![0, 0, 1]);
        assert_eq!(monic_from_index(1, 2, 3), vec![1, 0, 1]);
        assert_eq!(monic_from_index(3, 2, 3), vec![0, 1, 1]);
    }

    #[test]
    fn known_first_irreducibles() {
        assert_eq!(first_irreducible(1, 5), vec![0, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(2, 5), vec![2, 0, 1]);
    }

    #[test]
    fn product_is_reducible() {
        let f = mul(&[1, 1], &[2, 1], 5);
        assert!(!is_irreducible(&f, 5));
        assert!(is_irreducible(&[2, 0, 1], 5));
    }
}
