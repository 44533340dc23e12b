//! Arithmetic in the prime field F_p for p < 2^63.
//!
//! All functions expect reduced inputs (`a, b < p`) and use u128 intermediates
//! so no operation overflows.

/// Default field modulus: the Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// Smallest modulus accepted by embedding samplers; below this the
/// Schwartz-Zippel error bounds stop being meaningful.
pub const MIN_PRIME: u64 = 1 << 20;

#[inline(always)]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(a < p && b < p);
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline(always)]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(a < p && b < p);
    if a >= b {
        a - b
    } else {
        p - b + a
    }
}

#[inline(always)]
pub fn neg(a: u64, p: u64) -> u64 {
    debug_assert!(a < p);
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline(always)]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(a < p && b < p);
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero and `p` prime.
#[inline]
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0 && a < p);
    pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64. The base set below is known to be
/// exact for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_small_prime() {
        let p = 7;
        assert_eq!(add(5, 4, p), 2);
        assert_eq!(sub(2, 5, p), 4);
        assert_eq!(neg(3, p), 4);
        assert_eq!(mul(5, 2, p), 3);
        assert_eq!(inv(3, p), 5); // 3 * 5 = 15 = 1 mod 7
    }

    #[test]
    fn inverses_default_prime() {
        let p = DEFAULT_PRIME;
        for a in [1u64, 2, 12345, p - 1, 1 << 40] {
            assert_eq!(mul(a, inv(a, p), p), 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64((1 << 31) - 1));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64((1u64 << 61) - 2));
        assert!(!is_prime_u64(3825123056546413051)); // strong pseudoprime to small bases
    }
}
