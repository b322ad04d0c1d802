//! Prime-field helpers for randomized identity testing.

/// 2^62 - 57, the largest prime below 2^62.
pub const PRIME: u64 = 4_611_686_018_427_387_847;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse by Fermat; caller guarantees `a != 0 mod p` and `p` prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Signed power, `None` when a negative power of zero is requested.
pub fn ipow_mod(b: u64, e: i64, p: u64) -> Option<u64> {
    if e >= 0 {
        Some(pow_mod(b, e as u64, p))
    } else if b.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(inv_mod(b, p), e.unsigned_abs(), p))
    }
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
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
    fn prime_is_prime() {
        assert!(is_prime(PRIME));
        const { assert!(PRIME > 1u64 << 61) };
        assert!(!is_prime(PRIME - 2));
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(2, 5), 3);
        assert_eq!(mul_mod(inv_mod(12345, PRIME), 12345, PRIME), 1);
        assert_eq!(ipow_mod(0, -1, 7), None);
        assert_eq!(sub_mod(1, 3, 7), 5);
    }
}
