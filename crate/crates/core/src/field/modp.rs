//! Ring homomorphisms into `F_p` for primes just below `2^31`.
//!
//! Reducing a matrix along such a map can only lower its rank, so ranks
//! computed mod `p` are certified lower bounds for the exact rank.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Rational;

/// A prime together with the image of the adjoined element (`α` or `t`).
/// For `Q` the image is unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub p: u64,
    pub image: u64,
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Primes below `2^31`, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Number of primes available to [`nth_prime`].
pub const PRIME_ATTEMPTS: usize = 32;

pub fn nth_prime(n: usize) -> Option<u64> {
    static CACHE: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| primes().take(PRIME_ATTEMPTS).collect())
        .get(n)
        .copied()
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus { r + p } else { r };
    r.to_u64().expect("residue fits")
}

pub fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(big_mod(r.numer(), p), inv_mod(d, p), p))
}

/// A square root of `a` modulo an odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut c = pow_mod(z, q, p);
    let mut x = pow_mod(a, q.div_ceil(2), p);
    let mut t = pow_mod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        x = mul_mod(x, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        m = i;
    }
    Some(x)
}
