//! Finite field arithmetic.
//!
//! [`FieldElement`] and [`PrimeField`] cover F_p for primes `7 <= p < 2^31`.
//! [`ExtField`] provides F_{p^2} and F_{p^3}; it exists so that point counts
//! obtained by trace lifting can be checked against direct enumeration.

mod ext;
mod prime;

use std::fmt::Debug;

pub use ext::{make_ext_field, ExtElem, ExtField};
pub use prime::{legendre_symbol, sqrt_mod, FieldElement, PrimeField, MAX_MODULUS};

pub(crate) use prime::{mul_mod, reduce_i64};

/// The operations the point counters need from a finite field.
///
/// Elements are enumerated by index `0..order()`; index `i < p` is the
/// embedded base-field element `i`.
pub trait FiniteField: Send + Sync {
    type Elem: Copy + PartialEq + Send + Sync + Debug;

    fn characteristic(&self) -> u64;
    fn degree(&self) -> u32;
    fn order(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Embed a residue of the prime subfield.
    #[allow(clippy::wrong_self_convention)]
    fn from_base(&self, x: u64) -> Self::Elem;
    fn element(&self, index: u64) -> Self::Elem;

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    /// 0, 1 or -1 according as `x` is zero, a nonzero square, or a non-square.
    fn quadratic_character(&self, x: Self::Elem) -> i8;

    fn is_zero(&self, x: Self::Elem) -> bool {
        x == self.zero()
    }
}

/// Exact `floor(sqrt(n))`.
pub fn floor_isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // f64 gets within a few units; fix up exactly.
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// `floor(2 * sqrt(q))`, computed as `floor(sqrt(4q))`.
pub fn floor_two_sqrt(q: u128) -> u128 {
    floor_isqrt(4 * q)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
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
    fn isqrt_examples() {
        assert_eq!(floor_isqrt(4), 2);
        assert_eq!(floor_isqrt(4 * 1327), 72);
        assert_eq!(floor_isqrt(4 * 193u128.pow(3)), 5362);
        assert_eq!(floor_isqrt(0), 0);
        assert_eq!(floor_isqrt(3), 1);
    }

    #[test]
    fn isqrt_near_96_bits() {
        let r: u128 = (1 << 48) - 3;
        assert_eq!(floor_isqrt(r * r), r);
        assert_eq!(floor_isqrt(r * r - 1), r - 1);
        assert_eq!(floor_isqrt((r + 1) * (r + 1) - 1), r);
        let p3 = 2_147_483_647u128.pow(3);
        let s = floor_two_sqrt(p3);
        assert!(s * s <= 4 * p3 && (s + 1) * (s + 1) > 4 * p3);
    }

    #[test]
    fn primality_against_sieve() {
        let n = 20_000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), expected, "{i}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
