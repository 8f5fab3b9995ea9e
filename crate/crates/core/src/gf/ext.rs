use std::fmt;

use super::prime::{add_mod, mul_mod, sub_mod};
use super::{is_prime, FiniteField};
use crate::error::{Error, Result};

/// Largest extension field order handled (oracle use only).
const MAX_ORDER: u64 = 1 << 40;
const CHI_TABLE_LIMIT: u64 = 1 << 26;

/// Element of F_{p^k} in the power basis `1, x, x^2` (unused slots stay zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtElem(pub [u64; 3]);

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// F_{p^k} for k in {2, 3}, realised as F_p[x] / (m(x)).
#[derive(Clone)]
pub struct ExtField {
    p: u64,
    k: u32,
    /// `m(x) = x^k + c[k-1] x^{k-1} + ... + c[0]`
    low: [u64; 3],
    chi: Option<Vec<i8>>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus_poly())
            .finish()
    }
}

fn has_root(low: &[u64], p: u64) -> bool {
    // monic: x^k + low[k-1] x^{k-1} + ... + low[0]
    (0..p).any(|x| {
        let mut acc = 1u64;
        for &c in low.iter().rev() {
            acc = add_mod(mul_mod(acc, x, p), c, p);
        }
        acc == 0
    })
}

/// Build F_{p^k} from the first monic irreducible of degree `k`.
///
/// Candidates `x^k + c_{k-1} x^{k-1} + ... + c_0` are ordered
/// lexicographically on `(c_0, c_1, ..., c_{k-1})`; for `k <= 3` a candidate
/// is irreducible iff it has no root in F_p.
pub fn make_ext_field(p: u64, k: u32) -> Result<ExtField> {
    if !(k == 2 || k == 3) {
        return Err(Error::UnsupportedExtension(k));
    }
    if p < 7 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (p as u128).pow(k);
    if order > MAX_ORDER as u128 {
        return Err(Error::InvalidArgument(format!(
            "F_{{{p}^{k}}} is too large for enumeration"
        )));
    }
    let k_us = k as usize;
    let mut low = [0u64; 3];
    'scan: for c0 in 0..p {
        // c0 = 0 always has the root 0
        if c0 == 0 {
            continue;
        }
        let rest = p.pow(k - 1);
        for tail in 0..rest {
            low[0] = c0;
            let mut t = tail;
            // c_1 is the next most significant key, so it is the slowest digit
            for i in (1..k_us).rev() {
                low[i] = t % p;
                t /= p;
            }
            if !has_root(&low[..k_us], p) {
                break 'scan;
            }
        }
    }
    let mut field = ExtField {
        p,
        k,
        low,
        chi: None,
    };
    if order as u64 <= CHI_TABLE_LIMIT {
        field.chi = Some(field.build_chi_table());
    }
    Ok(field)
}

impl ExtField {
    pub fn base_modulus(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial, lowest degree first, monic.
    pub fn modulus_poly(&self) -> Vec<u64> {
        let mut v = self.low[..self.k as usize].to_vec();
        v.push(1);
        v
    }

    pub fn index_of(&self, x: ExtElem) -> u64 {
        let mut idx = 0;
        for i in (0..self.k as usize).rev() {
            idx = idx * self.p + x.0[i];
        }
        idx
    }

    pub fn pow(&self, mut base: ExtElem, mut exp: u128) -> ExtElem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The Frobenius `x -> x^p`.
    pub fn frobenius(&self, x: ExtElem) -> ExtElem {
        self.pow(x, self.p as u128)
    }

    fn build_chi_table(&self) -> Vec<i8> {
        let q = self.order();
        let mut table = vec![-1i8; q as usize];
        table[0] = 0;
        for i in 1..q {
            let x = self.element(i);
            let sq = self.mul(x, x);
            table[self.index_of(sq) as usize] = 1;
        }
        table
    }

    fn euler_chi(&self, x: ExtElem) -> i8 {
        if x == ExtElem::default() {
            return 0;
        }
        let e = self.pow(x, (self.order() as u128 - 1) / 2);
        if e == self.one() {
            1
        } else {
            -1
        }
    }
}

impl FiniteField for ExtField {
    type Elem = ExtElem;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    #[inline]
    fn zero(&self) -> ExtElem {
        ExtElem::default()
    }

    #[inline]
    fn one(&self) -> ExtElem {
        ExtElem([1, 0, 0])
    }

    #[inline]
    fn from_base(&self, x: u64) -> ExtElem {
        ExtElem([x % self.p, 0, 0])
    }

    fn element(&self, mut index: u64) -> ExtElem {
        let mut c = [0u64; 3];
        for slot in c.iter_mut().take(self.k as usize) {
            *slot = index % self.p;
            index /= self.p;
        }
        ExtElem(c)
    }

    #[inline]
    fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem([
            add_mod(a.0[0], b.0[0], p),
            add_mod(a.0[1], b.0[1], p),
            add_mod(a.0[2], b.0[2], p),
        ])
    }

    #[inline]
    fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p;
        ExtElem([
            sub_mod(a.0[0], b.0[0], p),
            sub_mod(a.0[1], b.0[1], p),
            sub_mod(a.0[2], b.0[2], p),
        ])
    }

    fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p;
        let k = self.k as usize;
        let mut wide = [0u64; 5];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                wide[i + j] = add_mod(wide[i + j], mul_mod(a.0[i], b.0[j], p), p);
            }
        }
        // x^k = -(low[k-1] x^{k-1} + ... + low[0])
        for top in (k..2 * k - 1).rev() {
            let c = wide[top];
            if c == 0 {
                continue;
            }
            wide[top] = 0;
            for i in 0..k {
                let idx = top - k + i;
                wide[idx] = sub_mod(wide[idx], mul_mod(c, self.low[i], p), p);
            }
        }
        ExtElem([wide[0], wide[1], wide[2]])
    }

    fn quadratic_character(&self, x: ExtElem) -> i8 {
        match &self.chi {
            Some(t) => t[self.index_of(x) as usize],
            None => self.euler_chi(x),
        }
    }
}
