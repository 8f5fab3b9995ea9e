use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::{is_prime, FiniteField};
use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Fields at or below this size get a precomputed quadratic-character table.
const CHI_TABLE_LIMIT: u64 = 1 << 24;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    // p < 2^31 keeps the product below 2^62.
    a * b % p
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub(crate) fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// An element of the prime field F_p.
///
/// The modulus travels with the value so that the field formulas in the
/// splitting code can be written with ordinary operators. Mixing moduli is a
/// logic error and is caught by debug assertions.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 1 && modulus < MAX_MODULUS);
        FieldElement {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        FieldElement {
            value: reduce_i64(value, modulus),
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        FieldElement { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        FieldElement { value: 1, modulus }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        FieldElement {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    /// The representative in `(-p/2, p/2]`, handy for printing traces.
    pub fn centered(self) -> i64 {
        if self.value > self.modulus / 2 {
            self.value as i64 - self.modulus as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Div for FieldElement {
    type Output = Self;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        FieldElement {
            value: sub_mod(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Add<u64> for FieldElement {
    type Output = Self;
    fn add(self, rhs: u64) -> Self {
        self + FieldElement::new(rhs, self.modulus)
    }
}

impl Sub<u64> for FieldElement {
    type Output = Self;
    fn sub(self, rhs: u64) -> Self {
        self - FieldElement::new(rhs, self.modulus)
    }
}

impl Mul<u64> for FieldElement {
    type Output = Self;
    fn mul(self, rhs: u64) -> Self {
        self * FieldElement::new(rhs, self.modulus)
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Quadratic character of `x`: 0 for zero, 1 for nonzero squares, -1 otherwise.
///
/// Euler's criterion; the caller is responsible for the modulus being prime.
pub fn legendre_symbol(x: FieldElement) -> i8 {
    if x.is_zero() {
        return 0;
    }
    let e = x.pow((x.modulus - 1) / 2);
    if e.value == 1 {
        1
    } else {
        debug_assert_eq!(e.value, x.modulus - 1);
        -1
    }
}

/// Square root in F_p by Tonelli-Shanks.
///
/// Returns the root whose representative is at most `(p-1)/2`, so the answer
/// is canonical. `None` exactly when `x` is a non-residue.
pub fn sqrt_mod(x: FieldElement) -> Option<FieldElement> {
    let p = x.modulus;
    match legendre_symbol(x) {
        0 => return Some(x),
        -1 => return None,
        _ => {}
    }

    let root = if p % 4 == 3 {
        x.pow((p + 1) / 4)
    } else {
        // p - 1 = q * 2^s with q odd
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let mut z = FieldElement::new(2, p);
        while legendre_symbol(z) != -1 {
            z = z + 1;
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = x.pow(q);
        let mut r = x.pow(q.div_ceil(2));
        while t.value != 1 {
            let mut i = 1;
            let mut t2 = t * t;
            while t2.value != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            r *= b;
            c = b * b;
            t *= c;
            m = i;
        }
        r
    };
    debug_assert_eq!(root * root, x);
    if root.value > (p - 1) / 2 {
        Some(-root)
    } else {
        Some(root)
    }
}

/// The prime field F_p as an evaluation context.
///
/// Hot loops (character sums) work on raw `u64` residues through this type;
/// small fields carry a table of quadratic characters so that each lookup is
/// constant time.
#[derive(Clone)]
pub struct PrimeField {
    p: u64,
    chi: Option<Vec<i8>>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrimeField")
            .field("p", &self.p)
            .field("chi_table", &self.chi.is_some())
            .finish()
    }
}

impl PrimeField {
    /// Validates that `p` is a prime with `7 <= p < 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if !(7..MAX_MODULUS).contains(&p) {
            return Err(Error::UnsupportedModulus(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let chi = (p <= CHI_TABLE_LIMIT).then(|| {
            let mut table = vec![-1i8; p as usize];
            table[0] = 0;
            for x in 1..=(p - 1) / 2 {
                table[mul_mod(x, x, p) as usize] = 1;
            }
            table
        });
        Ok(PrimeField { p, chi })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement::new(v, self.p)
    }

    #[inline]
    pub fn elem_i64(&self, v: i64) -> FieldElement {
        FieldElement::from_i64(v, self.p)
    }

    /// Quadratic character of a reduced residue.
    #[inline]
    pub fn chi(&self, x: u64) -> i8 {
        debug_assert!(x < self.p);
        match &self.chi {
            Some(t) => t[x as usize],
            None => legendre_symbol(FieldElement {
                value: x,
                modulus: self.p,
            }),
        }
    }

    /// `floor(2 * sqrt(p))`, the Hasse window radius over F_p.
    pub fn hasse_radius(&self) -> u64 {
        super::floor_isqrt(4 * self.p as u128) as u64
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> u32 {
        1
    }

    fn order(&self) -> u64 {
        self.p
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn from_base(&self, x: u64) -> u64 {
        x % self.p
    }

    #[inline]
    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.p);
        index
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.p)
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        sub_mod(a, b, self.p)
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    #[inline]
    fn quadratic_character(&self, x: u64) -> i8 {
        self.chi(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u64, p: u64) -> FieldElement {
        FieldElement::new(v, p)
    }

    #[test]
    fn legendre_small_cases() {
        for p in [7, 11, 13, 1327] {
            assert_eq!(legendre_symbol(fe(1, p)), 1);
            assert_eq!(legendre_symbol(fe(0, p)), 0);
        }
        // squares mod 7 are {1, 2, 4}
        let squares: Vec<u64> = (1..7).map(|x| x * x % 7).collect();
        assert!(!squares.contains(&3));
        assert_eq!(legendre_symbol(fe(3, 7)), -1);
    }

    #[test]
    fn sqrt_examples() {
        for p in [7, 11, 13, 17, 1327] {
            assert_eq!(sqrt_mod(fe(4, p)), Some(fe(2, p)));
        }
        assert_eq!(sqrt_mod(fe(2, 7)), Some(fe(3, 7)));
        assert_eq!(sqrt_mod(fe(3, 7)), None);
        assert_eq!(sqrt_mod(fe(0, 13)), Some(fe(0, 13)));
    }

    #[test]
    fn sqrt_exhaustive_for_p_1_mod_8() {
        // 17 and 41 exercise the full Tonelli-Shanks loop (s >= 3).
        for p in [17u64, 41, 97, 113, 257] {
            for x in 0..p {
                let brute = (0..p).any(|r| r * r % p == x);
                match sqrt_mod(fe(x, p)) {
                    Some(r) => {
                        assert!(brute);
                        assert_eq!(r * r, fe(x, p));
                        assert!(r.value() <= (p - 1) / 2);
                    }
                    None => assert!(!brute),
                }
            }
        }
    }

    #[test]
    fn field_rejects_bad_moduli() {
        assert!(matches!(
            PrimeField::new(5),
            Err(Error::UnsupportedModulus(5))
        ));
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        assert!(PrimeField::new(MAX_MODULUS).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn chi_table_matches_euler() {
        let f = PrimeField::new(1327).unwrap();
        for x in 0..1327 {
            assert_eq!(f.chi(x), legendre_symbol(fe(x, 1327)));
        }
    }

    #[test]
    fn arithmetic_near_ceiling() {
        let p = 2_147_483_647; // 2^31 - 1
        let a = fe(p - 1, p);
        assert_eq!(a * a, fe(1, p));
        assert_eq!(a + a, fe(p - 2, p));
        assert_eq!((a / fe(3, p)) * fe(3, p), a);
    }
}
