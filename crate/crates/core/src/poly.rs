//! Dense univariate polynomials over F_p and the sextic-specific constructors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::curves::PlaneCurve;
use crate::gf::{mul_mod, reduce_i64, FieldElement, FiniteField};

/// A polynomial over F_p, coefficients lowest degree first.
///
/// Always normalized: no trailing zero coefficients, and the zero polynomial
/// has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(modulus: u64) -> Self {
        Poly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::from_coeffs(&[c.value()], c.modulus())
    }

    /// `x - r`
    pub fn linear_root(r: FieldElement) -> Self {
        Poly::from_coeffs(&[(-r).value(), 1], r.modulus())
    }

    pub fn monomial(degree: usize, modulus: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1 % modulus;
        Poly::normalized(modulus, coeffs)
    }

    pub fn from_coeffs(coeffs: &[u64], modulus: u64) -> Self {
        Poly::normalized(modulus, coeffs.iter().map(|&c| c % modulus).collect())
    }

    pub fn from_i64(coeffs: &[i64], modulus: u64) -> Self {
        Poly::normalized(
            modulus,
            coeffs.iter().map(|&c| reduce_i64(c, modulus)).collect(),
        )
    }

    pub fn from_elems(coeffs: &[FieldElement], modulus: u64) -> Self {
        Poly::normalized(modulus, coeffs.iter().map(|c| c.value()).collect())
    }

    /// `c * prod (x - r_i)`
    pub fn from_roots(c: FieldElement, roots: &[FieldElement]) -> Self {
        roots
            .iter()
            .fold(Poly::constant(c), |acc, &r| &acc * &Poly::linear_root(r))
    }

    fn normalized(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { modulus, coeffs }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        FieldElement::new(self.coeffs.get(i).copied().unwrap_or(0), self.modulus)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        FieldElement::new(self.coeffs.last().copied().unwrap_or(0), self.modulus)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        debug_assert_eq!(x.modulus(), self.modulus);
        FieldElement::new(self.eval_raw(x.value()), self.modulus)
    }

    #[inline]
    pub fn eval_raw(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    /// Evaluate at an element of an extension of F_p.
    pub fn eval_in<F: FiniteField>(&self, field: &F, x: F::Elem) -> F::Elem {
        debug_assert_eq!(field.characteristic(), self.modulus);
        self.coeffs.iter().rev().fold(field.zero(), |acc, &c| {
            field.add(field.mul(acc, x), field.from_base(c))
        })
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let p = self.modulus;
        Poly::normalized(
            p,
            self.coeffs
                .iter()
                .map(|&a| mul_mod(a, c.value(), p))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff().inverse() {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Poly {
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Poly::normalized(p, coeffs)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let p = self.modulus;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Poly::zero(p), Poly::zero(p));
        };
        if nd < dd {
            return (Poly::zero(p), self.clone());
        }
        let inv_lead = divisor.leading_coeff().inverse().unwrap().value();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = mul_mod(rem[i + dd], inv_lead, p);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(c, dc, p)) % p;
            }
        }
        rem.truncate(dd);
        (Poly::normalized(p, quot), Poly::normalized(p, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `x^exp mod m`.
    pub fn x_pow_mod(exp: u64, m: &Poly) -> Poly {
        let p = m.modulus;
        let mut acc = Poly::constant(FieldElement::one(p)).rem(m);
        let mut base = Poly::monomial(1, p).rem(m);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Number of distinct roots in F_p, via `deg gcd(f, x^p - x)`.
    ///
    /// The zero polynomial is reported as having `p` roots.
    pub fn distinct_root_count(&self) -> u64 {
        let p = self.modulus;
        match self.degree() {
            None => p,
            Some(0) => 0,
            Some(1) => 1,
            Some(_) => {
                let xp = Poly::x_pow_mod(p, self);
                let g = self.gcd(&(&xp - &Poly::monomial(1, p)));
                g.degree().unwrap_or(0) as u64
            }
        }
    }

    /// All roots in F_p with multiplicity, ascending.
    ///
    /// Exhaustive scan over the field; multiplicities come from repeated
    /// synthetic division. Panics on the zero polynomial.
    pub fn roots(&self) -> Vec<FieldElement> {
        self.linear_factorization().roots
    }

    /// `f = c * prod (x - r_i) * g` with `g` monic and free of F_p-roots.
    pub fn linear_factorization(&self) -> LinearFactorization {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let p = self.modulus;
        let leading = self.leading_coeff();
        let mut rest = self.monic();
        let mut roots = Vec::new();
        for x in 0..p {
            if rest.degree() == Some(0) {
                break;
            }
            while rest.degree().unwrap_or(0) > 0 && rest.eval_raw(x) == 0 {
                rest = rest.divide_by_root(x);
                roots.push(FieldElement::new(x, p));
            }
        }
        LinearFactorization {
            leading,
            roots,
            cofactor: rest,
        }
    }

    /// Exact quotient by `(x - r)`, assuming `r` is a root.
    fn divide_by_root(&self, r: u64) -> Poly {
        let p = self.modulus;
        let n = self.coeffs.len();
        let mut out = vec![0u64; n - 1];
        let mut carry = 0u64;
        for i in (1..n).rev() {
            carry = (self.coeffs[i] + mul_mod(carry, r, p)) % p;
            out[i - 1] = carry;
        }
        Poly::normalized(p, out)
    }

    /// True iff `gcd(f, f')` is constant. Panics on zero.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero(), "squarefreeness of the zero polynomial");
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

/// Output of [`Poly::linear_factorization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub leading: FieldElement,
    pub roots: Vec<FieldElement>,
    pub cofactor: Poly,
}

impl LinearFactorization {
    pub fn splits_completely(&self) -> bool {
        self.cofactor.degree() == Some(0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.modulus)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = rhs.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Poly::normalized(p, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let p = self.modulus;
        Poly::normalized(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Poly::normalized(p, out)
    }
}

/// Resultant of two nonzero polynomials.
///
/// Sylvester convention: `Res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a)`, so
/// `Res(x - a, x - b) = a - b`. Computed with the Euclidean recurrence
/// `Res(f, g) = lc(f)^(deg g - deg r) Res(f, r)` for `r = g mod f`.
pub fn resultant(f: &Poly, g: &Poly) -> FieldElement {
    let p = f.modulus;
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        panic!("resultant of the zero polynomial");
    };
    if m == 0 {
        return f.leading_coeff().pow(n as u64);
    }
    if n == 0 {
        return g.leading_coeff().pow(m as u64);
    }
    if m > n {
        let r = resultant(g, f);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    let r = g.rem(f);
    match r.degree() {
        None => FieldElement::zero(p),
        Some(dr) => f.leading_coeff().pow((n - dr) as u64) * resultant(f, &r),
    }
}

/// `x^3 + b x^2 + a x + 1`
pub fn cubic_g1(a: FieldElement, b: FieldElement) -> Poly {
    let p = a.modulus();
    Poly::from_elems(&[FieldElement::one(p), a, b, FieldElement::one(p)], p)
}

/// `(a+b+2) x^3 - (a+2b+3) x^2 + (b+3) x - 1`
pub fn cubic_g2(a: FieldElement, b: FieldElement) -> Poly {
    let p = a.modulus();
    Poly::from_elems(
        &[-FieldElement::one(p), b + 3, -(a + b * 2 + 3), a + b + 2],
        p,
    )
}

/// `f_{a,b}(x) = -(x^3 + b x^2 + a x + 1)((a+b+2) x^3 - (a+2b+3) x^2 + (b+3) x - 1)`,
/// the right-hand side of the genus-2 quotient `D_{a,b}` of `S_{a,b}`.
pub fn build_f_ab(a: FieldElement, b: FieldElement) -> Poly {
    -&(&cubic_g1(a, b) * &cubic_g2(a, b))
}

/// The three quotient models whose Jacobians make up `Jac(W_{a,b})`.
#[derive(Clone, Debug)]
pub struct WComponents {
    /// `V1: y^2 = ((3a-b-3)x - a + 3)(1 + (a-3)x(1-x))`
    pub v1_rhs: Poly,
    /// `V2: x^3+y^3+z^3 + a(x^2y+xy^2+x^2z+xz^2+y^2z+yz^2) + bxyz = 0`
    pub v2: PlaneCurve,
    /// `V3: y^2 = -((a+1)x^3 + (2a+b)x^2 + 4ax + 4)(x^3 + ax^2 + ax + 1)`
    pub v3_rhs: Poly,
}

pub fn build_w_components(a: FieldElement, b: FieldElement) -> WComponents {
    let p = a.modulus();
    let one = FieldElement::one(p);

    let linear = Poly::from_elems(&[-(a - 3), a * 3 - b - 3], p);
    // 1 + (a-3)x - (a-3)x^2
    let quad = Poly::from_elems(&[one, a - 3, -(a - 3)], p);
    let v1_rhs = &linear * &quad;

    let v3_left = Poly::from_elems(&[FieldElement::new(4, p), a * 4, a * 2 + b, a + 1], p);
    let v3_right = Poly::from_elems(&[one, a, a, one], p);
    let v3_rhs = -&(&v3_left * &v3_right);

    WComponents {
        v1_rhs,
        v2: PlaneCurve::symmetric_cubic(a, b),
        v3_rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u64, p: u64) -> FieldElement {
        FieldElement::new(v, p)
    }

    fn elems(vs: &[u64], p: u64) -> Vec<FieldElement> {
        vs.iter().map(|&v| fe(v, p)).collect()
    }

    #[test]
    fn eval_constant_term() {
        let f = cubic_g1(fe(0, 7), fe(0, 7));
        assert_eq!(f.eval(fe(0, 7)), fe(1, 7));
    }

    #[test]
    fn normalization_and_degree() {
        let f = Poly::from_i64(&[1, 2, 0, 0], 7);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(Poly::from_i64(&[7, 14], 7), Poly::zero(7));
        assert_eq!(Poly::zero(7).degree(), None);
        let g = Poly::from_i64(&[3, 0, 5], 7);
        assert_eq!((&f * &g).degree(), Some(3));
    }

    #[test]
    fn f_444_469_over_1327() {
        let p = 1327;
        let f = build_f_ab(fe(444, p), fe(469, p));
        assert_eq!(f.degree(), Some(6));
        assert_eq!(f.leading_coeff(), fe(412, p));
        assert_eq!(f.eval(fe(548, p)), fe(0, p));
        let mut expected = elems(&[548, 541, 289, 364, 344, 28], p);
        expected.sort_by_key(|x| x.value());
        assert_eq!(f.roots(), expected);
        assert!(f.is_squarefree());
    }

    #[test]
    fn f_0_7_over_59() {
        let p = 59;
        let f = build_f_ab(fe(0, p), fe(7, p));
        let expected = Poly::from_roots(fe(50, p), &elems(&[39, 25, 8, 27, 23, 4], p));
        assert_eq!(f, expected);
    }

    #[test]
    fn f_ab_degree_drops_when_leading_factor_vanishes() {
        let p = 13;
        // a + b + 2 = 0
        let f = build_f_ab(fe(5, p), fe(6, p));
        assert!(f.degree().unwrap() < 6);
    }

    #[test]
    fn w_components_examples() {
        let p = 23;
        let w = build_w_components(fe(5, p), fe(17, p));
        let expected = Poly::from_roots(fe(17, p), &elems(&[22, 14, 13, 11, 6, 5], p));
        assert_eq!(w.v3_rhs, expected);
        assert_eq!(w.v1_rhs.degree(), Some(3));

        let p = 193;
        let w = build_w_components(fe(7, p), fe(120, p));
        let expected = Poly::from_roots(fe(185, p), &elems(&[192, 122, 101, 110, 89, 86], p));
        assert_eq!(w.v3_rhs, expected);

        let w = build_w_components(fe(192, p), fe(3, p));
        assert!(w.v3_rhs.degree().unwrap() <= 5);
    }

    #[test]
    fn roots_edge_cases() {
        assert!(Poly::from_i64(&[1, 0, 1], 7).roots().is_empty());
        for p in [7, 11, 1327] {
            let sq = Poly::from_i64(&[1, -2, 1], p);
            assert_eq!(sq.roots(), elems(&[1, 1], p));
            assert!(!sq.is_squarefree());
        }
    }

    #[test]
    fn resultant_conventions() {
        let p = 101;
        let f = Poly::from_i64(&[3, 1, 4, 1], p);
        assert_eq!(resultant(&f, &f), fe(0, p));
        let (a, b) = (fe(17, p), fe(40, p));
        assert_eq!(
            resultant(&Poly::linear_root(a), &Poly::linear_root(b)),
            a - b
        );
        // constant cases
        let c = Poly::constant(fe(5, p));
        assert_eq!(resultant(&c, &f), fe(5, p).pow(3));
        assert_eq!(resultant(&f, &c), fe(5, p).pow(3));
    }

    #[test]
    fn distinct_root_count_matches_scan() {
        let p = 31;
        let f = Poly::from_roots(fe(3, p), &elems(&[1, 1, 5, 9], p));
        let g = &f * &Poly::from_i64(&[1, 0, 1], p); // x^2 + 1 has no roots mod 31
        assert_eq!(g.distinct_root_count(), 3);
        assert_eq!(Poly::zero(p).distinct_root_count(), p);
        assert_eq!(Poly::constant(fe(2, p)).distinct_root_count(), 0);
    }

    #[test]
    fn display() {
        let f = Poly::from_i64(&[1, 0, 3, 1], 7);
        assert_eq!(f.to_string(), "x^3 + 3*x^2 + 1");
    }
}
