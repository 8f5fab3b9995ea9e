//! Numeric filters for Galois covers of a curve by the Hermitian curve.
//!
//! If `H_q -> Y = H_q/G` then `|G|` is squeezed between `#H_q / #Y` and
//! `(2g(H_q) - 2)/(2g(Y) - 2)` and must divide `|PGU(3, q)|`. For each
//! surviving order, Riemann-Hurwitz fixes the different degree
//! `Delta = sum_{sigma != id} i(sigma)`, and the possible `i(sigma)` are tabulated
//! by element class.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::is_prime;

/// A positive integer with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factored {
    pub value: u128,
    /// `(prime, exponent)` with primes ascending
    pub factors: Vec<(u64, u32)>,
}

impl Factored {
    fn from_parts(parts: &[u128]) -> Result<Self> {
        let mut factors = BTreeMap::new();
        let mut value: u128 = 1;
        for &part in parts {
            value = value
                .checked_mul(part)
                .ok_or_else(|| Error::InvalidArgument("group order overflows".into()))?;
            for (pr, e) in trial_factor(part) {
                *factors.entry(pr).or_insert(0) += e;
            }
        }
        Ok(Factored {
            value,
            factors: factors.into_iter().collect(),
        })
    }

    pub fn divides(&self, n: u128) -> bool {
        n != 0 && self.value.is_multiple_of(n)
    }

    /// Every divisor, ascending.
    pub fn divisors(&self) -> Vec<u128> {
        let mut divs = vec![1u128];
        for &(pr, e) in &self.factors {
            let len = divs.len();
            let mut pw = 1u128;
            for _ in 0..e {
                pw *= pr as u128;
                divs.extend((0..len).map(|i| divs[i] * pw).collect::<Vec<_>>());
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(pr, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            match e {
                1 => write!(f, "{pr}")?,
                _ => write!(f, "{pr}^{e}")?,
            }
        }
        Ok(())
    }
}

fn trial_factor(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// `(p, r)` with `q = p^r`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = trial_factor(q as u128);
    match f.as_slice() {
        [(pr, e)] if is_prime(*pr) => Ok((*pr, *e)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

/// `|PGU(3, q)| = q^3 (q^3 + 1)(q^2 - 1)`
pub fn pgu3_order(q: u64) -> Result<Factored> {
    prime_power(q)?;
    let q = q as u128;
    // q^3 (q + 1)(q^2 - q + 1)(q - 1)(q + 1)
    Factored::from_parts(&[q, q, q, q + 1, q * q - q + 1, q - 1, q + 1])
}

/// `q(q - 1)/2`
pub fn hermitian_genus(q: u64) -> u64 {
    q * (q - 1) / 2
}

/// `q^3 + 1`, the number of F_{q^2}-points of the Hermitian curve.
pub fn hermitian_points(q: u64) -> u128 {
    (q as u128).pow(3) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverWindow {
    pub q: u64,
    pub g_hermitian: u64,
    pub n_points_hermitian: u128,
    pub g_quotient: u64,
    pub n_points_quotient: u128,
    pub lower_exclusive: u128,
    pub upper_inclusive: u128,
    pub candidates: Vec<u128>,
}

/// Candidate orders of `G` with `H_q / G` of genus `g_quotient` having
/// `n_points_quotient` points over F_{q^2}.
///
/// A quotient cannot have more rational points than `#H_q / |G|` allows, so
/// `|G| >= #H_q / #Y`; orders below that ratio are excluded.
pub fn order_window(q: u64, g_quotient: u64, n_points_quotient: u128) -> Result<CoverWindow> {
    if g_quotient < 2 {
        return Err(Error::InvalidArgument(format!(
            "quotient genus must be at least 2, got {g_quotient}"
        )));
    }
    if n_points_quotient == 0 {
        return Err(Error::InvalidArgument(
            "quotient must have a rational point".into(),
        ));
    }
    let order = pgu3_order(q)?;
    let g_h = hermitian_genus(q);
    let n_h = hermitian_points(q);
    let upper = (2 * g_h as u128).saturating_sub(2) / (2 * g_quotient as u128 - 2);
    let lower_exclusive = n_h.div_ceil(n_points_quotient) - 1;
    let candidates = (lower_exclusive + 1..=upper)
        .filter(|&n| order.divides(n))
        .collect();
    Ok(CoverWindow {
        q,
        g_hermitian: g_h,
        n_points_hermitian: n_h,
        g_quotient,
        n_points_quotient,
        lower_exclusive,
        upper_inclusive: upper,
        candidates,
    })
}

/// `Delta = (2 g_H - 2) - n (2 g_Y - 2)`
pub fn different_degree(g_h: u64, g_y: u64, n: u64) -> i128 {
    (2 * g_h as i128 - 2) - n as i128 * (2 * g_y as i128 - 2)
}

/// Classes of nontrivial elements of `PGU(3, q)`, each with its hypotheses
/// on the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    /// order 2, `q` odd
    Involution,
    /// order 3 dividing `q + 1`, fixing a triangle of points over F_{q^6}
    Order3TriangleOffCurve,
    /// order dividing `q + 1`, not 2; homology with center on the curve
    HomologyOnCurve,
    /// order dividing `q + 1`, not 2; fixes a self-polar triangle
    SelfPolarTriangle,
    /// order divides `q^2 - 1` but not `q + 1`
    SplitTorus,
    /// order dividing `q^2 - q + 1`, not 3
    Singer,
    /// order 4 in characteristic 2
    Order4Char2,
    /// order `p` odd, fixing a single point of the curve
    UnipotentNonElation,
    /// order `p`, elation with center on the curve
    Elation,
    /// `p` divides the order exactly, order not `p` or 4
    Mixed,
}

impl ElementClass {
    pub const ALL: [ElementClass; 10] = [
        ElementClass::Involution,
        ElementClass::Order3TriangleOffCurve,
        ElementClass::HomologyOnCurve,
        ElementClass::SelfPolarTriangle,
        ElementClass::SplitTorus,
        ElementClass::Singer,
        ElementClass::Order4Char2,
        ElementClass::UnipotentNonElation,
        ElementClass::Elation,
        ElementClass::Mixed,
    ];

    /// Whether an element of order `n` in `PGU(3, q)` may belong to this class.
    pub fn admits(self, n: u64, q: u64) -> Result<bool> {
        let (p, _) = prime_power(q)?;
        let divides = |d: u64, m: u64| d != 0 && m.is_multiple_of(d);
        let q1 = q + 1;
        Ok(match self {
            ElementClass::Involution => n == 2 && divides(2, q1),
            ElementClass::Order3TriangleOffCurve => n == 3 && divides(3, q1),
            ElementClass::HomologyOnCurve | ElementClass::SelfPolarTriangle => {
                n != 2 && n > 1 && divides(n, q1)
            }
            ElementClass::SplitTorus => divides(n, q * q - 1) && !divides(n, q1),
            ElementClass::Singer => n != 3 && n > 1 && divides(n, q * q - q + 1),
            ElementClass::Order4Char2 => p == 2 && n == 4,
            ElementClass::UnipotentNonElation => n == p && p != 2,
            ElementClass::Elation => n == p,
            ElementClass::Mixed => n != p && n != 4 && divides(p, n) && !divides(p * p, n),
        })
    }

    /// `i(sigma)` for an element of this class.
    pub fn contribution(self, q: u64) -> u64 {
        match self {
            ElementClass::Involution | ElementClass::HomologyOnCurve => q + 1,
            ElementClass::Order3TriangleOffCurve | ElementClass::Singer => 3,
            ElementClass::SelfPolarTriangle => 0,
            ElementClass::SplitTorus
            | ElementClass::Order4Char2
            | ElementClass::UnipotentNonElation => 2,
            ElementClass::Elation => q + 2,
            ElementClass::Mixed => 1,
        }
    }
}

/// `i(sigma)` for an element of a given class and order; rejects an order
/// the class does not allow.
pub fn i_sigma(class: ElementClass, n: u64, q: u64) -> Result<u64> {
    if !class.admits(n, q)? {
        return Err(Error::InvalidArgument(format!(
            "an element of order {n} in PGU(3, {q}) cannot be of class {class:?}"
        )));
    }
    Ok(class.contribution(q))
}

/// All values `i(sigma)` can take for an element of order `n`, ascending.
/// Empty if no class admits the order.
pub fn i_sigma_for_order(n: u64, q: u64) -> Result<Vec<u64>> {
    let mut vals = Vec::new();
    for class in ElementClass::ALL {
        if class.admits(n, q)? {
            vals.push(class.contribution(q));
        }
    }
    vals.sort_unstable();
    vals.dedup();
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgu_orders() {
        let o = pgu3_order(23).unwrap();
        assert_eq!(o.factors, vec![(2, 7), (3, 3), (11, 1), (13, 2), (23, 3)]);
        assert_eq!(o.value, 2u128.pow(7) * 27 * 11 * 169 * 23u128.pow(3));
        assert_eq!(o.to_string(), "2^7·3^3·11·13^2·23^3");
        assert_eq!(pgu3_order(2).unwrap().value, 216);
        assert_eq!(pgu3_order(9).unwrap().value, 729 * 730 * 80);
        assert!(pgu3_order(1).is_err());
        assert!(pgu3_order(12).is_err());
    }

    #[test]
    fn divisors_are_complete() {
        let o = pgu3_order(4).unwrap();
        let brute: Vec<u128> = (1..=o.value)
            .filter(|d| o.value.is_multiple_of(*d))
            .collect();
        assert_eq!(o.divisors(), brute);
    }

    #[test]
    fn window_for_wiman_quotient() {
        let w = order_window(23, 10, 990).unwrap();
        assert_eq!((w.lower_exclusive, w.upper_inclusive), (12, 28));
        assert_eq!(w.candidates, vec![13, 16, 18, 22, 23, 24, 26, 27]);
        assert_eq!(w.g_hermitian, 253);
        assert_eq!(w.n_points_hermitian, 12168);
    }

    #[test]
    fn window_edge_cases() {
        let w = order_window(23, 253, 12168).unwrap();
        assert_eq!(w.upper_inclusive, 1);
        assert_eq!(w.candidates, vec![1]);
        let w = order_window(5, 2, 126).unwrap();
        assert_eq!((w.lower_exclusive, w.upper_inclusive), (0, 9));
        assert_eq!(w.candidates, (1..=9).collect::<Vec<_>>());
        assert!(order_window(23, 1, 10).is_err());
    }

    #[test]
    fn different_degrees() {
        let table: Vec<(u64, i128)> = [13, 18, 22, 23, 24, 26]
            .into_iter()
            .map(|n| (n, different_degree(253, 10, n)))
            .collect();
        assert_eq!(
            table,
            vec![
                (13, 270),
                (18, 180),
                (22, 108),
                (23, 90),
                (24, 72),
                (26, 36)
            ]
        );
    }

    #[test]
    fn contributions_by_order() {
        assert_eq!(i_sigma_for_order(13, 23).unwrap(), vec![3]);
        assert_eq!(i_sigma_for_order(2, 23).unwrap(), vec![24]);
        assert_eq!(i_sigma_for_order(23, 23).unwrap(), vec![2, 25]);
        assert_eq!(i_sigma_for_order(3, 23).unwrap(), vec![0, 3, 24]);
        assert_eq!(i_sigma_for_order(11, 23).unwrap(), vec![2]);
        assert_eq!(i_sigma_for_order(46, 23).unwrap(), vec![1]);
        assert!(i_sigma_for_order(5, 23).unwrap().is_empty());
        // order-13 cyclic quotient: 12 * 3 = 36 != 270
        assert_ne!(
            12 * i_sigma_for_order(13, 23).unwrap()[0] as i128,
            different_degree(253, 10, 13)
        );
    }

    #[test]
    fn class_hypotheses() {
        assert_eq!(i_sigma(ElementClass::Involution, 2, 23).unwrap(), 24);
        assert!(i_sigma(ElementClass::Involution, 2, 8).is_err());
        assert_eq!(i_sigma(ElementClass::Order4Char2, 4, 8).unwrap(), 2);
        assert!(i_sigma(ElementClass::Order4Char2, 4, 9).is_err());
        assert_eq!(i_sigma(ElementClass::Elation, 3, 9).unwrap(), 11);
        assert!(i_sigma(ElementClass::UnipotentNonElation, 2, 8).is_err());
        assert_eq!(i_sigma(ElementClass::SelfPolarTriangle, 4, 23).unwrap(), 0);
        assert!(i_sigma(ElementClass::Singer, 3, 23).is_err());
    }
}
