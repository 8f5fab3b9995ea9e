//! Complete splitting of a genus-2 Jacobian `y^2 = f(x)` into two elliptic
//! curves when `f` has six distinct roots over F_p in a suitable order.
//!
//! Given roots `a1..a6` with
//!
//! ```text
//! (a2-a4)(a1-a6)(a3-a5) = (a2-a6)(a1-a5)(a3-a4)
//! ```
//!
//! set `lambda = (a1-a3)(a2-a4) / ((a2-a3)(a1-a4))`,
//! `mu = (a1-a3)(a2-a5) / ((a2-a3)(a1-a5))` and
//! `theta = c (a2-a3)(a1-a4)(a1-a5)(a1-a6)`. The curve is then isomorphic to
//! `y^2 = theta x(x-1)(x-lambda)(x-mu)(x-nu)` with `nu = lambda(1-mu)/(1-lambda)`,
//! and if `lambda(lambda-mu)` is a square the Jacobian is isogenous over F_p
//! to the product of
//!
//! ```text
//! s^2 = A t(t-1)(t - (1-lambda)(mu - 2 lambda +- 2 sqrt(lambda^2 - lambda mu)) / (mu-1)),
//! A = theta(1-mu)/(1-lambda).
//! ```

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::gf::{legendre_symbol, sqrt_mod, FieldElement};
use crate::poly::Poly;

/// Why [`find_split`] could not produce a splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotApplicable {
    /// `f` is not of degree 6 or does not factor into linear factors over F_p.
    NotSplit,
    RepeatedRoots,
    /// No ordering of the roots satisfies the cross-ratio condition.
    NoAdmissiblePermutation,
    /// Orderings satisfy the cross-ratio condition but `lambda(lambda-mu)` is
    /// never a square.
    NoSquareRoot,
}

impl NotApplicable {
    pub fn as_str(self) -> &'static str {
        match self {
            NotApplicable::NotSplit => "not_split",
            NotApplicable::RepeatedRoots => "repeated_roots",
            NotApplicable::NoAdmissiblePermutation => "no_admissible_permutation",
            NotApplicable::NoSquareRoot => "no_square_root",
        }
    }
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Elliptic curve `s^2 = A t (t - 1)(t - lambda_hat)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LegendreCubic {
    scale: FieldElement,
    lambda_hat: FieldElement,
}

impl LegendreCubic {
    /// `None` if the model is singular (`A = 0` or `lambda_hat` in {0, 1}).
    pub fn new(scale: FieldElement, lambda_hat: FieldElement) -> Option<Self> {
        let nonsingular = !scale.is_zero() && !lambda_hat.is_zero() && lambda_hat.value() != 1;
        nonsingular.then_some(LegendreCubic { scale, lambda_hat })
    }

    /// The coefficient `A`.
    pub fn scale(&self) -> FieldElement {
        self.scale
    }

    pub fn lambda_hat(&self) -> FieldElement {
        self.lambda_hat
    }

    pub fn modulus(&self) -> u64 {
        self.scale.modulus()
    }

    /// Right-hand side `A t (t-1)(t-lambda_hat)` as a polynomial.
    pub fn rhs(&self) -> Poly {
        let p = self.modulus();
        Poly::from_roots(
            self.scale,
            &[FieldElement::zero(p), FieldElement::one(p), self.lambda_hat],
        )
    }
}

impl fmt::Display for LegendreCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^2 = {}*t(t-1)(t-{})", self.scale, self.lambda_hat)
    }
}

/// A verified splitting of `y^2 = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub ordered_roots: [FieldElement; 6],
    pub c: FieldElement,
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub theta: FieldElement,
    /// The canonical square root of `lambda^2 - lambda mu`.
    pub sqrt_disc: FieldElement,
    pub e_sigma: LegendreCubic,
    pub e_tau: LegendreCubic,
}

impl SplitResult {
    /// `nu = lambda(1-mu)/(1-lambda)`, the fifth finite branch point.
    pub fn nu(&self) -> FieldElement {
        let one = FieldElement::one(self.lambda.modulus());
        self.lambda * (one - self.mu) / (one - self.lambda)
    }

    /// The root values in witness order.
    pub fn ordering(&self) -> [u64; 6] {
        self.ordered_roots.map(FieldElement::value)
    }
}

/// `(lambda, mu, theta)` of a root ordering, if the cross-ratio condition holds
/// and the parameters avoid the degenerate values.
fn ordering_parameters(
    r: &[FieldElement; 6],
    c: FieldElement,
) -> Option<(FieldElement, FieldElement, FieldElement)> {
    let [a1, a2, a3, a4, a5, a6] = *r;
    if (a2 - a4) * (a1 - a6) * (a3 - a5) != (a2 - a6) * (a1 - a5) * (a3 - a4) {
        return None;
    }
    let d23 = a2 - a3;
    let (d14, d15) = (a1 - a4, a1 - a5);
    if d23.is_zero() || d14.is_zero() || d15.is_zero() {
        return None;
    }
    let lambda = (a1 - a3) * (a2 - a4) / (d23 * d14);
    let mu = (a1 - a3) * (a2 - a5) / (d23 * d15);
    let theta = c * d23 * d14 * d15 * (a1 - a6);
    let one = FieldElement::one(c.modulus());
    let degenerate = lambda.is_zero()
        || mu.is_zero()
        || lambda == one
        || mu == one
        || lambda == mu
        || theta.is_zero();
    (!degenerate).then_some((lambda, mu, theta))
}

/// Outcome of checking a single ordering.
#[allow(clippy::large_enum_variant)]
enum OrderingCheck {
    CrossRatioFails,
    NonResidue,
    Admissible(SplitResult),
}

fn check_ordering(r: [FieldElement; 6], c: FieldElement) -> OrderingCheck {
    let Some((lambda, mu, theta)) = ordering_parameters(&r, c) else {
        return OrderingCheck::CrossRatioFails;
    };
    let disc = lambda * (lambda - mu);
    if legendre_symbol(disc) != 1 {
        return OrderingCheck::NonResidue;
    }
    let sqrt_disc = sqrt_mod(disc).expect("residue has a square root");
    match curves_from_parameters(lambda, mu, theta, sqrt_disc) {
        Some((e_sigma, e_tau)) => OrderingCheck::Admissible(SplitResult {
            ordered_roots: r,
            c,
            lambda,
            mu,
            theta,
            sqrt_disc,
            e_sigma,
            e_tau,
        }),
        None => OrderingCheck::CrossRatioFails,
    }
}

fn curves_from_parameters(
    lambda: FieldElement,
    mu: FieldElement,
    theta: FieldElement,
    sqrt_disc: FieldElement,
) -> Option<(LegendreCubic, LegendreCubic)> {
    let one = FieldElement::one(lambda.modulus());
    let scale = theta * (one - mu) / (one - lambda);
    let base = mu - lambda * 2;
    let twice_root = sqrt_disc * 2;
    let factor = (one - lambda) / (mu - one);
    let plus = LegendreCubic::new(scale, factor * (base + twice_root))?;
    let minus = LegendreCubic::new(scale, factor * (base - twice_root))?;
    Some((plus, minus))
}

/// The two quotient elliptic curves `(E_sigma, E_tau)`.
///
/// `E_sigma` takes the `+` branch with the canonical square root.
pub fn quotient_curves(sr: &SplitResult) -> (LegendreCubic, LegendreCubic) {
    curves_from_parameters(sr.lambda, sr.mu, sr.theta, sr.sqrt_disc)
        .expect("SplitResult parameters are nondegenerate")
}

/// Six distinct roots and the leading coefficient, or the reason there are none.
fn six_distinct_roots(f: &Poly) -> Result<([FieldElement; 6], FieldElement), NotApplicable> {
    if f.degree() != Some(6) {
        return Err(NotApplicable::NotSplit);
    }
    let fac = f.linear_factorization();
    if !fac.splits_completely() {
        return Err(NotApplicable::NotSplit);
    }
    let roots = fac.roots;
    if roots.windows(2).any(|w| w[0] == w[1]) {
        return Err(NotApplicable::RepeatedRoots);
    }
    Ok((roots.try_into().unwrap(), fac.leading))
}

fn orderings(sorted: [FieldElement; 6]) -> impl Iterator<Item = [FieldElement; 6]> {
    (0..6)
        .permutations(6)
        .map(move |perm| std::array::from_fn(|i| sorted[perm[i]]))
}

/// Find the lexicographically first admissible ordering of the roots of `f`.
///
/// Orderings are index permutations (in lexicographic order) applied to the
/// ascending root list. An ordering is admissible when the cross-ratio
/// condition holds, `lambda` and `mu` are well defined and nondegenerate, and
/// `lambda(lambda - mu)` is a nonzero square.
pub fn find_split(f: &Poly) -> Result<SplitResult, NotApplicable> {
    let (roots, c) = six_distinct_roots(f)?;
    let mut saw_cross_ratio = false;
    for r in orderings(roots) {
        match check_ordering(r, c) {
            OrderingCheck::Admissible(sr) => return Ok(sr),
            OrderingCheck::NonResidue => saw_cross_ratio = true,
            OrderingCheck::CrossRatioFails => {}
        }
    }
    Err(if saw_cross_ratio {
        NotApplicable::NoSquareRoot
    } else {
        NotApplicable::NoAdmissiblePermutation
    })
}

/// Every admissible ordering, in scan order.
pub fn admissible_splits(f: &Poly) -> Vec<SplitResult> {
    match six_distinct_roots(f) {
        Ok((roots, c)) => orderings(roots)
            .filter_map(|r| match check_ordering(r, c) {
                OrderingCheck::Admissible(sr) => Some(sr),
                _ => None,
            })
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Check a user-supplied ordering (e.g. one quoted in a record) against `f`.
///
/// The ordering must be a permutation of the roots of `f`; `None` if it is
/// not admissible.
pub fn split_with_ordering(f: &Poly, ordering: [FieldElement; 6]) -> Option<SplitResult> {
    let (roots, c) = six_distinct_roots(f).ok()?;
    let mut sorted = ordering;
    sorted.sort_by_key(|x| x.value());
    if sorted != roots {
        return None;
    }
    match check_ordering(ordering, c) {
        OrderingCheck::Admissible(sr) => Some(sr),
        _ => None,
    }
}
