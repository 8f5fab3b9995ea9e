//! Point counting on the curves that appear in the decompositions.
//!
//! Counts are over smooth models. For `y^2 = f(x)` the affine part is the
//! character sum `sum_x (1 + chi(f(x)))`; an odd-degree model adds one point
//! at infinity, an even-degree model adds two when the leading coefficient is
//! a square in the field and none otherwise.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField, PrimeField};
use crate::par;
use crate::poly::{build_w_components, Poly};
use crate::split::LegendreCubic;

/// Trace of Frobenius of an elliptic curve over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusTrace {
    t1: i64,
    p: u64,
}

impl FrobeniusTrace {
    /// Rejects traces outside the Hasse window `|t| <= floor(2 sqrt p)`.
    pub fn new(t1: i64, p: u64) -> Result<Self> {
        let bound = crate::gf::floor_two_sqrt(p as u128) as u64;
        if t1.unsigned_abs() > bound {
            return Err(Error::HasseViolation {
                trace: t1,
                bound,
                p,
            });
        }
        Ok(FrobeniusTrace { t1, p })
    }

    /// `t = p + 1 - #E(F_p)`
    pub fn from_count(count: u64, p: u64) -> Result<Self> {
        FrobeniusTrace::new(p as i64 + 1 - count as i64, p)
    }

    pub fn value(self) -> i64 {
        self.t1
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn lift(self, k: u32) -> i128 {
        trace_lift(self, k)
    }

    /// `#E(F_{p^k}) = p^k + 1 - t_k`
    pub fn count_over(self, k: u32) -> i128 {
        (self.p as i128).pow(k) + 1 - trace_lift(self, k)
    }
}

/// Power sum `t_k = alpha^k + beta^k` of the Frobenius eigenvalues, using
/// `t_0 = 2` and `t_k = t_1 t_{k-1} - p t_{k-2}` (so `t_2 = t^2 - 2p`,
/// `t_3 = t^3 - 3pt`).
pub fn trace_lift(t: FrobeniusTrace, k: u32) -> i128 {
    assert!(k >= 1, "extension degree must be positive");
    let (t1, p) = (t.t1 as i128, t.p as i128);
    let (mut prev, mut cur) = (2i128, t1);
    for _ in 1..k {
        let next = t1 * cur - p * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Frobenius data of a genus-2 curve, from its counts over F_p and F_{p^2}.
///
/// The two counts fix the first two power sums of the four Frobenius
/// eigenvalues; the functional equation supplies the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genus2Frobenius {
    s1: i128,
    s2: i128,
    p: u64,
}

impl Genus2Frobenius {
    pub fn from_counts(n1: u64, n2: u64, p: u64) -> Result<Self> {
        let q = p as i128;
        let s1 = q + 1 - n1 as i128;
        let s2 = q * q + 1 - n2 as i128;
        if (s1 * s1 - s2) % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "counts {n1}, {n2} are not those of a genus-2 curve over F_{p}"
            )));
        }
        Ok(Genus2Frobenius { s1, s2, p })
    }

    /// `sum_i alpha_i^k` by Newton's identities on
    /// `x^4 - e1 x^3 + e2 x^2 - p e1 x + p^2`.
    pub fn power_sum(&self, k: u32) -> i128 {
        let q = self.p as i128;
        let e = [
            1,
            self.s1,
            (self.s1 * self.s1 - self.s2) / 2,
            q * self.s1,
            q * q,
        ];
        let mut s = vec![4i128, self.s1, self.s2];
        for n in 3..=k as usize {
            let mut acc = 0i128;
            for i in 1..=4.min(n) {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                let term = if i == n {
                    n as i128 * e[i]
                } else {
                    e[i] * s[n - i]
                };
                acc += sign * term;
            }
            s.push(acc);
        }
        s[k as usize]
    }
}

/// `#E(F)` for `s^2 = A t(t-1)(t-lambda_hat)`, including the point at infinity.
pub fn count_legendre_cubic<F: FiniteField>(e: &LegendreCubic, field: &F) -> u64 {
    debug_assert_eq!(field.characteristic(), e.modulus());
    let scale = field.from_base(e.scale().value());
    let lh = field.from_base(e.lambda_hat().value());
    let one = field.one();
    let affine = par::sum_range(field.order(), |i| {
        let t = field.element(i);
        let g = field.mul(
            field.mul(scale, t),
            field.mul(field.sub(t, one), field.sub(t, lh)),
        );
        1 + field.quadratic_character(g) as i64
    });
    affine as u64 + 1
}

/// Smooth-model count of `y^2 = f(x)` over `field`.
///
/// `f` must be squarefree of degree at least 3.
pub fn count_hyperelliptic<F: FiniteField>(f: &Poly, field: &F) -> Result<u64> {
    let deg = match f.degree() {
        Some(d) if d >= 3 => d,
        _ => return Err(Error::Degenerate("hyperelliptic model of degree < 3")),
    };
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let affine = par::sum_range(field.order(), |i| {
        let x = field.element(i);
        1 + field.quadratic_character(f.eval_in(field, x)) as i64
    });
    let at_infinity = if deg % 2 == 1 {
        1
    } else {
        let lc = field.from_base(f.leading_coeff().value());
        (1 + field.quadratic_character(lc)) as i64
    };
    Ok((affine + at_infinity) as u64)
}

/// A homogeneous ternary form over F_p, stored sparsely by monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    degree: u32,
    modulus: u64,
    /// exponent triple of `x^i y^j z^k` -> nonzero coefficient
    terms: BTreeMap<[u32; 3], u64>,
}

impl PlaneCurve {
    /// Build from `(coefficient, [i, j, k])` terms; duplicate monomials are summed.
    pub fn new(degree: u32, modulus: u64, terms: &[(i64, [u32; 3])]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(c, exps) in terms {
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::InvalidArgument(format!(
                    "monomial {exps:?} is not of degree {degree}"
                )));
            }
            let entry = map.entry(exps).or_insert(0u64);
            *entry = (*entry + crate::gf::reduce_i64(c, modulus)) % modulus;
        }
        map.retain(|_, c| *c != 0);
        if map.is_empty() {
            return Err(Error::Degenerate("identically zero plane curve"));
        }
        Ok(PlaneCurve {
            degree,
            modulus,
            terms: map,
        })
    }

    /// `x^3+y^3+z^3 + a(x^2y+xy^2+x^2z+xz^2+y^2z+yz^2) + bxyz`
    pub fn symmetric_cubic(a: FieldElement, b: FieldElement) -> Self {
        let (av, bv) = (a.value() as i64, b.value() as i64);
        let mut terms = vec![
            (1, [3, 0, 0]),
            (1, [0, 3, 0]),
            (1, [0, 0, 3]),
            (bv, [1, 1, 1]),
        ];
        for e in [
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [0, 1, 2],
        ] {
            terms.push((av, e));
        }
        PlaneCurve::new(3, a.modulus(), &terms).expect("cubic has x^3 term")
    }

    /// The Wiman sextic
    /// `x^6+y^6+z^6 + a(x^4y^2+x^2y^4+x^4z^2+x^2z^4+y^4z^2+y^2z^4) + b x^2y^2z^2`.
    pub fn wiman_sextic(a: FieldElement, b: FieldElement) -> Self {
        let (av, bv) = (a.value() as i64, b.value() as i64);
        let mut terms = vec![
            (1, [6, 0, 0]),
            (1, [0, 6, 0]),
            (1, [0, 0, 6]),
            (bv, [2, 2, 2]),
        ];
        for e in [
            [4, 2, 0],
            [2, 4, 0],
            [4, 0, 2],
            [2, 0, 4],
            [0, 4, 2],
            [0, 2, 4],
        ] {
            terms.push((av, e));
        }
        PlaneCurve::new(6, a.modulus(), &terms).expect("sextic has x^6 term")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coefficient(&self, exps: [u32; 3]) -> u64 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    /// Partial derivatives with respect to x, y, z. A derivative may vanish
    /// identically, in which case its term map is empty.
    pub fn gradient(&self) -> [PlaneCurve; 3] {
        std::array::from_fn(|var| {
            let mut terms = BTreeMap::new();
            for (&exps, &c) in &self.terms {
                if exps[var] == 0 {
                    continue;
                }
                let coeff = c * (exps[var] as u64 % self.modulus) % self.modulus;
                if coeff != 0 {
                    let mut e = exps;
                    e[var] -= 1;
                    terms.insert(e, coeff);
                }
            }
            PlaneCurve {
                degree: self.degree - 1,
                modulus: self.modulus,
                terms,
            }
        })
    }

    pub fn eval<F: FiniteField>(&self, field: &F, pt: [F::Elem; 3]) -> F::Elem {
        let d = self.degree as usize;
        let powers: [Vec<F::Elem>; 3] = std::array::from_fn(|v| {
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(field.one());
            for i in 0..d {
                pw.push(field.mul(pw[i], pt[v]));
            }
            pw
        });
        self.terms.iter().fold(field.zero(), |acc, (e, &c)| {
            let m = field.mul(
                field.mul(powers[0][e[0] as usize], powers[1][e[1] as usize]),
                powers[2][e[2] as usize],
            );
            field.add(acc, field.mul(field.from_base(c), m))
        })
    }

    /// The slice `F(x0, y, 1)` as a polynomial in `y`.
    pub fn slice_at_x(&self, x0: u64) -> Poly {
        let p = self.modulus;
        let mut coeffs = vec![0u64; self.degree as usize + 1];
        let mut xpow = vec![1u64; self.degree as usize + 1];
        for i in 1..xpow.len() {
            xpow[i] = crate::gf::mul_mod(xpow[i - 1], x0, p);
        }
        for (e, &c) in &self.terms {
            let j = e[1] as usize;
            coeffs[j] = (coeffs[j] + crate::gf::mul_mod(c, xpow[e[0] as usize], p)) % p;
        }
        Poly::from_coeffs(&coeffs, p)
    }

    /// Projective points: `[x:y:1]`, `[x:1:0]`, `[1:0:0]` in that order of
    /// enumeration. Index arithmetic is shared by the brute-force routines.
    fn projective_point<F: FiniteField>(field: &F, index: u64) -> [F::Elem; 3] {
        let q = field.order();
        if index < q * q {
            [
                field.element(index / q),
                field.element(index % q),
                field.one(),
            ]
        } else if index < q * q + q {
            [field.element(index - q * q), field.one(), field.zero()]
        } else {
            [field.one(), field.zero(), field.zero()]
        }
    }
}

/// Number of projective zeros by enumerating all `q^2 + q + 1` points.
///
/// Equals the smooth-model count only when the plane model is nonsingular.
pub fn count_plane_projective<F: FiniteField>(c: &PlaneCurve, field: &F) -> u64 {
    debug_assert_eq!(field.characteristic(), c.modulus());
    let q = field.order();
    par::sum_range(q * q + q + 1, |i| {
        let pt = PlaneCurve::projective_point(field, i);
        field.is_zero(c.eval(field, pt)) as i64
    }) as u64
}

/// Projective zeros over F_p by counting distinct roots of each vertical slice.
///
/// For every `x0` the number of affine points is `deg gcd(F(x0, y, 1), y^p - y)`,
/// so the cost is `O(p log p)` rather than `O(p^2)`.
pub fn count_plane_projective_fp(c: &PlaneCurve, field: &PrimeField) -> u64 {
    let p = field.modulus();
    debug_assert_eq!(p, c.modulus());
    let affine = par::sum_range(p, |x0| c.slice_at_x(x0).distinct_root_count() as i64);
    let at_infinity = (0..p).filter(|&x| c.eval(field, [x, 1, 0]) == 0).count() as u64
        + (c.eval(field, [1, 0, 0]) == 0) as u64;
    affine as u64 + at_infinity
}

/// Every projective point over `field` where all partial derivatives vanish
/// and the form itself vanishes.
pub fn singular_points<F: FiniteField>(c: &PlaneCurve, field: &F) -> Vec<[F::Elem; 3]> {
    let grad = c.gradient();
    let q = field.order();
    (0..q * q + q + 1)
        .map(|i| PlaneCurve::projective_point(field, i))
        .filter(|&pt| {
            field.is_zero(c.eval(field, pt))
                && grad.iter().all(|g| field.is_zero(g.eval(field, pt)))
        })
        .collect()
}

/// Whether the symmetric cubic `V2` is nonsingular, in closed form.
///
/// Writing the cubic as `e1^3 + alpha e1 e2 + beta e3` in the elementary
/// symmetric functions (`alpha = a - 3`, `beta = b - 3a + 3`), a singular
/// point must have at most two distinct coordinates. That leaves three cases:
/// `beta = 0` (the form factors through `e1`), the point `[1:1:1]`
/// (`9 alpha + beta + 27 = 0`), and points `[u:u:v]` with `u != v`
/// (`beta^2 - alpha^2 beta - alpha^3 = 0`). Valid in characteristic > 3.
pub fn v2_is_nonsingular(a: FieldElement, b: FieldElement) -> bool {
    let alpha = a - 3;
    let beta = b - a * 3 + 3;
    let disc = beta
        * (alpha * 9 + beta + 27)
        * (beta * beta - alpha * alpha * beta - alpha * alpha * alpha);
    !disc.is_zero()
}

/// Trace of Frobenius of `V1: y^2 = ((3a-b-3)x - a + 3)(1 + (a-3)x(1-x))`.
pub fn trace_of_v1(field: &PrimeField, a: u64, b: u64) -> Result<FrobeniusTrace> {
    let rhs = build_w_components(field.elem(a), field.elem(b)).v1_rhs;
    if rhs.degree() != Some(3) {
        return Err(Error::Degenerate("V1 right-hand side has degree < 3"));
    }
    if !rhs.is_squarefree() {
        return Err(Error::Degenerate("V1 right-hand side is not squarefree"));
    }
    let count = count_hyperelliptic(&rhs, field)?;
    FrobeniusTrace::from_count(count, field.modulus())
}

/// Trace of Frobenius of the plane cubic `V2`.
pub fn trace_of_v2(field: &PrimeField, a: u64, b: u64) -> Result<FrobeniusTrace> {
    let (a, b) = (field.elem(a), field.elem(b));
    if !v2_is_nonsingular(a, b) {
        return Err(Error::Degenerate("V2 is a singular cubic"));
    }
    let count = count_plane_projective_fp(&PlaneCurve::symmetric_cubic(a, b), field);
    FrobeniusTrace::from_count(count, field.modulus())
}

/// Trace of Frobenius of a Legendre-form elliptic curve over F_p.
pub fn trace_of_legendre(field: &PrimeField, e: &LegendreCubic) -> Result<FrobeniusTrace> {
    FrobeniusTrace::from_count(count_legendre_cubic(e, field), field.modulus())
}
