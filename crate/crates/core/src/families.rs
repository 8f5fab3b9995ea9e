//! The two sextic families and their point counts over F_{p^k}.
//!
//! `S_{a,b}` has genus 6 and `Jac(S) ~ E_sigma^3 x E_tau^3`, where the two
//! elliptic curves split the genus-2 curve `D_{a,b}: y^2 = f_{a,b}(x)`.
//! `W_{a,b}` has genus 10 and `Jac(W) ~ V1^3 x V2 x Jac(V3)^3`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::curves::{
    count_hyperelliptic, trace_of_legendre, trace_of_v1, trace_of_v2, v2_is_nonsingular,
    FrobeniusTrace, Genus2Frobenius,
};
use crate::error::{Error, Result};
use crate::gf::{floor_two_sqrt, make_ext_field, ExtField, FieldElement, PrimeField};
use crate::poly::{build_f_ab, build_w_components, cubic_g1, cubic_g2, resultant};
use crate::split::{find_split, quotient_curves, SplitResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S,
    W,
}

impl Family {
    pub fn genus(self) -> u32 {
        match self {
            Family::S => 6,
            Family::W => 10,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::W => "W",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Family::S),
            "W" | "w" => Ok(Family::W),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClass {
    Maximal,
    SerreAttaining,
    Below,
    NotApplicable,
}

impl BoundClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundClass::Maximal => "maximal",
            BoundClass::SerreAttaining => "serre_attaining",
            BoundClass::Below => "below",
            BoundClass::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for BoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One row of a search table.
///
/// `lambda`, `mu`, `theta` describe the split used (of `f_{a,b}` for `S`, of
/// the right-hand side of `V3` for `W`); `t_sigma`, `t_tau` are the F_p traces
/// of the two quotient curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub family: Family,
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub b: u64,
    pub q: u128,
    pub genus: u32,
    pub count: Option<i128>,
    pub serre_bound: u128,
    pub bound_class: BoundClass,
    pub lambda: Option<u64>,
    pub mu: Option<u64>,
    pub theta: Option<u64>,
    pub t_sigma: Option<i64>,
    pub t_tau: Option<i64>,
    pub t_v1: Option<i64>,
    pub t_v2: Option<i64>,
    pub skip_reason: Option<String>,
}

impl CurveReport {
    fn skeleton(family: Family, p: u64, k: u32, a: u64, b: u64) -> Self {
        let q = (p as u128).pow(k);
        let genus = family.genus();
        CurveReport {
            family,
            p,
            k,
            a,
            b,
            q,
            genus,
            count: None,
            serre_bound: serre_bound(q, genus),
            bound_class: BoundClass::NotApplicable,
            lambda: None,
            mu: None,
            theta: None,
            t_sigma: None,
            t_tau: None,
            t_v1: None,
            t_v2: None,
            skip_reason: None,
        }
    }

    fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.skip_reason = Some(reason.into());
        self
    }

    fn with_split(mut self, sr: &SplitResult) -> Self {
        self.lambda = Some(sr.lambda.value());
        self.mu = Some(sr.mu.value());
        self.theta = Some(sr.theta.value());
        self
    }

    fn finish(mut self, count: i128) -> Result<Self> {
        self.bound_class = classify_bound(count, self.q, self.genus)?;
        self.count = Some(count);
        Ok(self)
    }
}

impl fmt::Display for CurveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{{{},{}}} over F_{}^{} (q = {}, genus {})",
            self.family, self.a, self.b, self.p, self.k, self.q, self.genus
        )?;
        match self.count {
            Some(n) => write!(
                f,
                ": {n} points, {} (Serre bound {})",
                self.bound_class, self.serre_bound
            ),
            None => write!(
                f,
                ": not applicable ({})",
                self.skip_reason.as_deref().unwrap_or("unknown")
            ),
        }
    }
}

/// `q + 1 + g floor(2 sqrt q)`
pub fn serre_bound(q: u128, genus: u32) -> u128 {
    q + 1 + genus as u128 * floor_two_sqrt(q)
}

/// Classify `count` against the Serre bound. A count outside the
/// Hasse-Weil-Serre window is an internal error.
pub fn classify_bound(count: i128, q: u128, genus: u32) -> Result<BoundClass> {
    let upper = serre_bound(q, genus);
    let lower = q as i128 + 1 - (genus as u128 * floor_two_sqrt(q)) as i128;
    if count > upper as i128 || count < lower.max(0) {
        return Err(Error::BoundViolation {
            count,
            bound: upper,
            q,
            genus,
        });
    }
    let root = crate::gf::floor_isqrt(q);
    if root * root == q && count == (q + 1 + 2 * genus as u128 * root) as i128 {
        Ok(BoundClass::Maximal)
    } else if count == upper as i128 {
        Ok(BoundClass::SerreAttaining)
    } else {
        Ok(BoundClass::Below)
    }
}

/// `a + b + 2`, the discriminant `-4a^3 + a^2b^2 + 18ab - 4b^3 - 27` and
/// `Res(g1, g2)` are all nonzero mod `p`.
pub fn genus6_ok(a: u64, b: u64, p: u64) -> bool {
    let (a, b) = (FieldElement::new(a, p), FieldElement::new(b, p));
    let disc = a * a * b * b + a * b * 18 - a * a * a * 4 - b * b * b * 4 - 27;
    !(a + b + 2).is_zero()
        && !disc.is_zero()
        && !resultant(&cubic_g1(a, b), &cubic_g2(a, b)).is_zero()
}

/// `V3` has a squarefree sextic, `V1` a squarefree cubic, and `V2` is a
/// nonsingular plane cubic.
pub fn genus10_ok(a: u64, b: u64, p: u64) -> bool {
    let (fa, fb) = (FieldElement::new(a, p), FieldElement::new(b, p));
    let w = build_w_components(fa, fb);
    w.v3_rhs.degree() == Some(6)
        && w.v3_rhs.is_squarefree()
        && w.v1_rhs.degree() == Some(3)
        && w.v1_rhs.is_squarefree()
        && v2_is_nonsingular(fa, fb)
}

/// A count together with the split it was derived from, if any.
#[derive(Clone, Debug)]
pub struct CountOutcome {
    pub report: CurveReport,
    pub split: Option<SplitResult>,
}

/// Per-prime state shared by every `(a, b)` at that prime.
#[derive(Debug)]
pub struct FamilyContext {
    field: PrimeField,
    quadratic: OnceLock<Result<ExtField>>,
}

impl FamilyContext {
    pub fn new(p: u64) -> Result<Self> {
        Ok(FamilyContext {
            field: PrimeField::new(p)?,
            quadratic: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    fn quadratic_field(&self) -> Result<&ExtField> {
        self.quadratic
            .get_or_init(|| make_ext_field(self.modulus(), 2))
            .as_ref()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    fn check(&self, a: u64, b: u64, k: u32) -> Result<()> {
        let p = self.modulus();
        if !(1..=3).contains(&k) {
            return Err(Error::UnsupportedDegree(k));
        }
        if a >= p || b >= p {
            return Err(Error::InvalidArgument(format!(
                "parameters ({a}, {b}) must lie in [0, {p})"
            )));
        }
        Ok(())
    }

    pub fn count(&self, family: Family, a: u64, b: u64, k: u32) -> Result<CountOutcome> {
        match family {
            Family::S => self.count_s(a, b, k),
            Family::W => self.count_w(a, b, k),
        }
    }

    /// `#S(F_q) = q + 1 - 3 (t_k(E_sigma) + t_k(E_tau))`.
    pub fn count_s(&self, a: u64, b: u64, k: u32) -> Result<CountOutcome> {
        self.check(a, b, k)?;
        let p = self.modulus();
        let report = CurveReport::skeleton(Family::S, p, k, a, b);
        if !genus6_ok(a, b, p) {
            return Ok(CountOutcome {
                report: report.skipped("genus_condition"),
                split: None,
            });
        }
        let f = build_f_ab(self.field.elem(a), self.field.elem(b));
        let sr = match find_split(&f) {
            Ok(sr) => sr,
            Err(reason) => {
                return Ok(CountOutcome {
                    report: report.skipped(reason.as_str()),
                    split: None,
                })
            }
        };
        let (ts, tt) = self.split_traces(&sr)?;
        let q = report.q as i128;
        let count = q + 1 - 3 * (ts.lift(k) + tt.lift(k));
        let mut report = report.with_split(&sr);
        report.t_sigma = Some(ts.value());
        report.t_tau = Some(tt.value());
        Ok(CountOutcome {
            report: report.finish(count)?,
            split: Some(sr),
        })
    }

    /// `#W(F_q) = q + 1 - [3 t_k(V1) + t_k(V2) + 3 s_k(Jac V3)]`.
    ///
    /// `s_k(Jac V3)` comes from the split of `V3` when there is one, and from
    /// direct counts of `V3` over F_p and F_{p^2} otherwise.
    pub fn count_w(&self, a: u64, b: u64, k: u32) -> Result<CountOutcome> {
        self.check(a, b, k)?;
        let p = self.modulus();
        let report = CurveReport::skeleton(Family::W, p, k, a, b);
        if !genus10_ok(a, b, p) {
            return Ok(CountOutcome {
                report: report.skipped("genus_condition"),
                split: None,
            });
        }
        let tv1 = trace_of_v1(&self.field, a, b)?;
        let tv2 = trace_of_v2(&self.field, a, b)?;
        let v3 = build_w_components(self.field.elem(a), self.field.elem(b)).v3_rhs;

        let mut report = report;
        report.t_v1 = Some(tv1.value());
        report.t_v2 = Some(tv2.value());
        let (jac_v3, split) = match find_split(&v3) {
            Ok(sr) => {
                let (t1, t2) = self.split_traces(&sr)?;
                report = report.with_split(&sr);
                report.t_sigma = Some(t1.value());
                report.t_tau = Some(t2.value());
                (t1.lift(k) + t2.lift(k), Some(sr))
            }
            Err(_) => {
                let n1 = count_hyperelliptic(&v3, &self.field)?;
                let s = if k == 1 {
                    p as i128 + 1 - n1 as i128
                } else {
                    let n2 = count_hyperelliptic(&v3, self.quadratic_field()?)?;
                    Genus2Frobenius::from_counts(n1, n2, p)?.power_sum(k)
                };
                (s, None)
            }
        };
        let q = report.q as i128;
        let count = q + 1 - (3 * tv1.lift(k) + tv2.lift(k) + 3 * jac_v3);
        Ok(CountOutcome {
            report: report.finish(count)?,
            split,
        })
    }

    fn split_traces(&self, sr: &SplitResult) -> Result<(FrobeniusTrace, FrobeniusTrace)> {
        let (es, et) = quotient_curves(sr);
        Ok((
            trace_of_legendre(&self.field, &es)?,
            trace_of_legendre(&self.field, &et)?,
        ))
    }
}

/// One-shot `count_S`; builds a fresh per-prime context.
pub fn count_s(a: u64, b: u64, p: u64, k: u32) -> Result<CurveReport> {
    Ok(FamilyContext::new(p)?.count_s(a, b, k)?.report)
}

/// One-shot `count_W`; builds a fresh per-prime context.
pub fn count_w(a: u64, b: u64, p: u64, k: u32) -> Result<CurveReport> {
    Ok(FamilyContext::new(p)?.count_w(a, b, k)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_bound(1760, 1327, 6).unwrap(),
            BoundClass::SerreAttaining
        );
        assert_eq!(classify_bound(990, 529, 10).unwrap(), BoundClass::Maximal);
        assert_eq!(serre_bound(529, 10), 990);
        assert_eq!(classify_bound(72, 19, 10).unwrap(), BoundClass::Below);
        assert_eq!(serre_bound(19, 10), 100);
        assert!(classify_bound(101, 19, 10)
            .unwrap_err()
            .is_invariant_violation());
    }

    #[test]
    fn genus6_conditions() {
        assert!(genus6_ok(444, 469, 1327));
        assert!(genus6_ok(0, 7, 59));
        assert!(!genus6_ok(3, 2, 7)); // a + b + 2 = 0 mod 7
        assert!(!genus6_ok(5, 0, 7));
        let mut vanishing = 0;
        for a in 0..7u64 {
            for b in 0..7u64 {
                let (x, y) = (a as i64, b as i64);
                let d = -4 * x.pow(3) + x * x * y * y + 18 * x * y - 4 * y.pow(3) - 27;
                if d.rem_euclid(7) == 0 {
                    vanishing += 1;
                    assert!(!genus6_ok(a, b, 7), "({a}, {b})");
                }
            }
        }
        assert!(vanishing > 0);
    }

    #[test]
    fn genus10_conditions() {
        assert!(genus10_ok(5, 17, 23));
        assert!(genus10_ok(0, 0, 19));
        for b in 0..23 {
            assert!(!genus10_ok(22, b, 23));
        }
    }

    #[test]
    fn s_examples() {
        let r = count_s(444, 469, 1327, 1).unwrap();
        assert_eq!(r.count, Some(1760));
        assert_eq!(r.bound_class, BoundClass::SerreAttaining);
        assert_eq!((r.t_sigma, r.t_tau), (Some(-72), Some(-72)));

        let r = count_s(0, 7, 59, 2).unwrap();
        assert_eq!(r.count, Some(4190));
        assert_eq!(r.bound_class, BoundClass::Maximal);
    }

    #[test]
    fn w_examples() {
        let r = count_w(5, 17, 23, 2).unwrap();
        assert_eq!(r.count, Some(990));
        assert_eq!(r.bound_class, BoundClass::Maximal);
        assert_eq!([r.t_v1, r.t_v2, r.t_sigma, r.t_tau], [Some(0); 4]);
        let r = count_w(0, 0, 19, 1).unwrap();
        assert_eq!(r.count, Some(72));
        assert_eq!(r.bound_class, BoundClass::Below);
    }

    #[test]
    fn skipped_points_carry_reason() {
        let r = count_s(3, 2, 7, 1).unwrap();
        assert_eq!(r.bound_class, BoundClass::NotApplicable);
        assert_eq!(r.skip_reason.as_deref(), Some("genus_condition"));
        assert_eq!(r.count, None);
        assert!(count_s(7, 0, 7, 1).is_err());
        assert!(count_s(1, 0, 7, 4).is_err());
    }

    #[test]
    fn w_fallback_agrees_with_split_path() {
        // Whenever V3 splits, the direct Jac(V3) route gives the same count.
        let mut checked = 0;
        for p in [11u64, 17, 19] {
            let ctx = FamilyContext::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    let out = ctx.count_w(a, b, 2).unwrap();
                    if out.split.is_none() {
                        continue;
                    }
                    let v3 = build_w_components(ctx.field().elem(a), ctx.field().elem(b)).v3_rhs;
                    let n1 = count_hyperelliptic(&v3, ctx.field()).unwrap();
                    let n2 = count_hyperelliptic(&v3, ctx.quadratic_field().unwrap()).unwrap();
                    let g = Genus2Frobenius::from_counts(n1, n2, p).unwrap();
                    let t = |x: Option<i64>| FrobeniusTrace::new(x.unwrap(), p).unwrap();
                    let r = &out.report;
                    assert_eq!(g.power_sum(2), t(r.t_sigma).lift(2) + t(r.t_tau).lift(2));
                    assert_eq!(g.power_sum(3), t(r.t_sigma).lift(3) + t(r.t_tau).lift(3));
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
