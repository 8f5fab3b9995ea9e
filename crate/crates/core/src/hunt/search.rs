use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::families::{BoundClass, CurveReport, Family, FamilyContext};
use crate::gf::{is_prime, MAX_MODULUS};
use crate::par;

/// Which primes to sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSet {
    /// Every entry must be prime.
    List(Vec<u64>),
    /// All primes in the range; composites are skipped.
    Range(RangeInclusive<u64>),
}

/// Which reports to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Every parameter point, including skipped ones.
    All,
    Maximal,
    /// Attains the Serre bound (maximal curves included).
    SerreAttaining,
    AtLeast(i128),
}

impl Target {
    pub fn accepts(self, r: &CurveReport) -> bool {
        match self {
            Target::All => true,
            Target::Maximal => r.bound_class == BoundClass::Maximal,
            Target::SerreAttaining => {
                matches!(
                    r.bound_class,
                    BoundClass::Maximal | BoundClass::SerreAttaining
                )
            }
            Target::AtLeast(n) => r.count.is_some_and(|c| c >= n),
        }
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Target::All),
            "maximal" => Ok(Target::Maximal),
            "serre" | "serre_attaining" => Ok(Target::SerreAttaining),
            _ => s
                .strip_prefix("at-least:")
                .or_else(|| s.strip_prefix("at_least:"))
                .and_then(|n| n.parse().ok())
                .map(Target::AtLeast)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown target {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub family: Family,
    pub primes: PrimeSet,
    pub k: u32,
    /// Defaults to `[0, p)`; clipped to it otherwise.
    pub a_range: Option<RangeInclusive<u64>>,
    pub b_range: Option<RangeInclusive<u64>>,
    pub target: Target,
    /// Keep only the first report with the largest count at each prime.
    pub best_per_prime: bool,
    /// Worker count; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SearchSpec {
    pub fn new(family: Family, primes: PrimeSet, k: u32) -> Self {
        SearchSpec {
            family,
            primes,
            k,
            a_range: None,
            b_range: None,
            target: Target::All,
            best_per_prime: false,
            jobs: None,
        }
    }

    /// The primes to visit, ascending.
    pub fn primes(&self) -> Result<Vec<u64>> {
        if !(1..=3).contains(&self.k) {
            return Err(Error::UnsupportedDegree(self.k));
        }
        let mut ps = match &self.primes {
            PrimeSet::List(list) => {
                for &p in list {
                    if !is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    if !(7..MAX_MODULUS).contains(&p) {
                        return Err(Error::UnsupportedModulus(p));
                    }
                }
                list.clone()
            }
            PrimeSet::Range(r) => {
                let lo = (*r.start()).max(7);
                let hi = (*r.end()).min(MAX_MODULUS - 1);
                (lo..=hi).filter(|&p| is_prime(p)).collect()
            }
        };
        ps.sort_unstable();
        ps.dedup();
        Ok(ps)
    }
}

/// A prime at which the parameter ranges select nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyExpansion {
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub reports: Vec<CurveReport>,
    pub empty: Vec<EmptyExpansion>,
    /// Parameter points evaluated, before target filtering.
    pub evaluated: u64,
}

fn clip(range: &Option<RangeInclusive<u64>>, p: u64) -> Option<RangeInclusive<u64>> {
    let (lo, hi) = match range {
        Some(r) => (*r.start(), (*r.end()).min(p - 1)),
        None => (0, p - 1),
    };
    (lo <= hi).then_some(lo..=hi)
}

fn expand(spec: &SearchSpec, p: u64) -> std::result::Result<Vec<(u64, u64)>, String> {
    let a = clip(&spec.a_range, p).ok_or_else(|| format!("a-range is empty modulo {p}"))?;
    let b = clip(&spec.b_range, p).ok_or_else(|| format!("b-range is empty modulo {p}"))?;
    Ok(a.flat_map(|a| b.clone().map(move |b| (a, b))).collect())
}

fn best_of(reports: Vec<CurveReport>) -> Vec<CurveReport> {
    let mut best: Option<CurveReport> = None;
    for r in reports {
        let better = match (&best, r.count) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(cur), Some(c)) => cur.count.is_none_or(|m| c > m),
        };
        if better {
            best = Some(r);
        }
    }
    best.into_iter().collect()
}

/// Run `spec`, handing each prime's reports to `sink` in `(p, a, b)` order.
///
/// Returns the number of evaluated points and the empty expansions.
pub fn run_search_with<S>(spec: &SearchSpec, mut sink: S) -> Result<(u64, Vec<EmptyExpansion>)>
where
    S: FnMut(&[CurveReport]) -> Result<()>,
{
    let primes = spec.primes()?;
    let mut empty = Vec::new();
    let mut evaluated = 0;
    for p in primes {
        let points = match expand(spec, p) {
            Ok(pts) => pts,
            Err(reason) => {
                empty.push(EmptyExpansion { p, reason });
                continue;
            }
        };
        let ctx = FamilyContext::new(p)?;
        let results = par::with_jobs(spec.jobs, || {
            par::map_ordered(&points, |&(a, b)| {
                ctx.count(spec.family, a, b, spec.k).map(|o| o.report)
            })
        })?;
        evaluated += points.len() as u64;
        let mut kept = Vec::new();
        for r in results {
            let r = r?;
            if spec.target.accepts(&r) {
                kept.push(r);
            }
        }
        if spec.best_per_prime {
            kept = best_of(kept);
        }
        sink(&kept)?;
    }
    Ok((evaluated, empty))
}

/// Run `spec` and collect every kept report.
pub fn run_search(spec: &SearchSpec) -> Result<SearchOutcome> {
    let mut reports = Vec::new();
    let (evaluated, empty) = run_search_with(spec, |batch| {
        reports.extend_from_slice(batch);
        Ok(())
    })?;
    Ok(SearchOutcome {
        reports,
        empty,
        evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing() {
        assert_eq!("all".parse::<Target>().unwrap(), Target::All);
        assert_eq!("serre".parse::<Target>().unwrap(), Target::SerreAttaining);
        assert_eq!(
            "at-least:102".parse::<Target>().unwrap(),
            Target::AtLeast(102)
        );
        assert!("most".parse::<Target>().is_err());
    }

    #[test]
    fn prime_expansion() {
        let spec = SearchSpec::new(Family::S, PrimeSet::Range(1..=30), 1);
        assert_eq!(spec.primes().unwrap(), vec![7, 11, 13, 17, 19, 23, 29]);
        let spec = SearchSpec::new(Family::S, PrimeSet::List(vec![13, 7, 13]), 1);
        assert_eq!(spec.primes().unwrap(), vec![7, 13]);
        assert!(SearchSpec::new(Family::S, PrimeSet::List(vec![9]), 1)
            .primes()
            .is_err());
        assert!(SearchSpec::new(Family::S, PrimeSet::List(vec![5]), 1)
            .primes()
            .is_err());
        assert!(SearchSpec::new(Family::S, PrimeSet::List(vec![7]), 4)
            .primes()
            .is_err());
    }

    #[test]
    fn empty_ranges_are_reported() {
        let mut spec = SearchSpec::new(Family::W, PrimeSet::List(vec![7, 11]), 1);
        spec.a_range = Some(8..=10);
        let out = run_search(&spec).unwrap();
        assert_eq!(out.empty.len(), 1);
        assert_eq!(out.empty[0].p, 7);
        assert_eq!(out.evaluated, 3 * 11);
        assert!(out
            .reports
            .iter()
            .all(|r| r.p == 11 && (8..=10).contains(&r.a)));
    }

    #[test]
    fn deterministic_order() {
        let spec = SearchSpec::new(Family::W, PrimeSet::Range(7..=13), 1);
        let out = run_search(&spec).unwrap();
        let keys: Vec<_> = out.reports.iter().map(|r| (r.p, r.a, r.b)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert_eq!(out.reports.len(), 49 + 121 + 169);
    }

    #[test]
    fn best_per_prime_keeps_first_maximum() {
        let mut spec = SearchSpec::new(Family::W, PrimeSet::List(vec![19]), 1);
        spec.best_per_prime = true;
        let out = run_search(&spec).unwrap();
        assert_eq!(out.reports.len(), 1);
        let best = &out.reports[0];
        spec.best_per_prime = false;
        let all = run_search(&spec).unwrap().reports;
        let max = all.iter().filter_map(|r| r.count).max().unwrap();
        assert_eq!(best.count, Some(max));
        let first = all.iter().find(|r| r.count == Some(max)).unwrap();
        assert_eq!((best.a, best.b), (first.a, first.b));
    }
}
