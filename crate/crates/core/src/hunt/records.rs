use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::curves::{trace_of_legendre, trace_of_v1, trace_of_v2, FrobeniusTrace};
use crate::error::{Error, Result};
use crate::families::{classify_bound, CurveReport, Family, FamilyContext};
use crate::gf::PrimeField;
use crate::poly::{build_f_ab, build_w_components};
use crate::split::{admissible_splits, quotient_curves, SplitResult};

/// Column order of the CSV schema.
pub const CSV_COLUMNS: [&str; 18] = [
    "family",
    "p",
    "k",
    "a",
    "b",
    "q",
    "genus",
    "count",
    "serre_bound",
    "bound_class",
    "lambda",
    "mu",
    "theta",
    "t_sigma",
    "t_tau",
    "t_v1",
    "t_v2",
    "skip_reason",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    /// One JSON object per line.
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// Streams reports to a writer. An optional comment line (`# ...`) precedes
/// the payload; readers skip it.
pub struct RecordWriter<W: Write> {
    inner: Inner<W>,
}

#[allow(clippy::large_enum_variant)]
enum Inner<W: Write> {
    Csv(csv::Writer<W>),
    Json(W),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(mut out: W, format: Format, comment: Option<&str>) -> Result<Self> {
        if let Some(c) = comment {
            writeln!(out, "# {c}")?;
        }
        let inner = match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(out);
                w.write_record(CSV_COLUMNS)?;
                Inner::Csv(w)
            }
            Format::Json => Inner::Json(out),
        };
        Ok(RecordWriter { inner })
    }

    pub fn write(&mut self, r: &CurveReport) -> Result<()> {
        match &mut self.inner {
            Inner::Csv(w) => w.serialize(r)?,
            Inner::Json(w) => {
                serde_json::to_writer(&mut *w, r)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        match self.inner {
            Inner::Csv(w) => w.into_inner().map_err(|e| Error::Io(e.into_error())),
            Inner::Json(mut w) => {
                w.flush()?;
                Ok(w)
            }
        }
    }
}

pub fn write_records<W: Write>(
    out: W,
    format: Format,
    comment: Option<&str>,
    reports: &[CurveReport],
) -> Result<W> {
    let mut w = RecordWriter::new(out, format, comment)?;
    for r in reports {
        w.write(r)?;
    }
    w.finish()
}

/// A record that could not be parsed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Malformed {
    pub line: u64,
    pub msg: String,
}

/// Records from a file, with the 1-based line each came from.
#[derive(Clone, Debug, Default)]
pub struct ParsedRecords {
    pub records: Vec<(u64, CurveReport)>,
    pub malformed: Vec<Malformed>,
}

/// Parse CSV or JSON-lines records; the format is sniffed from the first
/// non-comment line.
pub fn read_records<R: Read>(input: R) -> Result<ParsedRecords> {
    let mut lines = Vec::new();
    for line in BufReader::new(input).lines() {
        lines.push(line?);
    }
    let first = lines
        .iter()
        .map(|l| l.trim())
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        None => Ok(ParsedRecords::default()),
        Some(l) if l.starts_with('{') => Ok(parse_json_lines(&lines)),
        Some(_) => parse_csv(&lines.join("\n")),
    }
}

pub fn read_records_from(path: &Path) -> Result<ParsedRecords> {
    read_records(File::open(path)?)
}

fn parse_json_lines(lines: &[String]) -> ParsedRecords {
    let mut out = ParsedRecords::default();
    for (i, l) in lines.iter().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let line = i as u64 + 1;
        match serde_json::from_str(l) {
            Ok(r) => out.records.push((line, r)),
            Err(e) => out.malformed.push(Malformed {
                line,
                msg: e.to_string(),
            }),
        }
    }
    out
}

fn parse_csv(text: &str) -> Result<ParsedRecords> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(Error::Malformed {
            line: rdr.position().line(),
            msg: format!("unexpected header {:?}", headers.iter().collect::<Vec<_>>()),
        });
    }
    let mut out = ParsedRecords::default();
    for row in rdr.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.malformed.push(Malformed {
                    line,
                    msg: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != CSV_COLUMNS.len() {
            out.malformed.push(Malformed {
                line,
                msg: format!("expected {} fields, found {}", CSV_COLUMNS.len(), row.len()),
            });
            continue;
        }
        match row.deserialize::<CurveReport>(Some(&headers)) {
            Ok(r) => out.records.push((line, r)),
            Err(e) => out.malformed.push(Malformed {
                line,
                msg: e.to_string(),
            }),
        }
    }
    Ok(out)
}

/// Why a record failed verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Mismatch {
    /// `p`, `q`, `genus` or `serre_bound` inconsistent with `(family, p, k)`.
    Header(String),
    /// Recorded count differs from the recomputation.
    Count {
        recorded: Option<i128>,
        computed: Option<i128>,
    },
    BoundClass {
        recorded: String,
        computed: String,
    },
    /// `(lambda, mu, theta)` is not produced by any admissible ordering.
    WitnessInvalid,
    /// The witness yields a different count than the record.
    WitnessCount {
        recorded: Option<i128>,
        computed: i128,
    },
    Traces(String),
    SkipReason {
        recorded: Option<String>,
        computed: Option<String>,
    },
}

impl Mismatch {
    pub fn code(&self) -> &'static str {
        match self {
            Mismatch::Header(_) => "header_mismatch",
            Mismatch::Count { .. } => "count_mismatch",
            Mismatch::BoundClass { .. } => "bound_class_mismatch",
            Mismatch::WitnessInvalid => "witness_invalid",
            Mismatch::WitnessCount { .. } => "witness_count_mismatch",
            Mismatch::Traces(_) => "trace_mismatch",
            Mismatch::SkipReason { .. } => "skip_reason_mismatch",
        }
    }
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_opt = |x: &Option<i128>| x.map_or("none".to_string(), |v| v.to_string());
        match self {
            Mismatch::Header(m) | Mismatch::Traces(m) => write!(f, "{}: {m}", self.code()),
            Mismatch::Count { recorded, computed } => write!(
                f,
                "{}: recorded {}, computed {}",
                self.code(),
                fmt_opt(recorded),
                fmt_opt(computed)
            ),
            Mismatch::BoundClass { recorded, computed } => {
                write!(
                    f,
                    "{}: recorded {recorded}, computed {computed}",
                    self.code()
                )
            }
            Mismatch::WitnessInvalid => f.write_str(self.code()),
            Mismatch::WitnessCount { recorded, computed } => write!(
                f,
                "{}: recorded {}, witness gives {computed}",
                self.code(),
                fmt_opt(recorded)
            ),
            Mismatch::SkipReason { recorded, computed } => write!(
                f,
                "{}: recorded {:?}, computed {:?}",
                self.code(),
                recorded,
                computed
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordCheck {
    pub line: u64,
    pub family: Family,
    pub p: u64,
    pub k: u32,
    pub a: u64,
    pub b: u64,
    pub mismatches: Vec<Mismatch>,
}

impl RecordCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<RecordCheck>,
    pub malformed: Vec<Malformed>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.malformed.is_empty() && self.checks.iter().all(RecordCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RecordCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Recompute every record from scratch and from its witness.
pub fn verify_records(path: &Path) -> Result<VerifyReport> {
    verify_parsed(read_records_from(path)?)
}

pub fn verify_parsed(parsed: ParsedRecords) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        checks: Vec::with_capacity(parsed.records.len()),
        malformed: parsed.malformed,
    };
    for (line, rec) in parsed.records {
        match check_record(&rec) {
            Ok(mismatches) => report.checks.push(RecordCheck {
                line,
                family: rec.family,
                p: rec.p,
                k: rec.k,
                a: rec.a,
                b: rec.b,
                mismatches,
            }),
            Err(e) if e.is_invariant_violation() => return Err(e),
            Err(e) => report.malformed.push(Malformed {
                line,
                msg: e.to_string(),
            }),
        }
    }
    report.malformed.sort_by_key(|m| m.line);
    Ok(report)
}

/// All mismatches between `rec` and a fresh computation.
pub fn check_record(rec: &CurveReport) -> Result<Vec<Mismatch>> {
    let ctx = FamilyContext::new(rec.p)?;
    let fresh = ctx.count(rec.family, rec.a, rec.b, rec.k)?;
    let computed = &fresh.report;
    let mut out = Vec::new();

    let header = [
        ("q", rec.q == computed.q),
        ("genus", rec.genus == computed.genus),
        ("serre_bound", rec.serre_bound == computed.serre_bound),
    ];
    for (name, ok) in header {
        if !ok {
            out.push(Mismatch::Header(format!("{name} inconsistent with p^k")));
        }
    }
    if rec.skip_reason != computed.skip_reason {
        out.push(Mismatch::SkipReason {
            recorded: rec.skip_reason.clone(),
            computed: computed.skip_reason.clone(),
        });
    }
    if rec.count != computed.count {
        out.push(Mismatch::Count {
            recorded: rec.count,
            computed: computed.count,
        });
    }
    if rec.bound_class != computed.bound_class {
        out.push(Mismatch::BoundClass {
            recorded: rec.bound_class.to_string(),
            computed: computed.bound_class.to_string(),
        });
    }
    if let Some(recorded) = rec.count {
        if classify_bound(recorded, rec.q, rec.genus).is_err() {
            out.push(Mismatch::Header(format!(
                "count {recorded} is outside the Hasse-Weil-Serre window"
            )));
        }
    }
    if (rec.t_v1, rec.t_v2) != (computed.t_v1, computed.t_v2) {
        out.push(Mismatch::Traces(format!(
            "t_v1/t_v2 recorded {:?}/{:?}, computed {:?}/{:?}",
            rec.t_v1, rec.t_v2, computed.t_v1, computed.t_v2
        )));
    }
    out.extend(check_witness(&ctx, rec)?);
    Ok(out)
}

fn sorted_pair(x: Option<i64>, y: Option<i64>) -> Option<[i64; 2]> {
    let mut v = [x?, y?];
    v.sort_unstable();
    Some(v)
}

/// Re-derive the count from the recorded `(lambda, mu, theta)`.
fn check_witness(ctx: &FamilyContext, rec: &CurveReport) -> Result<Vec<Mismatch>> {
    let witness = match (rec.lambda, rec.mu, rec.theta) {
        (None, None, None) => return Ok(Vec::new()),
        (Some(l), Some(m), Some(t)) => (l, m, t),
        _ => return Ok(vec![Mismatch::WitnessInvalid]),
    };
    let field = ctx.field();
    let (a, b) = (field.elem(rec.a), field.elem(rec.b));
    let f = match rec.family {
        Family::S => build_f_ab(a, b),
        Family::W => build_w_components(a, b).v3_rhs,
    };
    let matches =
        |sr: &SplitResult| (sr.lambda.value(), sr.mu.value(), sr.theta.value()) == witness;
    let Some(sr) = admissible_splits(&f).into_iter().find(matches) else {
        return Ok(vec![Mismatch::WitnessInvalid]);
    };
    let (es, et) = quotient_curves(&sr);
    let ts = trace_of_legendre(field, &es)?;
    let tt = trace_of_legendre(field, &et)?;

    let mut out = Vec::new();
    if sorted_pair(rec.t_sigma, rec.t_tau)
        != Some({
            let mut v = [ts.value(), tt.value()];
            v.sort_unstable();
            v
        })
    {
        out.push(Mismatch::Traces(format!(
            "t_sigma/t_tau recorded {:?}/{:?}, witness gives {}/{}",
            rec.t_sigma,
            rec.t_tau,
            ts.value(),
            tt.value()
        )));
    }
    let count = witness_count(field, rec, ts, tt)?;
    if rec.count != Some(count) {
        out.push(Mismatch::WitnessCount {
            recorded: rec.count,
            computed: count,
        });
    }
    Ok(out)
}

fn witness_count(
    field: &PrimeField,
    rec: &CurveReport,
    ts: FrobeniusTrace,
    tt: FrobeniusTrace,
) -> Result<i128> {
    let k = rec.k;
    let q = (rec.p as i128).pow(k);
    let split = ts.lift(k) + tt.lift(k);
    Ok(match rec.family {
        Family::S => q + 1 - 3 * split,
        Family::W => {
            let v1 = trace_of_v1(field, rec.a, rec.b)?;
            let v2 = trace_of_v2(field, rec.a, rec.b)?;
            q + 1 - (3 * v1.lift(k) + v2.lift(k) + 3 * split)
        }
    })
}
