use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use sextics::coverfilter::{different_degree, i_sigma_for_order, order_window, pgu3_order};
use sextics::hunt::{
    run_search_with, verify_records, Format, PrimeSet, RecordWriter, SearchSpec, Target,
};
use sextics::poly::{build_f_ab, build_w_components};
use sextics::split::quotient_curves;
use sextics::{find_split, Error, Family, FamilyContext, PrimeField};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(
    version,
    about = "Point counts and record searches for plane sextic families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "W", alias = "w")]
    W,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::S => Family::S,
            FamilyArg::W => Family::W,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Split the genus-2 curve of S_{a,b} (or V3 of W_{a,b}) into elliptic curves
    Split {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum, default_value = "S")]
        family: FamilyArg,
    },
    /// Count points of one curve over F_{p^k}
    Count {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sweep primes and parameters, writing matching records
    Search {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// all, maximal, serre, or at-least:N
        #[arg(long, default_value = "all")]
        target: String,
        #[arg(long)]
        a_min: Option<u64>,
        #[arg(long)]
        a_max: Option<u64>,
        #[arg(long)]
        b_min: Option<u64>,
        #[arg(long)]
        b_max: Option<u64>,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        best_per_prime: bool,
        /// Prefix the output with a `#` line carrying the generation time
        #[arg(long)]
        stamp: bool,
    },
    /// Recompute every record in a file
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Group-order filters for Hermitian quotients
    CoverFilter {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        genus_quotient: u64,
        #[arg(long)]
        points_quotient: u128,
    },
}

enum Failure {
    Usage(String),
    Verify,
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Split { p, a, b, family } => split(p, a, b, family.into()),
        Command::Count {
            family,
            p,
            k,
            a,
            b,
            json,
        } => {
            let out = FamilyContext::new(p)?.count(family.into(), a, b, k)?;
            if json {
                let text = serde_json::to_string_pretty(&out.report).map_err(Error::from)?;
                println!("{text}");
            } else {
                println!("{}", out.report);
                print_traces(&out.report);
                if let Some(sr) = &out.split {
                    let (es, et) = quotient_curves(sr);
                    println!(
                        "witness: ordering {:?}, lambda {}, mu {}, theta {}",
                        sr.ordering(),
                        sr.lambda,
                        sr.mu,
                        sr.theta
                    );
                    println!("E_sigma: {es}");
                    println!("E_tau:   {et}");
                }
            }
            Ok(())
        }
        Command::Search {
            family,
            p_min,
            p_max,
            k,
            target,
            a_min,
            a_max,
            b_min,
            b_max,
            out,
            format,
            jobs,
            best_per_prime,
            stamp,
        } => {
            let mut spec = SearchSpec::new(family.into(), PrimeSet::Range(p_min..=p_max), k);
            spec.target = target.parse::<Target>()?;
            spec.a_range = range(a_min, a_max);
            spec.b_range = range(b_min, b_max);
            spec.best_per_prime = best_per_prime;
            spec.jobs = jobs;
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            let sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            search(&spec, sink, format, stamp)
        }
        Command::Verify { input } => {
            let report = verify_records(&input)?;
            for m in &report.malformed {
                println!("line {}: malformed: {}", m.line, m.msg);
            }
            for c in &report.checks {
                let what = format!("{}_{{{},{}}} p={} k={}", c.family, c.a, c.b, c.p, c.k);
                if c.passed() {
                    println!("line {}: ok {what}", c.line);
                } else {
                    let reasons: Vec<String> = c.mismatches.iter().map(|m| m.to_string()).collect();
                    println!("line {}: FAIL {what}: {}", c.line, reasons.join("; "));
                }
            }
            let failed = report.failures().count() + report.malformed.len();
            println!(
                "{} records, {failed} failed",
                report.checks.len() + report.malformed.len()
            );
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::CoverFilter {
            q,
            genus_quotient,
            points_quotient,
        } => cover_filter(q, genus_quotient, points_quotient),
    }
}

fn range(lo: Option<u64>, hi: Option<u64>) -> Option<std::ops::RangeInclusive<u64>> {
    match (lo, hi) {
        (None, None) => None,
        (lo, hi) => Some(lo.unwrap_or(0)..=hi.unwrap_or(u64::MAX)),
    }
}

fn print_traces(r: &sextics::CurveReport) {
    let named = [
        ("t_sigma", r.t_sigma),
        ("t_tau", r.t_tau),
        ("t_v1", r.t_v1),
        ("t_v2", r.t_v2),
    ];
    let parts: Vec<String> = named
        .iter()
        .filter_map(|(n, t)| t.map(|t| format!("{n} = {t}")))
        .collect();
    if !parts.is_empty() {
        println!("traces: {}", parts.join(", "));
    }
}

fn split(p: u64, a: u64, b: u64, family: Family) -> Result<(), Failure> {
    let field = PrimeField::new(p)?;
    if a >= p || b >= p {
        return Err(Failure::Usage(format!("parameters must lie in [0, {p})")));
    }
    let (fa, fb) = (field.elem(a), field.elem(b));
    let f = match family {
        Family::S => build_f_ab(fa, fb),
        Family::W => build_w_components(fa, fb).v3_rhs,
    };
    println!("y^2 = {f}");
    match find_split(&f) {
        Ok(sr) => {
            let (es, et) = quotient_curves(&sr);
            println!("ordering: {:?}", sr.ordering());
            println!(
                "lambda = {}, mu = {}, theta = {}",
                sr.lambda, sr.mu, sr.theta
            );
            println!("E_sigma: {es}");
            println!("E_tau:   {et}");
        }
        Err(reason) => println!("not applicable: {reason}"),
    }
    Ok(())
}

fn search(
    spec: &SearchSpec,
    sink: Box<dyn Write>,
    format: Format,
    stamp: bool,
) -> Result<(), Failure> {
    let comment = stamp.then(|| {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        format!("generated at unix time {secs}")
    });
    let mut writer = RecordWriter::new(sink, format, comment.as_deref())?;
    let (evaluated, empty) =
        run_search_with(spec, |batch| batch.iter().try_for_each(|r| writer.write(r)))?;
    writer.finish()?.flush()?;
    for e in &empty {
        eprintln!("p = {}: {}", e.p, e.reason);
    }
    eprintln!("{evaluated} parameter points evaluated");
    Ok(())
}

fn cover_filter(q: u64, g: u64, n: u128) -> Result<(), Failure> {
    let order = pgu3_order(q)?;
    let w = order_window(q, g, n)?;
    println!("|PGU(3,{q})| = {} = {order}", order.value);
    println!(
        "g(H) = {}, #H(F_q^2) = {}",
        w.g_hermitian, w.n_points_hermitian
    );
    println!(
        "{} < |G| <= {}; dividing orders: {:?}",
        w.lower_exclusive, w.upper_inclusive, w.candidates
    );
    for &c in &w.candidates {
        let delta = different_degree(w.g_hermitian, g, c as u64);
        let contributions = i_sigma_for_order(c as u64, q)?;
        println!("  |G| = {c}: Delta = {delta}, i(sigma) for order {c}: {contributions:?}");
    }
    Ok(())
}
