//! `iprng`: period queries, sequence dumps, census, achievable periods and
//! parameter design for inversive generators over `Z_N`.
//!
//! Exit codes: 0 success, 1 usage error or unachievable period, 2
//! verification mismatch, 3 invalid modulus, 4 size guard, 5 internal
//! inconsistency.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iprng_core::census::{scatter_dump, write_census_csv, write_scatter_csv};
use iprng_core::generator::sequence;
use iprng_core::{
    achievable_periods, analytic_distribution, brute_force_distribution, design_triples,
    measure_period, predict_period, Error, Family, IprngParams, PrimeModulus,
};

#[derive(Debug, Parser)]
#[command(
    name = "iprng",
    version,
    about = "Period analysis of inversive generators x -> a/x + b over Z_N"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Preperiod and period of one instance, measured and/or predicted.
    Period {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Print x_1 .. x_count.
    Seq {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'n', long, default_value_t = 10)]
        count: usize,
        /// Emit `n,x` CSV instead of one value per line.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Period distribution of a parameter family as CSV.
    Census {
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long, default_value = "all")]
        family: Family,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Also enumerate every instance and compare (same as `--method both`).
        #[arg(long)]
        verify: bool,
        /// Emit one `index,a,b,x0,period` row per instance instead.
        #[arg(long)]
        scatter: bool,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Achievable periods with their analytic counts.
    Periods {
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long, default_value = "units")]
        family: Family,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Parameter triples (a, b, x0) with a requested period.
    Design {
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long)]
        period: u64,
        #[arg(short = 'n', long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Args)]
struct ModulusArg {
    /// Prime modulus N > 3.
    #[arg(short = 'N', long = "modulus")]
    modulus: u64,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[command(flatten)]
    modulus: ModulusArg,
    #[arg(short = 'a')]
    a: u64,
    #[arg(short = 'b')]
    b: u64,
    #[arg(short = 'x', long = "x0")]
    x0: u64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    workers: Option<usize>,
    /// Allow exhaustive enumeration beyond N = 512.
    #[arg(long)]
    force_large: bool,
}

#[derive(Debug, Args)]
struct OutputArg {
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Analytic,
    Both,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Unachievable(String),
    Mismatch(String),
    InvalidModulus(String),
    TooLarge(String),
    Internal(String),
    Io(io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Unachievable(_) | Failure::Io(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::InvalidModulus(_) => 3,
            Failure::TooLarge(_) => 4,
            Failure::Internal(_) => 5,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotPrime(_) | Error::ModulusTooSmall(_) => Failure::InvalidModulus(msg),
            Error::TooLarge(_) => {
                Failure::TooLarge(format!("{msg}; pass --force-large to override"))
            }
            Error::Unachievable { .. } => Failure::Unachievable(msg),
            Error::Verification(_) => Failure::Internal(msg),
            _ => Failure::Usage(msg),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn open_output(out: &OutputArg) -> io::Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn reduce(name: &str, v: u64, n: u64) -> u64 {
    if v >= n {
        eprintln!("warning: {name}={v} reduced mod {n} to {}", v % n);
    }
    v % n
}

fn instance<'m>(modulus: &'m PrimeModulus, p: &ParamArgs) -> IprngParams<'m> {
    let n = modulus.value();
    IprngParams::new(
        modulus,
        reduce("a", p.a, n),
        reduce("b", p.b, n),
        reduce("x0", p.x0, n),
    )
}

fn cmd_period(params: &ParamArgs, method: Method, out: &OutputArg) -> CmdResult {
    let modulus = PrimeModulus::new(params.modulus.modulus)?;
    let p = instance(&modulus, params);
    let mut w = open_output(out)?;
    writeln!(w, "N={} a={} b={} x0={}", modulus.value(), p.a, p.b, p.x0)?;
    let measured = (method != Method::Analytic).then(|| measure_period(&p));
    let predicted = (method != Method::Brute).then(|| predict_period(&p));
    if let Some(r) = measured {
        writeln!(w, "preperiod: {}", r.preperiod)?;
        writeln!(w, "period: {}", r.period)?;
        writeln!(w, "hits_zero: {}", r.hits_zero)?;
    }
    if let Some(c) = predicted {
        writeln!(w, "class: {}", c.tag)?;
        match c.k {
            Some(k) => writeln!(w, "k: {k}")?,
            None => writeln!(w, "k: -")?,
        }
        writeln!(w, "predicted_period: {}", c.predicted_period)?;
    }
    if let (Some(r), Some(c)) = (measured, predicted) {
        let ok = r.period == c.predicted_period;
        writeln!(w, "match: {ok}")?;
        w.flush()?;
        if !ok {
            return Err(Failure::Mismatch(format!(
                "measured period {} differs from predicted {}",
                r.period, c.predicted_period
            )));
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_seq(params: &ParamArgs, count: usize, csv: bool, out: &OutputArg) -> CmdResult {
    let modulus = PrimeModulus::new(params.modulus.modulus)?;
    let p = instance(&modulus, params);
    let mut w = open_output(out)?;
    if csv {
        writeln!(w, "n,x")?;
    }
    for (i, x) in sequence(&p, count).into_iter().enumerate() {
        if csv {
            writeln!(w, "{},{x}", i + 1)?;
        } else {
            writeln!(w, "{x}")?;
        }
    }
    w.flush()?;
    Ok(())
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[allow(clippy::too_many_arguments)]
fn cmd_census(
    n: u64,
    family: Family,
    method: Method,
    verify: bool,
    scatter: bool,
    sweep: &SweepArgs,
    out: &OutputArg,
) -> CmdResult {
    let modulus = PrimeModulus::new(n)?;
    let n = modulus.value();
    if scatter {
        let records = scatter_dump(n, family, sweep.force_large)?;
        let mut w = open_output(out)?;
        write_scatter_csv(&mut w, records)?;
        w.flush()?;
        return Ok(());
    }
    let method = if verify { Method::Both } else { method };
    let workers = sweep.workers.unwrap_or_else(default_workers);
    let measured = match method {
        Method::Analytic => None,
        _ => Some(brute_force_distribution(
            n,
            family,
            workers,
            sweep.force_large,
        )?),
    };
    let analytic = match method {
        Method::Brute => None,
        _ => Some(analytic_distribution(n, family)?),
    };
    let mut w = open_output(out)?;
    write_census_csv(&mut w, analytic.as_ref(), measured.as_ref())?;
    w.flush()?;
    if let (Some(a), Some(m)) = (&analytic, &measured) {
        let report = iprng_core::compare(a, m)?;
        if !report.all_match {
            let periods: Vec<String> = report.mismatches().map(|r| r.period.to_string()).collect();
            return Err(Failure::Mismatch(format!(
                "census mismatch at periods {}",
                periods.join(",")
            )));
        }
    }
    Ok(())
}

fn cmd_periods(n: u64, family: Family, out: &OutputArg) -> CmdResult {
    let table = analytic_distribution(n, family)?;
    let mut w = open_output(out)?;
    writeln!(w, "period,count")?;
    for (p, c) in &table.counts {
        writeln!(w, "{p},{c}")?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_design(n: u64, period: u64, count: usize, out: &OutputArg) -> CmdResult {
    let modulus = PrimeModulus::new(n)?;
    let triples = match design_triples(&modulus, period, count) {
        Err(e @ Error::Unachievable { .. }) => {
            let list: Vec<String> = achievable_periods(n)?.iter().map(u64::to_string).collect();
            return Err(Failure::Unachievable(format!(
                "{e}; achievable periods: {}",
                list.join(",")
            )));
        }
        other => other?,
    };
    if triples.len() < count {
        eprintln!(
            "warning: only {} instances have period {period}",
            triples.len()
        );
    }
    let mut w = open_output(out)?;
    writeln!(w, "a,b,x0,period")?;
    for p in &triples {
        writeln!(w, "{},{},{},{period}", p.a, p.b, p.x0)?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Period {
            params,
            method,
            out,
        } => cmd_period(&params, method, &out),
        Command::Seq {
            params,
            count,
            csv,
            out,
        } => cmd_seq(&params, count, csv, &out),
        Command::Census {
            modulus,
            family,
            method,
            verify,
            scatter,
            sweep,
            out,
        } => cmd_census(
            modulus.modulus,
            family,
            method,
            verify,
            scatter,
            &sweep,
            &out,
        ),
        Command::Periods {
            modulus,
            family,
            out,
        } => cmd_periods(modulus.modulus, family, &out),
        Command::Design {
            modulus,
            period,
            count,
            out,
        } => cmd_design(modulus.modulus, period, count, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Usage(m)
                | Failure::Unachievable(m)
                | Failure::Mismatch(m)
                | Failure::InvalidModulus(m)
                | Failure::TooLarge(m)
                | Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
