//! Period distributions over whole parameter families, computed both from
//! the closed-form counts and by exhaustive enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::thread;

use crate::error::{Error, Result};
use crate::field::{divisors, euler_phi, PrimeModulus};
use crate::generator::PeriodMeter;

/// Largest modulus enumerated exhaustively unless explicitly overridden.
pub const BRUTE_FORCE_LIMIT: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `a * b = 0`: `2N^2 - N` instances.
    AbZero,
    /// `a`, `b` both units: `N (N-1)^2` instances.
    Units,
    /// Every triple: `N^3` instances.
    All,
}

impl Family {
    pub fn contains(self, a: u64, b: u64) -> bool {
        match self {
            Family::AbZero => a == 0 || b == 0,
            Family::Units => a != 0 && b != 0,
            Family::All => true,
        }
    }

    pub fn size(self, n: u64) -> u128 {
        let n = n as u128;
        match self {
            Family::AbZero => 2 * n * n - n,
            Family::Units => n * (n - 1) * (n - 1),
            Family::All => n * n * n,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::AbZero => "ab-zero",
            Family::Units => "units",
            Family::All => "all",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ab-zero" => Ok(Family::AbZero),
            "units" => Ok(Family::Units),
            "all" => Ok(Family::All),
            other => Err(format!(
                "unknown family `{other}` (expected ab-zero, units or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Analytic,
    BruteForce,
}

/// Number of generator instances per period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub modulus: u64,
    pub family: Family,
    pub counts: BTreeMap<u64, u128>,
    pub source: Source,
}

impl DistributionTable {
    fn new(modulus: u64, family: Family, source: Source) -> Self {
        Self {
            modulus,
            family,
            counts: BTreeMap::new(),
            source,
        }
    }

    fn add(&mut self, period: u64, count: u128) {
        if count > 0 {
            *self.counts.entry(period).or_insert(0) += count;
        }
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn get(&self, period: u64) -> u128 {
        self.counts.get(&period).copied().unwrap_or(0)
    }
}

/// Closed-form distribution.
///
/// For `a` and `b` units the contributions are accumulated per divisor `k`
/// of `N - 1` (roots in `Z_N`) and of `N + 1` (conjugate roots), each
/// weighted by the `phi(k)/2` ratio classes and `N - 1` choices of `b`.
/// A zero-free orbit with roots in `Z_N` has `N - k - 1` admissible
/// starting points (the two roots and the `k - 1` zero-reaching values are
/// excluded); with conjugate roots it has `N - k + 1`.
pub fn analytic_distribution(n: u64, family: Family) -> Result<DistributionTable> {
    let modulus = PrimeModulus::new(n)?;
    let mut table = DistributionTable::new(n, family, Source::Analytic);
    let n128 = n as u128;
    if matches!(family, Family::AbZero | Family::All) {
        table.add(1, n128 * n128 + 2 * n128 - 2);
        table.add(2, (n128 - 2) * (n128 - 1));
    }
    if matches!(family, Family::Units | Family::All) {
        let b_choices = n128 - 1;
        table.add(1, (n128 - 2) * (n128 - 1));
        table.add(n - 1, (n128 - 1) * (n128 - 1));
        for k in divisors(n - 1).into_iter().filter(|&k| k > 2) {
            let classes = (euler_phi(k) / 2) as u128;
            let k128 = k as u128;
            table.add(k - 1, (k128 - 1) * b_choices * classes);
            if k < n - 1 {
                table.add(k, (n128 - k128 - 1) * b_choices * classes);
            }
        }
        for k in divisors(n + 1).into_iter().filter(|&k| k > 2) {
            let classes = (euler_phi(k) / 2) as u128;
            let k128 = k as u128;
            table.add(k - 1, (k128 - 1) * b_choices * classes);
            if k < n + 1 {
                table.add(k, (n128 - (k128 - 1)) * b_choices * classes);
            }
        }
    }
    debug_assert_eq!(table.total(), family.size(modulus.value()));
    Ok(table)
}

fn check_size(modulus: &PrimeModulus, allow_large: bool) -> Result<()> {
    if modulus.value() > BRUTE_FORCE_LIMIT && !allow_large {
        return Err(Error::TooLarge(modulus.value()));
    }
    Ok(())
}

/// Exhaustive distribution. Values of `a` are dealt round-robin to
/// `workers` threads, each with a private histogram; the merged result does
/// not depend on the worker count.
pub fn brute_force_distribution(
    n: u64,
    family: Family,
    workers: usize,
    allow_large: bool,
) -> Result<DistributionTable> {
    let modulus = PrimeModulus::new(n)?;
    check_size(&modulus, allow_large)?;
    let workers = workers.clamp(1, n as usize);

    let histograms: Vec<Vec<u128>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let modulus = &modulus;
                scope.spawn(move || {
                    let mut meter = PeriodMeter::new(modulus);
                    let mut hist = vec![0u128; n as usize + 1];
                    for a in (w as u64..n).step_by(workers) {
                        for b in (0..n).filter(|&b| family.contains(a, b)) {
                            for x0 in 0..n {
                                hist[meter.measure(a, b, x0).period as usize] += 1;
                            }
                        }
                    }
                    hist
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });

    let mut table = DistributionTable::new(n, family, Source::BruteForce);
    for hist in histograms {
        for (period, count) in hist.into_iter().enumerate() {
            table.add(period as u64, count);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonRow {
    pub period: u64,
    pub analytic: u128,
    pub measured: u128,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub modulus: u64,
    pub family: Family,
    pub rows: Vec<ComparisonRow>,
    pub all_match: bool,
}

impl ComparisonReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| !r.matched)
    }
}

pub fn compare(
    analytic: &DistributionTable,
    brute: &DistributionTable,
) -> Result<ComparisonReport> {
    if analytic.modulus != brute.modulus || analytic.family != brute.family {
        return Err(Error::FamilyMismatch);
    }
    let mut periods: Vec<u64> = analytic
        .counts
        .keys()
        .chain(brute.counts.keys())
        .copied()
        .collect();
    periods.sort_unstable();
    periods.dedup();
    let rows: Vec<_> = periods
        .into_iter()
        .map(|period| {
            let (a, m) = (analytic.get(period), brute.get(period));
            ComparisonRow {
                period,
                analytic: a,
                measured: m,
                matched: a == m,
            }
        })
        .collect();
    Ok(ComparisonReport {
        modulus: analytic.modulus,
        family: analytic.family,
        all_match: rows.iter().all(|r| r.matched),
        rows,
    })
}

/// Every period realised by some `(a, b, x0)`, ascending.
pub fn achievable_periods(n: u64) -> Result<Vec<u64>> {
    Ok(analytic_distribution(n, Family::All)?
        .counts
        .into_keys()
        .collect())
}

/// One point of the period scatter: instance `index` in lexicographic
/// `(a, b, x0)` order within its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScatterRecord {
    pub index: u64,
    pub a: u64,
    pub b: u64,
    pub x0: u64,
    pub period: u64,
}

/// Lazily measures every instance of the family in lexicographic order.
pub fn scatter_dump(
    n: u64,
    family: Family,
    allow_large: bool,
) -> Result<impl Iterator<Item = ScatterRecord>> {
    let modulus = PrimeModulus::new(n)?;
    check_size(&modulus, allow_large)?;
    let mut meter = PeriodMeter::new(&modulus);
    let triples = (0..n)
        .flat_map(move |a| (0..n).map(move |b| (a, b)))
        .filter(move |&(a, b)| family.contains(a, b))
        .flat_map(move |(a, b)| (0..n).map(move |x0| (a, b, x0)));
    Ok(triples
        .enumerate()
        .map(move |(index, (a, b, x0))| ScatterRecord {
            index: index as u64,
            a,
            b,
            x0,
            period: meter.measure(a, b, x0).period,
        }))
}

pub const CENSUS_CSV_HEADER: &str = "period,analytic_count,measured_count,match";
pub const SCATTER_CSV_HEADER: &str = "index,a,b,x0,period";

/// Census CSV. Columns for a missing side are left empty, as is `match`
/// unless both sides are present.
pub fn write_census_csv<W: Write>(
    out: &mut W,
    analytic: Option<&DistributionTable>,
    measured: Option<&DistributionTable>,
) -> io::Result<()> {
    writeln!(out, "{CENSUS_CSV_HEADER}")?;
    let mut periods: Vec<u64> = analytic
        .into_iter()
        .chain(measured)
        .flat_map(|t| t.counts.keys().copied())
        .collect();
    periods.sort_unstable();
    periods.dedup();
    let cell =
        |t: Option<&DistributionTable>, p| t.map(|t| t.get(p).to_string()).unwrap_or_default();
    for p in periods {
        let matched = match (analytic, measured) {
            (Some(a), Some(m)) => (a.get(p) == m.get(p)).to_string(),
            _ => String::new(),
        };
        writeln!(
            out,
            "{p},{},{},{matched}",
            cell(analytic, p),
            cell(measured, p)
        )?;
    }
    Ok(())
}

pub fn write_scatter_csv<W: Write>(
    out: &mut W,
    records: impl IntoIterator<Item = ScatterRecord>,
) -> io::Result<()> {
    writeln!(out, "{SCATTER_CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.index, r.a, r.b, r.x0, r.period)?;
    }
    Ok(())
}
