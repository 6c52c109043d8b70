//! Range scans over `√N`: per-N records, theorem and conjecture predicates, and
//! JSON-lines reports.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sqrtn::{palindrome_check, sqrt_cf, SqrtCf};
use crate::surd::exact_sqrt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Predicate {
    /// The body of the period is a palindrome. Proven.
    #[serde(rename = "palindrome")]
    Palindrome,
    /// Period length is at most `2N`. Proven.
    #[serde(rename = "period_le_2N")]
    PeriodLe2BigN,
    /// Period length is at most `2n`. Known false (N = 1726).
    #[serde(rename = "period_le_2n")]
    PeriodLe2n,
    /// No body digit exceeds `n`. Open.
    #[serde(rename = "body_bounded_by_n")]
    BodyBoundedByN,
    /// No odd period when `j ≡ 3 (mod 4)`. Open.
    #[serde(rename = "no_odd_period_j3mod4")]
    NoOddPeriodJ3Mod4,
}

impl Predicate {
    pub const ALL: [Predicate; 5] = [
        Predicate::Palindrome,
        Predicate::PeriodLe2BigN,
        Predicate::PeriodLe2n,
        Predicate::BodyBoundedByN,
        Predicate::NoOddPeriodJ3Mod4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Palindrome => "palindrome",
            Predicate::PeriodLe2BigN => "period_le_2N",
            Predicate::PeriodLe2n => "period_le_2n",
            Predicate::BodyBoundedByN => "body_bounded_by_n",
            Predicate::NoOddPeriodJ3Mod4 => "no_odd_period_j3mod4",
        }
    }

    /// Theorem failures are bugs; conjecture failures are findings.
    pub fn is_theorem(self) -> bool {
        matches!(self, Predicate::Palindrome | Predicate::PeriodLe2BigN)
    }

    pub fn evaluate(self, cf: &SqrtCf) -> Outcome {
        match self {
            Predicate::Palindrome => predicate_palindrome(cf),
            Predicate::PeriodLe2BigN => predicate_period_le_2big_n(cf),
            Predicate::PeriodLe2n => predicate_period_le_2n(cf),
            Predicate::BodyBoundedByN => predicate_body_bounded_by_n(cf),
            Predicate::NoOddPeriodJ3Mod4 => predicate_no_odd_period_j3mod4(cf),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| {
                let known: Vec<_> = Predicate::ALL.iter().map(|p| p.name()).collect();
                Error::Precondition(format!("unknown check {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn predicate_palindrome(cf: &SqrtCf) -> Outcome {
    outcome(palindrome_check(&cf.body))
}

pub fn predicate_period_le_2big_n(cf: &SqrtCf) -> Outcome {
    outcome(BigInt::from(cf.period_length()) <= cf.radicand() * 2u32)
}

pub fn predicate_period_le_2n(cf: &SqrtCf) -> Outcome {
    outcome(BigInt::from(cf.period_length()) <= cf.n() * 2u32)
}

pub fn predicate_body_bounded_by_n(cf: &SqrtCf) -> Outcome {
    outcome(cf.body_max().is_none_or(|m| m <= cf.n()))
}

pub fn predicate_no_odd_period_j3mod4(cf: &SqrtCf) -> Outcome {
    if cf.j().mod_floor(&BigInt::from(4)) != BigInt::from(3) {
        return Outcome::Skip;
    }
    outcome(cf.period_length().is_even())
}

/// One non-square `N` of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    #[serde(rename = "N", with = "crate::decimal::int")]
    pub radicand: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub n: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub j: BigInt,
    pub period_length: usize,
    /// Largest period digit except the final `2n`; absent for period length 1.
    #[serde(with = "crate::decimal::opt_int")]
    pub body_max_digit: Option<BigInt>,
    /// Full period, emitted only up to the configured length.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::decimal::opt_seq")]
    pub period: Option<Vec<BigInt>>,
    pub checks: BTreeMap<Predicate, Outcome>,
}

impl ScanRecord {
    pub fn from_cf(cf: &SqrtCf, checks: &[Predicate], digits_threshold: usize) -> Self {
        ScanRecord {
            radicand: cf.radicand().clone(),
            n: cf.n().clone(),
            j: cf.j().clone(),
            period_length: cf.period_length(),
            body_max_digit: cf.body_max().cloned(),
            period: (cf.period_length() <= digits_threshold).then(|| cf.period()),
            checks: checks.iter().map(|&p| (p, p.evaluate(cf))).collect(),
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = Predicate> + '_ {
        self.checks.iter().filter(|(_, o)| **o == Outcome::Fail).map(|(p, _)| *p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub n_min: u64,
    pub n_max: u64,
    pub checks: Vec<Predicate>,
    /// Periods up to this length are written out in full.
    pub digits_threshold: usize,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    pub strict: bool,
}

impl ScanConfig {
    pub fn new(n_min: u64, n_max: u64) -> Self {
        ScanConfig {
            n_min,
            n_max,
            checks: Predicate::ALL.to_vec(),
            digits_threshold: 64,
            jobs: 0,
            strict: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 {
            return Err(Error::Precondition(format!("scan minimum {} must be >= 2", self.n_min)));
        }
        if self.n_max < self.n_min {
            return Err(Error::Precondition(format!(
                "scan maximum {} is below minimum {}",
                self.n_max, self.n_min
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
    /// Every failing `N`, in increasing order.
    #[serde(with = "crate::decimal::seq")]
    pub failing: Vec<BigInt>,
}

/// Aggregate of a scan. The same range always gives the same summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    #[serde(rename = "N_min", with = "crate::decimal::word")]
    pub n_min: u64,
    #[serde(rename = "N_max", with = "crate::decimal::word")]
    pub n_max: u64,
    pub non_squares: u64,
    pub squares_skipped: u64,
    pub tallies: BTreeMap<Predicate, PredicateTally>,
    pub max_period_length: usize,
    #[serde(rename = "max_period_N", with = "crate::decimal::opt_int")]
    pub max_period_radicand: Option<BigInt>,
}

impl ScanSummary {
    fn new(cfg: &ScanConfig) -> Self {
        ScanSummary {
            n_min: cfg.n_min,
            n_max: cfg.n_max,
            non_squares: 0,
            squares_skipped: 0,
            tallies: cfg.checks.iter().map(|&p| (p, PredicateTally::default())).collect(),
            max_period_length: 0,
            max_period_radicand: None,
        }
    }

    fn absorb(&mut self, item: &ScanItem) {
        match item {
            ScanItem::Square => {
                self.squares_skipped += 1;
                for t in self.tallies.values_mut() {
                    t.skip += 1;
                }
            }
            ScanItem::Record(rec) => {
                self.non_squares += 1;
                if rec.period_length > self.max_period_length {
                    self.max_period_length = rec.period_length;
                    self.max_period_radicand = Some(rec.radicand.clone());
                }
                for (p, o) in &rec.checks {
                    let t = self.tallies.entry(*p).or_default();
                    match o {
                        Outcome::Pass => t.pass += 1,
                        Outcome::Skip => t.skip += 1,
                        Outcome::Fail => {
                            t.fail += 1;
                            t.failing.push(rec.radicand.clone());
                        }
                    }
                }
            }
        }
    }

    pub fn tally(&self, p: Predicate) -> Option<&PredicateTally> {
        self.tallies.get(&p)
    }

    /// Exit status rule: theorem predicates must pass; conjectures count only in strict mode.
    pub fn success(&self, strict: bool) -> bool {
        self.tallies
            .iter()
            .all(|(p, t)| t.fail == 0 || (!p.is_theorem() && !strict))
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scan N in [{}, {}]: {} non-squares, {} squares skipped",
            self.n_min, self.n_max, self.non_squares, self.squares_skipped
        )?;
        if let Some(n) = &self.max_period_radicand {
            writeln!(f, "longest period: {} at N = {}", self.max_period_length, n)?;
        }
        writeln!(f, "{:<22} {:<10} {:>9} {:>9} {:>9}  first failures", "check", "kind", "pass", "fail", "skip")?;
        for (p, t) in &self.tallies {
            let kind = if p.is_theorem() { "theorem" } else { "conjecture" };
            let first: Vec<String> = t.failing.iter().take(5).map(ToString::to_string).collect();
            writeln!(
                f,
                "{:<22} {:<10} {:>9} {:>9} {:>9}  {}",
                p.name(),
                kind,
                t.pass,
                t.fail,
                t.skip,
                first.join(", ")
            )?;
        }
        Ok(())
    }
}

enum ScanItem {
    Square,
    Record(ScanRecord),
}

fn scan_one(radicand: u64, cfg: &ScanConfig) -> Result<ScanItem> {
    let big = BigInt::from(radicand);
    if exact_sqrt(&big).is_some() {
        return Ok(ScanItem::Square);
    }
    let cf = sqrt_cf(&big)?;
    Ok(ScanItem::Record(ScanRecord::from_cf(&cf, &cfg.checks, cfg.digits_threshold)))
}

const CHUNK: u64 = 4096;

/// Scans the configured range, handing records to `sink` in increasing `N`.
///
/// Chunks are computed in parallel and delivered in order, so the sequence of
/// records does not depend on the worker count.
pub fn scan_with<F>(cfg: &ScanConfig, mut sink: F) -> Result<ScanSummary>
where
    F: FnMut(&ScanRecord) -> Result<()>,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    let mut summary = ScanSummary::new(cfg);
    let mut start = cfg.n_min;
    loop {
        let end = cfg.n_max.min(start.saturating_add(CHUNK - 1));
        let items: Vec<ScanItem> = pool.install(|| {
            (start..=end)
                .into_par_iter()
                .map(|n| scan_one(n, cfg))
                .collect::<Result<_>>()
        })?;
        for item in &items {
            summary.absorb(item);
            if let ScanItem::Record(rec) = item {
                sink(rec)?;
            }
        }
        if end == cfg.n_max {
            break;
        }
        start = end + 1;
    }
    Ok(summary)
}

/// Collects every record of the range in memory.
pub fn scan_range(cfg: &ScanConfig) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    let mut records = Vec::new();
    let summary = scan_with(cfg, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, summary))
}

/// Writes one JSON line per record, then a final `{"summary": ..., "generated_at": ...}` line.
///
/// `generated_at` is the only field that differs between runs of the same range.
pub fn run_scan<W: Write>(cfg: &ScanConfig, out: &mut W, generated_at: Option<&str>) -> Result<ScanSummary> {
    let io = |e: std::io::Error| Error::Precondition(format!("cannot write report: {e}"));
    let summary = scan_with(cfg, |rec| {
        serde_json::to_writer(&mut *out, rec).map_err(|e| Error::Precondition(e.to_string()))?;
        out.write_all(b"\n").map_err(io)
    })?;
    let footer = serde_json::json!({
        "summary": &summary,
        "generated_at": generated_at,
    });
    serde_json::to_writer(&mut *out, &footer).map_err(|e| Error::Precondition(e.to_string()))?;
    out.write_all(b"\n").map_err(io)?;
    out.flush().map_err(io)?;
    Ok(summary)
}
