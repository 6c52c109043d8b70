//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.
//!
//! Run with `cargo test -p contfrac --test acceptance`.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use contfrac::approx::{check_best_approximation, check_half_q_squared, check_legendre};
use contfrac::observations::{check_fibonacci_ones, verify_rules};
use contfrac::scan::{run_scan, Predicate, ScanConfig};
use contfrac::sqrtn::{reconstruct_n, sqrt_cf};
use contfrac::{BigInt, PeriodicCf, QuadraticSurd, Rational, SqrtCf};
use num_traits::{ToPrimitive, Zero};

const SWEEP_MAX: u64 = 100_000;

/// Machine-word expansion of √N, kept apart from the library's big-integer path:
/// `m ← d·a − m`, `d ← (N − m²)/d`, `a ← ⌊(a0 + m)/d⌋` until `a = 2·a0`.
fn oracle_period(big_n: u64) -> Option<(u64, Vec<u64>)> {
    let a0 = (big_n as f64).sqrt() as u64;
    let a0 = (a0.saturating_sub(2)..=a0 + 2).filter(|x| x * x <= big_n).max()?;
    if a0 * a0 == big_n {
        return None;
    }
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    loop {
        m = d * a - m;
        d = (big_n - m * m) / d;
        a = (a0 + m) / d;
        period.push(a);
        if a == 2 * a0 {
            return Some((a0, period));
        }
    }
}

fn ints(cf: &SqrtCf) -> (u64, u64, Vec<u64>) {
    let u = |x: &BigInt| x.to_u64().expect("fits");
    (u(cf.n()), u(cf.j()), cf.body.iter().map(u).collect())
}

struct Sweep {
    cfs: Vec<SqrtCf>,
    oracle_mismatches: Vec<u64>,
}

fn sweep() -> &'static Sweep {
    static CELL: OnceLock<Sweep> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut cfs = Vec::new();
        let mut oracle_mismatches = Vec::new();
        for big_n in 2..=SWEEP_MAX {
            let Some((a0, oracle)) = oracle_period(big_n) else {
                assert!(sqrt_cf(&BigInt::from(big_n)).is_err(), "square {big_n} accepted");
                continue;
            };
            let cf = sqrt_cf(&BigInt::from(big_n)).expect("non-square expands");
            let lib: Vec<u64> = cf.period().iter().map(|x| x.to_u64().unwrap()).collect();
            if lib != oracle || cf.n() != &BigInt::from(a0) {
                oracle_mismatches.push(big_n);
            }
            cfs.push(cf);
        }
        Sweep { cfs, oracle_mismatches }
    })
}

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn criterion_1() -> Verdict {
    let phi = QuadraticSurd::golden_ratio();
    let cf = phi.expand().map_err(|e| e.to_string())?;
    let expected = PeriodicCf::from_i64s(&[], &[1]);
    if cf != expected {
        return Err(format!("expanded to {cf}"));
    }
    if !phi.is_purely_periodic_by_criterion() {
        return Err("criterion says not purely periodic".into());
    }
    Ok(format!("{phi} = {cf}, criterion agrees"))
}

fn criterion_2() -> Verdict {
    let s = sweep();
    if !s.oracle_mismatches.is_empty() {
        return Err(format!("library and oracle differ at {:?}", &s.oracle_mismatches[..s.oracle_mismatches.len().min(5)]));
    }
    let mut hits = 0;
    for cf in &s.cfs {
        let (n, j, body) = ints(cf);
        let len1 = cf.period_length() == 1;
        if len1 != (j == 1) {
            return Err(format!("N={}: period length {}, j={j}", cf.radicand(), cf.period_length()));
        }
        if len1 {
            hits += 1;
            if !body.is_empty() || cf.last != BigInt::from(2 * n) {
                return Err(format!("N={}: {cf}", cf.radicand()));
            }
        }
    }
    Ok(format!("{} radicands, {hits} with period length 1, oracle agrees everywhere", s.cfs.len()))
}

fn criterion_3() -> Verdict {
    let mut hits = 0;
    for cf in &sweep().cfs {
        let (n, j, body) = ints(cf);
        let len2 = cf.period_length() == 2;
        // j = 1 divides 2n too but collapses to the length-1 period [n, (2n)]
        let predicted = j >= 2 && (2 * n) % j == 0;
        if len2 != predicted {
            return Err(format!("N={}: period length {}, n={n}, j={j}", cf.radicand(), cf.period_length()));
        }
        if len2 {
            hits += 1;
            if body != [2 * n / j] {
                return Err(format!("N={}: {cf}", cf.radicand()));
            }
        }
    }
    Ok(format!("{hits} radicands with period length 2, all [n; (2n/j, 2n)] with j >= 2"))
}

fn criterion_4() -> Verdict {
    let mut hits = 0;
    for cf in &sweep().cfs {
        if cf.period_length() != 3 {
            continue;
        }
        hits += 1;
        let (n, j, body) = ints(cf);
        let x = body[0];
        let ok = body == [x, x] && x % 2 == 0 && j % 2 == 1 && j * (x * x + 1) == 2 * x * n + 1;
        if !ok {
            return Err(format!("N={}: {cf}", cf.radicand()));
        }
    }
    Ok(format!("{hits} periods of length 3, all of the form (x, x, 2n) with x even, j odd"))
}

fn criterion_5() -> Verdict {
    let report = verify_rules(200);
    if !report.is_clean() {
        return Err(format!("{} disagreements\n{report}", report.disagreements.len()));
    }
    if let Some(idle) = report.coverage.iter().find(|c| c.applicable == 0) {
        return Err(format!("rule {} never applied", idle.rule));
    }
    let applied: u64 = report.coverage.iter().map(|c| c.applicable).sum();
    let anomalies: Vec<String> = report.anomalies.iter().map(|a| format!("{} at N={}", a.rule, a.radicand)).collect();
    Ok(format!(
        "{} rules, {applied} applicable cells, 0 disagreements; non-minimal templates logged: {anomalies:?}",
        report.coverage.len()
    ))
}

fn criterion_6() -> Verdict {
    let mut count = 0;
    for cf in sweep().cfs.iter().take_while(|c| c.radicand() <= &BigInt::from(10_000)) {
        count += 1;
        let (_, _, body) = ints(cf);
        if !body.iter().eq(body.iter().rev()) {
            return Err(format!("N={}: body not a palindrome", cf.radicand()));
        }
        let back = reconstruct_n(cf.n(), &cf.body).map_err(|e| e.to_string())?;
        if back != Rational::from_integer(cf.radicand().clone()) {
            return Err(format!("N={}: reconstructed {back}", cf.radicand()));
        }
    }
    Ok(format!("{count} radicands, every body a palindrome, every reconstruction exact"))
}

fn criterion_7() -> Verdict {
    let cf = sqrt_cf(&BigInt::from(1726)).map_err(|e| e.to_string())?;
    let two_n = 2 * cf.n().to_usize().unwrap();
    if cf.period_length() != 88 || cf.period_length() <= two_n {
        return Err(format!("√1726 has period length {}, 2n = {two_n}", cf.period_length()));
    }
    let over: Vec<&BigInt> = sweep()
        .cfs
        .iter()
        .take_while(|c| c.radicand() <= &BigInt::from(1_000))
        .filter(|c| c.period_length() > 2 * c.n().to_usize().unwrap())
        .map(|c| c.radicand())
        .collect();
    if !over.is_empty() {
        return Err(format!("period exceeds 2n already at N = {over:?}"));
    }
    let first = sweep()
        .cfs
        .iter()
        .find(|c| c.period_length() > 2 * c.n().to_usize().unwrap())
        .map(|c| c.radicand().clone());
    Ok(format!(
        "period(√1726) = 88 > {two_n}; none for N <= 1000; first overall N = {}",
        first.map_or("none".into(), |b| b.to_string())
    ))
}

fn criterion_8() -> Verdict {
    let mut max_ratio = (0usize, BigInt::zero());
    for cf in sweep().cfs.iter().take_while(|c| c.radicand() <= &BigInt::from(10_000)) {
        let big_n = cf.radicand().to_usize().unwrap();
        if cf.period_length() > 2 * big_n {
            return Err(format!("N={big_n}: period length {}", cf.period_length()));
        }
        if cf.period_length() > max_ratio.0 {
            max_ratio = (cf.period_length(), cf.radicand().clone());
        }
    }
    Ok(format!("longest period {} at N = {}", max_ratio.0, max_ratio.1))
}

fn criterion_9() -> Verdict {
    let mut checked = 0;
    for d in 2..=200i64 {
        if contfrac::surd::exact_sqrt(&BigInt::from(d)).is_some() {
            continue;
        }
        for p in -20..=20i64 {
            for q in (-20..=20i64).filter(|&q| q != 0) {
                if (d - p * p) % q != 0 {
                    continue;
                }
                let alpha = QuadraticSurd::new(p, d, q).map_err(|e| e.to_string())?;
                if alpha.p() != &BigInt::from(p) || alpha.q() != &BigInt::from(q) {
                    return Err(format!("canonical ({p} + √{d})/{q} was rescaled to {alpha}"));
                }
                let cf = alpha.expand().map_err(|e| e.to_string())?;
                if !cf.is_purely_periodic() {
                    continue;
                }
                checked += 1;
                let (forward, backward) = alpha.reversal_pair().map_err(|e| e.to_string())?;
                let mut reversed = forward.period.clone();
                reversed.reverse();
                if !backward.is_purely_periodic() || backward.period != reversed {
                    return Err(format!("{alpha}: {forward} vs {backward}"));
                }
            }
        }
    }
    Ok(format!("{checked} purely periodic surds, every -1/α' period is the reversal"))
}

fn criterion_10() -> Verdict {
    let started = Instant::now();
    let mut totals = [0u64; 3];
    let mut notes = 0;
    for big_n in (2..=500u64).filter(|&m| oracle_period(m).is_some()) {
        let x = QuadraticSurd::sqrt(big_n).map_err(|e| e.to_string())?;
        let reports = [
            check_best_approximation(&x, 10).map_err(|e| e.to_string())?,
            check_half_q_squared(&x, 10).map_err(|e| e.to_string())?,
            check_legendre(&x, 1_000).map_err(|e| e.to_string())?,
        ];
        for (t, r) in totals.iter_mut().zip(&reports) {
            if !r.is_clean() {
                return Err(format!("{} on √{big_n}: {:?}", r.check, r.violations[0]));
            }
            *t += r.checked;
            notes += r.notes.len();
        }
    }
    Ok(format!(
        "checked {} / {} / {} items, 0 violations, {notes} notes (a_1 = 1 at index 0), {:.1}s",
        totals[0],
        totals[1],
        totals[2],
        started.elapsed().as_secs_f64()
    ))
}

fn criterion_11() -> Verdict {
    let mut cfg = ScanConfig::new(2, SWEEP_MAX);
    cfg.checks = vec![Predicate::BodyBoundedByN, Predicate::NoOddPeriodJ3Mod4];
    let run = |jobs: usize| -> Result<(Vec<u8>, _), String> {
        let mut cfg = cfg.clone();
        cfg.jobs = jobs;
        let mut out = Vec::new();
        let summary = run_scan(&cfg, &mut out, None).map_err(|e| e.to_string())?;
        Ok((out, summary))
    };
    let (first, summary) = run(0)?;
    let (second, _) = run(1)?;
    if first != second {
        return Err("two runs produced different reports".into());
    }
    let mut tallies = BTreeMap::new();
    for p in &cfg.checks {
        let t = summary.tally(*p).ok_or("missing tally")?;
        if t.fail != 0 {
            return Err(format!("{p}: {} failures, first N = {}", t.fail, t.failing[0]));
        }
        tallies.insert(p.name(), (t.pass, t.skip));
    }
    Ok(format!(
        "{} radicands; (pass, skip) {tallies:?}; {} report bytes identical across runs",
        summary.non_squares,
        first.len()
    ))
}

fn criterion_12() -> Verdict {
    // F_{-1} = 0, F_0 = 1, so fib[i] holds F_{i-1}
    let mut fib = vec![0u128, 1];
    while fib.len() < 90 {
        let k = fib.len();
        fib.push(fib[k - 1] + fib[k - 2]);
    }
    let f = |m: usize| fib[m + 1];
    let mut by_len = BTreeMap::new();
    for cf in &sweep().cfs {
        let (n, j, body) = ints(cf);
        if body.is_empty() || body.iter().any(|&d| d != 1) {
            continue;
        }
        let p = body.len();
        *by_len.entry(p).or_insert(0u32) += 1;
        if (p + 1) % 3 == 0 {
            return Err(format!("N={}: {p} ones with 3 | p+1", cf.radicand()));
        }
        let (n, j) = (n as u128, j as u128);
        let rhs = 2 * n * f(p - 1) + fib[p - 1];
        if j * f(p) != rhs {
            return Err(format!("N={}: j F_p = {} but 2n F_(p-1) + F_(p-2) = {rhs}", cf.radicand(), j * f(p)));
        }
        if check_fibonacci_ones(cf) != Some(Ok(())) {
            return Err(format!("N={}: library check disagrees with the oracle", cf.radicand()));
        }
    }
    if by_len.is_empty() {
        return Err("no all-ones bodies found".into());
    }
    Ok(format!("all-ones bodies by length: {by_len:?}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden ratio is [(1)] and the criterion agrees", criterion_1),
        ("period length 1 iff j = 1, N <= 1e5", criterion_2),
        ("period length 2 iff j | 2n, j >= 2, N <= 1e5", criterion_3),
        ("period length 3 forces (x, x) with x even, N <= 1e5", criterion_4),
        ("rule catalogue exact for n <= 200", criterion_5),
        ("palindromic body and exact reconstruction, N <= 1e4", criterion_6),
        ("√1726 has period 88 > 2n; no earlier N <= 1000", criterion_7),
        ("period length <= 2N, N <= 1e4", criterion_8),
        ("reversal of purely periodic surds, |P|,|Q| <= 20, D <= 200", criterion_9),
        ("approximation theorems for √N, N <= 500", criterion_10),
        ("open predicates hold and scan is reproducible, N <= 1e5", criterion_11),
        ("all-ones bodies follow the Fibonacci formula, N <= 1e5", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let verdict = check();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS [{:>2}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
