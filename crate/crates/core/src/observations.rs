//! Closed-form period predictions for classes of `(n, j)`, checked against the
//! expansion engine.
//!
//! Each [`ClassRule`] either predicts the period of `√(n² + j)` from congruence
//! and divisibility conditions on `n` and `j`, or (for period length 3) states a
//! necessary form that every observed period of that length must have.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::sqrtn::{sqrt_cf, SqrtCf};

/// `(a·n + b) / c`, defined only when the division is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

const fn aff(a: i64, b: i64, c: i64) -> Affine {
    Affine { a, b, c }
}

const fn k(x: i64) -> Digit {
    Digit::Affine(aff(0, x, 1))
}

const fn lin(a: i64, b: i64, c: i64) -> Digit {
    Digit::Affine(aff(a, b, c))
}

const TWO_N: Digit = Digit::Affine(aff(2, 0, 1));

impl Affine {
    pub fn eval(&self, n: &BigInt) -> Option<BigInt> {
        let num = n * self.a + self.b;
        let (q, r) = num.div_rem(&BigInt::from(self.c));
        r.is_zero().then_some(q)
    }
}

/// One digit of a period template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Digit {
    Affine(Affine),
    /// `2n / j`
    TwoNOverJ,
}

impl Digit {
    fn eval(&self, n: &BigInt, j: &BigInt) -> Option<BigInt> {
        match self {
            Digit::Affine(f) => f.eval(n),
            Digit::TwoNOverJ => {
                let (q, r) = (n * 2u32).div_rem(j);
                r.is_zero().then_some(q)
            }
        }
    }
}

/// When a predictive rule applies to `(n, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    /// `n ≡ residue (mod modulus)`, `n >= n_min`, and `j` equals the exact value of `j_of_n`.
    Class {
        modulus: i64,
        residue: i64,
        n_min: i64,
        j_of_n: Affine,
    },
    /// `j` divides `2n` and `j >= 2`.
    JDividesTwoN,
}

impl Applicability {
    fn holds(&self, n: &BigInt, j: &BigInt) -> bool {
        match self {
            Applicability::Class {
                modulus,
                residue,
                n_min,
                j_of_n,
            } => {
                n >= &BigInt::from(*n_min)
                    && n.mod_floor(&BigInt::from(*modulus)) == BigInt::from(*residue)
                    && j_of_n.eval(n).as_ref() == Some(j)
            }
            Applicability::JDividesTwoN => j > &BigInt::one() && (n * 2u32).is_multiple_of(j),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// Applicable cells must have exactly this period. With `converse`, every
    /// observed period of `length` must also come from an applicable cell.
    Predictive {
        applicability: Applicability,
        length: usize,
        digits: Option<Vec<Digit>>,
        converse: bool,
    },
    /// Every period of length 3 is `(x, x, 2n)` with `x` even, `j` odd and
    /// `j = (2xn + 1)/(x² + 1)`.
    LengthThreeForm,
}

/// One catalogued class of `(n, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRule {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: RuleKind,
}

/// The predicted period of one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub length: usize,
    pub period: Option<Vec<BigInt>>,
}

/// Result of checking one rule against one observed expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    NotApplicable,
    Agree,
    Disagree(String),
    /// Applicable by its class conditions but the template does not describe a
    /// minimal period with digits >= 1; logged rather than asserted.
    Anomaly(String),
}

impl ClassRule {
    fn predictive(
        name: &'static str,
        description: &'static str,
        applicability: Applicability,
        length: usize,
        digits: Vec<Digit>,
    ) -> Self {
        debug_assert_eq!(digits.len(), length);
        ClassRule {
            name,
            description,
            kind: RuleKind::Predictive {
                applicability,
                length,
                digits: Some(digits),
                converse: false,
            },
        }
    }

    fn table_row(
        name: &'static str,
        description: &'static str,
        (modulus, residue, k_min): (i64, i64, i64),
        j_of_n: Affine,
        digits: Vec<Digit>,
    ) -> Self {
        let length = digits.len();
        Self::predictive(
            name,
            description,
            Applicability::Class {
                modulus,
                residue,
                n_min: modulus * k_min + residue,
                j_of_n,
            },
            length,
            digits,
        )
    }

    /// True when the rule's class conditions hold for `(n, j)`.
    ///
    /// The length-3 form is triggered by an observed period, never by `(n, j)` alone.
    pub fn applies(&self, n: &BigInt, j: &BigInt) -> bool {
        if !valid_cell(n, j) {
            return false;
        }
        match &self.kind {
            RuleKind::Predictive { applicability, .. } => applicability.holds(n, j),
            RuleKind::LengthThreeForm => false,
        }
    }

    /// The period this rule predicts for `(n, j)`, if it applies.
    pub fn predict(&self, n: &BigInt, j: &BigInt) -> Option<Prediction> {
        if !self.applies(n, j) {
            return None;
        }
        let RuleKind::Predictive { length, digits, .. } = &self.kind else {
            return None;
        };
        let period = digits
            .as_ref()
            .map(|ds| ds.iter().map(|d| d.eval(n, j)).collect::<Option<Vec<_>>>());
        Some(Prediction {
            length: *length,
            period: period.flatten(),
        })
    }

    pub fn check(&self, observed: &SqrtCf) -> RuleOutcome {
        let (n, j) = (observed.n(), observed.j());
        let period = observed.period();
        match &self.kind {
            RuleKind::LengthThreeForm => check_length_three(observed),
            RuleKind::Predictive {
                length, converse, ..
            } => {
                let Some(pred) = self.predict(n, j) else {
                    if *converse && period.len() == *length {
                        return RuleOutcome::Disagree(format!(
                            "observed period length {length} but the class conditions fail"
                        ));
                    }
                    return RuleOutcome::NotApplicable;
                };
                let Some(pred_period) = pred.period else {
                    return RuleOutcome::Anomaly("digit template is not integral here".into());
                };
                if pred_period.iter().any(|d| !d.is_positive()) {
                    return RuleOutcome::Anomaly(format!("template gives digits {} with an entry < 1", fmt_digits(&pred_period)));
                }
                if let Some(root) = primitive_root_len(&pred_period).filter(|&r| r < pred_period.len()) {
                    if pred_period[..root] == period[..] {
                        return RuleOutcome::Anomaly(format!(
                            "predicted period {} repeats a shorter block; minimal period is {}",
                            fmt_digits(&pred_period),
                            fmt_digits(&period)
                        ));
                    }
                }
                if period.len() != pred.length || period != pred_period {
                    return RuleOutcome::Disagree(format!(
                        "predicted {} (length {}), observed {} (length {})",
                        fmt_digits(&pred_period),
                        pred.length,
                        fmt_digits(&period),
                        period.len()
                    ));
                }
                RuleOutcome::Agree
            }
        }
    }
}

fn valid_cell(n: &BigInt, j: &BigInt) -> bool {
    n.is_positive() && j.is_positive() && j <= &(n * 2u32)
}

fn primitive_root_len(xs: &[BigInt]) -> Option<usize> {
    let l = xs.len();
    (1..=l).find(|k| l.is_multiple_of(*k) && (0..l).all(|i| xs[i] == xs[i % k]))
}

fn fmt_digits(xs: &[BigInt]) -> String {
    let s: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

fn check_length_three(observed: &SqrtCf) -> RuleOutcome {
    if observed.period_length() != 3 {
        return RuleOutcome::NotApplicable;
    }
    let (n, j) = (observed.n(), observed.j());
    let (x, y) = (&observed.body[0], &observed.body[1]);
    if x != y {
        return RuleOutcome::Disagree(format!("body ({x},{y}) is not (x,x)"));
    }
    if !x.is_even() {
        return RuleOutcome::Disagree(format!("x = {x} is odd"));
    }
    if !j.is_odd() {
        return RuleOutcome::Disagree(format!("j = {j} is even"));
    }
    if j * (x * x + 1u32) != BigInt::from(2) * x * n + 1u32 {
        return RuleOutcome::Disagree(format!("j = {j} differs from (2xn+1)/(x²+1) with x = {x}"));
    }
    RuleOutcome::Agree
}

/// Every implemented rule, in catalogue order.
pub fn rule_catalogue() -> Vec<ClassRule> {
    use Applicability::*;
    let mut rules = vec![
        ClassRule {
            name: "len1",
            description: "j = 1: [n, (2n)]",
            kind: RuleKind::Predictive {
                applicability: Class {
                    modulus: 1,
                    residue: 0,
                    n_min: 1,
                    j_of_n: aff(0, 1, 1),
                },
                length: 1,
                digits: Some(vec![TWO_N]),
                converse: true,
            },
        },
        ClassRule {
            name: "len2",
            description: "j | 2n, j > 1: [n, (2n/j, 2n)]",
            kind: RuleKind::Predictive {
                applicability: JDividesTwoN,
                length: 2,
                digits: Some(vec![Digit::TwoNOverJ, TWO_N]),
                converse: true,
            },
        },
        ClassRule {
            name: "len3",
            description: "length 3 => [n, (x, x, 2n)], x even, j odd, j = (2xn+1)/(x²+1)",
            kind: RuleKind::LengthThreeForm,
        },
        ClassRule::predictive(
            "j4-even",
            "j = 4, n even: [n, (n/2, 2n)]",
            Class { modulus: 2, residue: 0, n_min: 2, j_of_n: aff(0, 4, 1) },
            2,
            vec![lin(1, 0, 2), TWO_N],
        ),
        ClassRule::predictive(
            "j4-odd",
            "j = 4, n odd: [n, ((n-1)/2, 1, 1, (n-1)/2, 2n)]",
            Class { modulus: 2, residue: 1, n_min: 3, j_of_n: aff(0, 4, 1) },
            5,
            vec![lin(1, -1, 2), k(1), k(1), lin(1, -1, 2), TWO_N],
        ),
        ClassRule::predictive(
            "j2n-1",
            "j = 2n-1, n > 1: [n, (1, n-1, 1, 2n)]",
            Class { modulus: 1, residue: 0, n_min: 2, j_of_n: aff(2, -1, 1) },
            4,
            vec![k(1), lin(1, -1, 1), k(1), TWO_N],
        ),
        ClassRule::predictive(
            "j2n-3-odd",
            "j = 2n-3, n > 3 odd: [n, (1, (n-3)/2, 1, 2n)]",
            Class { modulus: 2, residue: 1, n_min: 5, j_of_n: aff(2, -3, 1) },
            4,
            vec![k(1), lin(1, -3, 2), k(1), TWO_N],
        ),
        ClassRule::predictive(
            "j2n-3-even",
            "j = 2n-3, n > 3 even: [n, (1, n/2-1, 2, n/2-1, 1, 2n)]",
            Class { modulus: 2, residue: 0, n_min: 4, j_of_n: aff(2, -3, 1) },
            6,
            vec![k(1), lin(1, -2, 2), k(2), lin(1, -2, 2), k(1), TWO_N],
        ),
    ];
    rules.extend(table_rows());
    rules
}

fn table_rows() -> Vec<ClassRule> {
    let row = ClassRule::table_row;
    vec![
        row("5k+1", "n = 5k+1 (k>=1), j = (4n+1)/5: [n, (2, 2, 2n)]", (5, 1, 1), aff(4, 1, 5), vec![k(2), k(2), TWO_N]),
        row("6k+5", "n = 6k+5, j = (2n-1)/3: [n, (3, (n-1)/2, 3, 2n)]", (6, 5, 0), aff(2, -1, 3), vec![k(3), lin(1, -1, 2), k(3), TWO_N]),
        row("9k+4", "n = 9k+4 (k>=1), j = n-2: [n, (2, (2n-8)/9, 2, 2n)]", (9, 4, 1), aff(1, -2, 1), vec![k(2), lin(2, -8, 9), k(2), TWO_N]),
        row("5k+4", "n = 5k+4, j = (8n+3)/5: [n, (1, 3, 1, 2n)]", (5, 4, 0), aff(8, 3, 5), vec![k(1), k(3), k(1), TWO_N]),
        row("3k+2/a", "n = 3k+2, j = (5n+2)/3: [n, (1, 4, 1, 2n)]", (3, 2, 0), aff(5, 2, 3), vec![k(1), k(4), k(1), TWO_N]),
        row("3k+2/b", "n = 3k+2 (k>=1), j = 2n-2: [n, (1, (2n-4)/3, 1, 2n)]", (3, 2, 1), aff(2, -2, 1), vec![k(1), lin(2, -4, 3), k(1), TWO_N]),
        row("3k+2/c", "n = 3k+2, j = (4n+1)/3: [n, (1, 1, 1, 2n)]", (3, 2, 0), aff(4, 1, 3), vec![k(1), k(1), k(1), TWO_N]),
        row("2k+1", "n = 2k+1 (k>=1), j = (3n+1)/2: [n, (1, 2, 1, 2n)]", (2, 1, 1), aff(3, 1, 2), vec![k(1), k(2), k(1), TWO_N]),
        row("5k+2", "n = 5k+2 (k>=1), j = n-1: [n, (2, (2n-4)/5, 2, 2n)]", (5, 2, 1), aff(1, -1, 1), vec![k(2), lin(2, -4, 5), k(2), TWO_N]),
        row("6k+1", "n = 6k+1 (k>=1), j = (5n+1)/6: [n, (2, 2, 2, 2n)]", (6, 1, 1), aff(5, 1, 6), vec![k(2), k(2), k(2), TWO_N]),
        row("5k+3", "n = 5k+3, j = (6n+2)/5: [n, (1, 1, 1, 1, 2n)]", (5, 3, 0), aff(6, 2, 5), vec![k(1), k(1), k(1), k(1), TWO_N]),
        row("10k+7", "n = 10k+7, j = (2n+1)/5: [n, (4, 1, (n-3)/2, 1, 4, 2n)]", (10, 7, 0), aff(2, 1, 5), vec![k(4), k(1), lin(1, -3, 2), k(1), k(4), TWO_N]),
        row("3k+1/a", "n = 3k+1 (k>=1), j = (2n+1)/3: [n, (2, 1, n-1, 1, 2, 2n)]", (3, 1, 1), aff(2, 1, 3), vec![k(2), k(1), lin(1, -1, 1), k(1), k(2), TWO_N]),
        row("3k+1/b", "n = 3k+1 (k>=1), j = n+1: [n, (1, 1, (2n-2)/3, 1, 1, 2n)]", (3, 1, 1), aff(1, 1, 1), vec![k(1), k(1), lin(2, -2, 3), k(1), k(1), TWO_N]),
        row("7k+3", "n = 7k+3 (k>=1), j = n+2: [n, (1, 1, (2n-6)/7, 1, 1, 2n)]", (7, 3, 1), aff(1, 2, 1), vec![k(1), k(1), lin(2, -6, 7), k(1), k(1), TWO_N]),
        row("6k+4", "n = 6k+4, j = (7n+2)/6: [n, (1, 1, 2, 1, 1, 2n)]", (6, 4, 0), aff(7, 2, 6), vec![k(1), k(1), k(2), k(1), k(1), TWO_N]),
        row("3k+1/c", "n = 3k+1 (k>=1), j = (4n+2)/3: [n, (1, 2, n, 2, 1, 2n)]", (3, 1, 1), aff(4, 2, 3), vec![k(1), k(2), lin(1, 0, 1), k(2), k(1), TWO_N]),
        row("7k+5", "n = 7k+5, j = (8n+2)/7: [n, (1, 1, 3, n, 3, 1, 1, 2n)]", (7, 5, 0), aff(8, 2, 7), vec![k(1), k(1), k(3), lin(1, 0, 1), k(3), k(1), k(1), TWO_N]),
        row("6k+2", "n = 6k+2 (k>=1), j = (2n-1)/3: [n, (3, (n-2)/2, 1, 4, 1, (n-2)/2, 3, 2n)]", (6, 2, 1), aff(2, -1, 3), vec![k(3), lin(1, -2, 2), k(1), k(4), k(1), lin(1, -2, 2), k(3), TWO_N]),
    ]
}

/// Rules from `catalogue` whose class conditions hold at `(n, j)`.
pub fn applicable_rules<'a>(catalogue: &'a [ClassRule], n: &BigInt, j: &BigInt) -> Vec<&'a ClassRule> {
    catalogue.iter().filter(|r| r.applies(n, j)).collect()
}

/// Fibonacci numbers indexed from `F_{-1} = 0`, `F_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciSeq {
    values: Vec<BigInt>,
}

impl FibonacciSeq {
    /// `F_{-1}` through `F_upto`.
    pub fn new(upto: usize) -> Self {
        let mut values = vec![BigInt::zero(), BigInt::one()];
        for i in 2..upto + 2 {
            let next = &values[i - 2] + &values[i - 1];
            values.push(next);
        }
        FibonacciSeq { values }
    }

    pub fn get(&self, m: isize) -> Option<&BigInt> {
        usize::try_from(m + 1).ok().and_then(|i| self.values.get(i))
    }
}

/// The `j` for which `√(n² + j) = [n, (1, ..., 1, 2n)]` with `p` ones, if any:
/// `j = (2n F_{p-1} + F_{p-2}) / F_p`, excluded when `3 | p + 1`.
pub fn fibonacci_ones_j(p: usize, n: &BigInt) -> Option<BigInt> {
    if p == 0 || (p + 1).is_multiple_of(3) || !n.is_positive() {
        return None;
    }
    let fib = FibonacciSeq::new(p);
    let p = p as isize;
    let num = BigInt::from(2) * n * fib.get(p - 1)? + fib.get(p - 2)?;
    let (j, r) = num.div_rem(fib.get(p)?);
    (r.is_zero() && valid_cell(n, &j)).then_some(j)
}

/// Checks an all-ones body against [`fibonacci_ones_j`]. `None` when the body is not all ones.
pub fn check_fibonacci_ones(observed: &SqrtCf) -> Option<Result<(), String>> {
    let p = observed.body.len();
    if p == 0 || !observed.body.iter().all(One::is_one) {
        return None;
    }
    if (p + 1).is_multiple_of(3) {
        return Some(Err(format!("{} ones with 3 | p+1", p)));
    }
    Some(match fibonacci_ones_j(p, observed.n()) {
        Some(j) if &j == observed.j() => Ok(()),
        other => Err(format!("formula gives {other:?}, observed j = {}", observed.j())),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleCoverage {
    pub rule: String,
    pub applicable: u64,
    pub agree: u64,
    pub disagree: u64,
    pub anomalies: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub rule: String,
    #[serde(rename = "N", with = "crate::decimal::int")]
    pub radicand: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub n: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub j: BigInt,
    pub detail: String,
}

/// Outcome of checking the catalogue against a set of expansions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub cells_checked: u64,
    pub coverage: Vec<RuleCoverage>,
    pub disagreements: Vec<Finding>,
    pub anomalies: Vec<Finding>,
}

impl VerificationReport {
    fn empty(catalogue: &[ClassRule]) -> Self {
        VerificationReport {
            coverage: catalogue
                .iter()
                .map(|r| RuleCoverage {
                    rule: r.name.to_string(),
                    ..Default::default()
                })
                .collect(),
            ..Default::default()
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.cells_checked += other.cells_checked;
        for (a, b) in self.coverage.iter_mut().zip(other.coverage) {
            a.applicable += b.applicable;
            a.agree += b.agree;
            a.disagree += b.disagree;
            a.anomalies += b.anomalies;
        }
        self.disagreements.extend(other.disagreements);
        self.anomalies.extend(other.anomalies);
        self
    }

    pub fn coverage_of(&self, rule: &str) -> Option<&RuleCoverage> {
        self.coverage.iter().find(|c| c.rule == rule)
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<12} {:>10} {:>10} {:>10} {:>10}", "rule", "applicable", "agree", "disagree", "anomalies")?;
        for c in &self.coverage {
            writeln!(f, "{:<12} {:>10} {:>10} {:>10} {:>10}", c.rule, c.applicable, c.agree, c.disagree, c.anomalies)?;
        }
        writeln!(f, "cells checked: {}", self.cells_checked)?;
        for d in &self.disagreements {
            writeln!(f, "DISAGREE {} at N={} (n={}, j={}): {}", d.rule, d.radicand, d.n, d.j, d.detail)?;
        }
        for d in &self.anomalies {
            writeln!(f, "anomaly  {} at N={} (n={}, j={}): {}", d.rule, d.radicand, d.n, d.j, d.detail)?;
        }
        Ok(())
    }
}

/// Checks every catalogue rule against the given expansions.
pub fn verify_expansions<'a, I>(catalogue: &[ClassRule], expansions: I) -> VerificationReport
where
    I: IntoIterator<Item = &'a SqrtCf>,
{
    let mut report = VerificationReport::empty(catalogue);
    for cf in expansions {
        report.cells_checked += 1;
        for (rule, cov) in catalogue.iter().zip(report.coverage.iter_mut()) {
            let finding = |detail: String| Finding {
                rule: rule.name.to_string(),
                radicand: cf.radicand().clone(),
                n: cf.n().clone(),
                j: cf.j().clone(),
                detail,
            };
            match rule.check(cf) {
                RuleOutcome::NotApplicable => {}
                RuleOutcome::Agree => {
                    cov.applicable += 1;
                    cov.agree += 1;
                }
                RuleOutcome::Disagree(why) => {
                    cov.applicable += 1;
                    cov.disagree += 1;
                    report.disagreements.push(finding(why));
                }
                RuleOutcome::Anomaly(why) => {
                    cov.applicable += 1;
                    cov.anomalies += 1;
                    report.anomalies.push(finding(why));
                }
            }
        }
    }
    report
}

/// Checks the full catalogue over every cell `(n, j)` with `1 <= n <= n_max`, `1 <= j <= 2n`.
pub fn verify_rules(n_max: u64) -> VerificationReport {
    let catalogue = rule_catalogue();
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let n = BigInt::from(n);
            let cells: Vec<SqrtCf> = (1..=n.to_u64().expect("small") * 2)
                .map(|j| sqrt_cf(&(&n * &n + j)).expect("non-square radicand expands"))
                .collect();
            verify_expansions(&catalogue, &cells)
        })
        .reduce(|| VerificationReport::empty(&catalogue), VerificationReport::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rule(name: &str) -> ClassRule {
        rule_catalogue().into_iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn catalogue_shape() {
        let cat = rule_catalogue();
        assert_eq!(cat.len(), 27);
        let mut names: Vec<_> = cat.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 27, "rule names are unique");
    }

    #[test]
    fn catalogue_examples() {
        let p = rule("len2").predict(&b(4), &b(4)).unwrap();
        assert_eq!(p, Prediction { length: 2, period: Some(ints(&[2, 8])) });
        let p = rule("5k+4").predict(&b(4), &b(7)).unwrap();
        assert_eq!(p.period.unwrap(), ints(&[1, 3, 1, 8]));
        let p = rule("len1").predict(&b(1), &b(1)).unwrap();
        assert_eq!(p.period.unwrap(), ints(&[2]));
        // j = 1 divides 2n, but len2 excludes it
        assert!(rule("len2").predict(&b(3), &b(1)).is_none());
    }

    #[test]
    fn applicable_examples() {
        let cat = rule_catalogue();
        let names = |n, j| -> Vec<&str> { applicable_rules(&cat, &b(n), &b(j)).iter().map(|r| r.name).collect() };
        assert!(names(6, 5).contains(&"5k+1"));
        assert!(names(3, 4).contains(&"j4-odd"));
        assert!(names(2, 3).contains(&"j2n-1"));
        // out-of-range cell
        assert!(names(1, 4).is_empty());
        // k >= 1 excludes n = 1 from the 5k+1 row
        assert!(!names(1, 1).contains(&"5k+1"));
    }

    #[test]
    fn length_three_form() {
        let cf = sqrt_cf(&b(41)).unwrap();
        assert_eq!(rule("len3").check(&cf), RuleOutcome::Agree);
        let cf = sqrt_cf(&b(13)).unwrap();
        assert_eq!(rule("len3").check(&cf), RuleOutcome::NotApplicable);
    }

    #[test]
    fn converse_direction_flags_stray_lengths() {
        // a fabricated length-1 period with j != 1 must be reported
        let fake = SqrtCf {
            decomposition: crate::sqrtn::decompose(&b(11)).unwrap(),
            body: vec![],
            last: b(6),
        };
        assert!(matches!(rule("len1").check(&fake), RuleOutcome::Disagree(_)));
    }

    #[test]
    fn fibonacci_sequence() {
        let f = FibonacciSeq::new(6);
        let got: Vec<_> = (-1..=6).map(|m| f.get(m).unwrap().clone()).collect();
        assert_eq!(got, ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(f.get(7), None);
        assert_eq!(f.get(-2), None);
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci_ones_j(1, &b(1)), Some(b(2)));
        assert_eq!(fibonacci_ones_j(2, &b(5)), None);
        assert_eq!(fibonacci_ones_j(3, &b(2)), Some(b(3)));
        assert_eq!(fibonacci_ones_j(0, &b(2)), None);
        // √3 = [1, (1, 2)] and √7 = [2, (1, 1, 1, 4)]
        assert_eq!(sqrt_cf(&b(3)).unwrap().period(), ints(&[1, 2]));
        assert_eq!(check_fibonacci_ones(&sqrt_cf(&b(3)).unwrap()), Some(Ok(())));
        assert_eq!(check_fibonacci_ones(&sqrt_cf(&b(7)).unwrap()), Some(Ok(())));
        assert_eq!(check_fibonacci_ones(&sqrt_cf(&b(41)).unwrap()), None);
    }

    #[test]
    fn verify_small_range() {
        let report = verify_rules(50);
        assert_eq!(report.cells_checked, (1..=50u64).map(|n| 2 * n).sum::<u64>());
        let len1 = report.coverage_of("len1").unwrap();
        assert_eq!((len1.applicable, len1.agree), (50, 50));
        assert!(report.is_clean(), "{report}");
        for c in &report.coverage[7..] {
            assert!(c.applicable > 0, "table row {} never applies for n <= 50", c.rule);
        }
    }
}
