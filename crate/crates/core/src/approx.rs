//! Brute-force oracles for how well convergents approximate a quadratic irrational.
//!
//! Distances `|x - p/q|` are never evaluated numerically. Each difference is
//! written as `(A + B√D)/W` with `W > 0` and compared through [`sign_linear`].

use std::cmp::Ordering;
use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::cf::{convergents, Rational};
use crate::error::Result;
use crate::surd::{floor_quotient, sign_linear, QuadraticSurd};

/// Below this convergent denominator every `q <= q_n` is enumerated; above it
/// the Farey-bracket search is used.
pub const EXHAUSTIVE_DENOMINATOR_LIMIT: u64 = 2_000;

/// A fraction next to its target with the exact side it lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxWitness {
    pub target: QuadraticSurd,
    pub fraction: Rational,
    /// Sign of `target - fraction`.
    pub side: Ordering,
}

impl ApproxWitness {
    pub fn new(target: &QuadraticSurd, fraction: Rational) -> Self {
        let side = target.cmp_rational(&fraction);
        ApproxWitness {
            target: target.clone(),
            fraction,
            side,
        }
    }

    /// Recomputes the side from scratch.
    pub fn recheck(&self) -> bool {
        self.target.cmp_rational(&self.fraction) == self.side
    }
}

impl Serialize for ApproxWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ApproxWitness", 3)?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("fraction", &self.fraction.to_string())?;
        st.serialize_field(
            "side",
            match self.side {
                Ordering::Greater => "below",
                Ordering::Less => "above",
                Ordering::Equal => "equal",
            },
        )?;
        st.end()
    }
}

/// `x - r` as `(A + B√D)/W` with `W > 0`.
fn difference(x: &QuadraticSurd, r: &Rational) -> (BigInt, BigInt, BigInt) {
    let (u, v) = (r.numer(), r.denom());
    let a = x.p() * v - u * x.q();
    let b = v.clone();
    let w = x.q() * v;
    if w.is_negative() {
        (-a, -b, -w)
    } else {
        (a, b, w)
    }
}

fn sign_factor(o: Ordering) -> BigInt {
    match o {
        Ordering::Less => -BigInt::one(),
        Ordering::Equal => BigInt::zero(),
        Ordering::Greater => BigInt::one(),
    }
}

/// Orders `|x - a|` against `|x - b|` exactly.
pub fn cmp_abs_distance(x: &QuadraticSurd, a: &Rational, b: &Rational) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = x.d();
    let (a1, b1, w1) = difference(x, a);
    let (a2, b2, w2) = difference(x, b);
    let s1 = sign_factor(sign_linear(&a1, &b1, d));
    let s2 = sign_factor(sign_linear(&a2, &b2, d));
    // |x-a| - |x-b| = (s1 (a1 + b1√D) w2 - s2 (a2 + b2√D) w1) / (w1 w2)
    let rational = &s1 * &a1 * &w2 - &s2 * &a2 * &w1;
    let irrational = &s1 * &b1 * &w2 - &s2 * &b2 * &w1;
    sign_linear(&rational, &irrational, d)
}

/// Whether `|x - p/q| < 1/(2q²)` holds.
pub fn within_half_q_squared(x: &QuadraticSurd, f: &Rational) -> bool {
    let (a, b, w) = difference(x, f);
    let s = sign_factor(sign_linear(&a, &b, x.d()));
    let scale = BigInt::from(2) * f.denom() * f.denom() * s;
    sign_linear(&(&scale * a - w), &(scale * b), x.d()) == Ordering::Less
}

fn floor_times(x: &QuadraticSurd, q: &BigInt) -> BigInt {
    floor_quotient(&(q * x.p()), &(q * q * x.d()), x.q()).expect("radicand is non-negative")
}

/// A fraction with denominator `<= max_den`, other than `c`, at least as close
/// to `x` as `c`. Found by enumerating every denominator.
pub fn competitor_exhaustive(x: &QuadraticSurd, c: &Rational, max_den: &BigInt) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut q = BigInt::one();
    while &q <= max_den {
        let fl = floor_times(x, &q);
        // p outside [⌊qx⌋ - 1, ⌈qx⌉ + 1] is farther than the window ends
        let mut p = &fl - 1u32;
        while p <= &fl + 2u32 {
            let cand = Rational::new(p.clone(), q.clone());
            if &cand != c && best.as_ref().is_none_or(|b| cmp_abs_distance(x, &cand, b) == Ordering::Less) {
                best = Some(cand);
            }
            p += 1u32;
        }
        q += 1u32;
    }
    best.filter(|b| cmp_abs_distance(x, b, c) != Ordering::Greater)
}

/// The consecutive pair `L < x < R` of the Farey sequence of order `max_den`,
/// found by mediant descent with exact comparisons against `x`.
pub fn farey_bracket(x: &QuadraticSurd, max_den: &BigInt) -> (Rational, Rational) {
    let fl = x.floor();
    let (mut lp, mut lq) = (fl.clone(), BigInt::one());
    let (mut rp, mut rq) = (fl + 1u32, BigInt::one());
    let below = |p: &BigInt, q: &BigInt| x.cmp_rational(&Rational::new(p.clone(), q.clone())) == Ordering::Greater;
    while &lq + &rq <= *max_den {
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        let move_left = below(&mp, &mq);
        // advance the bound on the side of the mediant as far as the order allows
        let (fp, fq, sp, sq) = if move_left {
            (&lp, &lq, &rp, &rq)
        } else {
            (&rp, &rq, &lp, &lq)
        };
        let k_cap = (max_den - fq) / sq;
        let stays = |k: &BigInt| {
            let (p, q) = (fp + k * sp, fq + k * sq);
            below(&p, &q) == move_left
        };
        let mut lo = BigInt::one();
        let mut hi = BigInt::from(2);
        while hi <= k_cap && stays(&hi) {
            lo = hi.clone();
            hi *= 2u32;
        }
        if hi > k_cap {
            hi = &k_cap + 1u32;
        }
        // invariant: stays(lo), !stays(hi) or hi beyond the cap
        while &hi - &lo > BigInt::one() {
            let mid = (&lo + &hi) / 2u32;
            if stays(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (np, nq) = (fp + &lo * sp, fq + &lo * sq);
        if move_left {
            (lp, lq) = (np, nq);
        } else {
            (rp, rq) = (np, nq);
        }
    }
    (Rational::new(lp, lq), Rational::new(rp, rq))
}

/// Same contract as [`competitor_exhaustive`], via [`farey_bracket`].
pub fn competitor_farey(x: &QuadraticSurd, c: &Rational, max_den: &BigInt) -> Option<Rational> {
    let (l, r) = farey_bracket(x, max_den);
    if c == &l {
        return (cmp_abs_distance(x, &r, c) != Ordering::Greater).then_some(r);
    }
    if c == &r {
        return (cmp_abs_distance(x, &l, c) != Ordering::Greater).then_some(l);
    }
    // every other fraction of the order is farther than one of L, R
    let best = if cmp_abs_distance(x, &l, &r) == Ordering::Less { l } else { r };
    (cmp_abs_distance(x, &best, c) != Ordering::Greater).then_some(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxViolation {
    pub index: Option<usize>,
    pub subject: ApproxWitness,
    pub competitor: Option<ApproxWitness>,
    pub detail: String,
}

/// Result of one theorem check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxReport {
    pub check: &'static str,
    pub target: String,
    pub checked: u64,
    pub violations: Vec<ApproxViolation>,
    #[serde(serialize_with = "rationals_as_strings")]
    pub qualifiers: Vec<Rational>,
    pub notes: Vec<String>,
    pub runtime_ms: u128,
}

fn rationals_as_strings<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl ApproxReport {
    fn new(check: &'static str, x: &QuadraticSurd) -> Self {
        ApproxReport {
            check,
            target: x.to_string(),
            checked: 0,
            violations: Vec::new(),
            qualifiers: Vec::new(),
            notes: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn convergent_list(x: &QuadraticSurd, count: usize) -> Result<Vec<Rational>> {
    let cf = x.expand()?;
    Ok(convergents(cf.digits(), count))
}

/// Every convergent `p_n/q_n`, `n <= upto_index`, is strictly closer to `x` than any
/// other fraction with denominator `<= q_n`.
///
/// For `n = 0` with `q_1 = 1` (that is `a_1 = 1`) the nearest integer is `p_1/q_1`
/// rather than `p_0/q_0`; that case is recorded as a note after confirming the
/// competitor is exactly the next convergent.
pub fn check_best_approximation(x: &QuadraticSurd, upto_index: usize) -> Result<ApproxReport> {
    let started = Instant::now();
    let mut report = ApproxReport::new("best_approximation", x);
    let convs = convergent_list(x, upto_index + 2)?;
    let limit = BigInt::from(EXHAUSTIVE_DENOMINATOR_LIMIT);
    for (n, c) in convs.iter().enumerate().take(upto_index + 1) {
        let q_n = c.denom();
        let competitor = if q_n <= &limit {
            competitor_exhaustive(x, c, q_n)
        } else {
            competitor_farey(x, c, q_n)
        };
        report.checked += 1;
        let Some(comp) = competitor else { continue };
        if n == 0 && convs.get(1).is_some_and(|next| next.denom().is_one() && next == &comp) {
            report.notes.push(format!(
                "n = 0: a_1 = 1, so the nearest integer is the next convergent {comp}, not {c}"
            ));
            continue;
        }
        report.violations.push(ApproxViolation {
            index: Some(n),
            subject: ApproxWitness::new(x, c.clone()),
            competitor: Some(ApproxWitness::new(x, comp)),
            detail: format!("a fraction with denominator <= {q_n} is at least as close"),
        });
    }
    report.runtime_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Of every two consecutive convergents `n, n+1` (`n <= upto_index`) at least one
/// satisfies `|x - p/q| < 1/(2q²)`.
pub fn check_half_q_squared(x: &QuadraticSurd, upto_index: usize) -> Result<ApproxReport> {
    let started = Instant::now();
    let mut report = ApproxReport::new("half_q_squared", x);
    let convs = convergent_list(x, upto_index + 2)?;
    let good: Vec<bool> = convs.iter().map(|c| within_half_q_squared(x, c)).collect();
    for n in 0..=upto_index {
        report.checked += 1;
        if !(good[n] || good[n + 1]) {
            report.violations.push(ApproxViolation {
                index: Some(n),
                subject: ApproxWitness::new(x, convs[n].clone()),
                competitor: Some(ApproxWitness::new(x, convs[n + 1].clone())),
                detail: "neither convergent is within 1/(2q²)".into(),
            });
        }
    }
    report.qualifiers = convs
        .into_iter()
        .zip(good)
        .take(upto_index + 2)
        .filter_map(|(c, g)| g.then_some(c))
        .collect();
    report.runtime_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Every reduced `p/q` with `q <= q_max` and `|x - p/q| < 1/(2q²)` is a convergent of `x`.
pub fn check_legendre(x: &QuadraticSurd, q_max: u64) -> Result<ApproxReport> {
    let started = Instant::now();
    let mut report = ApproxReport::new("legendre", x);
    let q_max_big = BigInt::from(q_max);
    let cf = x.expand()?;
    let mut known = HashSet::new();
    // convergent denominators grow at least like Fibonacci numbers
    let mut count = 2;
    loop {
        let convs = convergents(cf.digits(), count);
        if convs.last().is_some_and(|c| c.denom() > &q_max_big) {
            known.extend(convs);
            break;
        }
        count *= 2;
    }
    for q in 1..=q_max {
        let q = BigInt::from(q);
        let fl = floor_times(x, &q);
        // |qx - p| < 1/(2q) <= 1/2 leaves only ⌊qx⌋ and ⌊qx⌋ + 1
        for p in [fl.clone(), fl + 1u32] {
            if !p.gcd(&q).is_one() {
                continue;
            }
            report.checked += 1;
            let f = Rational::new(p, q.clone());
            if within_half_q_squared(x, &f) {
                if !known.contains(&f) {
                    report.violations.push(ApproxViolation {
                        index: None,
                        subject: ApproxWitness::new(x, f.clone()),
                        competitor: None,
                        detail: "within 1/(2q²) but not a convergent".into(),
                    });
                }
                report.qualifiers.push(f);
            }
        }
    }
    report.runtime_ms = started.elapsed().as_millis();
    Ok(report)
}
