//! Exact real quadratic irrationals `(P + √D)/Q` and their periodic expansions.
//!
//! Every comparison here reduces to the sign of `a + b√d` for integers `a`, `b`,
//! `d`, decided by one squaring. No floating point is involved.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::Rational;
use crate::error::{Error, Result};

/// Floor of the square root. Fails on negative input.
pub fn isqrt(m: &BigInt) -> Result<BigInt> {
    if m.is_negative() {
        return Err(Error::NegativeSqrt(m.clone()));
    }
    let t = m.sqrt();
    debug_assert!(&t * &t <= *m && *m < (&t + 1u32) * (&t + 1u32));
    Ok(t)
}

/// `Some(root)` when `m` is a perfect square.
pub fn exact_sqrt(m: &BigInt) -> Option<BigInt> {
    let t = isqrt(m).ok()?;
    (&t * &t == *m).then_some(t)
}

/// Sign of `a + b√d` for `d >= 0`.
pub fn sign_linear(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    debug_assert!(!d.is_negative());
    let sa = a.sign_cmp();
    let sb = if d.is_zero() { Ordering::Equal } else { b.sign_cmp() };
    match (sa, sb) {
        (x, Ordering::Equal) => x,
        (Ordering::Equal, y) => y,
        (x, y) if x == y => x,
        // opposite signs: compare a^2 with b^2 d
        (x, _) => match (a * a).cmp(&(b * b * d)) {
            Ordering::Greater => x,
            Ordering::Less => x.reverse(),
            Ordering::Equal => Ordering::Equal,
        },
    }
}

/// `floor((p + √d) / q)` for `d >= 0`, `q != 0`.
pub fn floor_quotient(p: &BigInt, d: &BigInt, q: &BigInt) -> Result<BigInt> {
    let root = isqrt(d)?;
    let exact = &root * &root == *d;
    Ok(floor_with_root(p, &root, exact, q))
}

fn floor_with_root(p: &BigInt, root: &BigInt, exact: bool, q: &BigInt) -> BigInt {
    if exact || q.is_positive() {
        (p + root).div_floor(q)
    } else {
        // floor(-p - √d) = -p - root - 1 when √d is irrational
        (-p - root - 1u32).div_floor(&-q)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn with_sign_of(o: Ordering, q: &BigInt) -> Ordering {
    if q.is_negative() {
        o.reverse()
    } else {
        o
    }
}

/// The real number `(P + √D)/Q` in canonical form, i.e. with `Q | (D - P²)`.
///
/// The conjugate is `(P - √D)/Q`. The radicand stays fixed under [`cf_step`](Self::cf_step),
/// so for a given `D` the pair `(P, Q)` identifies the value uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticSurd {
    #[serde(rename = "P", with = "crate::decimal::int")]
    p: BigInt,
    #[serde(rename = "D", with = "crate::decimal::int")]
    d: BigInt,
    #[serde(rename = "Q", with = "crate::decimal::int")]
    q: BigInt,
}

/// Brings `(p + √d)/q` into canonical form.
///
/// When `q` does not divide `d - p²` every part is scaled by `|q|`
/// (`p ← p|q|`, `d ← d q²`, `q ← q|q|`), which leaves the value unchanged.
pub fn normalize(p: BigInt, d: BigInt, q: BigInt) -> Result<QuadraticSurd> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if d.is_negative() {
        return Err(Error::NegativeRadicand(d));
    }
    if (&d - &p * &p).is_multiple_of(&q) {
        return Ok(QuadraticSurd { p, d, q });
    }
    let scale = q.abs();
    Ok(QuadraticSurd {
        p: p * &scale,
        d: d * &q * &q,
        q: q * scale,
    })
}

impl QuadraticSurd {
    /// Canonicalizing constructor, see [`normalize`].
    pub fn new(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        normalize(p.into(), d.into(), q.into())
    }

    /// `√n` as `(0 + √n)/1`.
    pub fn sqrt(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(0, n, 1)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden_ratio() -> Self {
        QuadraticSurd {
            p: BigInt::one(),
            d: BigInt::from(5),
            q: BigInt::from(2),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_irrational(&self) -> bool {
        exact_sqrt(&self.d).is_none()
    }

    fn require_irrational(&self) -> Result<BigInt> {
        let root = isqrt(&self.d)?;
        if &root * &root == self.d {
            return Err(Error::RationalSurd(self.d.clone()));
        }
        Ok(root)
    }

    /// `(P - √D)/Q`, stored as `(-P + √D)/(-Q)`.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd {
            p: -&self.p,
            d: self.d.clone(),
            q: -&self.q,
        }
    }

    /// `-1/α'`, which simplifies to `(P + √D)/((D - P²)/Q)`.
    pub fn neg_recip_conjugate(&self) -> Result<Self> {
        let num = &self.d - &self.p * &self.p;
        if num.is_zero() {
            return Err(Error::Precondition("conjugate is zero".into()));
        }
        Ok(QuadraticSurd {
            p: self.p.clone(),
            d: self.d.clone(),
            q: num / &self.q,
        })
    }

    pub fn floor(&self) -> BigInt {
        let root = isqrt(&self.d).expect("radicand is non-negative");
        let exact = &root * &root == self.d;
        floor_with_root(&self.p, &root, exact, &self.q)
    }

    /// Sign of `self - r`.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let (u, v) = (r.numer(), r.denom());
        let a = &self.p * v - u * &self.q;
        with_sign_of(sign_linear(&a, v, &self.d), &self.q)
    }

    /// One round of the floor/reciprocal iteration: `a = ⌊x⌋`, `x ← 1/(x - a)`.
    pub fn cf_step(&self) -> Result<(BigInt, QuadraticSurd)> {
        let root = self.require_irrational()?;
        Ok(self.step_with_root(&root))
    }

    fn step_with_root(&self, root: &BigInt) -> (BigInt, QuadraticSurd) {
        let a = floor_with_root(&self.p, root, false, &self.q);
        // x - a = (P - aQ + √D)/Q, and its reciprocal is (aQ - P + √D)/((D - (aQ - P)²)/Q)
        let p = &a * &self.q - &self.p;
        let q = (&self.d - &p * &p) / &self.q;
        debug_assert!((&self.d - &p * &p).is_multiple_of(&q));
        (
            a,
            QuadraticSurd {
                p,
                d: self.d.clone(),
                q,
            },
        )
    }

    /// The eventually periodic expansion, split at the first repeated state.
    pub fn expand(&self) -> Result<PeriodicCf> {
        let root = self.require_irrational()?;
        let cap = self
            .d
            .to_u64()
            .and_then(|d| d.checked_mul(4))
            .map_or(u64::MAX, |d| d.max(1_000_000));

        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut state = self.clone();
        loop {
            if let Some(&start) = seen.get(&(state.p.clone(), state.q.clone())) {
                let period = digits.split_off(start);
                return Ok(PeriodicCf {
                    preperiod: digits,
                    period,
                });
            }
            if digits.len() as u64 >= cap {
                return Err(Error::IterationCap(cap));
            }
            let (a, next) = state.step_with_root(&root);
            seen.insert((state.p, state.q), digits.len());
            digits.push(a);
            state = next;
        }
    }

    /// Purely periodic iff `α > 1` and `α' ∈ (-1, 0)`.
    pub fn is_purely_periodic_by_criterion(&self) -> bool {
        let (p, d, q) = (&self.p, &self.d, &self.q);
        let minus_one = -BigInt::one();
        let above_one = with_sign_of(sign_linear(&(p - q), &BigInt::one(), d), q) == Ordering::Greater;
        let conj_negative = with_sign_of(sign_linear(p, &minus_one, d), q) == Ordering::Less;
        let conj_above_minus_one = with_sign_of(sign_linear(&(p + q), &minus_one, d), q) == Ordering::Greater;
        above_one && conj_negative && conj_above_minus_one
    }

    /// Expansions of `α` and of `-1/α'`. Requires `α` purely periodic.
    pub fn reversal_pair(&self) -> Result<(PeriodicCf, PeriodicCf)> {
        self.require_irrational()?;
        if !self.is_purely_periodic_by_criterion() {
            return Err(Error::Precondition(format!(
                "{self} is not purely periodic (needs α > 1 and α' in (-1, 0))"
            )));
        }
        Ok((self.expand()?, self.neg_recip_conjugate()?.expand()?))
    }
}

impl std::fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} + √{})/{}", self.p, self.d, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Larger,
    Smaller,
}

/// `A x² + B x + C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPolynomial {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticPolynomial {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadraticPolynomial {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }
}

/// One irrational root `(-B ± √(B² - 4AC))/(2A)` of the polynomial.
pub fn from_polynomial(poly: &QuadraticPolynomial, choice: RootChoice) -> Result<QuadraticSurd> {
    if poly.a.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    let disc = poly.discriminant();
    if !disc.is_positive() {
        return Err(Error::ComplexRoot(disc));
    }
    if exact_sqrt(&disc).is_some() {
        return Err(Error::RationalRoot(disc));
    }
    let two_a = BigInt::from(2) * &poly.a;
    // (-B + √Δ)/(2A) is the larger root exactly when 2A > 0
    let plus_root_is_larger = two_a.is_positive();
    let (p, q) = if plus_root_is_larger == (choice == RootChoice::Larger) {
        (-&poly.b, two_a)
    } else {
        (poly.b.clone(), -two_a)
    };
    let (p, d, q) = strip_square_factor(p, disc, q);
    normalize(p, d, q)
}

/// Divides `(p, d, q)` by `(g, g², g)` for common factors `g` found by trial division.
fn strip_square_factor(mut p: BigInt, mut d: BigInt, mut q: BigInt) -> (BigInt, BigInt, BigInt) {
    const TRIAL_LIMIT: u64 = 1 << 16;
    let mut h = p.gcd(&q);
    let mut f = 2u64;
    while f <= TRIAL_LIMIT && BigInt::from(f * f) <= h {
        let fb = BigInt::from(f);
        while h.is_multiple_of(&fb) {
            h /= &fb;
            if d.is_multiple_of(&(&fb * &fb)) {
                p /= &fb;
                q /= &fb;
                d /= &fb * &fb;
            }
        }
        f += 1;
    }
    if h > BigInt::one() && d.is_multiple_of(&(&h * &h)) {
        p /= &h;
        q /= &h;
        d /= &h * &h;
    }
    (p, d, q)
}

/// An eventually periodic expansion `[a_0, ..., a_k, (a_{k+1}, ..., a_l)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicCf {
    #[serde(with = "crate::decimal::seq")]
    pub preperiod: Vec<BigInt>,
    #[serde(with = "crate::decimal::seq")]
    pub period: Vec<BigInt>,
}

impl PeriodicCf {
    pub fn from_i64s(preperiod: &[i64], period: &[i64]) -> Self {
        PeriodicCf {
            preperiod: preperiod.iter().map(|&x| x.into()).collect(),
            period: period.iter().map(|&x| x.into()).collect(),
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// The infinite digit stream `a_0, a_1, ...`.
    pub fn digits(&self) -> impl Iterator<Item = &BigInt> + Clone + '_ {
        self.preperiod.iter().chain(self.period.iter().cycle())
    }

    /// No shorter period generates the tail and the preperiod cannot be shortened.
    pub fn is_minimal(&self) -> bool {
        let l = self.period.len();
        if l == 0 {
            return false;
        }
        let shorter = (1..l)
            .filter(|k| l.is_multiple_of(*k))
            .any(|k| (0..l).all(|i| self.period[i] == self.period[i % k]));
        let pre_shrinks = self.preperiod.last().is_some_and(|x| Some(x) == self.period.last());
        !shorter && !pre_shrinks
    }
}

impl std::fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |xs: &[BigInt]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "[")?;
        if !self.preperiod.is_empty() {
            write!(f, "{}; ", join(&self.preperiod))?;
        }
        write!(f, "({})]", join(&self.period))
    }
}
