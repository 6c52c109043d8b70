//! Finite continued fractions of rationals, continuants and convergents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A finite continued fraction `[a_0, a_1, ..., a_N]`.
///
/// `a_0` is any integer, every later digit is at least 1. Both the canonical
/// form and its twin ending in `1` are representable; [`rational_cf`] only
/// ever produces the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCf {
    digits: Vec<BigInt>,
}

impl FiniteCf {
    pub fn new(digits: Vec<BigInt>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidDigits("a continued fraction needs at least one digit".into()));
        }
        if let Some((i, d)) = digits.iter().enumerate().skip(1).find(|(_, d)| !d.is_positive()) {
            return Err(Error::InvalidDigits(format!("digit a_{i} = {d} must be >= 1")));
        }
        Ok(FiniteCf { digits })
    }

    pub fn from_i64s(digits: &[i64]) -> Result<Self> {
        Self::new(digits.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn digits(&self) -> &[BigInt] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<BigInt> {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Canonical means the last digit is not 1, unless the fraction is the single digit `[a_0]`.
    pub fn is_canonical(&self) -> bool {
        self.digits.len() == 1 || !self.digits.last().is_some_and(One::is_one)
    }

    pub fn value(&self) -> Rational {
        eval_cf(self)
    }
}

impl Serialize for FiniteCf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::decimal::seq::serialize(&self.digits, s)
    }
}

impl<'de> Deserialize<'de> for FiniteCf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let digits = crate::decimal::seq::deserialize(d)?;
        FiniteCf::new(digits).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for FiniteCf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}", self.digits[0])?;
        for (i, d) in self.digits.iter().enumerate().skip(1) {
            f.write_str(if i == 1 { "; " } else { ", " })?;
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

/// Expands a rational with the floor/reciprocal iteration, which on `num/den`
/// is the Euclidean algorithm with floored division.
pub fn rational_cf(x: &Rational) -> FiniteCf {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut digits = Vec::new();
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        digits.push(a);
        num = std::mem::replace(&mut den, r);
    }
    FiniteCf { digits }
}

/// Returns the other of the two expansions with the same value:
/// `[.., a_N]` becomes `[.., a_N - 1, 1]`, and a trailing `1` is folded back.
pub fn alt_representation(cf: &FiniteCf) -> FiniteCf {
    let mut digits = cf.digits.clone();
    if digits.len() >= 2 && digits.last().is_some_and(One::is_one) {
        digits.pop();
        *digits.last_mut().expect("non-empty") += 1;
    } else {
        *digits.last_mut().expect("non-empty") -= 1;
        digits.push(BigInt::one());
    }
    FiniteCf { digits }
}

/// Evaluates `a_0 + 1/(a_1 + 1/(... + 1/a_N))` exactly, innermost first.
pub fn eval_cf(cf: &FiniteCf) -> Rational {
    let mut digits = cf.digits.iter().rev();
    let mut acc = Rational::from_integer(digits.next().expect("non-empty").clone());
    for d in digits {
        acc = Rational::from_integer(d.clone()) + acc.recip();
    }
    acc
}

/// Materialized continuants `K_{-1}, K_0, K_1, ..., K_n` of a digit sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuantTable {
    values: Vec<BigInt>,
}

impl ContinuantTable {
    /// `K_m` for `-1 <= m <= n`.
    pub fn get(&self, m: isize) -> Option<&BigInt> {
        usize::try_from(m + 1).ok().and_then(|i| self.values.get(i))
    }

    /// `K_n` over the whole sequence.
    pub fn last(&self) -> &BigInt {
        self.values.last().expect("table holds at least K_-1 and K_0")
    }

    /// Number of variables `n` the table was built from.
    pub fn order(&self) -> usize {
        self.values.len() - 2
    }

    /// The raw table, starting at `K_{-1}`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Builds `K_{-1} = 0`, `K_0 = 1`, `K_m = K_{m-2} + x_m K_{m-1}`.
pub fn continuants(xs: &[BigInt]) -> ContinuantTable {
    let mut values = Vec::with_capacity(xs.len() + 2);
    values.push(BigInt::zero());
    values.push(BigInt::one());
    for (m, x) in xs.iter().enumerate() {
        let next = &values[m] + x * &values[m + 1];
        values.push(next);
    }
    ContinuantTable { values }
}

/// The first `upto` convergents of a digit stream, via the continuant
/// recurrence `p_k = a_k p_{k-1} + p_{k-2}`, `q_k = a_k q_{k-1} + q_{k-2}`.
///
/// A finite stream shorter than `upto` yields only as many convergents as it has digits.
pub fn convergents<I>(digits: I, upto: usize) -> Vec<Rational>
where
    I: IntoIterator,
    I::Item: std::borrow::Borrow<BigInt>,
{
    use std::borrow::Borrow;

    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(upto);
    for a in digits.into_iter().take(upto) {
        let a = a.borrow();
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        // consecutive continuants are coprime and q_k >= 1, so this is already reduced
        out.push(Rational::new_raw(p.clone(), q.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rational_cf_examples() {
        assert_eq!(rational_cf(&r(7, 1)).digits(), ints(&[7]));
        assert_eq!(rational_cf(&r(415, 93)).digits(), ints(&[4, 2, 6, 7]));
        assert_eq!(rational_cf(&r(-7, 2)).digits(), ints(&[-4, 2]));
        assert_eq!(rational_cf(&r(0, 5)).digits(), ints(&[0]));
        assert_eq!(rational_cf(&r(1, 3)).digits(), ints(&[0, 3]));
    }

    #[test]
    fn alt_representation_examples() {
        let c = FiniteCf::from_i64s(&[4, 2, 6, 7]).unwrap();
        let alt = alt_representation(&c);
        assert_eq!(alt.digits(), ints(&[4, 2, 6, 6, 1]));
        assert!(!alt.is_canonical());
        assert_eq!(alt_representation(&alt), c);
        let seven = FiniteCf::from_i64s(&[7]).unwrap();
        assert_eq!(alt_representation(&seven).digits(), ints(&[6, 1]));
        assert_eq!(alt_representation(&alt_representation(&seven)), seven);
        // [a_0, 2] splits into [a_0, 1, 1]
        let c = FiniteCf::from_i64s(&[3, 2]).unwrap();
        assert_eq!(alt_representation(&c).digits(), ints(&[3, 1, 1]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_cf(&FiniteCf::from_i64s(&[4, 2, 6, 7]).unwrap()), r(415, 93));
        assert_eq!(eval_cf(&FiniteCf::from_i64s(&[-12]).unwrap()), r(-12, 1));
        assert_eq!(eval_cf(&FiniteCf::from_i64s(&[1, 1, 1, 1, 1]).unwrap()), r(8, 5));
    }

    #[test]
    fn continuant_examples() {
        assert_eq!(continuants(&[]).values(), ints(&[0, 1]));
        // K_1 = 2, K_2 = 1 + 6*2 = 13, K_3 = 2 + 7*13 = 93
        let t = continuants(&ints(&[2, 6, 7]));
        assert_eq!(t.values(), ints(&[0, 1, 2, 13, 93]));
        assert_eq!(t.last(), &BigInt::from(93));
        assert_eq!(t.get(-1), Some(&BigInt::zero()));
        assert_eq!(t.get(4), None);
        assert_eq!(t.order(), 3);
        assert_eq!(continuants(&ints(&[9])).last(), &BigInt::from(9));
    }

    #[test]
    fn convergent_examples() {
        let ones = std::iter::repeat(BigInt::one());
        assert_eq!(convergents(ones, 5), vec![r(1, 1), r(2, 1), r(3, 2), r(5, 3), r(8, 5)]);
        let sqrt2 = std::iter::once(BigInt::one()).chain(std::iter::repeat(BigInt::from(2)));
        assert_eq!(convergents(sqrt2, 4), vec![r(1, 1), r(3, 2), r(7, 5), r(17, 12)]);
        assert_eq!(convergents(ints(&[-3, 5, 2]), 1), vec![r(-3, 1)]);
        // finite input truncates rather than failing
        assert_eq!(convergents(ints(&[4, 2, 6, 7]), 10).len(), 4);
    }

    #[test]
    fn invalid_digits_rejected() {
        assert!(FiniteCf::new(vec![]).is_err());
        assert!(FiniteCf::from_i64s(&[1, 0]).is_err());
        assert!(FiniteCf::from_i64s(&[1, 2, -1]).is_err());
        assert!(FiniteCf::from_i64s(&[-5, 1]).is_ok());
    }

    #[test]
    fn json_form_is_decimal_strings() {
        let c = FiniteCf::from_i64s(&[4, 2, 6, 7]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"["4","2","6","7"]"#);
        let back: FiniteCf = serde_json::from_str(r#"["4","2","6","7"]"#).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<FiniteCf>(r#"["4","0"]"#).is_err());
        assert_eq!(c.to_string(), "[4; 2, 6, 7]");
    }
}
