//! The square-root case: `N = n² + j`, the palindromic period of `√N`, and
//! recovery of `N` from a palindrome.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{continuants, Rational};
use crate::error::{Error, Result};
use crate::surd::{isqrt, QuadraticSurd};

/// The unique split `N = n² + j` with `n >= 1` and `1 <= j <= 2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SqrtDecomposition {
    #[serde(rename = "N", with = "crate::decimal::int")]
    pub radicand: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub n: BigInt,
    #[serde(with = "crate::decimal::int")]
    pub j: BigInt,
}

pub fn decompose(radicand: &BigInt) -> Result<SqrtDecomposition> {
    if radicand < &BigInt::from(2) {
        return Err(Error::Domain(radicand.clone()));
    }
    let n = isqrt(radicand)?;
    let j = radicand - &n * &n;
    if j.is_zero() {
        return Err(Error::SquareInput(radicand.clone()));
    }
    Ok(SqrtDecomposition {
        radicand: radicand.clone(),
        n,
        j,
    })
}

/// `√N = [n, (a_1, ..., a_r, 2n)]`, with the palindromic body `a_1 ... a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtCf {
    pub decomposition: SqrtDecomposition,
    pub body: Vec<BigInt>,
    pub last: BigInt,
}

impl SqrtCf {
    pub fn radicand(&self) -> &BigInt {
        &self.decomposition.radicand
    }

    pub fn n(&self) -> &BigInt {
        &self.decomposition.n
    }

    pub fn j(&self) -> &BigInt {
        &self.decomposition.j
    }

    /// Length of the full period, `r + 1`.
    pub fn period_length(&self) -> usize {
        self.body.len() + 1
    }

    /// The full period `a_1, ..., a_r, 2n`.
    pub fn period(&self) -> Vec<BigInt> {
        let mut p = self.body.clone();
        p.push(self.last.clone());
        p
    }

    /// Largest digit in the body, `None` when the period has length 1.
    pub fn body_max(&self) -> Option<&BigInt> {
        self.body.iter().max()
    }
}

#[derive(Serialize, Deserialize)]
struct SqrtCfJson {
    #[serde(rename = "N", with = "crate::decimal::int")]
    radicand: BigInt,
    #[serde(with = "crate::decimal::int")]
    n: BigInt,
    #[serde(with = "crate::decimal::int")]
    j: BigInt,
    #[serde(with = "crate::decimal::seq")]
    body: Vec<BigInt>,
    #[serde(with = "crate::decimal::int")]
    last: BigInt,
    period_length: usize,
}

impl Serialize for SqrtCf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SqrtCfJson {
            radicand: self.radicand().clone(),
            n: self.n().clone(),
            j: self.j().clone(),
            body: self.body.clone(),
            last: self.last.clone(),
            period_length: self.period_length(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqrtCf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SqrtCfJson::deserialize(d)?;
        let decomposition = decompose(&raw.radicand).map_err(D::Error::custom)?;
        if decomposition.n != raw.n || decomposition.j != raw.j {
            return Err(D::Error::custom("n and j do not match N"));
        }
        if raw.period_length != raw.body.len() + 1 {
            return Err(D::Error::custom("period_length does not match body"));
        }
        Ok(SqrtCf {
            decomposition,
            body: raw.body,
            last: raw.last,
        })
    }
}

impl std::fmt::Display for SqrtCf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "√{} = [{}; (", self.radicand(), self.n())?;
        for d in &self.body {
            write!(f, "{d}, ")?;
        }
        write!(f, "{})]", self.last)
    }
}

/// Expands `√N` and checks the palindrome shape, failing loudly if it does not hold.
pub fn sqrt_cf(radicand: &BigInt) -> Result<SqrtCf> {
    let decomposition = decompose(radicand)?;
    let expansion = QuadraticSurd::sqrt(radicand.clone())?.expand()?;
    let n = &decomposition.n;
    if expansion.preperiod.as_slice() != std::slice::from_ref(n) {
        return Err(Error::InvariantViolation(format!(
            "√{radicand}: preperiod {:?} is not [{n}]",
            expansion.preperiod
        )));
    }
    let mut body = expansion.period;
    let last = body.pop().expect("irrational expansions have a non-empty period");
    let two_n = n * 2u32;
    if last != two_n {
        return Err(Error::InvariantViolation(format!(
            "√{radicand}: period ends in {last}, expected {two_n}"
        )));
    }
    if !palindrome_check(&body) {
        return Err(Error::InvariantViolation(format!("√{radicand}: body is not a palindrome")));
    }
    Ok(SqrtCf {
        decomposition,
        body,
        last,
    })
}

pub fn palindrome_check<T: PartialEq>(body: &[T]) -> bool {
    body.iter().eq(body.iter().rev())
}

/// Recovers `N` from `n` and a palindromic body:
/// `N = n² + (2n K_{r-1}(a_1..a_{r-1}) + K_{r-2}(a_2..a_{r-1})) / K_r(a_1..a_r)`.
///
/// For `r = 1` the inner continuants are `K_0 = 1` and `K_{-1} = 0`; an empty body gives `n² + 1`.
pub fn reconstruct_n(n: &BigInt, body: &[BigInt]) -> Result<Rational> {
    if !n.is_positive() {
        return Err(Error::Precondition(format!("n = {n} must be >= 1")));
    }
    if let Some(d) = body.iter().find(|d| !d.is_positive()) {
        return Err(Error::Precondition(format!("body digit {d} must be >= 1")));
    }
    if !palindrome_check(body) {
        return Err(Error::Precondition("body is not a palindrome".into()));
    }
    let n_sq = Rational::from_integer(n * n);
    let r = body.len();
    if r == 0 {
        return Ok(n_sq + Rational::one());
    }
    let k_r = continuants(body).last().clone();
    let k_r1 = continuants(&body[..r - 1]).last().clone();
    let k_r2 = if r == 1 {
        BigInt::zero()
    } else {
        continuants(&body[1..r - 1]).last().clone()
    };
    let num = BigInt::from(2) * n * k_r1 + k_r2;
    Ok(n_sq + Rational::new(num, k_r))
}

/// Full period length of `√N`.
pub fn period_length(radicand: &BigInt) -> Result<usize> {
    Ok(sqrt_cf(radicand)?.period_length())
}
