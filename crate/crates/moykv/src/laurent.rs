//! Exact Laurent polynomials in `q` with half-integer exponents.
//!
//! Exponents are stored doubled (`2·e`), so `q^{1/2}` is the key `1`. Coefficients
//! are arbitrary-precision integers and zero coefficients are never stored, which
//! makes structural equality coincide with polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MoyError, Result};

/// A Laurent polynomial `Σ c_k q^{k/2}` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The constant polynomial `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · q^{d/2}` where `d` is the doubled exponent.
    pub fn monomial(c: impl Into<BigInt>, doubled_exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(doubled_exp, c);
        }
        Self { terms }
    }

    /// `q^e` for an integer exponent `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, 2 * e)
    }

    /// `q − q^{-1}`, the coefficient of the skein relations.
    pub fn z() -> Self {
        Self::q_pow(1) - Self::q_pow(-1)
    }

    /// Builds a polynomial from `(coefficient, doubled exponent)` pairs, combining
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (C, i64)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (c, d) in pairs {
            p.add_term(c.into(), d);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(doubled exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c · q^{d/2}` in place.
    pub fn add_term(&mut self, c: BigInt, d: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Multiplies by `q^{d/2}`.
    pub fn shift(&self, d: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + d, c.clone())).collect(),
        }
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, s: impl Into<BigInt>) -> Self {
        let s = s.into();
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * &s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest and largest doubled exponents, if nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        Some((lo, hi))
    }

    /// True if every exponent is an integer.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|d| d % 2 == 0)
    }

    /// Value at `q = 1` (only meaningful for the integer-exponent part, but
    /// defined for all exponents since `1^{1/2} = 1`).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The substitution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact division `self / r`; errors if `r` is zero or a remainder is left.
    pub fn div_exact(&self, r: &HalfLaurent) -> Result<HalfLaurent> {
        let (_, r_hi) = r
            .degree_range()
            .ok_or_else(|| MoyError::Internal("division by the zero polynomial".into()))?;
        let r_lead = &r.terms[&r_hi];
        let mut rem = self.clone();
        let mut quot = HalfLaurent::zero();
        let r_lo = r.degree_range().map(|x| x.0).unwrap_or(0);
        while let Some((lo, hi)) = rem.degree_range() {
            if hi - r_hi < lo - r_lo {
                break;
            }
            let c = &rem.terms[&hi];
            let (qc, m) = c.div_rem(r_lead);
            if !m.is_zero() {
                break;
            }
            let d = hi - r_hi;
            quot.add_term(qc.clone(), d);
            rem = rem - r.shift(d).scale(qc);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(MoyError::Internal(format!(
                "inexact polynomial division: remainder {rem}"
            )))
        }
    }

    /// If `self = ε·q^{k/2}·r` for a sign `ε`, returns `(ε, k)` with `k` the
    /// doubled exponent of the ratio.
    pub fn monomial_ratio(&self, r: &HalfLaurent) -> Result<Option<(i8, i64)>> {
        let (_, r_hi) = r
            .degree_range()
            .ok_or_else(|| MoyError::Precondition("monomial ratio against zero".into()))?;
        let Some((_, p_hi)) = self.degree_range() else {
            return Ok(None);
        };
        if self.num_terms() != r.num_terms() {
            return Ok(None);
        }
        let d = p_hi - r_hi;
        let pc = &self.terms[&p_hi];
        let rc = &r.terms[&r_hi];
        let sign: i8 = if pc == rc {
            1
        } else if *pc == -rc {
            -1
        } else {
            return Ok(None);
        };
        if &r.shift(d).scale(sign) == self {
            Ok(Some((sign, d)))
        } else {
            Ok(None)
        }
    }

    /// The quantum integer `[j] = q^{j-1} + q^{j-3} + … + q^{1-j}`.
    pub fn qint(j: u32) -> Self {
        let j = j as i64;
        Self::from_terms((0..j).map(|t| (1, 2 * (j - 1 - 2 * t))))
    }

    /// The quantum factorial `[n]! = [1][2]…[n]`.
    pub fn qfactorial(n: u32) -> Self {
        (1..=n).fold(Self::one(), |acc, j| &acc * &Self::qint(j))
    }

    /// The quantum binomial `[n]!/([k]![n−k]!)`, zero outside `0 ≤ k ≤ n`.
    pub fn qbinom(n: u32, k: i64) -> Self {
        if k < 0 || k > n as i64 {
            return Self::zero();
        }
        let k = k as u32;
        let den = &Self::qfactorial(k) * &Self::qfactorial(n - k);
        Self::qfactorial(n)
            .div_exact(&den)
            .expect("quantum binomial division is exact")
    }

    /// JSON form: `[[coefficient, doubledExponent], …]` ascending.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(d, c)| {
                    let coef = match i64::try_from(c) {
                        Ok(v) => serde_json::Value::from(v),
                        Err(_) => serde_json::Value::String(c.to_string()),
                    };
                    serde_json::Value::Array(vec![coef, serde_json::Value::from(*d)])
                })
                .collect(),
        )
    }

    /// Inverse of [`HalfLaurent::to_json`]; big coefficients may be strings.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || MoyError::Precondition(format!("malformed polynomial JSON: {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut p = Self::zero();
        for item in arr {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let c: BigInt = match &pair[0] {
                serde_json::Value::Number(n) => n.as_i64().ok_or_else(bad)?.into(),
                serde_json::Value::String(s) => s.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            let d = pair[1].as_i64().ok_or_else(bad)?;
            p.add_term(c, d);
        }
        Ok(p)
    }
}

fn fmt_exponent(d: i64) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{d}/2")
    }
}

impl fmt::Display for HalfLaurent {
    /// Renders terms by descending exponent, e.g. `q^2 + 2 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = match *d {
                0 => String::new(),
                2 => "q".to_string(),
                _ => format!("q^{}", fmt_exponent(*d)),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}

impl Serialize for HalfLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        HalfLaurent::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, r: &HalfLaurent) {
        for (d, c) in &r.terms {
            self.add_term(c.clone(), *d);
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, r: &HalfLaurent) {
        for (d, c) in &r.terms {
            self.add_term(-c, *d);
        }
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, r: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += r;
        out
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, r: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= r;
        out
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, r: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &r.terms {
                out.add_term(c1 * c2, d1 + d2);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, r: HalfLaurent) -> HalfLaurent {
                (&self).$m(&r)
            }
        }
        impl $tr<&HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, r: &HalfLaurent) -> HalfLaurent {
                (&self).$m(r)
            }
        }
        impl $tr<HalfLaurent> for &HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, r: HalfLaurent) -> HalfLaurent {
                self.$m(&r)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

impl std::iter::Sum for HalfLaurent {
    fn sum<I: Iterator<Item = HalfLaurent>>(iter: I) -> HalfLaurent {
        iter.fold(HalfLaurent::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
