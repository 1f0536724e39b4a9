//! Scalar coefficient types: exact rationals and doubles share one interface.
//!
//! Every algebra value is a coordinate vector over one scalar type. The two
//! supported types are `f64` and [`num::BigRational`]; the exact type serves
//! as the oracle for the floating one in tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient scalar for algebra elements, polynomials and stems.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic carries no rounding error.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;

    /// Exact square root when one exists. For doubles this is `sqrt` of any
    /// non-negative value; for rationals it exists only for perfect squares.
    fn sqrt(&self) -> Option<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn recip(&self) -> Option<Self>;

    /// JSON encoding: numbers for doubles, `"p/q"` strings for rationals.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, String>;

    /// Parse a literal: integer, `p/q` fraction or decimal.
    fn parse(text: &str) -> Result<Self, String>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / *self)
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(*self)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        v.as_f64().ok_or_else(|| format!("expected number, got {v}"))
    }
    fn parse(text: &str) -> Result<Self, String> {
        let t = text.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if q == 0.0 {
                return Err("zero denominator".into());
            }
            return Ok(p / q);
        }
        t.parse().map_err(|e| format!("bad number {t:?}: {e}"))
    }
}

fn bigint_exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Parse a decimal string into an exact rational: `-12`, `3/4`, `0.25`, `1e-3`.
fn parse_exact_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
        let q: BigInt = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|err| format!("bad exponent {e:?}: {err}"))?;
            (m, exp)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("bad number {t:?}"));
    } else {
        digits
    };
    let numer: BigInt = digits.parse().map_err(|e| format!("bad number {t:?}: {e}"))?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::new(numer, num::pow::pow(ten, scale as usize))
    } else {
        BigRational::new(numer * num::pow::pow(ten, (-scale) as usize), BigInt::one())
    })
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sqrt(&self) -> Option<Self> {
        let n = bigint_exact_sqrt(self.numer())?;
        let d = bigint_exact_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(BigRational::recip(self))
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        match v {
            serde_json::Value::String(s) => parse_exact_rational(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(i))
                } else if let Some(f) = n.as_f64() {
                    BigRational::from_float(f).ok_or_else(|| format!("non-finite number {f}"))
                } else {
                    Err(format!("unsupported number {n}"))
                }
            }
            other => Err(format!("expected rational string, got {other}")),
        }
    }
    fn parse(text: &str) -> Result<Self, String> {
        parse_exact_rational(text)
    }
}
