//! Exact rational helpers shared by every module.
//!
//! Rationals are `num_rational::BigRational`. Textual input accepts integers,
//! fractions (`7/10`) and finite decimals (`0.59`); decimals are scaled by a
//! power of ten so no binary floating point is ever involved.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Fractional part `r - floor(r)` of a nonnegative rational.
pub fn frac_part(r: &Rational) -> Result<Rational> {
    if r.is_negative() {
        return Err(crate::error::domain(format!(
            "fractional part requires r >= 0, got {}",
            format_rational(r)
        )));
    }
    Ok(r - r.floor())
}

/// Always renders as `p/q`, including integers (`2/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3"`, `"7/10"`, `"0.59"`, `"-1.25"` or `".5"` exactly.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let fail = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(fail("empty string"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| fail("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| fail("bad denominator"))?;
        if q.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(fail("no digits"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(fail("expected digits, '.', or p/q"));
    }
    let digits = format!("{whole}{frac}");
    let numer: BigUint = if digits.is_empty() {
        BigUint::zero()
    } else {
        digits.parse().map_err(|_| fail("bad digits"))?
    };
    let denom = num_traits::pow(BigUint::from(10u32), frac.len());
    let mut value = Rational::new(BigInt::from(numer), BigInt::from(denom));
    if negative {
        value = -value;
    }
    Ok(value)
}

/// A rational in lowest terms whose numerator and denominator fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallRatio {
    pub numer: u64,
    pub denom: u64,
}

impl SmallRatio {
    pub fn new(numer: u64, denom: u64) -> Self {
        assert!(denom > 0, "zero denominator");
        let g = numer.gcd(&denom);
        SmallRatio {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let numer = r.numer().to_u64();
        let denom = r.denom().to_u64();
        match (numer, denom) {
            (Some(numer), Some(denom)) => Ok(SmallRatio { numer, denom }),
            _ => Err(crate::error::domain(format!(
                "{} must be nonnegative with numerator and denominator below 2^64",
                format_rational(r)
            ))),
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.numer), BigInt::from(self.denom))
    }

    pub fn is_one(self) -> bool {
        self.numer == self.denom
    }

    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }

    /// `floor(self * k)`.
    pub fn floor_mul(self, k: u64) -> u128 {
        (self.numer as u128 * k as u128) / self.denom as u128
    }

    /// Number of integers `c` in `[0, k)` with `c < self * k`, i.e. `c * denom < numer * k`.
    /// Assumes `self <= 1`.
    pub fn count_below(self, k: u64) -> u64 {
        let prod = self.numer as u128 * k as u128;
        let q = self.denom as u128;
        // ceil(prod / q), which counts c = 0 .. ceil-1 when prod/q is not an integer
        // and c = 0 .. prod/q - 1 when it is.
        let below = prod.div_ceil(q);
        below.min(k as u128) as u64
    }
}

impl std::fmt::Display for SmallRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

pub(crate) fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}
