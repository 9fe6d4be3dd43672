//! Main terms, error terms and the Farey-fraction statistics, computed
//! exactly where the quantity is an integer or a rational.
//!
//! Everything here is a finite-range diagnostic: the exact values are big
//! integers or rationals, only main terms and normalised errors are `f64`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::counting::{a_sequence, count_a_naive, Threshold};
use crate::error::{domain, Result};
use crate::farey::{FareySequence, SieveTables};
use crate::rational::{format_rational, to_f64, Rational, SmallRatio};
use crate::report::{format_significant, CsvRecord};
use crate::Count;

const PI2: f64 = PI * PI;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(Rational),
}

impl ExactValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Integer(v) => v.to_f64().unwrap_or(f64::NAN),
            ExactValue::Rational(v) => to_f64(v),
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactValue::Integer(v) => write!(f, "{v}"),
            ExactValue::Rational(v) => f.write_str(&format_rational(v)),
        }
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<Count> for ExactValue {
    fn from(v: Count) -> Self {
        ExactValue::Integer(BigInt::from(v))
    }
}

/// An exact quantity next to its asymptotic main term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub n: u64,
    pub exact: ExactValue,
    pub main: f64,
    pub error: f64,
    /// `error / scale` for the scale the error is expected to grow like.
    pub normalized: f64,
}

impl ErrorReport {
    pub fn new(n: u64, exact: ExactValue, main: f64, scale: f64) -> Self {
        let error = exact.to_f64() - main;
        ErrorReport {
            n,
            exact,
            main,
            error,
            normalized: error / scale,
        }
    }
}

impl CsvRecord for ErrorReport {
    fn header() -> &'static [&'static str] {
        &["n", "exact", "main", "error", "normalized"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.exact.to_string(),
            format_significant(self.main),
            format_significant(self.error),
            format_significant(self.normalized),
        ]
    }
}

/// `t u n^3 / pi^2`; accepts `t = 0` or `u = 0`.
pub fn main_term_b(n: u64, t: &Rational, u: &Rational) -> f64 {
    to_f64(t) * to_f64(u) * (n as f64).powi(3) / PI2
}

fn b11_report(n: u64, exact: Count) -> ErrorReport {
    let nf = n as f64;
    ErrorReport::new(n, exact.into(), (nf.powi(3) + 3.0 * nf * nf) / PI2, nf.powf(1.5))
}

/// `B(n, 1, 1) - (n^3 + 3 n^2) / pi^2`, normalised by `n^{3/2}`.
pub fn error_b11(n: u64) -> Result<ErrorReport> {
    Ok(error_b11_scan(n)?.pop().expect("n >= 1"))
}

/// [`error_b11`] for every `n` in `1..=n_max`, from one sieve.
pub fn error_b11_scan(n_max: u64) -> Result<Vec<ErrorReport>> {
    if n_max == 0 {
        return Err(domain("n must be positive"));
    }
    let sieve = SieveTables::new(n_max as usize)?;
    let phi_sums = sieve.summatory_table();
    let mut b: Count = 1;
    Ok((1..=n_max)
        .map(|n| {
            b += phi_sums[n as usize];
            b11_report(n, b)
        })
        .collect())
}

fn phi_report(n: u64, exact: Count) -> ErrorReport {
    let nf = n as f64;
    ErrorReport::new(n, exact.into(), 3.0 * nf * nf / PI2, nf * (nf + 2.0).ln())
}

/// `Phi(n) - 3 n^2 / pi^2`, normalised by `n log(n + 2)`.
pub fn mertens_error_phi(n: u64) -> Result<ErrorReport> {
    Ok(mertens_error_phi_scan(n)?.pop().expect("n >= 1"))
}

pub fn mertens_error_phi_scan(n_max: u64) -> Result<Vec<ErrorReport>> {
    if n_max == 0 {
        return Err(domain("n must be positive"));
    }
    let sieve = SieveTables::new(n_max as usize)?;
    let phi_sums = sieve.summatory_table();
    Ok((1..=n_max).map(|n| phi_report(n, phi_sums[n as usize])).collect())
}

/// `sum_{m <= x} (x - m) phi(m)` against `x^3 / pi^2`, normalised by `x^2`.
pub fn weighted_totient_sum(x: u64) -> Result<(Count, ErrorReport)> {
    if x == 0 {
        return Err(domain("x must be positive"));
    }
    let sieve = SieveTables::new(x as usize)?;
    let total: Count = (1..=x).map(|m| (x - m) as Count * sieve.phi(m as usize) as Count).sum();
    let xf = x as f64;
    Ok((total, ErrorReport::new(x, total.into(), xf.powi(3) / PI2, xf * xf)))
}

/// The weighted sum for every `x` in `1..=x_max`, using
/// `S(x) = S(x - 1) + Phi(x - 1)`.
pub fn weighted_totient_scan(x_max: u64) -> Result<Vec<ErrorReport>> {
    if x_max == 0 {
        return Err(domain("x must be positive"));
    }
    let sieve = SieveTables::new(x_max as usize)?;
    let phi_sums = sieve.summatory_table();
    let mut s: Count = 0;
    Ok((1..=x_max)
        .map(|x| {
            s += phi_sums[x as usize - 1];
            let xf = x as f64;
            ErrorReport::new(x, s.into(), xf.powi(3) / PI2, xf * xf)
        })
        .collect())
}

/// `integral_0^1 (A(m, t, 1) - t Phi(m))^2 dt` as an exact rational.
///
/// `A(m, ., 1)` equals `i` on `[f_i, f_{i+1})` (with `f_{Phi+1} = 1`), so each
/// gap contributes `((i - f_i Phi)^3 - (i - f_{i+1} Phi)^3) / (3 Phi)`. All
/// cubes are brought over the common denominator `lcm(1..m)^3`.
pub fn franel_integral(m: u64) -> Result<Rational> {
    let farey = FareySequence::new(m)?;
    let phi = BigInt::from(farey.len());
    let lcm = (1..=m).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let scale: Vec<BigInt> = (0..=m)
        .map(|q| {
            if q == 0 {
                BigInt::zero()
            } else {
                let s = &lcm / BigInt::from(q);
                &s * &s * &s
            }
        })
        .collect();
    // (i - (p/q) Phi)^3 * lcm^3 = (i q - p Phi)^3 (lcm/q)^3
    let cube = |i: usize, f: SmallRatio| -> BigInt {
        let v = BigInt::from(i as u64 * f.denom) - BigInt::from(f.numer) * &phi;
        &v * &v * &v * &scale[f.denom as usize]
    };
    let fractions = farey.fractions();
    let mut total = BigInt::zero();
    for (idx, &f) in fractions.iter().enumerate() {
        let i = idx + 1;
        let next = fractions
            .get(idx + 1)
            .copied()
            .unwrap_or(SmallRatio { numer: 1, denom: 1 });
        total += cube(i, f) - cube(i, next);
    }
    let denom = BigInt::from(3) * &phi * &lcm * &lcm * &lcm;
    Ok(Rational::new(total, denom))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FranelRow {
    pub m: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub float: f64,
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

impl FranelRow {
    pub fn new(m: u64) -> Result<Self> {
        let value = franel_integral(m)?;
        Ok(FranelRow {
            m,
            float: to_f64(&value),
            value,
        })
    }
}

impl CsvRecord for FranelRow {
    fn header() -> &'static [&'static str] {
        &["m", "franel_exact_num", "franel_exact_den", "franel_float"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.value.numer().to_string(),
            self.value.denom().to_string(),
            format_significant(self.float),
        ]
    }
}

fn unit_root(f: SmallRatio) -> Complex64 {
    let (s, c) = (2.0 * PI * f.numer as f64 / f.denom as f64).sin_cos();
    Complex64::new(c, s)
}

/// `sum_i e(f_m(i))` in floating point, with the Mertens value `M(m)` it equals.
pub fn farey_exponential_sum(m: u64) -> Result<(Complex64, i64)> {
    let farey = FareySequence::new(m)?;
    let sum = farey.fractions().iter().map(|&f| unit_root(f)).sum();
    let mertens = SieveTables::new(m as usize)?.mertens(m as usize);
    Ok((sum, mertens))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpSumRow {
    pub m: u64,
    pub sum_re: f64,
    pub sum_im: f64,
    pub mertens: i64,
    pub farey_len: Count,
}

impl CsvRecord for ExpSumRow {
    fn header() -> &'static [&'static str] {
        &["m", "sum_re", "sum_im", "mertens"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            format_significant(self.sum_re),
            format_significant(self.sum_im),
            self.mertens.to_string(),
        ]
    }
}

/// The exponential sum for every order up to `m_max`. Order `m` adds the
/// fractions with denominator exactly `m`, so the sums accumulate.
pub fn exponential_sum_scan(m_max: u64) -> Result<Vec<ExpSumRow>> {
    if m_max == 0 {
        return Err(domain("m must be positive"));
    }
    let sieve = SieveTables::new(m_max as usize)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mertens = 0i64;
    let mut farey_len: Count = 0;
    Ok((1..=m_max)
        .map(|q| {
            let start = if q == 1 { 0 } else { 1 };
            for p in start..q {
                if p.gcd(&q) == 1 {
                    sum += unit_root(SmallRatio { numer: p, denom: q });
                }
            }
            mertens += sieve.mu(q as usize) as i64;
            farey_len += sieve.phi(q as usize) as Count;
            ExpSumRow {
                m: q,
                sum_re: sum.re,
                sum_im: sum.im,
                mertens,
                farey_len,
            }
        })
        .collect())
}

/// `sum_{m <= n} sum_{k b <= m} mu(k) frac(b t)` as an exact rational.
pub fn mu_frac_sum(n: u64, t: &Rational) -> Result<Rational> {
    Ok(mu_frac_scan(n, t)?.pop().expect("n >= 1"))
}

/// [`mu_frac_sum`] for every `n` in `1..=n_max`.
///
/// With `t = p/q`, `frac(b t) = (b p mod q) / q`; the inner sum over `k b <= m`
/// grows by `sum_{k | m} mu(k) frac((m/k) t)` at each `m`.
pub fn mu_frac_scan(n_max: u64, t: &Rational) -> Result<Vec<Rational>> {
    if n_max == 0 {
        return Err(domain("n must be positive"));
    }
    let t = SmallRatio::from_rational(t)?;
    let sieve = SieveTables::new(n_max as usize)?;
    let q = t.denom as u128;
    let p = t.numer as u128 % q;
    // increments[m] = q * sum_{k | m} mu(k) frac((m/k) t)
    let mut increments = vec![0i128; n_max as usize + 1];
    for k in 1..=n_max as usize {
        let mu = sieve.mu(k) as i128;
        if mu == 0 {
            continue;
        }
        for (b, m) in (1..).zip((k..=n_max as usize).step_by(k)) {
            increments[m] += mu * ((b as u128 * p) % q) as i128;
        }
    }
    let mut inner = 0i128;
    let mut outer = 0i128;
    Ok(increments[1..]
        .iter()
        .map(|&inc| {
            inner += inc;
            outer += inner;
            Rational::new(BigInt::from(outer), BigInt::from(q))
        })
        .collect())
}

/// `sum_{H < h <= 2H, M < a <= 2M} gcd(h, a)` against `(6 H M / pi^2) log(2 min(H, M))`,
/// normalised by `H M`.
pub fn gcd_box_sum(h: u64, m: u64) -> Result<(Count, ErrorReport)> {
    if h == 0 || m == 0 {
        return Err(domain("H and M must be positive"));
    }
    let total: Count = (h + 1..=2 * h)
        .map(|x| (m + 1..=2 * m).map(|y| x.gcd(&y) as Count).sum::<Count>())
        .sum();
    let hm = h as f64 * m as f64;
    let main = 6.0 * hm / PI2 * (2.0 * h.min(m) as f64).ln();
    Ok((total, ErrorReport::new(h, total.into(), main, hm)))
}

fn a_report(m: u64, a: Count, th: &Threshold) -> ErrorReport {
    let mf = m as f64;
    let main = 3.0 * th.t().to_f64() * th.u().to_f64() * mf * mf / PI2;
    ErrorReport::new(m, a.into(), main, mf.powf(1.5))
}

/// `A(m, t, u) - 3 t u m^2 / pi^2`, normalised by `m^{3/2}`.
pub fn a_asymptotic_check(m: u64, t: &Rational, u: &Rational) -> Result<ErrorReport> {
    let th = Threshold::new(t, u)?;
    Ok(a_report(m, count_a_naive(m, &th)?, &th))
}

pub fn a_asymptotic_scan(m_max: u64, th: &Threshold) -> Result<Vec<ErrorReport>> {
    Ok(a_sequence(m_max, th)?
        .into_iter()
        .zip(1..)
        .map(|(a, m)| a_report(m, a, th))
        .collect())
}
