//! Counting balanced words by slope and intercept.
//!
//! `B(n, t, u)` is the number of balanced words of length `n` realised by a
//! lower mechanical word with slope in `[1 - t, 1]` and intercept in `[0, u)`.
//! It is the running sum `1 + A(1) + ... + A(n)` where `A(m, t, u)` counts pairs
//! `0 <= i < j <= m`, `gcd(i, j) = 1`, `i/j <= t` and `frac(m i / j) < u`.
//!
//! Three evaluation routes are provided and cross-checked against each other:
//!
//! * the per-`m` sum of `A` ([`count_b_theorem`], with [`count_a_naive`] as
//!   the literal double loop),
//! * the totient closed form for `t = u = 1` ([`count_b_classic`]),
//! * a pair-major route ([`count_b_fast`]) that, for each coprime pair, counts
//!   the admissible `m` in constant-many floor sums.

use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::farey::SieveTables;
use crate::rational::{format_rational, Rational, SmallRatio};
use crate::report::{format_significant, CsvRecord};
use crate::Count;

/// Slope window `t` and intercept window `u`, both in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Threshold {
    t: SmallRatio,
    u: SmallRatio,
}

impl Threshold {
    pub fn new(t: &Rational, u: &Rational) -> Result<Self> {
        let check = |name: &str, r: &Rational| -> Result<SmallRatio> {
            let zero = Rational::from_integer(0.into());
            let one = Rational::from_integer(1.into());
            if *r <= zero || *r > one {
                return Err(domain(format!("{name} = {} outside (0, 1]", format_rational(r))));
            }
            SmallRatio::from_rational(r)
        };
        Ok(Threshold {
            t: check("t", t)?,
            u: check("u", u)?,
        })
    }

    /// Convenience constructor from `t = tp/tq`, `u = up/uq`.
    pub fn from_parts(tp: u64, tq: u64, up: u64, uq: u64) -> Result<Self> {
        if tq == 0 || uq == 0 {
            return Err(domain("zero denominator in threshold"));
        }
        let t = SmallRatio::new(tp, tq).to_rational();
        let u = SmallRatio::new(up, uq).to_rational();
        Threshold::new(&t, &u)
    }

    pub fn full() -> Self {
        Threshold {
            t: SmallRatio::new(1, 1),
            u: SmallRatio::new(1, 1),
        }
    }

    /// Both thresholds are 1, i.e. the whole parameter square.
    pub fn is_full(&self) -> bool {
        self.t.is_one() && self.u.is_one()
    }

    pub fn t(&self) -> SmallRatio {
        self.t
    }

    pub fn u(&self) -> SmallRatio {
        self.u
    }

    /// `i/j <= t`.
    #[inline]
    fn slope_ok(&self, i: u64, j: u64) -> bool {
        i as u128 * self.t.denom as u128 <= self.t.numer as u128 * j as u128
    }

    /// `r/j < u` for a residue `r` of `m i` modulo `j`.
    #[inline]
    fn residue_ok(&self, r: u64, j: u64) -> bool {
        (r as u128 * self.u.denom as u128) < self.u.numer as u128 * j as u128
    }

    /// Largest `i` with `i/j <= t`, capped at `j - 1`.
    fn max_numerator(&self, j: u64) -> u64 {
        (self.t.floor_mul(j) as u64).min(j - 1)
    }
}

/// `A(m, t, u)` by the defining double loop over `0 <= i < j <= m`.
pub fn count_a_naive(m: u64, th: &Threshold) -> Result<Count> {
    if m == 0 {
        return Err(domain("m must be positive"));
    }
    let mut count: Count = 0;
    for j in 1..=m {
        let mj = m % j;
        for i in 0..j {
            if i.gcd(&j) != 1 || !th.slope_ok(i, j) {
                continue;
            }
            let residue = (mj * i) % j;
            if th.residue_ok(residue, j) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Numerators admissible for each denominator, shared across all `m` of a scan.
struct CoprimeTable {
    /// `numerators[j]`: all `i < j` coprime to `j` with `i/j <= t`.
    numerators: Vec<Vec<u32>>,
    /// `residue_bound[j]`: residues `r < residue_bound[j]` satisfy `r/j < u`.
    residue_bound: Vec<u64>,
}

impl CoprimeTable {
    fn new(n: u64, th: &Threshold) -> Self {
        let numerators = (0..=n)
            .into_par_iter()
            .map(|j| {
                if j == 0 {
                    return Vec::new();
                }
                (0..=th.max_numerator(j))
                    .filter(|i| i.gcd(&j) == 1)
                    .map(|i| i as u32)
                    .collect()
            })
            .collect();
        let residue_bound = (0..=n).map(|j| th.u.count_below(j)).collect();
        CoprimeTable {
            numerators,
            residue_bound,
        }
    }

    fn count_a(&self, m: u64) -> Count {
        let mut total: Count = 0;
        for j in 1..=m {
            let list = &self.numerators[j as usize];
            let bound = self.residue_bound[j as usize];
            if bound >= j {
                total += list.len() as Count;
                continue;
            }
            let mj = m % j;
            total += list.iter().filter(|&&i| (mj * i as u64) % j < bound).count() as Count;
        }
        total
    }
}

/// `A(1), ..., A(n)` (index `m - 1`), evaluated per `m` in parallel.
pub fn a_sequence(n: u64, th: &Threshold) -> Result<Vec<Count>> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let table = CoprimeTable::new(n, th);
    if th.u.is_one() {
        // frac(.) < 1 always holds, so A(m) is a running sum over denominators.
        let mut acc: Count = 0;
        return Ok(table.numerators[1..]
            .iter()
            .map(|list| {
                acc += list.len() as Count;
                acc
            })
            .collect());
    }
    Ok((1..=n).into_par_iter().map(|m| table.count_a(m)).collect())
}

/// `B(n, t, u) = 1 + sum_{m <= n} A(m, t, u)`.
pub fn count_b_theorem(n: u64, th: &Threshold) -> Result<Count> {
    Ok(1 + a_sequence(n, th)?.iter().sum::<Count>())
}

/// Classical count of all balanced words of length `n`: `1 + sum_k (n + 1 - k) phi(k)`.
pub fn count_b_classic(n: u64) -> Result<Count> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let sieve = SieveTables::new(n as usize)?;
    Ok(count_b_classic_with(&sieve, n))
}

pub fn count_b_classic_with(sieve: &SieveTables, n: u64) -> Count {
    1 + (1..=n)
        .map(|k| (n + 1 - k) as Count * sieve.phi(k as usize) as Count)
        .sum::<Count>()
}

/// `sum_{k=0}^{n-1} floor((a k + b) / m)` by the Euclidean-style reduction.
///
/// Requires `n < 2^32` and `m > 0`; all intermediate values fit in `u128`.
pub fn floor_sum_linear(n: u64, a: u64, b: u64, m: u64) -> u128 {
    assert!(m > 0, "modulus must be positive");
    assert!(n < (1 << 32), "term count must be below 2^32");
    let (mut n, mut m, mut a, mut b) = (n as u128, m as u128, a as u128, b as u128);
    let mut ans: u128 = 0;
    loop {
        if a >= m {
            ans += n * (n.saturating_sub(1)) / 2 * (a / m);
            a %= m;
        }
        if b >= m {
            ans += n * (b / m);
            b %= m;
        }
        let y_max = a * n + b;
        if y_max < m {
            break;
        }
        n = y_max / m;
        b = y_max % m;
        std::mem::swap(&mut m, &mut a);
    }
    ans
}

/// `sum_{b=1}^{count} floor(b t)` for a rational `t >= 0`.
pub fn floor_sum(count: u64, t: &Rational) -> Result<Count> {
    let t = SmallRatio::from_rational(t)?;
    if count >= (1 << 32) - 1 {
        return Err(crate::error::Error::Resource {
            what: "floor-sum length",
            value: count,
            limit: (1 << 32) - 2,
        });
    }
    // The k = 0 term of the linear sum is zero.
    Ok(floor_sum_linear(count + 1, t.numer, 0, t.denom))
}

/// `A(m, t, 1)` through Möbius inversion:
/// `1 + sum_{k <= m} mu(k) sum_{b <= m/k} floor(b t)`. Requires `0 < t < 1`.
pub fn count_a_fast_u1(m: u64, t: &Rational) -> Result<Count> {
    let sieve = SieveTables::new(m.max(1) as usize)?;
    count_a_fast_u1_with(&sieve, m, t)
}

pub fn count_a_fast_u1_with(sieve: &SieveTables, m: u64, t: &Rational) -> Result<Count> {
    if m == 0 {
        return Err(domain("m must be positive"));
    }
    if (m as usize) > sieve.limit() {
        return Err(domain(format!("sieve limit {} below m = {m}", sieve.limit())));
    }
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    if *t <= zero || *t >= one {
        return Err(domain(format!(
            "t = {} must lie in (0, 1); use the summatory totient for t = 1",
            format_rational(t)
        )));
    }
    let t = SmallRatio::from_rational(t)?;
    let mut acc: i128 = 1;
    for k in 1..=m {
        let mu = sieve.mu(k as usize);
        if mu == 0 {
            continue;
        }
        let inner = floor_sum_linear(m / k + 1, t.numer, 0, t.denom) as i128;
        acc += mu as i128 * inner;
    }
    Ok(acc as Count)
}

/// Number of `m` in `[j, n]` with `frac(m i / j) < u`, for `gcd(i, j) = 1`.
///
/// `m -> m i mod j` permutes the residues, so full blocks of `j` consecutive
/// `m` contribute `bound` each and the tail reduces to two floor sums.
#[inline]
fn admissible_m(i: u64, j: u64, n: u64, bound: u64) -> u128 {
    let span = n + 1 - j;
    let (cycles, tail) = (span / j, span % j);
    let mut count = cycles as u128 * bound as u128;
    if tail > 0 {
        if bound >= j {
            count += tail as u128;
        } else {
            // [k i mod j < bound] = 1 - (floor((k i + j - bound) / j) - floor(k i / j))
            let shifted = floor_sum_linear(tail, i, j - bound, j);
            let plain = floor_sum_linear(tail, i, 0, j);
            count += tail as u128 + plain - shifted;
        }
    }
    count
}

/// `B(n, t, u) = 1 + n + sum over coprime 1 <= i < j <= n, i/j <= t` of the
/// number of admissible `m`. Parallel over denominators.
pub fn count_b_fast(n: u64, th: &Threshold) -> Result<Count> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let pairs: Count = (2..=n)
        .into_par_iter()
        .map(|j| {
            let bound = th.u.count_below(j);
            let mut total: Count = 0;
            for i in 1..=th.max_numerator(j) {
                if i.gcd(&j) == 1 {
                    total += admissible_m(i, j, n, bound);
                }
            }
            total
        })
        .sum();
    Ok(1 + n as Count + pairs)
}

/// One row of a scan: `A(m)`, `B(m)`, and the deviation of `B(m)` from `t u m^3 / pi^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub m: u64,
    #[serde(rename = "A")]
    pub a: Count,
    #[serde(rename = "B")]
    pub b: Count,
    pub main_term: f64,
    pub error: f64,
}

impl CsvRecord for CountRow {
    fn header() -> &'static [&'static str] {
        &["m", "A", "B", "main_term", "error"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.a.to_string(),
            self.b.to_string(),
            format_significant(self.main_term),
            format_significant(self.error),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountTable {
    pub threshold_t: String,
    pub threshold_u: String,
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn last_b(&self) -> Count {
        self.rows.last().map_or(1, |r| r.b)
    }

    pub fn a_column(&self) -> Vec<Count> {
        self.rows.iter().map(|r| r.a).collect()
    }

    pub fn b_column(&self) -> Vec<Count> {
        self.rows.iter().map(|r| r.b).collect()
    }
}

/// `t u n^3 / pi^2`.
pub fn main_term(n: u64, th: &Threshold) -> f64 {
    th.t.to_f64() * th.u.to_f64() * (n as f64).powi(3) / (PI * PI)
}

pub fn scan(n_max: u64, th: &Threshold) -> Result<CountTable> {
    let a_values = a_sequence(n_max, th)?;
    let mut b: Count = 1;
    let rows = a_values
        .into_iter()
        .zip(1..)
        .map(|(a, m)| {
            b += a;
            let main = main_term(m, th);
            CountRow {
                m,
                a,
                b,
                main_term: main,
                error: b as f64 - main,
            }
        })
        .collect();
    Ok(CountTable {
        threshold_t: th.t.to_string(),
        threshold_u: th.u.to_string(),
        rows,
    })
}
