//! Cross-checks between independent ways of computing the same counts.

use std::fmt;

use anyhow::Result;
use rayon::prelude::*;

use balanced_words::asymptotics::{exponential_sum_scan, mu_frac_scan};
use balanced_words::counting::{a_sequence, count_b_classic_with};
use balanced_words::geometry::ORACLE_MAX_LENGTH;
use balanced_words::rational::{int, ratio};
use balanced_words::{
    count_a_fast_u1, count_a_naive, count_b_fast, count_b_oracle, count_b_theorem, enumerate_balanced, farey_sequence,
    ParamRegion, Rational, SieveTables, Threshold,
};

/// Longest word length the enumeration check runs to.
const ENUMERATION_LIMIT: u64 = 18;
/// Longest word length the geometric oracle check runs to.
const ORACLE_LIMIT: u64 = 10;

pub struct Check {
    name: &'static str,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        Check { name, failure }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}", self.name),
            Some(why) => write!(f, "FAIL {}: {why}", self.name),
        }
    }
}

/// The first `n` in `range` at which `check` reports a mismatch.
fn first_failure(
    range: std::ops::RangeInclusive<u64>,
    check: impl Fn(u64) -> Result<Option<String>> + Sync,
) -> Result<Option<String>> {
    let failures = range
        .into_par_iter()
        .map(|n| check(n).map(|r| r.map(|why| (n, why))))
        .collect::<Result<Vec<_>>>()?;
    Ok(failures
        .into_iter()
        .flatten()
        .next()
        .map(|(n, why)| format!("n = {n}: {why}")))
}

fn mismatch<T: PartialEq + fmt::Debug>(values: &[(&str, T)]) -> Option<String> {
    let first = &values[0].1;
    if values.iter().all(|(_, v)| v == first) {
        None
    } else {
        Some(
            values
                .iter()
                .map(|(name, v)| format!("{name} = {v:?}"))
                .collect::<Vec<_>>()
                .join(", "),
        )
    }
}

fn sample_thresholds() -> Vec<(Rational, Rational)> {
    let values = [ratio(1, 3), ratio(1, 2), ratio(7, 10), ratio(59, 100), int(1)];
    values
        .iter()
        .flat_map(|t| values.iter().map(move |u| (t.clone(), u.clone())))
        .collect()
}

pub fn run_suite(n_max: u64) -> Result<Vec<Check>> {
    let sieve = SieveTables::new(n_max as usize)?;
    let phi_sums = sieve.summatory_table();
    let thresholds = sample_thresholds();
    let mut checks = Vec::new();

    // Theorem at (1, 1), the classical sum and 1 + sum of Phi agree.
    let full = Threshold::full();
    let b_full = a_sequence(n_max, &full)?;
    let mut running: u128 = 1;
    let mut failure = None;
    for n in 1..=n_max {
        running += b_full[n as usize - 1];
        let cumulative = 1 + phi_sums[1..=n as usize].iter().sum::<u128>();
        failure = mismatch(&[
            ("theorem", running),
            ("classic", count_b_classic_with(&sieve, n)),
            ("1 + sum Phi", cumulative),
        ])
        .map(|why| format!("n = {n}: {why}"));
        if failure.is_some() {
            break;
        }
    }
    checks.push(Check::new("theorem = classic = 1 + sum Phi", failure));

    let limit = n_max.min(ENUMERATION_LIMIT);
    checks.push(Check::new(
        "enumeration = classic",
        first_failure(1..=limit, |n| {
            Ok(mismatch(&[
                ("enumerated", enumerate_balanced(n as usize)?.len() as u128),
                ("classic", count_b_classic_with(&sieve, n)),
            ]))
        })?,
    ));

    let limit = n_max.min(ORACLE_LIMIT).min(ORACLE_MAX_LENGTH as u64);
    checks.push(Check::new(
        "oracle = theorem = fast",
        first_failure(1..=limit, |n| {
            for (t, u) in &thresholds {
                let th = Threshold::new(t, u)?;
                let region = ParamRegion::new(u.clone(), t.clone())?;
                if let Some(why) = mismatch(&[
                    ("oracle", count_b_oracle(n as usize, &region)?),
                    ("theorem", count_b_theorem(n, &th)?),
                    ("fast", count_b_fast(n, &th)?),
                ]) {
                    return Ok(Some(format!("t = {t}, u = {u}: {why}")));
                }
            }
            Ok(None)
        })?,
    ));

    checks.push(Check::new(
        "theorem = fast",
        first_failure(1..=n_max, |n| {
            for (t, u) in &thresholds {
                let th = Threshold::new(t, u)?;
                if let Some(why) = mismatch(&[("theorem", count_b_theorem(n, &th)?), ("fast", count_b_fast(n, &th)?)]) {
                    return Ok(Some(format!("t = {t}, u = {u}: {why}")));
                }
            }
            Ok(None)
        })?,
    ));

    checks.push(Check::new(
        "Mobius floor sums = pair count at u = 1",
        first_failure(1..=n_max, |m| {
            for (t, _) in thresholds.iter().filter(|(t, _)| *t < int(1)) {
                let th = Threshold::new(t, &int(1))?;
                if let Some(why) = mismatch(&[
                    ("floor sums", count_a_fast_u1(m, t)?),
                    ("pairs", count_a_naive(m, &th)?),
                ]) {
                    return Ok(Some(format!("t = {t}: {why}")));
                }
            }
            Ok(None)
        })?,
    ));

    checks.push(Check::new(
        "|F_m| = Phi(m)",
        first_failure(1..=n_max, |m| {
            Ok(mismatch(&[
                ("|F_m|", farey_sequence(m)?.len() as u128),
                ("Phi", phi_sums[m as usize]),
            ]))
        })?,
    ));

    let mut failure = None;
    for row in exponential_sum_scan(n_max)? {
        let tolerance = 1e-6 * row.farey_len as f64;
        if (row.sum_re - row.mertens as f64).abs() >= tolerance || row.sum_im.abs() >= tolerance {
            failure = Some(format!(
                "m = {}: sum = {} + {}i, M = {}",
                row.m, row.sum_re, row.sum_im, row.mertens
            ));
            break;
        }
    }
    checks.push(Check::new("Farey exponential sum = Mertens", failure));

    // B(n, t, 1) = 1 - t + n + t B(n, 1, 1) - sum mu(k) frac(b t).
    let mut failure = None;
    'slopes: for t in [ratio(1, 2), ratio(1, 3), ratio(7, 10), ratio(8, 13)] {
        let th = Threshold::new(&t, &int(1))?;
        let a_t = a_sequence(n_max, &th)?;
        let corrections = mu_frac_scan(n_max, &t)?;
        let (mut b_t, mut b_1) = (1u128, 1u128);
        for n in 1..=n_max {
            b_t += a_t[n as usize - 1];
            b_1 += b_full[n as usize - 1];
            let predicted =
                int(1) - &t + int(n as i64) + &t * Rational::from_integer(b_1.into()) - &corrections[n as usize - 1];
            if predicted != Rational::from_integer(b_t.into()) {
                failure = Some(format!("t = {t}, n = {n}: B = {b_t}, identity gives {predicted}"));
                break 'slopes;
            }
        }
    }
    checks.push(Check::new("B(n, t, 1) via Mobius fractional parts", failure));

    Ok(checks)
}
