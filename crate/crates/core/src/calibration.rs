//! Constants for the finite-range `O(.)` checks.
//!
//! The asymptotic statements give growth rates, not constants. Each constant
//! here is the largest normalised deviation observed over a fixed range; it is
//! measured once (`balanced calibrate`), stored in `fixtures/constants.json`,
//! and later runs must stay within [`SLACK`] times the stored value.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{error_b11_scan, gcd_box_sum, mertens_error_phi_scan, mu_frac_scan};
use crate::error::Result;
use crate::geometry::count_b_rectangle;
use crate::rational::{ratio, Rational};

pub const SLACK: f64 = 1.1;

const FIXTURE: &str = include_str!("../fixtures/constants.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// max |Phi(n) - 3n^2/pi^2| / (n log(n+2)) over 2 <= n <= 10^5.
    pub phi_error: f64,
    /// max |B(n,1,1) - (n^3+3n^2)/pi^2| / n^2 over 1000 <= n <= 4000.
    pub b11_normalized: f64,
    /// max |S(H,H) - (6H^2/pi^2) log(2H)| / H^2 over H = 2^4 .. 2^10.
    pub gcd_box: f64,
    /// max |sum_{kb<=m<=n} mu(k) frac(bt)| / n^2 over n <= 2000 and [`MU_FRAC_SLOPES`].
    pub mu_frac: f64,
    /// max |inclusion-exclusion - oracle| / n^2 over [`RECTANGLES`].
    pub rectangle_inclusion_exclusion: f64,
    /// max |count - (b-a)(d-c)n^3/pi^2| / n^2 over both rectangle counts.
    pub rectangle_main: f64,
}

impl Constants {
    pub fn fixture() -> Constants {
        serde_json::from_str(FIXTURE).expect("fixtures/constants.json is valid")
    }

    pub fn measure() -> Result<Constants> {
        Ok(Constants {
            phi_error: observe_phi_error()?,
            b11_normalized: observe_b11_normalized()?,
            gcd_box: observe_gcd_box()?,
            mu_frac: observe_mu_frac()?,
            rectangle_inclusion_exclusion: observe_rectangles()?.0,
            rectangle_main: observe_rectangles()?.1,
        })
    }
}

pub const PHI_ERROR_RANGE: (u64, u64) = (2, 100_000);
pub const B11_RANGE: (u64, u64) = (1000, 4000);
pub const GCD_BOX_EXPONENTS: (u32, u32) = (4, 10);
pub const MU_FRAC_MAX_N: u64 = 2000;
/// Slopes for the `mu frac` scan: small rationals and golden-ratio convergents.
pub const MU_FRAC_SLOPES: [(i64, i64); 6] = [(1, 2), (1, 3), (2, 7), (8, 13), (34, 55), (233, 377)];

/// `(n, a_num, b_num, ab_den, c_num, d_num, cd_den)`: intercepts in `(a, b]`,
/// slopes in `[c, d)`. Drawn at random once, with denominators at most 20.
pub const RECTANGLES: [(usize, i64, i64, i64, i64, i64, i64); 10] = [
    (10, 5, 18, 20, 3, 11, 14),
    (11, 8, 17, 18, 10, 11, 12),
    (12, 11, 13, 20, 4, 8, 11),
    (13, 2, 11, 15, 7, 11, 11),
    (14, 3, 8, 9, 1, 11, 18),
    (10, 3, 14, 18, 5, 6, 9),
    (11, 11, 12, 15, 5, 6, 11),
    (12, 6, 10, 18, 6, 7, 18),
    (13, 1, 5, 6, 2, 4, 5),
    (14, 9, 13, 15, 3, 5, 8),
];

pub fn rectangle_corners(i: usize) -> (usize, Rational, Rational, Rational, Rational) {
    let (n, a, b, q, c, d, q2) = RECTANGLES[i];
    (n, ratio(a, q), ratio(b, q), ratio(c, q2), ratio(d, q2))
}

pub fn observe_phi_error() -> Result<f64> {
    let (lo, hi) = PHI_ERROR_RANGE;
    Ok(mertens_error_phi_scan(hi)?
        .iter()
        .filter(|r| r.n >= lo)
        .map(|r| r.normalized.abs())
        .fold(0.0, f64::max))
}

pub fn observe_b11_normalized() -> Result<f64> {
    let (lo, hi) = B11_RANGE;
    Ok(error_b11_scan(hi)?
        .iter()
        .filter(|r| r.n >= lo)
        .map(|r| r.error.abs() / (r.n as f64).powi(2))
        .fold(0.0, f64::max))
}

pub fn observe_gcd_box() -> Result<f64> {
    let (lo, hi) = GCD_BOX_EXPONENTS;
    let mut worst: f64 = 0.0;
    for k in lo..=hi {
        let side = 1u64 << k;
        worst = worst.max(gcd_box_sum(side, side)?.1.normalized.abs());
    }
    Ok(worst)
}

pub fn observe_mu_frac() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (p, q) in MU_FRAC_SLOPES {
        for (n, value) in (1..).zip(mu_frac_scan(MU_FRAC_MAX_N, &ratio(p, q))?) {
            worst = worst.max(crate::rational::to_f64(&value).abs() / (n as f64).powi(2));
        }
    }
    Ok(worst)
}

/// `(inclusion-exclusion vs oracle, either count vs main term)`, both over `n^2`.
pub fn observe_rectangles() -> Result<(f64, f64)> {
    let mut ie: f64 = 0.0;
    let mut main: f64 = 0.0;
    for i in 0..RECTANGLES.len() {
        let (n, a, b, c, d) = rectangle_corners(i);
        let r = count_b_rectangle(n, &a, &b, &c, &d)?;
        let n2 = (n * n) as f64;
        ie = ie.max((r.inclusion_exclusion - r.oracle as i128).abs() as f64 / n2);
        main = main
            .max((r.oracle as f64 - r.main_term).abs() / n2)
            .max((r.inclusion_exclusion as f64 - r.main_term).abs() / n2);
    }
    Ok((ie, main))
}
