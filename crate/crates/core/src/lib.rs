//! Exact counting of balanced binary words by slope and intercept.
//!
//! The count `B(n, t, u)` of balanced words of length `n` whose slope lies in
//! `[1 - t, 1]` and intercept in `[0, u)` is computed three ways
//! ([`counting`]), checked against brute-force enumeration ([`words`]) and an
//! exact geometric oracle on the parameter square ([`geometry`]), and compared
//! with its asymptotic main terms ([`asymptotics`]).

pub mod asymptotics;
pub mod calibration;
pub mod counting;
pub mod error;
pub mod farey;
pub mod geometry;
pub mod rational;
pub mod report;
pub mod words;

/// Exact word and pair counts. Every reachable value fits comfortably: `B(n, 1, 1)`
/// is about `n^3 / 10`.
pub type Count = u128;

pub use counting::{
    count_a_fast_u1, count_a_naive, count_b_classic, count_b_fast, count_b_theorem, floor_sum, scan, CountRow,
    CountTable, Threshold,
};
pub use error::{Error, Result};
pub use farey::{farey_sequence, FareySequence, SieveTables};
pub use geometry::{count_b_oracle, count_b_rectangle, partition_svg, ParamRegion, RectangleCount};
pub use rational::{format_rational, parse_rational, Rational, SmallRatio};
pub use report::CsvRecord;
pub use words::{enumerate_balanced, is_balanced, MechanicalParams, Word};
