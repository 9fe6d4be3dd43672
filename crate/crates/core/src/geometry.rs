//! The parameter square as an independent oracle for the counts.
//!
//! Coordinates are `x` = intercept and `y` with slope `1 - y`. For a word `w`
//! of length `n`, the points coding it (with a fixed value of
//! `floor((1 - y) + x)`, the branch) form a convex set cut out by `2(n + 1)`
//! half-planes. Feasibility inside a region is decided exactly by eliminating
//! `x` and then comparing bounds on `y`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count_b_theorem, Threshold};
use crate::error::{domain, Error, Result};
use crate::rational::{format_rational, int, is_unit_interval, to_f64, Rational};
use crate::words::{enumerate_balanced, Word};
use crate::Count;

/// Longest word length the enumeration-based oracle accepts.
pub const ORACLE_MAX_LENGTH: usize = 16;

/// `a x + b y < c` when `strict`, otherwise `a x + b y <= c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub strict: bool,
}

impl LinearConstraint {
    pub fn new(a: Rational, b: Rational, c: Rational, strict: bool) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(domain("constraint needs a nonzero coefficient"));
        }
        Ok(LinearConstraint { a, b, c, strict })
    }

    fn unchecked(a: Rational, b: Rational, c: Rational, strict: bool) -> Self {
        LinearConstraint { a, b, c, strict }
    }

    pub fn holds_at(&self, x: &Rational, y: &Rational) -> bool {
        let lhs = &self.a * x + &self.b * y;
        if self.strict {
            lhs < self.c
        } else {
            lhs <= self.c
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub constraints: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn new(constraints: Vec<LinearConstraint>) -> Self {
        ConstraintSystem { constraints }
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x, y))
    }

    /// Debug dump: `{"word", "branch", "constraints": [[a, b, c, strict], ...]}`.
    pub fn to_json(&self, word: &Word, branch: u8) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .constraints
            .iter()
            .map(|c| {
                serde_json::json!([
                    format_rational(&c.a),
                    format_rational(&c.b),
                    format_rational(&c.c),
                    c.strict
                ])
            })
            .collect();
        serde_json::json!({ "word": word.to_string(), "branch": branch, "constraints": rows })
    }
}

pub use crate::words::Convention;

impl Convention {
    pub fn branches(self) -> &'static [u8] {
        match self {
            Convention::Lower => &[0, 1],
            Convention::Upper => &[0, 1, 2],
        }
    }
}

/// The region `[0, u) x [0, t]`: intercepts below `u`, slopes in `[1 - t, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRegion {
    pub u: Rational,
    pub t: Rational,
}

impl ParamRegion {
    pub fn new(u: Rational, t: Rational) -> Result<Self> {
        for (name, v) in [("u", &u), ("t", &t)] {
            if !v.is_positive() || !is_unit_interval(v) {
                return Err(domain(format!("{name} = {} outside (0, 1]", format_rational(v))));
            }
        }
        Ok(ParamRegion { u, t })
    }

    pub fn full() -> Self {
        ParamRegion {
            u: Rational::one(),
            t: Rational::one(),
        }
    }

    pub fn from_threshold(th: &Threshold) -> Self {
        ParamRegion {
            u: th.u().to_rational(),
            t: th.t().to_rational(),
        }
    }

    pub fn constraints(&self) -> Vec<LinearConstraint> {
        let (zero, one) = (int(0), int(1));
        vec![
            LinearConstraint::unchecked(-&one, zero.clone(), zero.clone(), false),
            LinearConstraint::unchecked(one.clone(), zero.clone(), self.u.clone(), true),
            LinearConstraint::unchecked(zero.clone(), -&one, zero.clone(), false),
            LinearConstraint::unchecked(zero, one, self.t.clone(), false),
        ]
    }
}

/// Points whose cylinder coding (see [`crate::words::coding`]) under
/// `convention` is `w` and whose rounded value `round((1 - y) + x)` equals
/// `branch`.
///
/// Writing `W_k` for the prefix sums of `w`, the conditions are
/// `round(k (1 - y) + x) = branch + W_k - W_1` for `k = 0..=n`, each a pair of
/// half-planes bounded by the segment family `x = k y - l`.
pub fn parameter_system_with(w: &Word, branch: u8, convention: Convention) -> Result<ConstraintSystem> {
    if w.is_empty() {
        return Err(domain("parameter system of the empty word"));
    }
    if !convention.branches().contains(&branch) {
        return Err(domain(format!("branch {branch} invalid for {convention:?} convention")));
    }
    let (zero, one) = (int(0), int(1));
    let mut constraints = vec![
        LinearConstraint::unchecked(-&one, zero.clone(), zero.clone(), false),
        LinearConstraint::unchecked(one.clone(), zero.clone(), one.clone(), true),
        LinearConstraint::unchecked(zero.clone(), -&one, zero.clone(), false),
        LinearConstraint::unchecked(zero.clone(), one.clone(), one.clone(), false),
    ];
    let sums = w.prefix_sums();
    let first = sums[1] as i64;
    for (k, &ones) in (0i64..).zip(sums.iter()) {
        let level = branch as i64 + ones as i64 - first;
        let k_r = int(k);
        match convention {
            Convention::Lower => {
                // level <= k - k y + x  and  k - k y + x < level + 1
                constraints.push(LinearConstraint::unchecked(-&one, k_r.clone(), int(k - level), false));
                constraints.push(LinearConstraint::unchecked(
                    one.clone(),
                    -&k_r,
                    int(level + 1 - k),
                    true,
                ));
            }
            Convention::Upper => {
                // level - 1 < k - k y + x  and  k - k y + x <= level
                constraints.push(LinearConstraint::unchecked(
                    -&one,
                    k_r.clone(),
                    int(k - level + 1),
                    true,
                ));
                constraints.push(LinearConstraint::unchecked(one.clone(), -&k_r, int(level - k), false));
            }
        }
    }
    Ok(ConstraintSystem::new(constraints))
}

pub fn parameter_system(w: &Word, branch: u8) -> Result<ConstraintSystem> {
    parameter_system_with(w, branch, Convention::Lower)
}

/// A one-sided bound `value` on a variable, strict or not.
#[derive(Clone, Debug)]
struct Bound {
    value: Rational,
    strict: bool,
}

/// Exact feasibility of a conjunction of two-variable constraints.
pub fn is_feasible(constraints: &[LinearConstraint]) -> bool {
    // Eliminate x: lower bounds (a < 0) pair with upper bounds (a > 0).
    let mut y_only: Vec<(Rational, Rational, bool)> = Vec::new();
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for c in constraints {
        if c.a.is_zero() {
            y_only.push((c.b.clone(), c.c.clone(), c.strict));
        } else if c.a.is_positive() {
            // x <= (c - b y) / a
            uppers.push((&c.b / &c.a, &c.c / &c.a, c.strict));
        } else {
            // x >= (b y - c) / |a|
            let scale = -&c.a;
            lowers.push((&c.b / &scale, &c.c / &scale, c.strict));
        }
    }
    for (lb, lc, ls) in &lowers {
        for (ub, uc, us) in &uppers {
            // lb y - lc <= uc - ub y
            y_only.push((lb + ub, lc + uc, *ls || *us));
        }
    }

    let mut low: Option<Bound> = None;
    let mut high: Option<Bound> = None;
    for (b, c, strict) in y_only {
        if b.is_zero() {
            let ok = if strict { c.is_positive() } else { !c.is_negative() };
            if !ok {
                return false;
            }
            continue;
        }
        let value = &c / &b;
        let slot = if b.is_positive() { &mut high } else { &mut low };
        let tighter = match slot {
            None => true,
            Some(current) => {
                let better = if b.is_positive() {
                    value < current.value
                } else {
                    value > current.value
                };
                better || (value == current.value && strict && !current.strict)
            }
        };
        if tighter {
            *slot = Some(Bound { value, strict });
        }
    }
    match (low, high) {
        (Some(lo), Some(hi)) => lo.value < hi.value || (lo.value == hi.value && !lo.strict && !hi.strict),
        _ => true,
    }
}

pub fn feasible(sys: &ConstraintSystem, region: &ParamRegion) -> bool {
    feasible_in(sys, &region.constraints())
}

fn feasible_in(sys: &ConstraintSystem, extra: &[LinearConstraint]) -> bool {
    let mut all = sys.constraints.clone();
    all.extend_from_slice(extra);
    is_feasible(&all)
}

/// The system with every strict inequality relaxed; for a nonempty system this
/// describes its topological closure.
pub fn closure(sys: &ConstraintSystem) -> ConstraintSystem {
    ConstraintSystem::new(
        sys.constraints
            .iter()
            .map(|c| LinearConstraint {
                strict: false,
                ..c.clone()
            })
            .collect(),
    )
}

/// The set described by `sys` is nonempty and its closure meets the region.
///
/// This is the attainability rule of the oracle: a cell lying outside the
/// region but touching one of its closed edges counts, a cell touching only an
/// open edge does not.
pub fn touches(sys: &ConstraintSystem, region: &ParamRegion) -> bool {
    touches_in(sys, &region.constraints())
}

fn touches_in(sys: &ConstraintSystem, extra: &[LinearConstraint]) -> bool {
    is_feasible(&sys.constraints) && feasible_in(&closure(sys), extra)
}

fn count_attainable(n: usize, extra: &[LinearConstraint], convention: Convention) -> Result<Count> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    if n > ORACLE_MAX_LENGTH {
        return Err(Error::Resource {
            what: "oracle word length",
            value: n as u64,
            limit: ORACLE_MAX_LENGTH as u64,
        });
    }
    let words = enumerate_balanced(n)?;
    let hits = words
        .par_iter()
        .filter(|w| {
            convention.branches().iter().any(|&branch| {
                let sys = parameter_system_with(w, branch, convention).expect("nonempty word, valid branch");
                touches_in(&sys, extra)
            })
        })
        .count();
    Ok(hits as Count)
}

/// Balanced words of length `n` whose parameter cell touches `region`
/// (see [`touches`]).
pub fn count_b_oracle(n: usize, region: &ParamRegion) -> Result<Count> {
    count_attainable(n, &region.constraints(), Convention::Lower)
}

pub fn count_b_oracle_with(n: usize, region: &ParamRegion, convention: Convention) -> Result<Count> {
    count_attainable(n, &region.constraints(), convention)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RectangleCount {
    /// Words attainable with intercept in `(a, b]` and slope in `[c, d)`.
    pub oracle: Count,
    /// Four-corner combination of `B(n, t, u)` values approximating the same set.
    pub inclusion_exclusion: i128,
    /// `(b - a)(d - c) n^3 / pi^2`.
    pub main_term: f64,
}

/// Counts balanced words with `rho` in `(a, b]` and `alpha` in `[c, d)`.
pub fn count_b_rectangle(n: usize, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<RectangleCount> {
    let zero = int(0);
    let one = int(1);
    if !(zero <= *a && a < b && *b <= one && zero <= *c && c < d && *d <= one) {
        return Err(domain(format!(
            "degenerate rectangle ({}, {}] x [{}, {})",
            format_rational(a),
            format_rational(b),
            format_rational(c),
            format_rational(d)
        )));
    }
    // a < x <= b and 1 - d < y <= 1 - c
    let region = vec![
        LinearConstraint::unchecked(-&one, zero.clone(), -a, true),
        LinearConstraint::unchecked(one.clone(), zero.clone(), b.clone(), false),
        LinearConstraint::unchecked(zero.clone(), -&one, d - &one, true),
        LinearConstraint::unchecked(zero.clone(), one.clone(), &one - c, false),
    ];
    let oracle = count_attainable(n, &region, Convention::Lower)?;

    // (0, u] x [s, 1) is approximated by B(n, 1 - s, u); empty sides contribute 0.
    let corner = |u: &Rational, s: &Rational| -> Result<i128> {
        let t = &one - s;
        if u.is_zero() || t.is_zero() {
            return Ok(0);
        }
        Ok(count_b_theorem(n as u64, &Threshold::new(&t, u)?)? as i128)
    };
    let inclusion_exclusion = corner(b, c)? - corner(a, c)? - corner(b, d)? + corner(a, d)?;
    let area = to_f64(&((b - a) * (d - c)));
    let main_term = area * (n as f64).powi(3) / (std::f64::consts::PI * std::f64::consts::PI);
    Ok(RectangleCount {
        oracle,
        inclusion_exclusion,
        main_term,
    })
}

/// Intersections of the order-`m` segments `x = m y - b` with the older ones
/// `x = l y - c` (`1 <= l < m`) and with the edge `x = 0` (taken as `l = 0`),
/// inside the region, one per distinct height `y`. Returned as `(x, y)`
/// sorted by `y`.
pub fn new_intersections(m: u64, region: &ParamRegion) -> Vec<(Rational, Rational)> {
    let mut by_height: BTreeMap<Rational, Rational> = BTreeMap::new();
    let (m_i, t, u) = (m as i64, &region.t, &region.u);
    for l in 0..m_i {
        let gap = m_i - l;
        for c in 0..l.max(1) {
            for b in c..m_i {
                // b/m <= (b - c)/gap < (b + 1)/m
                let num = b - c;
                if b * gap > m_i * num || m_i * num >= (b + 1) * gap {
                    continue;
                }
                let y = Rational::new(BigInt::from(num), BigInt::from(gap));
                if &y > t {
                    continue;
                }
                let x = Rational::new(BigInt::from(l * b - m_i * c), BigInt::from(gap));
                if &x >= u {
                    continue;
                }
                by_height.entry(y).or_insert(x);
            }
        }
    }
    by_height.into_iter().map(|(y, x)| (x, y)).collect()
}

const VIEW: f64 = 600.0;

fn px(v: f64) -> String {
    format!("{:.3}", v * VIEW)
}

fn py(v: f64) -> String {
    format!("{:.3}", (1.0 - v) * VIEW)
}

/// SVG of the partition of order `m`: every segment `x = n y - l` (`1 <= n <= m`),
/// the shaded region, and dots at the intersections new at order `m`.
pub fn partition_svg(m: u64, region: &ParamRegion) -> Result<String> {
    if m == 0 || m > 64 {
        return Err(domain(format!("partition order {m} outside 1..=64")));
    }
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="600" viewBox="0 0 600 600">"#
    );
    let (u, t) = (to_f64(&region.u), to_f64(&region.t));
    let _ = writeln!(
        svg,
        r##"<rect class="region" x="0.000" y="{}" width="{}" height="{:.3}" fill="#d9d9d9" stroke="none"/>"##,
        py(t),
        px(u),
        t * VIEW
    );
    let _ = writeln!(
        svg,
        r#"<rect class="frame" x="0.000" y="0.000" width="600.000" height="600.000" fill="none" stroke="black" stroke-width="1"/>"#
    );
    for n in 1..=m {
        let dash = if n == m && m > 1 {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        for l in 0..n {
            // From (0, l/n) to (1, (l + 1)/n).
            let (y0, y1) = (l as f64 / n as f64, (l + 1) as f64 / n as f64);
            let _ = writeln!(
                svg,
                r#"<line class="segment" data-n="{n}" data-l="{l}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"{dash}/>"#,
                px(0.0),
                py(y0),
                px(1.0),
                py(y1)
            );
        }
    }
    for (x, y) in new_intersections(m, region) {
        let _ = writeln!(
            svg,
            r#"<circle class="dot" cx="{}" cy="{}" r="3.000" fill="black"/>"#,
            px(to_f64(&x)),
            py(to_f64(&y))
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_a_naive;
    use crate::rational::ratio;
    use crate::words::coding;
    use rand::{Rng, SeedableRng};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn region(u: (i64, i64), t: (i64, i64)) -> ParamRegion {
        ParamRegion::new(ratio(u.0, u.1), ratio(t.0, t.1)).unwrap()
    }

    fn branch_of(x: &Rational, y: &Rational) -> u8 {
        if (int(1) - y + x) >= int(1) {
            1
        } else {
            0
        }
    }

    #[test]
    fn parameter_system_contains_obvious_points() {
        assert!(parameter_system(&w("1"), 1).unwrap().contains(&int(0), &int(0)));
        assert!(parameter_system(&w("0"), 0).unwrap().contains(&int(0), &int(1)));
        assert!(parameter_system(&Word::empty(), 0).is_err());
        assert!(parameter_system(&w("0"), 2).is_err());
        assert!(parameter_system_with(&w("0"), 2, Convention::Upper).is_ok());
    }

    #[test]
    fn grid_points_satisfy_their_own_system() {
        for n in 1..=6usize {
            for xi in 0..40i64 {
                for yi in 0..=40i64 {
                    let (x, y) = (ratio(xi, 40), ratio(yi, 40));
                    let word = coding(&x, &y, n).unwrap();
                    let branch = branch_of(&x, &y);
                    let sys = parameter_system(&word, branch).unwrap();
                    assert!(sys.contains(&x, &y), "n={n} ({x}, {y}) -> {word}");
                    // The other branch never contains the point.
                    let other = parameter_system(&word, 1 - branch).unwrap();
                    assert!(!other.contains(&x, &y));
                }
            }
        }
    }

    #[test]
    fn sampled_points_never_satisfy_two_words() {
        let n = 5;
        let words = enumerate_balanced(n).unwrap();
        let systems: Vec<(Word, ConstraintSystem)> = words
            .iter()
            .flat_map(|word| [0u8, 1].map(|b| (word.clone(), parameter_system(word, b).unwrap())))
            .collect();
        for xi in 0..23i64 {
            for yi in 0..=23i64 {
                let (x, y) = (ratio(xi, 23), ratio(yi, 23));
                let matching: std::collections::BTreeSet<&Word> = systems
                    .iter()
                    .filter(|(_, s)| s.contains(&x, &y))
                    .map(|(word, _)| word)
                    .collect();
                assert_eq!(matching.len(), 1, "({x}, {y})");
                assert_eq!(*matching.iter().next().unwrap(), &coding(&x, &y, n).unwrap());
            }
        }
    }

    #[test]
    fn upper_convention_round_trip() {
        use crate::words::coding_with;
        for xi in 0..17i64 {
            for yi in 0..=17i64 {
                let (x, y) = (ratio(xi, 17), ratio(yi, 17));
                let word = coding_with(&x, &y, 5, Convention::Upper).unwrap();
                let branch = (int(1) - &y + &x).ceil().to_integer();
                let branch = u8::try_from(branch).unwrap();
                let sys = parameter_system_with(&word, branch, Convention::Upper).unwrap();
                assert!(sys.contains(&x, &y));
            }
        }
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible(&ConstraintSystem::default(), &ParamRegion::full()));
        let negative_x = ConstraintSystem::new(vec![LinearConstraint::new(int(1), int(0), int(0), true).unwrap()]);
        assert!(!feasible(&negative_x, &ParamRegion::full()));
        let thin = region((1, 1), (1, 10));
        assert!([0u8, 1]
            .iter()
            .any(|&b| feasible(&parameter_system(&w("01"), b).unwrap(), &thin)));
        assert!(coding(&ratio(1, 100), &ratio(1, 20), 2).unwrap() == w("01"));
        assert!(LinearConstraint::new(int(0), int(0), int(1), false).is_err());
    }

    #[test]
    fn strictness_is_respected_at_touching_bounds() {
        let c =
            |a: i64, b: i64, rhs: i64, strict: bool| LinearConstraint::new(int(a), int(b), int(rhs), strict).unwrap();
        // x <= 1 and x >= 1 meet at a point.
        assert!(is_feasible(&[c(1, 0, 1, false), c(-1, 0, -1, false)]));
        // x < 1 and x >= 1 do not.
        assert!(!is_feasible(&[c(1, 0, 1, true), c(-1, 0, -1, false)]));
        // x + y <= 1, x >= 1, y >= 0 gives the single point (1, 0).
        assert!(is_feasible(&[
            c(1, 1, 1, false),
            c(-1, 0, -1, false),
            c(0, -1, 0, false)
        ]));
        assert!(!is_feasible(&[
            c(1, 1, 1, false),
            c(-1, 0, -1, false),
            c(0, -1, 0, true)
        ]));
        // 0 <= -1 is infeasible even without variables surviving.
        assert!(!is_feasible(&[c(1, 0, -1, false), c(-1, 0, 0, false)]));
    }

    /// Searches the 1/97 grid plus every vertex of the arrangement and the
    /// midpoints and centroids of vertices, so that points and segments of
    /// lower dimension are found as well.
    fn grid_feasible(constraints: &[LinearConstraint], den: i64) -> bool {
        let holds = |x: &Rational, y: &Rational| constraints.iter().all(|c| c.holds_at(x, y));
        use num_traits::ToPrimitive;
        let integral: Vec<(i64, i64, i64, bool)> = constraints
            .iter()
            .map(|c| {
                let coef = |r: &Rational| r.to_integer().to_i64().unwrap();
                (coef(&c.a), coef(&c.b), coef(&c.c), c.strict)
            })
            .collect();
        let grid = (-2 * den..=2 * den).any(|xi| {
            (-2 * den..=2 * den).any(|yi| {
                integral.iter().all(|&(a, b, c, strict)| {
                    let lhs = a * xi + b * yi;
                    if strict {
                        lhs < c * den
                    } else {
                        lhs <= c * den
                    }
                })
            })
        });
        if grid {
            return true;
        }
        let mut vertices = Vec::new();
        for (i, p) in constraints.iter().enumerate() {
            for q in &constraints[i + 1..] {
                let det = &p.a * &q.b - &p.b * &q.a;
                if det.is_zero() {
                    continue;
                }
                let x = (&p.c * &q.b - &p.b * &q.c) / &det;
                let y = (&p.a * &q.c - &p.c * &q.a) / &det;
                vertices.push((x, y));
            }
        }
        let two = int(2);
        let three = int(3);
        for (i, (x1, y1)) in vertices.iter().enumerate() {
            if holds(x1, y1) {
                return true;
            }
            for (j, (x2, y2)) in vertices.iter().enumerate().skip(i + 1) {
                if holds(&((x1 + x2) / &two), &((y1 + y2) / &two)) {
                    return true;
                }
                for (x3, y3) in vertices.iter().skip(j + 1) {
                    if holds(&((x1 + x2 + x3) / &three), &((y1 + y2 + y3) / &three)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn elimination_agrees_with_dense_grid_search() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(97);
        let mut disagreements = 0;
        for _ in 0..500 {
            let count = rng.gen_range(1..=4);
            let constraints: Vec<LinearConstraint> = (0..count)
                .map(|_| loop {
                    let (a, b): (i64, i64) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                    if a != 0 || b != 0 {
                        break LinearConstraint::new(int(a), int(b), int(rng.gen_range(-3..=3)), rng.gen_bool(0.5))
                            .unwrap();
                    }
                })
                .collect();
            let mut boxed = constraints.clone();
            for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                boxed.push(LinearConstraint::new(int(a), int(b), int(2), false).unwrap());
            }
            if is_feasible(&boxed) != grid_feasible(&boxed, 97) {
                disagreements += 1;
            }
        }
        assert_eq!(disagreements, 0);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(count_b_oracle(8, &region((59, 100), (7, 10))).unwrap(), 50);
        assert_eq!(count_b_oracle(1, &region((1, 3), (2, 9))).unwrap(), 2);
        assert_eq!(count_b_oracle(4, &ParamRegion::full()).unwrap(), 14);
        assert!(matches!(
            count_b_oracle(17, &ParamRegion::full()),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn rectangle_full_square_matches_theorem() {
        for n in 1..=8usize {
            let r = count_b_rectangle(n, &int(0), &int(1), &int(0), &int(1)).unwrap();
            assert_eq!(r.oracle, count_b_theorem(n as u64, &Threshold::full()).unwrap());
        }
        assert!(count_b_rectangle(4, &int(1), &int(1), &int(0), &int(1)).is_err());
        assert!(count_b_rectangle(4, &int(0), &int(1), &ratio(1, 2), &ratio(1, 3)).is_err());
    }

    #[test]
    fn tiny_rectangle_sees_one_word() {
        let n = 9usize;
        // Centre chosen off every segment x = k y - l for k <= 9.
        let (cx, cy) = (ratio(3137, 10_000), ratio(4171, 10_000));
        let half = ratio(1, 2 * 1000 * (n as i64).pow(2));
        let (a, b) = (&cx - &half, &cx + &half);
        let (y_lo, y_hi) = (&cy - &half, &cy + &half);
        let (c, d) = (int(1) - &y_hi, int(1) - &y_lo);
        let corners = [(&a, &y_lo), (&a, &y_hi), (&b, &y_lo), (&b, &y_hi)];
        let words: std::collections::BTreeSet<Word> = corners.iter().map(|(x, y)| coding(x, y, n).unwrap()).collect();
        assert_eq!(words.len(), 1);
        let r = count_b_rectangle(n, &a, &b, &c, &d).unwrap();
        assert_eq!(r.oracle, 1);
    }

    #[test]
    fn new_intersections_match_a() {
        for (u, t) in [
            ((59, 100), (7, 10)),
            ((1, 1), (1, 1)),
            ((1, 3), (1, 2)),
            ((2, 5), (9, 10)),
        ] {
            let reg = region(u, t);
            let th = Threshold::new(&reg.t, &reg.u).unwrap();
            for m in 2..=24u64 {
                assert_eq!(
                    new_intersections(m, &reg).len() as Count,
                    count_a_naive(m, &th).unwrap(),
                    "m={m} u={u:?} t={t:?}"
                );
            }
        }
    }

    #[test]
    fn svg_structure() {
        let full = partition_svg(4, &ParamRegion::full()).unwrap();
        assert_eq!(full.matches("class=\"segment\"").count(), 10);
        let example = partition_svg(8, &region((59, 100), (7, 10))).unwrap();
        assert_eq!(example.matches("class=\"dot\"").count(), 13);
        let one = partition_svg(1, &ParamRegion::full()).unwrap();
        assert_eq!(one.matches("class=\"segment\"").count(), 1);
        assert!(one.contains(r#"x1="0.000" y1="600.000" x2="600.000" y2="0.000""#));
        assert_eq!(partition_svg(8, &region((59, 100), (7, 10))).unwrap(), example);
        assert!(partition_svg(0, &ParamRegion::full()).is_err());
        assert!(partition_svg(65, &ParamRegion::full()).is_err());
    }

    #[test]
    fn constraint_dump_is_textual() {
        let sys = parameter_system(&w("10"), 1).unwrap();
        let json = sys.to_json(&w("10"), 1);
        assert_eq!(json["word"], "10");
        assert_eq!(json["constraints"].as_array().unwrap().len(), 4 + 2 * 3);
        assert_eq!(json["constraints"][4], serde_json::json!(["-1/1", "0/1", "0/1", false]));
    }
}
