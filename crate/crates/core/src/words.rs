//! Binary words: mechanical prefixes, the balance test, and exhaustive
//! enumeration of balanced words (the ground truth for small lengths).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::rational::{format_rational, is_unit_interval, Rational};

/// Longest length `enumerate_balanced` accepts; words are packed into a `u64`.
pub const MAX_ENUMERATION_LENGTH: usize = 64;

/// A finite word over `{0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&b| b > 1) {
            return Err(domain(format!("letter {bad} is not 0 or 1")));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of ones, `|w|_1`.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&b| b == 1).count()
    }

    /// Prefix sums `W_0 = 0, W_k = w_1 + ... + w_k`.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(0);
        let mut acc = 0;
        for &b in &self.letters {
            acc += b as usize;
            out.push(acc);
        }
        out
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.letters {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse {
                    input: s.to_string(),
                    reason: format!("unexpected character {other:?}"),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|letters| Word { letters })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word of length at most 64 with letter `k` (1-based) stored in bit `k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedWord {
    bits: u64,
    len: u8,
}

impl PackedWord {
    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn letter(self, index: usize) -> u8 {
        ((self.bits >> index) & 1) as u8
    }

    fn push(self, letter: u8) -> PackedWord {
        PackedWord {
            bits: self.bits | ((letter as u64) << self.len),
            len: self.len + 1,
        }
    }

    pub fn to_word(self) -> Word {
        Word {
            letters: (0..self.len()).map(|i| self.letter(i)).collect(),
        }
    }
}

/// Slope and intercept of a mechanical word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MechanicalParams {
    alpha: Rational,
    rho: Rational,
}

impl MechanicalParams {
    /// Requires `0 <= alpha <= 1` and `0 <= rho < 1`.
    pub fn new(alpha: Rational, rho: Rational) -> Result<Self> {
        if !is_unit_interval(&alpha) {
            return Err(domain(format!("slope {} outside [0, 1]", format_rational(&alpha))));
        }
        if !is_unit_interval(&rho) || rho == Rational::one() {
            return Err(domain(format!("intercept {} outside [0, 1)", format_rational(&rho))));
        }
        Ok(MechanicalParams { alpha, rho })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }
}

/// Rounding used by the mechanical word: floors give the lower word, ceilings the upper.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Floors; the one every count is certified against.
    #[default]
    Lower,
    /// Ceilings, for experimentation with boundary behaviour.
    Upper,
}

/// Letters `s_start, ..., s_{start + n - 1}`.
pub fn mechanical_factor(p: &MechanicalParams, start: usize, n: usize, convention: Convention) -> Result<Word> {
    if n == 0 {
        return Err(domain("mechanical word length must be positive"));
    }
    let round = match convention {
        Convention::Lower => Rational::floor,
        Convention::Upper => Rational::ceil,
    };
    // round(alpha * k + rho) for k = start ..= start + n
    let rounded: Vec<BigInt> = (start..=start + n)
        .map(|k| round(&(&p.alpha * BigInt::from(k) + &p.rho)).to_integer())
        .collect();
    let letters = rounded
        .windows(2)
        .map(|w| (&w[1] - &w[0]).to_u8().expect("consecutive roundings differ by 0 or 1"))
        .collect();
    Ok(Word { letters })
}

/// `s_k = floor(alpha (k+1) + rho) - floor(alpha k + rho)` for `k = 1..=n`.
pub fn lower_mechanical_prefix(p: &MechanicalParams, n: usize) -> Result<Word> {
    mechanical_factor(p, 1, n, Convention::Lower)
}

/// Same as [`lower_mechanical_prefix`] with ceilings.
pub fn upper_mechanical_prefix(p: &MechanicalParams, n: usize) -> Result<Word> {
    mechanical_factor(p, 1, n, Convention::Upper)
}

/// The cell-labelling map of the parameter square.
///
/// Letter `i` (1-based) records whether the rotation by `1 - y` started at `x`
/// lands in `[y, 1)` at step `i - 1`, i.e. the letters `s_0, ..., s_{n-1}` of the
/// mechanical word with slope `1 - y` and intercept `x`. This equals
/// [`lower_mechanical_prefix`] at intercept `frac(x - (1 - y))`.
pub fn coding(x: &Rational, y: &Rational, n: usize) -> Result<Word> {
    coding_with(x, y, n, Convention::Lower)
}

pub fn coding_with(x: &Rational, y: &Rational, n: usize, convention: Convention) -> Result<Word> {
    let params = MechanicalParams::new(Rational::one() - y, x.clone()).map_err(|_| {
        domain(format!(
            "point ({}, {}) outside [0,1) x [0,1]",
            format_rational(x),
            format_rational(y)
        ))
    })?;
    if !is_unit_interval(y) {
        return Err(domain(format!("y = {} outside [0, 1]", format_rational(y))));
    }
    mechanical_factor(&params, 0, n, convention)
}

/// Every pair of equal-length factors has one-counts differing by at most one.
///
/// For each factor length the spread between the largest and smallest window
/// sum is computed from prefix sums, so the test is quadratic.
pub fn is_balanced(w: &Word) -> bool {
    let sums = w.prefix_sums();
    let n = w.len();
    (1..=n).all(|len| {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for end in len..=n {
            let s = sums[end] - sums[end - len];
            lo = lo.min(s);
            hi = hi.max(s);
        }
        hi - lo <= 1
    })
}

#[derive(Clone)]
struct Frontier {
    word: PackedWord,
    sums: [u8; MAX_ENUMERATION_LENGTH + 1],
    lo: [u8; MAX_ENUMERATION_LENGTH + 1],
    hi: [u8; MAX_ENUMERATION_LENGTH + 1],
}

impl Frontier {
    fn root() -> Self {
        Frontier {
            word: PackedWord { bits: 0, len: 0 },
            sums: [0; MAX_ENUMERATION_LENGTH + 1],
            lo: [u8::MAX; MAX_ENUMERATION_LENGTH + 1],
            hi: [0; MAX_ENUMERATION_LENGTH + 1],
        }
    }

    /// Appends a letter, re-checking only the windows that end at it.
    fn extend(&self, letter: u8) -> Option<Frontier> {
        let mut next = self.clone();
        let end = self.word.len() + 1;
        next.word = self.word.push(letter);
        next.sums[end] = self.sums[end - 1] + letter;
        for len in 1..=end {
            let s = next.sums[end] - next.sums[end - len];
            next.lo[len] = next.lo[len].min(s);
            next.hi[len] = next.hi[len].max(s);
            if next.hi[len] - next.lo[len] > 1 {
                return None;
            }
        }
        Some(next)
    }
}

fn collect_balanced(node: &Frontier, n: usize, out: &mut Vec<PackedWord>) {
    if node.word.len() == n {
        out.push(node.word);
        return;
    }
    for letter in [0, 1] {
        if let Some(child) = node.extend(letter) {
            collect_balanced(&child, n, out);
        }
    }
}

/// All balanced words of length `n` in packed form, lexicographically ordered.
pub fn enumerate_balanced_packed(n: usize) -> Result<Vec<PackedWord>> {
    if n == 0 {
        return Err(domain("enumeration length must be positive"));
    }
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::Resource {
            what: "enumeration length",
            value: n as u64,
            limit: MAX_ENUMERATION_LENGTH as u64,
        });
    }
    let mut out = Vec::new();
    collect_balanced(&Frontier::root(), n, &mut out);
    Ok(out)
}

/// All balanced words of length `n`, lexicographically ordered.
pub fn enumerate_balanced(n: usize) -> Result<Vec<Word>> {
    Ok(enumerate_balanced_packed(n)?
        .into_iter()
        .map(PackedWord::to_word)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn is_integer(r: &Rational) -> bool {
        r.denom().is_one()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn params(a: (i64, i64), r: (i64, i64)) -> MechanicalParams {
        MechanicalParams::new(ratio(a.0, a.1), ratio(r.0, r.1)).unwrap()
    }

    /// Compares every pair of equal-length factors directly.
    fn balanced_by_all_pairs(w: &Word) -> bool {
        let l = w.letters();
        let n = l.len();
        for len in 1..=n {
            for i in 0..=n - len {
                for j in 0..=n - len {
                    let a: i32 = l[i..i + len].iter().map(|&b| b as i32).sum();
                    let b: i32 = l[j..j + len].iter().map(|&b| b as i32).sum();
                    if (a - b).abs() > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn totient(k: u64) -> u64 {
        (1..=k).filter(|&i| num_integer::gcd(i, k) == 1).count() as u64
    }

    #[test]
    fn lower_prefix_examples() {
        assert_eq!(lower_mechanical_prefix(&params((0, 1), (0, 1)), 4).unwrap(), w("0000"));
        assert_eq!(lower_mechanical_prefix(&params((1, 1), (0, 1)), 4).unwrap(), w("1111"));
        assert_eq!(lower_mechanical_prefix(&params((1, 2), (0, 1)), 4).unwrap(), w("1010"));
    }

    #[test]
    fn upper_prefix_examples() {
        assert_eq!(upper_mechanical_prefix(&params((0, 1), (0, 1)), 3).unwrap(), w("000"));
        assert_eq!(upper_mechanical_prefix(&params((1, 2), (0, 1)), 4).unwrap(), w("0101"));
    }

    #[test]
    fn lower_and_upper_differ_only_at_integer_points() {
        let p = params((2, 5), (1, 3));
        let lower = lower_mechanical_prefix(&p, 10).unwrap();
        let upper = upper_mechanical_prefix(&p, 10).unwrap();
        // 2k/5 + 1/3 is never an integer, so the prefixes agree.
        for k in 1..=11i64 {
            assert!(!is_integer(&(ratio(2 * k, 5) + ratio(1, 3))));
        }
        assert_eq!(lower, upper);

        // With rho = 0 the integer points k = 5, 10 make them disagree next to those indices.
        let p = params((2, 5), (0, 1));
        let lower = lower_mechanical_prefix(&p, 10).unwrap();
        let upper = upper_mechanical_prefix(&p, 10).unwrap();
        for k in 1..=10usize {
            let touches_integer = [k, k + 1].iter().any(|&j| is_integer(&(ratio(2, 5) * int(j as i64))));
            if lower.letters()[k - 1] != upper.letters()[k - 1] {
                assert!(touches_integer, "letter {k} differs without an integer point");
            }
        }
        assert_ne!(lower, upper);
    }

    #[test]
    fn mechanical_rejects_bad_params() {
        assert!(MechanicalParams::new(ratio(3, 2), int(0)).is_err());
        assert!(MechanicalParams::new(ratio(1, 2), int(1)).is_err());
        assert!(MechanicalParams::new(ratio(-1, 2), int(0)).is_err());
        assert!(lower_mechanical_prefix(&params((1, 2), (0, 1)), 0).is_err());
    }

    #[test]
    fn balance_examples() {
        assert!(!is_balanced(&w("0011")));
        assert!(is_balanced(&w("0101")));
        assert!(is_balanced(&Word::empty()));
    }

    #[test]
    fn balance_agrees_with_all_pairs_up_to_length_12() {
        for n in 0..=12usize {
            for bits in 0u32..(1 << n) {
                let word = Word::from_letters((0..n).map(|i| ((bits >> i) & 1) as u8).collect()).unwrap();
                assert_eq!(is_balanced(&word), balanced_by_all_pairs(&word), "{word}");
            }
        }
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_balanced(1).unwrap(), vec![w("0"), w("1")]);
        assert_eq!(enumerate_balanced(3).unwrap().len(), 8);
        let four = enumerate_balanced(4).unwrap();
        assert_eq!(four.len(), 14);
        assert!(!four.contains(&w("0011")));
        assert!(!four.contains(&w("1100")));
    }

    #[test]
    fn enumeration_counts_match_totient_formula() {
        for n in 1..=18u64 {
            let expected = 1 + (1..=n).map(|k| (n + 1 - k) * totient(k)).sum::<u64>();
            assert_eq!(enumerate_balanced(n as usize).unwrap().len() as u64, expected, "n={n}");
        }
    }

    #[test]
    fn enumeration_is_sound_and_prefix_closed() {
        let words = enumerate_balanced(10).unwrap();
        let shorter: std::collections::HashSet<Word> = enumerate_balanced(9).unwrap().into_iter().collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        for word in &words {
            assert!(is_balanced(word));
            assert!(shorter.contains(&word.prefix(9)));
        }
    }

    #[test]
    fn enumeration_bounds() {
        assert!(enumerate_balanced(0).is_err());
        assert!(matches!(enumerate_balanced(65), Err(Error::Resource { .. })));
    }

    #[test]
    fn coding_examples() {
        assert_eq!(coding(&int(0), &int(0), 3).unwrap(), w("111"));
        assert_eq!(coding(&int(0), &int(1), 3).unwrap(), w("000"));
        // Cylinder coding starts at s_0: the same word as the prefix from s_1
        // with the intercept moved back by one slope step.
        assert_eq!(coding(&ratio(1, 3), &ratio(1, 2), 4).unwrap(), w("0101"));
        assert_eq!(
            coding(&ratio(1, 3), &ratio(1, 2), 4).unwrap(),
            lower_mechanical_prefix(&params((1, 2), (5, 6)), 4).unwrap()
        );
        assert_eq!(lower_mechanical_prefix(&params((1, 2), (1, 3)), 4).unwrap(), w("1010"));
        assert!(coding(&int(1), &int(0), 3).is_err());
        assert!(coding(&int(0), &ratio(3, 2), 3).is_err());
    }

    #[test]
    fn words_round_trip_through_text_and_json() {
        let word = w("0110101");
        assert_eq!(word.to_string().parse::<Word>().unwrap(), word);
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, "\"0110101\"");
        assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), word);
        assert!("012".parse::<Word>().is_err());
    }

    proptest! {
        #[test]
        fn coding_is_a_shifted_prefix(xn in 0i64..50, yn in 0i64..=50, n in 1usize..20) {
            let (x, y) = (ratio(xn, 50), ratio(yn, 50));
            let alpha = int(1) - &y;
            let shifted = &x - &alpha;
            let shifted = &shifted - shifted.floor();
            let p = MechanicalParams::new(alpha, shifted).unwrap();
            prop_assert_eq!(coding(&x, &y, n).unwrap(), lower_mechanical_prefix(&p, n).unwrap());
        }

        #[test]
        fn mechanical_prefixes_are_balanced(
            aq in 1i64..40, ap in 0i64..40, rq in 1i64..40, rp in 0i64..40, n in 1usize..40
        ) {
            let alpha = ratio(ap.min(aq), aq);
            let rho = ratio(rp % rq, rq);
            let p = MechanicalParams::new(alpha.clone(), rho.clone()).unwrap();
            let lower = lower_mechanical_prefix(&p, n).unwrap();
            let upper = upper_mechanical_prefix(&p, n).unwrap();
            prop_assert!(is_balanced(&lower));
            prop_assert!(is_balanced(&upper));
            let hits_integer = (1..=n as i64 + 1).any(|k| is_integer(&(&alpha * int(k) + &rho)));
            if !hits_integer {
                prop_assert_eq!(lower, upper);
            }
        }
    }
}
