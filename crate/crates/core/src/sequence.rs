//! p-ascent sequences: validation, statistics, and exhaustive enumeration.
//!
//! Enumeration is a depth-first extension: after a prefix with `a` ascents the
//! next letter ranges over `0..=p + a`. Children are visited in increasing
//! letter order, so sequences come out lexicographically.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::series::{MultiPoly, TSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("ascent allowance p must be at least 1")]
    InvalidParameter,
    #[error("{letters:?} is not a {p}-ascent sequence")]
    NotPAscent { letters: Vec<u32>, p: u32 },
}

/// Number of positions `j` with `w[j] < w[j+1]`.
pub fn asc(w: &[u32]) -> usize {
    w.windows(2).filter(|x| x[0] < x[1]).count()
}

/// Number of positions `j` with `w[j] > w[j+1]`.
pub fn des(w: &[u32]) -> usize {
    w.windows(2).filter(|x| x[0] > x[1]).count()
}

/// Whether `w` is a p-ascent sequence. The empty word is one for every `p`.
pub fn is_p_ascent(w: &[u32], p: u32) -> Result<bool, SequenceError> {
    if p < 1 {
        return Err(SequenceError::InvalidParameter);
    }
    let Some((&first, rest)) = w.split_first() else {
        return Ok(true);
    };
    if first != 0 {
        return Ok(false);
    }
    let mut ascents = 0u32;
    let mut prev = first;
    for &x in rest {
        if x > p + ascents {
            return Ok(false);
        }
        if prev < x {
            ascents += 1;
        }
        prev = x;
    }
    Ok(true)
}

/// A validated p-ascent sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PAscentSequence {
    p: u32,
    letters: Vec<u32>,
}

impl PAscentSequence {
    pub fn new(p: u32, letters: Vec<u32>) -> Result<Self, SequenceError> {
        if is_p_ascent(&letters, p)? {
            Ok(PAscentSequence { p, letters })
        } else {
            Err(SequenceError::NotPAscent { letters, p })
        }
    }

    pub fn empty(p: u32) -> Result<Self, SequenceError> {
        Self::new(p, Vec::new())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    pub fn stats(&self) -> StatProfile {
        stats(&self.letters)
    }
}

/// Statistic vector of one sequence. `last` and `max` are `None` for the
/// empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatProfile {
    pub length: usize,
    pub ascents: usize,
    pub descents: usize,
    pub zeros: usize,
    pub last: Option<u32>,
    pub run: usize,
    pub max: Option<u32>,
    pub sum: u64,
    pub primitive: bool,
    pub up_down: bool,
}

/// Length of the initial block of zeros, or 0 if the word is all zeros.
pub fn run(w: &[u32]) -> usize {
    match w.iter().position(|&x| x != 0) {
        Some(i) => i,
        None => 0,
    }
}

/// No two equal adjacent letters.
pub fn is_primitive(w: &[u32]) -> bool {
    w.windows(2).all(|x| x[0] != x[1])
}

/// `w1 < w2 > w3 < w4 > ...` over every adjacent pair.
pub fn is_up_down(w: &[u32]) -> bool {
    w.windows(2)
        .enumerate()
        .all(|(i, x)| if i % 2 == 0 { x[0] < x[1] } else { x[0] > x[1] })
}

pub fn stats(w: &[u32]) -> StatProfile {
    StatProfile {
        length: w.len(),
        ascents: asc(w),
        descents: des(w),
        zeros: w.iter().filter(|&&x| x == 0).count(),
        last: w.last().copied(),
        run: run(w),
        max: w.iter().copied().max(),
        sum: w.iter().map(|&x| u64::from(x)).sum(),
        primitive: is_primitive(w),
        up_down: is_up_down(w),
    }
}

/// Depth-first walk over every p-ascent sequence of length at most `max_len`
/// whose prefixes all satisfy `keep`. `visit` sees each kept sequence once,
/// in lexicographic order, with the ascent count of the whole word.
///
/// `keep` must be prefix-closed (if it rejects a word it would reject every
/// extension) for the walk to be exhaustive over the words it accepts.
pub fn walk<K, F>(p: u32, max_len: usize, keep: &K, visit: &mut F)
where
    K: Fn(&[u32]) -> bool + ?Sized,
    F: FnMut(&[u32], u32),
{
    assert!(p >= 1, "ascent allowance p must be at least 1");
    let mut buf = Vec::with_capacity(max_len);
    if !keep(&buf) {
        return;
    }
    visit(&buf, 0);
    if max_len == 0 {
        return;
    }
    buf.push(0);
    if keep(&buf) {
        walk_from(p, max_len, &mut buf, 0, keep, visit);
    }
}

fn walk_from<K, F>(p: u32, max_len: usize, buf: &mut Vec<u32>, ascents: u32, keep: &K, visit: &mut F)
where
    K: Fn(&[u32]) -> bool + ?Sized,
    F: FnMut(&[u32], u32),
{
    visit(buf, ascents);
    if buf.len() == max_len {
        return;
    }
    let prev = *buf.last().expect("nonempty");
    for x in 0..=p + ascents {
        buf.push(x);
        if keep(buf) {
            let a = ascents + u32::from(prev < x);
            walk_from(p, max_len, buf, a, keep, visit);
        }
        buf.pop();
    }
}

/// All p-ascent sequences of length exactly `n` accepted by `filter`, in
/// lexicographic order. The full set is never materialized.
pub fn enumerate<'a>(
    p: u32,
    n: usize,
    filter: Option<&'a dyn Fn(&[u32]) -> bool>,
) -> impl Iterator<Item = PAscentSequence> + 'a {
    Enumerator::new(p, n).filter_map(move |w| match filter {
        Some(f) if !f(&w) => None,
        _ => Some(PAscentSequence { p, letters: w }),
    })
}

/// Count the p-ascent sequences of length `n` accepted by `filter`.
pub fn count(p: u32, n: usize, filter: Option<&(dyn Fn(&[u32]) -> bool + Sync)>) -> BigInt {
    let mut total = 0u64;
    walk(p, n, &|_: &[u32]| true, &mut |w: &[u32], _| {
        if w.len() == n && filter.map_or(true, |f| f(w)) {
            total += 1;
        }
    });
    BigInt::from(total)
}

/// Iterative lexicographic enumerator for a fixed length.
struct Enumerator {
    p: u32,
    n: usize,
    word: Vec<u32>,
    /// `ascents[i]` is the ascent count of `word[..=i]`.
    ascents: Vec<u32>,
    state: EnumState,
}

enum EnumState {
    Start,
    Running,
    Done,
}

impl Enumerator {
    fn new(p: u32, n: usize) -> Self {
        assert!(p >= 1, "ascent allowance p must be at least 1");
        Enumerator {
            p,
            n,
            word: Vec::with_capacity(n),
            ascents: Vec::with_capacity(n),
            state: EnumState::Start,
        }
    }

    fn fill_zeros(&mut self) {
        while self.word.len() < self.n {
            let a = self.ascents.last().copied().unwrap_or(0);
            self.word.push(0);
            self.ascents.push(a);
        }
    }
}

impl Iterator for Enumerator {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        match self.state {
            EnumState::Done => return None,
            EnumState::Start => {
                self.state = EnumState::Running;
                self.fill_zeros();
                if self.n == 0 {
                    self.state = EnumState::Done;
                }
                return Some(self.word.clone());
            }
            EnumState::Running => {}
        }
        // Bump the rightmost position that can still grow.
        while self.word.len() > 1 {
            let i = self.word.len() - 1;
            let cap = self.p + self.ascents[i - 1];
            if self.word[i] < cap {
                self.word[i] += 1;
                self.ascents[i] = self.ascents[i - 1] + u32::from(self.word[i - 1] < self.word[i]);
                self.fill_zeros();
                return Some(self.word.clone());
            }
            self.word.pop();
            self.ascents.pop();
        }
        self.state = EnumState::Done;
        None
    }
}

/// Statistics tracked by [`oracle_table`]. Unselected ones are specialized to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StatSelector {
    pub ascents: bool,
    pub last: bool,
    pub zeros: bool,
    pub run: bool,
}

impl StatSelector {
    pub const ALL: StatSelector = StatSelector {
        ascents: true,
        last: true,
        zeros: true,
        run: true,
    };
    pub const NONE: StatSelector = StatSelector {
        ascents: false,
        last: false,
        zeros: false,
        run: false,
    };

    pub fn zeros_only() -> Self {
        StatSelector {
            zeros: true,
            ..Self::NONE
        }
    }
}

type Key = (u32, u32, u32, u32, u32);

/// Brute-force generating function
/// `sum t^|w| u^asc(w) v^last(w) z^zeros(w) x^run(w)` over every p-ascent
/// sequence of length at most `order` (the empty word contributes 1).
pub fn oracle_table(p: u32, order: usize, select: StatSelector) -> TSeries {
    oracle_table_filtered(p, order, select, &|_: &[u32]| true)
}

/// As [`oracle_table`], restricted to sequences accepted by the prefix-closed
/// predicate `keep`.
pub fn oracle_table_filtered<K>(p: u32, order: usize, select: StatSelector, keep: &K) -> TSeries
where
    K: Fn(&[u32]) -> bool + Sync + ?Sized,
{
    assert!(p >= 1, "ascent allowance p must be at least 1");
    let mut counts: HashMap<Key, u64> = HashMap::new();
    let key = |w: &[u32], a: u32| -> Key {
        (
            w.len() as u32,
            if select.ascents { a } else { 0 },
            if select.last { w.last().copied().unwrap_or(0) } else { 0 },
            if select.zeros { w.iter().filter(|&&x| x == 0).count() as u32 } else { 0 },
            if select.run { run(w) as u32 } else { 0 },
        )
    };

    if keep(&[]) {
        counts.insert((0, 0, 0, 0, 0), 1);
    }
    if order >= 1 && keep(&[0]) {
        *counts.entry(key(&[0], 0)).or_default() += 1;
        if order >= 2 {
            // Partition by the second letter; each subtree is independent.
            let parts: Vec<HashMap<Key, u64>> = (0..=p)
                .into_par_iter()
                .map(|second| {
                    let mut local: HashMap<Key, u64> = HashMap::new();
                    let mut buf = vec![0, second];
                    if keep(&buf) {
                        let a = u32::from(second > 0);
                        walk_from(p, order, &mut buf, a, keep, &mut |w: &[u32], a| {
                            *local.entry(key(w, a)).or_default() += 1;
                        });
                    }
                    local
                })
                .collect();
            for part in parts {
                for (k, c) in part {
                    *counts.entry(k).or_default() += c;
                }
            }
        }
    }

    let mut terms: Vec<(usize, MultiPoly)> = counts
        .into_iter()
        .map(|((n, a, l, z, r), c)| (n as usize, MultiPoly::term([a, l, z, r], c)))
        .collect();
    terms.sort_by(|x, y| x.0.cmp(&y.0));
    TSeries::from_terms(order, terms)
}

/// Projection onto the variables in `select`, specializing the rest to 1.
pub fn project_stats(s: &TSeries, select: StatSelector) -> TSeries {
    let mut assign = Vec::new();
    if !select.ascents {
        assign.push((Var::U, 1));
    }
    if !select.last {
        assign.push((Var::V, 1));
    }
    if !select.zeros {
        assign.push((Var::Z, 1));
    }
    if !select.run {
        assign.push((Var::X, 1));
    }
    s.specialize_i64(&assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_series;
    use std::collections::BTreeSet;

    fn word(s: &str) -> Vec<u32> {
        s.chars().map(|c| c.to_digit(10).unwrap()).collect()
    }

    #[test]
    fn ascent_counts() {
        assert_eq!(asc(&[0, 1, 0, 2, 3, 1, 0, 0, 2]), 4);
        assert_eq!(asc(&[0]), 0);
        assert_eq!(asc(&[0, 0, 0]), 0);
    }

    #[test]
    fn membership() {
        assert_eq!(is_p_ascent(&word("013"), 2), Ok(true));
        assert_eq!(is_p_ascent(&word("02"), 1), Ok(false));
        assert_eq!(is_p_ascent(&[], 3), Ok(true));
        assert_eq!(is_p_ascent(&word("1"), 3), Ok(false));
        assert_eq!(is_p_ascent(&word("0"), 0), Err(SequenceError::InvalidParameter));
        assert!(PAscentSequence::new(1, word("02")).is_err());
    }

    #[test]
    fn profiles() {
        let s = stats(&word("0010"));
        assert_eq!((s.run, s.zeros, s.ascents, s.descents, s.last), (2, 3, 1, 1, Some(0)));
        let s = stats(&word("000"));
        assert_eq!((s.run, s.zeros), (0, 3));
        let s = stats(&word("01"));
        assert!(s.up_down && s.primitive);
        let s = stats(&[]);
        assert_eq!((s.length, s.last, s.max, s.run), (0, None, None, 0));
        assert!(stats(&word("0")).up_down);
        assert!(!stats(&word("0120")).up_down);
        assert!(stats(&word("0102")).up_down);
        assert!(!stats(&word("0110")).primitive);
        assert_eq!(stats(&word("0132")).sum, 6);
        assert_eq!(stats(&word("0132")).max, Some(3));
    }

    #[test]
    fn eight_sequences_start_zero_then_nonzero() {
        let f = |w: &[u32]| w[1] != 0;
        let got: Vec<String> = enumerate(2, 3, Some(&f))
            .map(|s| s.letters().iter().map(|d| d.to_string()).collect())
            .collect();
        assert_eq!(got, ["010", "011", "012", "013", "020", "021", "022", "023"]);
    }

    #[test]
    fn single_letter() {
        let all: Vec<_> = enumerate(1, 1, None).map(|s| s.into_letters()).collect();
        assert_eq!(all, vec![vec![0]]);
        let none: Vec<_> = enumerate(1, 0, None).map(|s| s.into_letters()).collect();
        assert_eq!(none, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn nineteen_one_ascent_sequences_after_single_zero() {
        let f = |w: &[u32]| asc(w) == 1 && run(w) == 1;
        let got: BTreeSet<Vec<u32>> = enumerate(3, 4, Some(&f)).map(|s| s.into_letters()).collect();
        let expected: BTreeSet<Vec<u32>> = "0111 0110 0100 0222 0221 0220 0211 0210 0200 \
             0333 0332 0331 0330 0322 0321 0320 0311 0310 0300"
            .split_whitespace()
            .map(word)
            .collect();
        assert_eq!(got, expected);
        let zeros: Vec<usize> = got.iter().map(|w| stats(w).zeros).collect();
        assert_eq!(zeros.iter().filter(|&&z| z == 1).count(), 10);
        assert_eq!(zeros.iter().filter(|&&z| z == 2).count(), 6);
        assert_eq!(zeros.iter().filter(|&&z| z == 3).count(), 3);
    }

    #[test]
    fn enumeration_is_lexicographic_and_valid() {
        for p in 1..=3 {
            for n in 0..=6 {
                let all: Vec<Vec<u32>> = enumerate(p, n, None).map(|s| s.into_letters()).collect();
                assert!(all.windows(2).all(|x| x[0] < x[1]));
                assert!(all.iter().all(|w| is_p_ascent(w, p).unwrap() && w.len() == n));
                assert_eq!(BigInt::from(all.len()), count(p, n, None));
            }
        }
    }

    #[test]
    fn brute_force_over_all_words_matches() {
        // Independent check: test every word over a bounded alphabet.
        for p in 1..=3u32 {
            for n in 0..=5usize {
                let alphabet = p + n as u32;
                let mut total = 0u64;
                let mut w = vec![0u32; n];
                loop {
                    if is_p_ascent(&w, p).unwrap() {
                        total += 1;
                    }
                    let mut i = 0;
                    while i < n && w[i] == alphabet {
                        w[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                    w[i] += 1;
                }
                assert_eq!(count(p, n, None), BigInt::from(total), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn oracle_small_tables() {
        let g = oracle_table(2, 2, StatSelector::ALL);
        assert_eq!(g, parse_series("1 + z t + (z^2 + u v z x + u v^2 z x) t^2", 2).unwrap());
        let a = project_stats(&g, StatSelector::zeros_only());
        assert_eq!(a.coefficient(2).unwrap(), &crate::series::parse_poly("2z + z^2").unwrap());
        assert_eq!(oracle_table(1, 0, StatSelector::ALL), TSeries::one(0));
        let a3 = oracle_table(3, 3, StatSelector::zeros_only());
        assert_eq!(a3, parse_series("1 + z t + (3z + z^2) t^2 + (12z + 6z^2 + z^3) t^3", 3).unwrap());
    }

    #[test]
    fn prefix_closure_and_monotonicity() {
        for p in 1..=3 {
            for n in 1..=5 {
                for s in enumerate(p, n, None) {
                    let w = s.letters();
                    assert!((0..=n).all(|k| is_p_ascent(&w[..k], p).unwrap()));
                    assert!(is_p_ascent(w, p + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn ascent_exponent_below_length() {
        let g = oracle_table(3, 6, StatSelector::ALL);
        for n in 1..=6 {
            for (e, c) in g.coefficient(n).unwrap().terms() {
                assert!((e[0] as usize) < n);
                assert!(c > &BigInt::from(0));
            }
        }
    }
}
