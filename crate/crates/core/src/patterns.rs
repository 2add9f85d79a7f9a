//! Pattern containment in p-ascent sequences, closed-form avoidance counts,
//! the embedding into ordinary ascent sequences, and the 10 / 012 bijection
//! for `p = 2`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gf::binomial;
use crate::sequence::{is_p_ascent, is_primitive, walk, PAscentSequence, SequenceError};
use crate::series::{parse_series, MultiPoly, TSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("no closed form for pattern {pattern} with p = {p}{}", if *.primitive { " (primitive)" } else { "" })]
    NoClosedForm { p: u32, pattern: String, primitive: bool },
    #[error("sequence does not start with the (01)^(p-1)0 prefix")]
    NotInImage,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Replace each copy of the `i`-th smallest distinct letter by `i - 1`.
pub fn red(w: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    w.iter()
        .map(|x| distinct.binary_search(x).expect("letter present") as u32)
        .collect()
}

/// A reduced word, optionally with some consecutive pattern positions that
/// must also be consecutive in the host word (vincular patterns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    letters: Vec<u32>,
    /// Positions `i` such that pattern letters `i` and `i + 1` must match
    /// adjacent host positions. Strictly increasing.
    adjacency: Vec<usize>,
}

impl Pattern {
    pub fn classical(letters: Vec<u32>) -> Result<Self, PatternError> {
        Self::vincular(letters, Vec::new())
    }

    pub fn vincular(letters: Vec<u32>, adjacency: Vec<usize>) -> Result<Self, PatternError> {
        if letters.is_empty() {
            return Err(PatternError::InvalidPattern("empty pattern".into()));
        }
        if red(&letters) != letters {
            return Err(PatternError::InvalidPattern(format!("{letters:?} is not reduced")));
        }
        if adjacency.windows(2).any(|w| w[0] >= w[1]) || adjacency.iter().any(|&i| i + 1 >= letters.len()) {
            return Err(PatternError::InvalidPattern(format!("bad adjacency {adjacency:?}")));
        }
        Ok(Pattern { letters, adjacency })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn adjacency(&self) -> &[usize] {
        &self.adjacency
    }

    pub fn is_classical(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether some occurrence of the pattern appears in `w`.
    pub fn occurs_in(&self, w: &[u32]) -> bool {
        occurs(self, w)
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    /// Digits are letters; a hyphen separates blocks whose letters need not
    /// be adjacent. Without hyphens the pattern is classical. Letters are
    /// reduced, so `21-2` and `10-1` denote the same pattern.
    fn from_str(s: &str) -> Result<Self, PatternError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PatternError::InvalidPattern("empty pattern".into()));
        }
        let mut letters = Vec::new();
        let mut adjacency = Vec::new();
        let vincular = s.contains('-');
        for block in s.split('-') {
            if block.is_empty() {
                return Err(PatternError::InvalidPattern(format!("empty block in {s:?}")));
            }
            for (ci, ch) in block.chars().enumerate() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| PatternError::InvalidPattern(format!("unexpected {ch:?} in {s:?}")))?;
                if vincular && ci > 0 {
                    adjacency.push(letters.len() - 1);
                }
                letters.push(d);
            }
        }
        Pattern::vincular(red(&letters), adjacency)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.letters.iter().enumerate() {
            if i > 0 && !self.is_classical() && !self.adjacency.contains(&(i - 1)) {
                f.write_str("-")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Exhaustive occurrence test over index subsets, honoring adjacency.
pub fn occurs(pat: &Pattern, w: &[u32]) -> bool {
    fn extend(pat: &Pattern, w: &[u32], chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == pat.letters.len() {
            return true;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        let end = if k > 0 && pat.adjacency.contains(&(k - 1)) {
            (start + 1).min(w.len())
        } else {
            w.len()
        };
        for i in start..end {
            let consistent = chosen
                .iter()
                .zip(&pat.letters)
                .all(|(&j, &pl)| w[j].cmp(&w[i]) == pl.cmp(&pat.letters[k]));
            if consistent {
                chosen.push(i);
                if extend(pat, w, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(pat, w, &mut Vec::with_capacity(pat.letters.len()))
}

/// Brute-force `a_{n,p,pat}` (or `r_{n,p,pat}` when `primitive_only`).
///
/// Containment is preserved under appending letters, so the enumeration
/// prunes any prefix that already contains the pattern.
pub fn count_avoiders(p: u32, pat: &Pattern, n: usize, primitive_only: bool) -> BigInt {
    let keep = |w: &[u32]| (!primitive_only || is_primitive(w)) && !occurs(pat, w);
    let mut total = 0u64;
    walk(p, n, &keep, &mut |w: &[u32], _| {
        if w.len() == n {
            total += 1;
        }
    });
    BigInt::from(total)
}

/// All avoiders of length exactly `n`, lexicographically.
pub fn avoiders(p: u32, pat: &Pattern, n: usize, primitive_only: bool) -> Vec<Vec<u32>> {
    let keep = |w: &[u32]| (!primitive_only || is_primitive(w)) && !occurs(pat, w);
    let mut out = Vec::new();
    walk(p, n, &keep, &mut |w: &[u32], _| {
        if w.len() == n {
            out.push(w.to_vec());
        }
    });
    out
}

fn no_closed_form(p: u32, pat: &Pattern, primitive: bool) -> PatternError {
    PatternError::NoClosedForm {
        p,
        pattern: pat.to_string(),
        primitive,
    }
}

fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

/// `num * 2^n / den`, asserting exact divisibility.
fn scaled_pow2(num: BigInt, n: usize, den: u32) -> BigInt {
    let x = num * pow2(n);
    let den = BigInt::from(den);
    debug_assert!((&x % &den).is_zero());
    x / den
}

fn avoid_012_p2(n: usize) -> BigInt {
    scaled_pow2(BigInt::from(n + 1), n, 4)
}

fn avoid_012_p3(n: usize) -> BigInt {
    let n = n as u64;
    scaled_pow2(BigInt::from(n * n + 5 * n + 2), n as usize, 16)
}

fn avoid_012_p4(n: usize) -> BigInt {
    let n = n as u64;
    scaled_pow2(BigInt::from(n * n * n + 12 * n * n + 29 * n + 6), n as usize, 96)
}

/// `a_{n,p,012}` from the recursion
/// `a_{n,p} = a_{n,p-1} + Σ_{k=2}^{n} a_{k-1,p-1} 2^{n-k}`, seeded at `p = 2`.
pub fn avoid_012_recursive(p: u32, n: usize) -> BigInt {
    assert!(p >= 2, "recursion is seeded at p = 2");
    let mut memo = HashMap::new();
    avoid_012_memo(p, n, &mut memo)
}

fn avoid_012_memo(p: u32, n: usize, memo: &mut HashMap<(u32, usize), BigInt>) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    if p == 2 {
        return avoid_012_p2(n);
    }
    if let Some(v) = memo.get(&(p, n)) {
        return v.clone();
    }
    let mut acc = avoid_012_memo(p - 1, n, memo);
    for k in 2..=n {
        acc += avoid_012_memo(p - 1, k - 1, memo) * pow2(n - k);
    }
    memo.insert((p, n), acc.clone());
    acc
}

/// `r_{n,p,10} = C(p+n-2, n-1)`.
pub fn primitive_avoid_10(p: u32, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    binomial(p as u64 + n as u64 - 2, n as u64 - 1)
}

/// `a_{n,p,10} = Σ_{s=0}^{n-1} C(n-1, s) C(p+s-1, s)`.
pub fn avoid_10(p: u32, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    (0..n as u64)
        .map(|s| binomial(n as u64 - 1, s) * binomial(p as u64 + s - 1, s))
        .sum()
}

/// Closed-form avoidance count, where one is known.
///
/// Supported: `01` and `10` for every `p` (plain and primitive); `00` for
/// `p ∈ {2, 3}` (every 00-avoider is primitive, so both counts agree); `012`
/// for `p >= 2` (closed forms for `p ≤ 4`, the recursion beyond).
pub fn closed_count(p: u32, pat: &Pattern, n: usize, primitive: bool) -> Result<BigInt, PatternError> {
    if p < 1 {
        return Err(SequenceError::InvalidParameter.into());
    }
    if !pat.is_classical() {
        return Err(no_closed_form(p, pat, primitive));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let nn = n as u64;
    match (pat.letters(), primitive) {
        ([0, 1], false) => Ok(BigInt::one()),
        ([0, 1], true) => Ok(BigInt::from(u32::from(n == 1))),
        ([1, 0], false) => Ok(avoid_10(p, n)),
        ([1, 0], true) => Ok(primitive_avoid_10(p, n)),
        ([0, 0], _) => match p {
            2 => Ok(BigInt::one() + binomial(nn, 2)),
            3 => Ok(binomial(nn + 1, 2) + binomial(nn, 3) * 2u32 + binomial(nn.saturating_sub(1), 4) + binomial(nn + 2, 5)),
            _ => Err(no_closed_form(p, pat, primitive)),
        },
        ([0, 1, 2], false) => match p {
            2 => Ok(avoid_012_p2(n)),
            3 => Ok(avoid_012_p3(n)),
            4 => Ok(avoid_012_p4(n)),
            p if p > 4 => Ok(avoid_012_recursive(p, n)),
            _ => Err(no_closed_form(p, pat, primitive)),
        },
        _ => Err(no_closed_form(p, pat, primitive)),
    }
}

/// Generating function `1 + Σ_{n≥1} a_n t^n` from a rational closed form.
///
/// Supported: `10` (plain: `1 + t(1-t)^{p-1}/(1-2t)^p`; primitive:
/// `1 + t/(1-t)^p`), `01`, and `00` at `p = 3`.
pub fn gf_avoiders(p: u32, pat: &Pattern, primitive: bool, order: usize) -> Result<TSeries, PatternError> {
    if p < 1 {
        return Err(SequenceError::InvalidParameter.into());
    }
    let series = |s: &str| parse_series(s, order).expect("fixed expression parses");
    let quotient = |num: TSeries, den: TSeries| num.div(&den).expect("denominator has unit constant term");
    if !pat.is_classical() {
        return Err(no_closed_form(p, pat, primitive));
    }
    let one = TSeries::one(order);
    match (pat.letters(), primitive) {
        ([0, 1], false) => Ok(quotient(one, series("1 - t"))),
        ([0, 1], true) => Ok(series("1 + t")),
        ([1, 0], false) => {
            let num = &TSeries::t(order) * &series("1 - t").pow(p - 1);
            Ok(&one + &quotient(num, series("1 - 2t").pow(p)))
        }
        ([1, 0], true) => Ok(&one + &quotient(TSeries::t(order), series("1 - t").pow(p))),
        ([0, 0], _) if p == 3 => {
            let num = series("t(1 - 3t + 6t^2 - 5t^3 + 3t^4 - t^5)");
            Ok(&one + &quotient(num, series("1 - t").pow(6)))
        }
        _ => Err(no_closed_form(p, pat, primitive)),
    }
}

/// `(0,1)^{p-1}` followed by `w`, or the empty word if `w` is empty. Works on
/// arbitrary words so validity can be compared on both sides.
pub fn embed_word(w: &[u32], p: u32) -> Vec<u32> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut letters = Vec::with_capacity(w.len() + 2 * (p as usize).saturating_sub(1));
    for _ in 1..p {
        letters.extend([0, 1]);
    }
    letters.extend_from_slice(w);
    letters
}

/// Prepend `(0,1)^{p-1}` to a nonempty p-ascent sequence, giving an ordinary
/// ascent sequence. The empty word maps to itself.
pub fn embed(w: &PAscentSequence) -> PAscentSequence {
    PAscentSequence::new(1, embed_word(w.letters(), w.p()))
        .expect("embedding of a valid sequence is an ascent sequence")
}

/// Inverse of [`embed`]: strip the `(0,1)^{p-1}` prefix from an ascent
/// sequence that starts with `(0,1)^{p-1} 0`.
pub fn project(w: &PAscentSequence, p: u32) -> Result<PAscentSequence, PatternError> {
    if p < 1 {
        return Err(SequenceError::InvalidParameter.into());
    }
    if w.p() != 1 {
        return Err(PatternError::InvalidInput(format!("expected an ascent sequence, got p = {}", w.p())));
    }
    if w.is_empty() {
        return Ok(PAscentSequence::empty(p)?);
    }
    let k = 2 * (p as usize - 1);
    let letters = w.letters();
    let prefix_ok = letters.len() > k
        && letters[..k].chunks(2).all(|c| c == [0, 1])
        && letters[k] == 0;
    if !prefix_ok {
        return Err(PatternError::NotInImage);
    }
    Ok(PAscentSequence::new(p, letters[k..].to_vec())?)
}

/// Maximal runs `(value, length)`.
fn blocks(w: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &x in w {
        match out.last_mut() {
            Some((v, len)) if *v == x => *len += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Map a 10-avoiding 2-ascent sequence to a 012-avoiding one.
///
/// A 10-avoider is weakly increasing with blocks `0^{i_0} 1^{i_1} …`, where
/// the distinct values either run `0, 1, …, m` or skip exactly one value
/// (`…, a, a+2, a+3, …`). Block `j ≥ 1` becomes the letter `2` (before the
/// skip) or `1` (after it) followed by `i_j - 1` zeros; the leading zeros are
/// kept.
pub fn bijection_10_to_012(w: &[u32]) -> Result<Vec<u32>, PatternError> {
    if !is_p_ascent(w, 2)? {
        return Err(PatternError::InvalidInput(format!("{w:?} is not a 2-ascent sequence")));
    }
    if w.windows(2).any(|x| x[0] > x[1]) {
        return Err(PatternError::InvalidInput(format!("{w:?} contains 10")));
    }
    let bs = blocks(w);
    let mut out = Vec::with_capacity(w.len());
    for (j, &(value, len)) in bs.iter().enumerate() {
        if j == 0 {
            out.extend(std::iter::repeat(0).take(len));
            continue;
        }
        let leader = match value as usize {
            v if v == j => 2,
            v if v == j + 1 => 1,
            _ => return Err(PatternError::InvalidInput(format!("{w:?} has an unexpected value gap"))),
        };
        out.push(leader);
        out.extend(std::iter::repeat(0).take(len - 1));
    }
    Ok(out)
}

/// Inverse of [`bijection_10_to_012`].
pub fn bijection_012_to_10(w: &[u32]) -> Result<Vec<u32>, PatternError> {
    if !is_p_ascent(w, 2)? {
        return Err(PatternError::InvalidInput(format!("{w:?} is not a 2-ascent sequence")));
    }
    let pat = Pattern::classical(vec![0, 1, 2]).expect("reduced");
    if occurs(&pat, w) {
        return Err(PatternError::InvalidInput(format!("{w:?} contains 012")));
    }
    if w.is_empty() {
        return Ok(Vec::new());
    }
    let leading_zeros = w.iter().take_while(|&&x| x == 0).count();
    let mut out = vec![0; leading_zeros];
    let mut value = 0u32;
    let mut seen_one = false;
    let mut i = leading_zeros;
    while i < w.len() {
        let leader = w[i];
        let mut len = 1;
        while i + len < w.len() && w[i + len] == 0 {
            len += 1;
        }
        match leader {
            2 if !seen_one => value += 1,
            1 if !seen_one => {
                seen_one = true;
                value += 2;
            }
            1 => value += 1,
            _ => return Err(PatternError::InvalidInput(format!("{w:?} is not in the image"))),
        }
        out.extend(std::iter::repeat(value).take(len));
        i += len;
    }
    Ok(out)
}

/// Words of length `n - 1` over `{1, 2, 3}` with no `w_i w_{i+1} … w_j`
/// (`j > i + 1`) such that `w_i = w_j > w_{i+1}`.
pub fn count_vincular_212_ternary(n: usize) -> BigInt {
    assert!(n >= 1, "n must be at least 1");
    let len = n - 1;
    let mut total = 0u64;
    let mut w = vec![1u32; len];
    loop {
        if avoids_212_vincular(&w) {
            total += 1;
        }
        let mut i = 0;
        while i < len && w[i] == 3 {
            w[i] = 1;
            i += 1;
        }
        if i == len {
            break;
        }
        w[i] += 1;
    }
    BigInt::from(total)
}

fn avoids_212_vincular(w: &[u32]) -> bool {
    for i in 0..w.len().saturating_sub(2) {
        if w[i] > w[i + 1] && w[i + 2..].contains(&w[i]) {
            return false;
        }
    }
    true
}

/// Letters as a compact string (`0102`), or comma-separated if any letter
/// exceeds 9.
pub fn format_word(w: &[u32]) -> String {
    if w.iter().all(|&x| x < 10) {
        w.iter().map(|d| char::from_digit(*d, 10).expect("digit")).collect()
    } else {
        w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Counts `1, a_1, a_2, …, a_order` as a scalar series.
pub fn counts_to_series(counts: &[BigInt]) -> TSeries {
    let order = counts.len().saturating_sub(1);
    TSeries::from_coeffs(order, counts.iter().map(|c| MultiPoly::constant(c.clone())))
}
