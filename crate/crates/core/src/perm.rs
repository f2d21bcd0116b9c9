//! Permutations, dashed (vincular) patterns and occurrence search.
//!
//! Positions reported by this module are 1-based.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over `1..=n` in which every value occurs exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRange { value: v, len: n });
            }
            if seen[v as usize] {
                return Err(Error::DuplicateValue { value: v });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation(word))
    }

    /// Caller guarantees `word` is a permutation of `1..=len`.
    pub(crate) fn from_vec_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation(word)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// 1-based position of `value`, if present.
    pub fn position_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// Figure-style rendering: digits juxtaposed when every value is below
    /// ten, comma separated otherwise. The empty permutation renders as `ε`.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "ε".to_string();
        }
        if self.0.len() <= 9 {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<u32>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.0
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

fn parse_value(token: &str) -> Result<u32> {
    match token.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::InvalidToken(token.to_string())),
    }
}

fn parse_digits(token: &str) -> Result<Vec<u32>> {
    token
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d > 0 => Ok(d),
            _ => Err(Error::InvalidToken(c.to_string())),
        })
        .collect()
}

/// Parses a comma- or whitespace-separated word. A single separator-free
/// token of digits is read one digit per letter, so `84617523` and
/// `8,4,6,1,7,5,2,3` denote the same permutation.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Permutation::empty());
    }
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let word = if tokens.len() == 1 && !text.contains(',') {
        parse_digits(tokens[0])?
    } else {
        tokens
            .into_iter()
            .map(parse_value)
            .collect::<Result<Vec<_>>>()?
    };
    Permutation::new(word)
}

/// A permutation with dashes between some adjacent letters. Letters with no
/// dash between them must be matched by adjacent positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DashedPattern {
    underlying: Permutation,
    adjacency: Vec<bool>,
}

impl DashedPattern {
    pub fn new(underlying: Permutation, adjacency: Vec<bool>) -> Result<Self> {
        if underlying.is_empty() || adjacency.len() + 1 != underlying.len() {
            return Err(Error::MalformedPattern(format!(
                "{} letters with {} adjacency flags",
                underlying.len(),
                adjacency.len()
            )));
        }
        Ok(DashedPattern {
            underlying,
            adjacency,
        })
    }

    /// Every adjacent pair separated by a dash.
    pub fn classical(underlying: Permutation) -> Result<Self> {
        let m = underlying.len();
        DashedPattern::new(underlying, vec![false; m.saturating_sub(1)])
    }

    /// No dashes at all.
    pub fn consecutive(underlying: Permutation) -> Result<Self> {
        let m = underlying.len();
        DashedPattern::new(underlying, vec![true; m.saturating_sub(1)])
    }

    /// The pattern 1-32-4.
    pub fn one_32_four() -> Self {
        DashedPattern {
            underlying: Permutation(vec![1, 3, 2, 4]),
            adjacency: vec![false, true, false],
        }
    }

    pub fn underlying(&self) -> &Permutation {
        &self.underlying
    }

    pub fn adjacency(&self) -> &[bool] {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.underlying.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The 0/1 type vector: 1 where a dash separates the letters.
    pub fn type_vector(&self) -> Vec<u8> {
        self.adjacency.iter().map(|&a| u8::from(!a)).collect()
    }

    /// Same underlying permutation with every pair dashed.
    pub fn all_dashed(&self) -> DashedPattern {
        DashedPattern {
            underlying: self.underlying.clone(),
            adjacency: vec![false; self.adjacency.len()],
        }
    }
}

impl fmt::Display for DashedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.underlying.as_slice();
        let wide = word.len() > 9;
        for (i, v) in word.iter().enumerate() {
            if i > 0 {
                if !self.adjacency[i - 1] {
                    f.write_str("-")?;
                } else if wide {
                    f.write_str(",")?;
                }
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for DashedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dashed_pattern(s)
    }
}

/// Parses `5-13-42` style text. Inside a dash-free segment, letters are
/// single digits unless the segment is comma separated (`1-10,3-2`).
pub fn parse_dashed_pattern(text: &str) -> Result<DashedPattern> {
    let text = text.trim();
    let mut word = Vec::new();
    let mut adjacency = Vec::new();
    for (s, segment) in text.split('-').enumerate() {
        let segment = segment.trim();
        if segment.is_empty() {
            return Err(Error::MalformedPattern(text.to_string()));
        }
        let letters = if segment.contains(',') {
            segment
                .split(',')
                .map(|t| parse_value(t.trim()))
                .collect::<Result<Vec<_>>>()?
        } else {
            parse_digits(segment)?
        };
        if s > 0 {
            adjacency.push(false);
        }
        adjacency.extend(std::iter::repeat_n(true, letters.len() - 1));
        word.extend(letters);
    }
    DashedPattern::new(Permutation::new(word)?, adjacency)
}

/// True iff `a_i <= a_j` exactly when `b_i <= b_j`, for all `i, j`.
pub fn order_isomorphic<T: Ord>(a: &[T], b: &[T]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    Ok((0..n).all(|i| (0..n).all(|j| (a[i] <= a[j]) == (b[i] <= b[j]))))
}

/// The unique permutation order-isomorphic to a word of distinct values.
pub fn standard_reduction<T: Ord + Copy + fmt::Display>(s: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by_key(|&i| s[i]);
    let mut word = vec![0u32; s.len()];
    for (rank, pair) in order.windows(2).enumerate() {
        if s[pair[0]] == s[pair[1]] {
            return Err(Error::DuplicateEntry(s[pair[0]].to_string()));
        }
        word[pair[0]] = rank as u32 + 1;
    }
    if let Some(&last) = order.last() {
        word[last] = s.len() as u32;
    }
    Ok(Permutation(word))
}

/// Depth-first search over index tuples; calls `visit` with each occurrence
/// (0-based) in lexicographic order until it breaks.
fn search_occurrences<F>(p: &DashedPattern, t: &[u32], mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn extend<F: FnMut(&[usize]) -> ControlFlow<()>>(
        pat: &[u32],
        adj: &[bool],
        t: &[u32],
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        let j = chosen.len();
        if j == pat.len() {
            return visit(chosen);
        }
        let remaining = pat.len() - j;
        let (lo, hi) = match chosen.last() {
            None => (0, t.len() + 1 - remaining),
            Some(&prev) if adj[j - 1] => (prev + 1, (prev + 2).min(t.len() + 1 - remaining)),
            Some(&prev) => (prev + 1, t.len() + 1 - remaining),
        };
        for pos in lo..hi {
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(c, &q)| (t[q] < t[pos]) == (pat[c] < pat[j]));
            if fits {
                chosen.push(pos);
                extend(pat, adj, t, chosen, visit)?;
                chosen.pop();
            }
        }
        ControlFlow::Continue(())
    }

    if t.len() < p.len() {
        return;
    }
    let mut chosen = Vec::with_capacity(p.len());
    let _ = extend(
        p.underlying.as_slice(),
        &p.adjacency,
        t,
        &mut chosen,
        &mut visit,
    );
}

/// All occurrences of `p` in `t` as increasing 1-based index tuples, in
/// lexicographic order.
pub fn occurrences(p: &DashedPattern, t: &Permutation) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    search_occurrences(p, t.as_slice(), |idx| {
        found.push(idx.iter().map(|i| i + 1).collect());
        ControlFlow::Continue(())
    });
    found
}

/// True iff `t` has no occurrence of `p`. Stops at the first occurrence.
pub fn avoids(p: &DashedPattern, t: &Permutation) -> bool {
    let mut hit = false;
    search_occurrences(p, t.as_slice(), |_| {
        hit = true;
        ControlFlow::Break(())
    });
    !hit
}

/// Positions `i` with `t_i` larger than every later entry.
pub fn rtl_maxima(t: &Permutation) -> Vec<usize> {
    let mut positions = Vec::new();
    let mut best = 0;
    for (i, &v) in t.as_slice().iter().enumerate().rev() {
        if v > best {
            best = v;
            positions.push(i + 1);
        }
    }
    positions.reverse();
    positions
}

/// Positions `i` with `t_i` smaller than every earlier entry.
pub fn ltr_minima(t: &Permutation) -> Result<Vec<usize>> {
    if t.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    let mut positions = Vec::new();
    let mut best = u32::MAX;
    for (i, &v) in t.as_slice().iter().enumerate() {
        if v < best {
            best = v;
            positions.push(i + 1);
        }
    }
    Ok(positions)
}

/// Number of right-to-left maxima strictly to the right of the value 1.
pub fn label(t: &Permutation) -> Result<usize> {
    let one = t.position_of(1).ok_or(Error::EmptyPermutation)?;
    Ok(rtl_maxima(t).into_iter().filter(|&p| p > one).count())
}

/// Values at the given 1-based positions.
pub fn values_at(t: &Permutation, positions: &[usize]) -> Vec<u32> {
    positions.iter().map(|&p| t.as_slice()[p - 1]).collect()
}
