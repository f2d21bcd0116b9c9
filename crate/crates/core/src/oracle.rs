//! Brute-force ground truth: enumerate all of `S_n` and filter with the
//! generic occurrence search.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::eco::{expand, reduce};
use crate::error::{Error, Result};
use crate::gentree::generate_level;
use crate::perm::{avoids, label, DashedPattern, Permutation};

pub const ENUMERATION_CAP: usize = 10;
pub const CENSUS_CAP: usize = 9;
pub const DIFF_CAP: usize = 9;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Lexicographic successor in place; false when `word` is the last one.
fn next_permutation(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Iterates the permutations sharing a fixed prefix of length `fixed`, in
/// lexicographic order.
struct Lexicographic {
    word: Vec<u32>,
    fixed: usize,
    done: bool,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let current = Permutation::from_vec_unchecked(self.word.clone());
        self.done = !next_permutation(&mut self.word[self.fixed..]);
        Some(current)
    }
}

/// All `n!` permutations of length `n` in lexicographic order, streamed.
pub fn all_permutations(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    check_cap(n, ENUMERATION_CAP)?;
    Ok(Lexicographic {
        word: (1..=n as u32).collect(),
        fixed: 0,
        done: false,
    })
}

fn starting_with(n: usize, first: u32) -> Lexicographic {
    let mut word = vec![first];
    word.extend((1..=n as u32).filter(|&v| v != first));
    Lexicographic {
        word,
        fixed: 1,
        done: false,
    }
}

/// Every permutation of length `n` avoiding `p`, lexicographically sorted.
/// Blocks of equal first letter are filtered in parallel.
pub fn brute_avoiders(p: &DashedPattern, n: usize) -> Result<Vec<Permutation>> {
    brute_avoiders_with_cap(p, n, ENUMERATION_CAP)
}

/// [`brute_avoiders`] with a caller-chosen length cap.
pub fn brute_avoiders_with_cap(
    p: &DashedPattern,
    n: usize,
    cap: usize,
) -> Result<Vec<Permutation>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(vec![Permutation::empty()]);
    }
    Ok((1..=n as u32)
        .into_par_iter()
        .flat_map_iter(|first| {
            starting_with(n, first)
                .filter(|t| avoids(p, t))
                .collect::<Vec<_>>()
        })
        .collect())
}

/// Number of avoiders of `p` of length `n`.
pub fn brute_count(p: &DashedPattern, n: usize) -> Result<u64> {
    brute_count_with_cap(p, n, ENUMERATION_CAP)
}

pub fn brute_count_with_cap(p: &DashedPattern, n: usize, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(1);
    }
    Ok((1..=n as u32)
        .into_par_iter()
        .map(|first| starting_with(n, first).filter(|t| avoids(p, t)).count() as u64)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Right-to-left maxima to the right of 1.
    Label,
}

impl Statistic {
    fn eval(self, t: &Permutation) -> Result<usize> {
        match self {
            Statistic::Label => label(t),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "label" => Ok(Statistic::Label),
            other => Err(Error::UnknownStatistic(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub k: usize,
    pub count: BigUint,
}

/// Histogram of `statistic` over the avoiders of length `n`, one row per
/// `k` in `0..n` (zero counts included).
pub fn brute_census(p: &DashedPattern, n: usize, statistic: Statistic) -> Result<Vec<CensusRow>> {
    brute_census_with_cap(p, n, statistic, CENSUS_CAP)
}

pub fn brute_census_with_cap(
    p: &DashedPattern,
    n: usize,
    statistic: Statistic,
    cap: usize,
) -> Result<Vec<CensusRow>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut hist = vec![0u64; n];
    for t in brute_avoiders_with_cap(p, n, cap)? {
        hist[statistic.eval(&t)?] += 1;
    }
    Ok(hist
        .into_iter()
        .enumerate()
        .map(|(k, c)| CensusRow {
            n,
            k,
            count: BigUint::from(c),
        })
        .collect())
}

/// Same shape as [`crate::counting::Triangle::to_csv`].
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("n,k,value\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.n, r.k, r.count));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelDiff {
    pub n: usize,
    pub generated: usize,
    pub brute: usize,
    pub duplicates: Vec<Permutation>,
    /// Avoiders the tree never produced.
    pub missing: Vec<Permutation>,
    /// Tree nodes that are not avoiders.
    pub extra: Vec<Permutation>,
}

impl LevelDiff {
    pub fn is_clean(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleDiffReport {
    pub ok: bool,
    pub levels: Vec<LevelDiff>,
}

/// Compares each tree level with the brute-force avoiders of 1-32-4.
pub fn oracle_diff(n_max: usize) -> Result<OracleDiffReport> {
    check_cap(n_max, DIFF_CAP)?;
    let pattern = DashedPattern::one_32_four();
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let generated = generate_level(n);
        let brute = brute_avoiders(&pattern, n)?;
        let mut seen: BTreeMap<&Permutation, usize> = BTreeMap::new();
        for t in &generated {
            *seen.entry(t).or_insert(0) += 1;
        }
        let duplicates = seen
            .iter()
            .filter(|(_, &c)| c > 1)
            .map(|(t, _)| (*t).clone())
            .collect();
        let gen_set: BTreeSet<&Permutation> = seen.keys().copied().collect();
        let brute_set: BTreeSet<&Permutation> = brute.iter().collect();
        levels.push(LevelDiff {
            n,
            generated: generated.len(),
            brute: brute.len(),
            duplicates,
            missing: brute_set
                .difference(&gen_set)
                .map(|t| (*t).clone())
                .collect(),
            extra: gen_set
                .difference(&brute_set)
                .map(|t| (*t).clone())
                .collect(),
        });
    }
    Ok(OracleDiffReport {
        ok: levels.iter().all(LevelDiff::is_clean),
        levels,
    })
}

pub const ECO_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EcoViolation {
    /// A child whose reduction is not the parent it was expanded from.
    WrongParent {
        parent: Permutation,
        spec: String,
        child: Permutation,
        reduced: Option<Permutation>,
    },
    /// An avoider produced by two parents (or twice by one).
    Duplicate { child: Permutation },
    /// An avoider no parent produces.
    Missing { perm: Permutation },
    /// A produced child that is not an avoider.
    Extra { perm: Permutation },
    /// An avoider the expansion rejects.
    Rejected { parent: Permutation, error: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EcoReport {
    pub n_max: usize,
    pub ok: bool,
    pub parents_checked: u64,
    pub children_checked: u64,
    pub first_violation: Option<EcoViolation>,
}

/// Expands every brute-force avoider of length `1..=n_max`, checks that each
/// child reduces back to its parent, and that the children of length `m+1`
/// are exactly the brute-force avoiders of that length, each once.
pub fn verify_eco(n_max: usize) -> Result<EcoReport> {
    verify_eco_with_cap(n_max, ECO_CAP)
}

pub fn verify_eco_with_cap(n_max: usize, cap: usize) -> Result<EcoReport> {
    check_cap(n_max, cap)?;
    let pattern = DashedPattern::one_32_four();
    let mut report = EcoReport {
        n_max,
        ok: true,
        parents_checked: 0,
        children_checked: 0,
        first_violation: None,
    };
    if n_max == 0 {
        return Ok(report);
    }
    let mut parents = brute_avoiders_with_cap(&pattern, 1, usize::MAX)?;
    for m in 1..=n_max {
        let next = brute_avoiders_with_cap(&pattern, m + 1, usize::MAX)?;
        if let Some(v) = check_level(&parents, &next, &mut report) {
            report.ok = false;
            report.first_violation = Some(v);
            return Ok(report);
        }
        parents = next;
    }
    Ok(report)
}

fn check_level(
    parents: &[Permutation],
    next: &[Permutation],
    report: &mut EcoReport,
) -> Option<EcoViolation> {
    let mut produced: BTreeSet<Permutation> = BTreeSet::new();
    for t in parents {
        report.parents_checked += 1;
        let kids = match expand(t) {
            Ok(kids) => kids,
            Err(e) => {
                return Some(EcoViolation::Rejected {
                    parent: t.clone(),
                    error: e.to_string(),
                })
            }
        };
        for (spec, c) in kids {
            report.children_checked += 1;
            let reduced = reduce(&c).ok();
            if reduced.as_ref() != Some(t) {
                return Some(EcoViolation::WrongParent {
                    parent: t.clone(),
                    spec: spec.to_string(),
                    child: c,
                    reduced,
                });
            }
            if produced.contains(&c) {
                return Some(EcoViolation::Duplicate { child: c });
            }
            produced.insert(c);
        }
    }
    let expected: BTreeSet<&Permutation> = next.iter().collect();
    if let Some(p) = expected.iter().find(|p| !produced.contains(**p)) {
        return Some(EcoViolation::Missing { perm: (*p).clone() });
    }
    if let Some(p) = produced.iter().find(|p| !expected.contains(p)) {
        return Some(EcoViolation::Extra { perm: p.clone() });
    }
    None
}
