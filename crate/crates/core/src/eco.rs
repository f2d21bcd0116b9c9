//! Reduction and expansion operators on 1-32-4 avoiders.
//!
//! `reduce` deletes the entry 1 and repairs the block structure; `expand`
//! lists exactly the permutations that `reduce` maps back to its argument.
//! Children are built in a value space shifted up by one, where the new
//! minimum is 1 and the parent's 1 has become 2, so no final
//! normalization pass is needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{label, Permutation};
use crate::structure::{classify_type, decompose, AvoiderType};

/// Which child of a parent with label `k` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChildSpec {
    /// All runs after 1 move behind the new minimum.
    MoveAll,
    /// `i` runs move behind the new minimum, the `j`-th run of the
    /// `(i+1)`-suffix stays in front of it. `0 <= i < k`, `1 <= j <= i+1`.
    Partial { i: usize, j: usize },
    /// The old 1 is placed in front of run `p` (or at the very end when
    /// `p = k+1`) behind the new minimum. `1 <= p <= k+1`.
    Insert { p: usize },
}

impl ChildSpec {
    pub fn is_valid_for(&self, k: usize) -> bool {
        match *self {
            ChildSpec::MoveAll => true,
            ChildSpec::Partial { i, j } => i < k && (1..=i + 1).contains(&j),
            ChildSpec::Insert { p } => (1..=k + 1).contains(&p),
        }
    }

    /// Every valid spec for label `k`, in canonical order.
    pub fn all_for(k: usize) -> Vec<ChildSpec> {
        let mut specs = Vec::with_capacity(child_count(k));
        for i in 0..k {
            for j in 1..=i + 1 {
                specs.push(ChildSpec::Partial { i, j });
            }
        }
        specs.push(ChildSpec::MoveAll);
        specs.extend((1..=k + 1).map(|p| ChildSpec::Insert { p }));
        specs
    }
}

impl fmt::Display for ChildSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChildSpec::MoveAll => f.write_str("move-all"),
            ChildSpec::Partial { i, j } => write!(f, "partial({i},{j})"),
            ChildSpec::Insert { p } => write!(f, "insert({p})"),
        }
    }
}

/// `(k+1)(k+2)/2 + 1`
pub fn child_count(k: usize) -> usize {
    (k + 1) * (k + 2) / 2 + 1
}

pub fn child_label(spec: ChildSpec, k: usize) -> Result<usize> {
    if !spec.is_valid_for(k) {
        return Err(Error::InvalidChildSpec {
            spec: spec.to_string(),
            label: k,
        });
    }
    Ok(match spec {
        ChildSpec::MoveAll => k,
        ChildSpec::Partial { i, .. } => i,
        ChildSpec::Insert { p } if p == k + 1 => k + 1,
        ChildSpec::Insert { .. } => k,
    })
}

/// Maps an avoider of length `n >= 2` to its parent of length `n - 1`.
pub fn reduce(t: &Permutation) -> Result<Permutation> {
    let kind = classify_type(t)?;
    let d = decompose(t)?;
    let mut word: Vec<u32> = Vec::with_capacity(t.len() - 1);
    match kind {
        AvoiderType::Type21 => {
            let h = d.height();
            for g in &d.groups[..h - 2] {
                word.push(g.min);
                word.extend(g.runs.iter().flatten());
            }
            let mut runs: Vec<&Vec<u32>> = d.groups[h - 2]
                .runs
                .iter()
                .chain(&d.groups[h - 1].runs)
                .collect();
            runs.sort_by(|a, b| b.last().cmp(&a.last()));
            word.push(2);
            word.extend(runs.into_iter().flatten());
        }
        AvoiderType::Type12 => {
            word.extend(
                t.as_slice()
                    .iter()
                    .filter(|&&v| v != 2)
                    .map(|&v| if v == 1 { 2 } else { v }),
            );
        }
    }
    for v in &mut word {
        *v -= 1;
    }
    Ok(Permutation::from_vec_unchecked(word))
}

/// Builds one child of `t`.
pub fn child(t: &Permutation, spec: ChildSpec) -> Result<Permutation> {
    let d = decompose(t)?;
    let k = d.last_group().runs.len();
    if !spec.is_valid_for(k) {
        return Err(Error::InvalidChildSpec {
            spec: spec.to_string(),
            label: k,
        });
    }
    let shifted = |run: &Vec<u32>| run.iter().map(|v| v + 1).collect::<Vec<_>>();
    let mut prefix: Vec<u32> = Vec::with_capacity(t.len() + 1);
    for g in &d.groups[..d.height() - 1] {
        prefix.push(g.min + 1);
        prefix.extend(g.runs.iter().flat_map(shifted));
    }
    let runs: Vec<Vec<u32>> = d.last_group().runs.iter().map(shifted).collect();

    let mut word = prefix;
    match spec {
        ChildSpec::MoveAll => {
            word.extend([2, 1]);
            word.extend(runs.iter().flatten());
        }
        ChildSpec::Partial { i, j } => {
            let start = k - i - 1;
            let kept = start + j - 1;
            word.push(2);
            word.extend(runs[..start].iter().flatten());
            word.extend(&runs[kept]);
            word.push(1);
            for (r, run) in runs.iter().enumerate().skip(start) {
                if r != kept {
                    word.extend(run);
                }
            }
        }
        ChildSpec::Insert { p } => {
            word.push(1);
            word.extend(runs[..p - 1].iter().flatten());
            word.push(2);
            word.extend(runs[p - 1..].iter().flatten());
        }
    }
    Ok(Permutation::from_vec_unchecked(word))
}

/// All children of `t` in canonical order: partial moves by `(i, j)`, then
/// the full move, then insertions by `p`.
pub fn expand(t: &Permutation) -> Result<Vec<(ChildSpec, Permutation)>> {
    let k = label(t)?;
    ChildSpec::all_for(k)
        .into_iter()
        .map(|spec| child(t, spec).map(|c| (spec, c)))
        .collect()
}
