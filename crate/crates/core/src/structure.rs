//! Block decomposition of 1-32-4 avoiders.
//!
//! An avoider is written as `m_1 L_11 .. L_1k_1  m_2 L_21 ..  ..  m_h L_h1 .. L_hk_h`
//! where `m_1 > .. > m_h = 1` are the left-to-right minima and each `L_ij` is a
//! maximal increasing run of entries larger than `m_i`. Within a group the
//! run maxima strictly decrease.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One left-to-right minimum with the runs that follow it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub min: u32,
    pub runs: Vec<Vec<u32>>,
}

impl Group {
    pub fn new(min: u32, runs: Vec<Vec<u32>>) -> Self {
        Group { min, runs }
    }

    fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs.iter().flatten().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AvoiderType {
    /// 2 occurs before 1.
    Type21,
    /// 2 occurs after 1.
    Type12,
}

impl Decomposition {
    /// Splits any non-empty permutation into left-to-right-minimum groups of
    /// maximal increasing runs, then checks the structural invariants. No
    /// avoidance check is made.
    pub fn of_word(t: &Permutation) -> Result<Self> {
        let d = Decomposition {
            groups: split_groups(t.as_slice()),
        };
        if d.groups.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        d.validate()?;
        Ok(d)
    }

    /// Number of groups (`h`).
    pub fn height(&self) -> usize {
        self.groups.len()
    }

    /// Run counts `k_1, .., k_h`.
    pub fn run_counts(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.runs.len()).collect()
    }

    pub fn last_group(&self) -> &Group {
        self.groups
            .last()
            .expect("decomposition has at least one group")
    }

    pub fn flatten(&self) -> Vec<u32> {
        let mut word = Vec::new();
        for g in &self.groups {
            word.push(g.min);
            word.extend(g.entries());
        }
        word
    }

    /// Checks every structural invariant except avoidance.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedDecomposition(msg));
        if self.groups.is_empty() {
            return bad("no groups".into());
        }
        for pair in self.groups.windows(2) {
            if pair[0].min <= pair[1].min {
                return bad(format!(
                    "minima {} and {} not decreasing",
                    pair[0].min, pair[1].min
                ));
            }
        }
        if self.last_group().min != 1 {
            return bad(format!("last minimum is {}, not 1", self.last_group().min));
        }
        for g in &self.groups {
            for run in &g.runs {
                if run.is_empty() {
                    return bad(format!("empty run after {}", g.min));
                }
                if run.windows(2).any(|w| w[0] >= w[1]) {
                    return bad(format!("run {run:?} is not increasing"));
                }
                if run[0] <= g.min {
                    return bad(format!("run {run:?} does not exceed its minimum {}", g.min));
                }
            }
            for pair in g.runs.windows(2) {
                if run_max(&pair[0]) <= run_max(&pair[1]) {
                    return bad(format!(
                        "run maxima {} and {} not decreasing",
                        run_max(&pair[0]),
                        run_max(&pair[1])
                    ));
                }
            }
        }
        Permutation::new(self.flatten()).map_err(|e| {
            Error::MalformedDecomposition(format!("flattening is not a permutation: {e}"))
        })?;
        Ok(())
    }
}

fn run_max(run: &[u32]) -> u32 {
    *run.last().expect("runs are non-empty")
}

fn split_groups(word: &[u32]) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for &v in word {
        match groups.last_mut() {
            Some(g) if v > g.min => match g.runs.last_mut() {
                Some(run) if *run.last().unwrap() < v => run.push(v),
                _ => g.runs.push(vec![v]),
            },
            _ => groups.push(Group::new(v, Vec::new())),
        }
    }
    groups
}

/// Linear-time test for 1-32-4: an occurrence exists iff some descent
/// `b c` has a smaller-than-`c` entry before it and a larger-than-`b` entry
/// after it.
pub fn avoids_1_32_4(word: &[u32]) -> bool {
    let n = word.len();
    if n < 4 {
        return true;
    }
    let mut suffix_max = vec![0u32; n + 1];
    for i in (0..n).rev() {
        suffix_max[i] = suffix_max[i + 1].max(word[i]);
    }
    let mut prefix_min = u32::MAX;
    for i in 0..n - 1 {
        let (b, c) = (word[i], word[i + 1]);
        if b > c && prefix_min < c && suffix_max[i + 2] > b {
            return false;
        }
        prefix_min = prefix_min.min(b);
    }
    true
}

fn require_avoider(t: &Permutation) -> Result<()> {
    if avoids_1_32_4(t.as_slice()) {
        Ok(())
    } else {
        Err(Error::NotAnAvoider(t.to_string()))
    }
}

/// The unique decomposition of a 1-32-4 avoider.
pub fn decompose(t: &Permutation) -> Result<Decomposition> {
    if t.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    require_avoider(t)?;
    Decomposition::of_word(t)
}

/// Flattens a structurally valid decomposition.
pub fn recompose(d: &Decomposition) -> Result<Permutation> {
    d.validate()?;
    Ok(Permutation::from_vec_unchecked(d.flatten()))
}

/// Avoidance read off the blocks: for every group with at least two runs,
/// its second-to-last run maximum must exceed every entry of later groups.
/// Descents only occur between consecutive runs of one group, and all
/// earlier run maxima of that group are larger still.
pub fn check_avoidance_by_blocks(d: &Decomposition) -> Result<bool> {
    d.validate()?;
    let mut later_max = 0u32;
    for g in d.groups.iter().rev() {
        let k = g.runs.len();
        if k >= 2 && run_max(&g.runs[k - 2]) < later_max {
            return Ok(false);
        }
        if let Some(first) = g.runs.first() {
            later_max = later_max.max(run_max(first));
        }
    }
    Ok(true)
}

pub fn classify_type(t: &Permutation) -> Result<AvoiderType> {
    if t.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: t.len(),
        });
    }
    require_avoider(t)?;
    let one = t.position_of(1).expect("non-empty permutation contains 1");
    let two = t.position_of(2).expect("length >= 2 contains 2");
    Ok(if two < one {
        AvoiderType::Type21
    } else {
        AvoiderType::Type12
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{avoids, parse_permutation, DashedPattern};

    fn perm(text: &str) -> Permutation {
        parse_permutation(text).unwrap()
    }

    fn group(min: u32, runs: &[&[u32]]) -> Group {
        Group::new(min, runs.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn decompose_worked_example() {
        let d = decompose(&perm("8,9,14,12,5,2,4,10,11,1,3,13,6,7")).unwrap();
        assert_eq!(
            d.groups,
            vec![
                group(8, &[&[9, 14], &[12]]),
                group(5, &[]),
                group(2, &[&[4, 10, 11]]),
                group(1, &[&[3, 13], &[6, 7]]),
            ]
        );
        assert_eq!(d.height(), 4);
        assert_eq!(d.run_counts(), vec![2, 0, 1, 2]);
    }

    #[test]
    fn decompose_second_example() {
        let d = decompose(&perm("5,9,14,10,12,1,2,7,13,6,11,3,8,4")).unwrap();
        assert_eq!(
            d.groups,
            vec![
                group(5, &[&[9, 14], &[10, 12]]),
                group(1, &[&[2, 7, 13], &[6, 11], &[3, 8], &[4]]),
            ]
        );
    }

    #[test]
    fn decompose_singleton_and_errors() {
        assert_eq!(decompose(&perm("1")).unwrap().groups, vec![group(1, &[])]);
        assert_eq!(
            decompose(&Permutation::empty()),
            Err(Error::EmptyPermutation)
        );
        assert!(matches!(
            decompose(&perm("1324")),
            Err(Error::NotAnAvoider(_))
        ));
    }

    #[test]
    fn recompose_inverts() {
        let t = perm("8,9,14,12,5,2,4,10,11,1,3,13,6,7");
        assert_eq!(recompose(&decompose(&t).unwrap()).unwrap(), t);
        let single = Decomposition {
            groups: vec![group(1, &[])],
        };
        assert_eq!(recompose(&single).unwrap(), perm("1"));
    }

    #[test]
    fn recompose_rejects_malformed() {
        let cases = [
            vec![group(2, &[])],
            vec![group(1, &[]), group(2, &[])],
            vec![group(1, &[&[3, 2]])],
            vec![group(1, &[&[2], &[3]])],
            vec![group(2, &[&[1]]), group(1, &[])],
            vec![group(1, &[&[]])],
            vec![group(1, &[&[3]])],
            vec![],
        ];
        for groups in cases {
            let d = Decomposition { groups };
            assert!(
                matches!(recompose(&d), Err(Error::MalformedDecomposition(_))),
                "{d:?}"
            );
        }
    }

    #[test]
    fn block_check_examples() {
        let d = decompose(&perm("8,9,14,12,5,2,4,10,11,1,3,13,6,7")).unwrap();
        assert!(check_avoidance_by_blocks(&d).unwrap());
        let d = Decomposition {
            groups: vec![group(1, &[&[5, 6], &[3, 4], &[2]])],
        };
        assert!(check_avoidance_by_blocks(&d).unwrap());
        assert!(check_avoidance_by_blocks(&Decomposition {
            groups: vec![group(2, &[])]
        })
        .is_err());
    }

    #[test]
    fn block_check_looks_past_the_next_group() {
        // 3-64-7: the descent in the first group is dominated by a run two
        // groups later, while the next group's first run is small.
        let t = perm("3,6,4,2,5,1,7");
        assert!(!avoids(&DashedPattern::one_32_four(), &t));
        let d = Decomposition::of_word(&t).unwrap();
        assert!(!check_avoidance_by_blocks(&d).unwrap());
    }

    #[test]
    fn types() {
        assert_eq!(
            classify_type(&perm("8,9,14,12,5,2,4,10,11,1,3,13,6,7")).unwrap(),
            AvoiderType::Type21
        );
        assert_eq!(
            classify_type(&perm("8,9,14,12,5,3,4,10,11,1,6,13,2,7")).unwrap(),
            AvoiderType::Type12
        );
        assert_eq!(classify_type(&perm("12")).unwrap(), AvoiderType::Type12);
        assert_eq!(classify_type(&perm("21")).unwrap(), AvoiderType::Type21);
        assert_eq!(
            classify_type(&perm("1")),
            Err(Error::TooShort { min: 2, len: 1 })
        );
    }

    #[test]
    fn fast_check_small_cases() {
        assert!(avoids_1_32_4(&[]));
        assert!(avoids_1_32_4(&[1, 3, 2]));
        assert!(!avoids_1_32_4(&[1, 3, 2, 4]));
        assert!(avoids_1_32_4(&[2, 3, 1, 4]));
        assert!(!avoids_1_32_4(&[2, 1, 4, 3, 5]));
    }
}
