//! Succession rules and the generating tree of 1-32-4 avoiders.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::eco::{expand, ChildSpec};
use crate::error::{Error, Result};
use crate::perm::{label, Permutation};

type Productions = dyn Fn(usize) -> Vec<usize> + Send + Sync;

/// Axiom label plus a production map from a label to the ordered labels of
/// its children.
#[derive(Clone)]
pub struct SuccessionRule {
    name: String,
    axiom: usize,
    productions: Arc<Productions>,
}

impl SuccessionRule {
    pub fn new<F>(name: impl Into<String>, axiom: usize, productions: F) -> Self
    where
        F: Fn(usize) -> Vec<usize> + Send + Sync + 'static,
    {
        SuccessionRule {
            name: name.into(),
            axiom,
            productions: Arc::new(productions),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn axiom(&self) -> usize {
        self.axiom
    }

    pub fn productions(&self, label: usize) -> Vec<usize> {
        (self.productions)(label)
    }

    /// Productions of `label` as a histogram.
    pub fn production_counts(&self, label: usize) -> BTreeMap<usize, u64> {
        let mut counts = BTreeMap::new();
        for l in self.productions(label) {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Debug for SuccessionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuccessionRule")
            .field("name", &self.name)
            .field("axiom", &self.axiom)
            .finish()
    }
}

/// `(0)`, `(k) -> (0)(1)^2(2)^3...(k)^(k+1)(k+1)`
pub fn omega_rule() -> SuccessionRule {
    SuccessionRule::new("omega", 0, |k| {
        let mut out: Vec<usize> = (0..=k)
            .flat_map(|l| std::iter::repeat_n(l, l + 1))
            .collect();
        out.push(k + 1);
        out
    })
}

/// `(1)`, `(h) -> (1)(2)^2(3)^3...(h)^h(h+1)`
pub fn lambda_rule() -> SuccessionRule {
    SuccessionRule::new("lambda", 1, |h| {
        let mut out: Vec<usize> = (1..=h).flat_map(|l| std::iter::repeat_n(l, l)).collect();
        out.push(h + 1);
        out
    })
}

/// Label histogram of the abstract rule tree at `depth` (the axiom sits at
/// depth 0).
pub fn level_label_counts(rule: &SuccessionRule, depth: usize) -> BTreeMap<usize, BigUint> {
    let mut level = BTreeMap::from([(rule.axiom(), BigUint::from(1u32))]);
    let mut cache: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for _ in 0..depth {
        let mut next: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (&l, count) in &level {
            let prods = cache.entry(l).or_insert_with(|| rule.production_counts(l));
            for (&child, &mult) in prods.iter() {
                *next.entry(child).or_insert_with(BigUint::zero) += count * mult;
            }
        }
        level = next;
    }
    level
}

fn root() -> Permutation {
    Permutation::identity(1)
}

fn children(t: &Permutation) -> Vec<(ChildSpec, Permutation)> {
    expand(t).expect("tree nodes avoid 1-32-4")
}

fn collect_level(t: &Permutation, n: usize, out: &mut Vec<Permutation>) {
    if t.len() == n {
        out.push(t.clone());
        return;
    }
    for (_, c) in children(t) {
        collect_level(&c, n, out);
    }
}

/// Depth of the sequential prefix before parallel subtrees are spawned.
const PARALLEL_SPLIT_LEN: usize = 5;

/// All avoiders of length `n` (`n >= 1`), in depth-first canonical order.
pub fn generate_level(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    collect_level(&root(), n, &mut out);
    out
}

/// Same output as [`generate_level`], with subtrees below a fixed split
/// depth expanded on the rayon pool.
pub fn generate_level_parallel(n: usize) -> Vec<Permutation> {
    if n <= PARALLEL_SPLIT_LEN {
        return generate_level(n);
    }
    generate_level(PARALLEL_SPLIT_LEN)
        .par_iter()
        .flat_map_iter(|t| {
            let mut out = Vec::new();
            collect_level(t, n, &mut out);
            out
        })
        .collect()
}

/// Breadth-first levels `1..=n_max`; `levels(n)[m-1]` lists length `m`.
pub fn levels(n_max: usize) -> Vec<Vec<Permutation>> {
    let mut all: Vec<Vec<Permutation>> = Vec::new();
    if n_max == 0 {
        return all;
    }
    all.push(vec![root()]);
    for _ in 1..n_max {
        let next = all
            .last()
            .unwrap()
            .iter()
            .flat_map(|t| children(t).into_iter().map(|(_, c)| c))
            .collect();
        all.push(next);
    }
    all
}

/// Node counts per length `1..=n_max`, without storing the levels.
pub fn count_levels(n_max: usize) -> Vec<u64> {
    fn walk(t: &Permutation, n_max: usize, counts: &mut [u64]) {
        counts[t.len() - 1] += 1;
        if t.len() < n_max {
            for (_, c) in children(t) {
                walk(&c, n_max, counts);
            }
        }
    }
    let mut counts = vec![0; n_max];
    if n_max > 0 {
        walk(&root(), n_max, &mut counts);
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabellingViolation {
    pub node: Permutation,
    pub label: usize,
    pub expected: Vec<usize>,
    pub actual: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabellingReport {
    pub ok: bool,
    pub nodes_checked: u64,
    pub first_violation: Option<LabellingViolation>,
}

/// Checks that the root carries the axiom and that every node of length up
/// to `n_max` has child labels equal to the rule's productions, in order.
pub fn verify_labelling(n_max: usize) -> LabellingReport {
    verify_labelling_against(&omega_rule(), n_max)
}

pub fn verify_labelling_against(rule: &SuccessionRule, n_max: usize) -> LabellingReport {
    let mut report = LabellingReport {
        ok: true,
        nodes_checked: 0,
        first_violation: None,
    };
    let start = root();
    let root_label = label(&start).expect("root is non-empty");
    if root_label != rule.axiom() {
        report.ok = false;
        report.first_violation = Some(LabellingViolation {
            node: start,
            label: root_label,
            expected: vec![rule.axiom()],
            actual: vec![root_label],
        });
        return report;
    }
    let mut stack = vec![(start, root_label)];
    while let Some((t, l)) = stack.pop() {
        if t.len() > n_max {
            continue;
        }
        report.nodes_checked += 1;
        let kids = children(&t);
        let actual: Vec<usize> = kids
            .iter()
            .map(|(_, c)| label(c).expect("children are non-empty"))
            .collect();
        let expected = rule.productions(l);
        if actual != expected {
            report.ok = false;
            report.first_violation = Some(LabellingViolation {
                node: t,
                label: l,
                expected,
                actual,
            });
            return report;
        }
        for ((_, c), cl) in kids.into_iter().zip(actual).rev() {
            stack.push((c, cl));
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub perm: Permutation,
    pub label: usize,
    #[serde(skip)]
    pub depth: usize,
    #[serde(skip)]
    pub spec: Option<ChildSpec>,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(TreeNode::node_count)
            .sum::<usize>()
    }
}

/// The generating tree down to length `n_max`.
pub fn build_tree(n_max: usize) -> Option<TreeNode> {
    fn grow(perm: Permutation, spec: Option<ChildSpec>, n_max: usize) -> TreeNode {
        let label = label(&perm).expect("tree nodes are non-empty");
        let depth = perm.len() - 1;
        let children = if perm.len() < n_max {
            children(&perm)
                .into_iter()
                .map(|(s, c)| grow(c, Some(s), n_max))
                .collect()
        } else {
            Vec::new()
        };
        TreeNode {
            perm,
            label,
            depth,
            spec,
            children,
        }
    }
    (n_max >= 1).then(|| grow(root(), None, n_max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl ExportFormat {
    pub fn default_cap(self) -> usize {
        match self {
            ExportFormat::Dot => 8,
            ExportFormat::Json => 9,
        }
    }
}

fn dot_name(node: &TreeNode) -> String {
    format!("\"{}({})\"", node.perm.compact(), node.label)
}

fn write_dot(node: &TreeNode, out: &mut String) {
    out.push_str(&format!("  {};\n", dot_name(node)));
    for c in &node.children {
        out.push_str(&format!("  {} -> {};\n", dot_name(node), dot_name(c)));
    }
    for c in &node.children {
        write_dot(c, out);
    }
}

/// Serializes the tree down to length `n_max`. `cap` defaults to the
/// format's [`ExportFormat::default_cap`].
pub fn export_tree(n_max: usize, format: ExportFormat, cap: Option<usize>) -> Result<String> {
    let cap = cap.unwrap_or(format.default_cap());
    if n_max > cap {
        return Err(Error::CapExceeded { n: n_max, cap });
    }
    let tree = build_tree(n_max).ok_or(Error::TooShort { min: 1, len: 0 })?;
    Ok(match format {
        ExportFormat::Dot => {
            let mut out = String::from("digraph generating_tree {\n  rankdir=LR;\n");
            write_dot(&tree, &mut out);
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let mut s = serde_json::to_string(&tree).expect("tree serializes");
            s.push('\n');
            s
        }
    })
}
