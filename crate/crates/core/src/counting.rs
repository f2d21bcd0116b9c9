//! Count triangles, the 31-4-2 recursion, and series-level consistency
//! checks for the generating tree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gentree::{generate_level, omega_rule, SuccessionRule};
use crate::perm::label;
use crate::series::{BivariateSeries, UnivariateSeries};

/// Exact counts indexed by `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    n_max: usize,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl Triangle {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.entries.get(&(n, k))
    }

    /// Entries of row `n` in increasing `k`.
    pub fn row(&self, n: usize) -> Vec<BigUint> {
        self.entries
            .range((n, 0)..=(n, usize::MAX))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.row(n).into_iter().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// `n,k,value` rows in `(n, k)` order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,value\n");
        for ((n, k), v) in self.entries() {
            out.push_str(&format!("{n},{k},{v}\n"));
        }
        out
    }
}

/// `u(n,k) = u(n-1,k-1) + k * sum_{j=k}^{n-1} u(n-1,j)` for `1 <= k <= n`,
/// seeded with `u(0,0) = 1` and `u(n,0) = 0` for `n >= 1`. Row 0 holds the
/// seed so that row sums count avoiders from length 0.
pub fn u_triangle(n_max: usize) -> Triangle {
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), BigUint::one());
    let mut prev: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=n_max {
        // prev[j] = u(n-1, j) for 0 <= j <= n-1
        let mut tail = vec![BigUint::zero(); n + 1];
        for j in (0..n).rev() {
            tail[j] = &tail[j + 1] + &prev[j];
        }
        let mut row = vec![BigUint::zero(); n + 1];
        for k in 1..=n {
            let mut value = prev[k - 1].clone();
            if k < n {
                value += &tail[k] * BigUint::from(k);
            }
            entries.insert((n, k), value.clone());
            row[k] = value;
        }
        prev = row;
    }
    Triangle { n_max, entries }
}

/// `v(n,k) = v(n-1,k-1) + (k+1) * sum_{j=k}^{n-2} v(n-1,j)` for
/// `0 <= k <= n-1`, with `v(0,-1) = 1` and `v(n,-1) = 0` for `n >= 1`.
/// The seed lies outside the stored range, so rows start at `n = 1`.
pub fn v_triangle(n_max: usize) -> Triangle {
    let mut entries = BTreeMap::new();
    // prev[k+1] = v(n-1, k) for -1 <= k <= n-2
    let mut prev: Vec<BigUint> = vec![BigUint::one()];
    for n in 1..=n_max {
        let mut tail = vec![BigUint::zero(); n + 1];
        for idx in (1..n).rev() {
            tail[idx] = &tail[idx + 1] + &prev[idx];
        }
        let mut row = vec![BigUint::zero(); n + 1];
        for k in 0..n {
            let mut value = prev[k].clone();
            value += &tail[k + 1] * BigUint::from(k + 1);
            entries.insert((n, k), value.clone());
            row[k + 1] = value;
        }
        prev = row;
    }
    Triangle { n_max, entries }
}

/// `|S_n(1-32-4)|` as the row sum of the `u` triangle.
pub fn count_avoiders(n: usize) -> BigUint {
    u_triangle(n).row_sum(n)
}

/// Counts for lengths `0..=n_max`.
pub fn count_avoiders_upto(n_max: usize) -> Vec<BigUint> {
    let u = u_triangle(n_max);
    (0..=n_max).map(|n| u.row_sum(n)).collect()
}

/// Counts of 31-4-2 avoiders for lengths `0..=n_max`:
///
/// * `a_0 = c_1 = 1`
/// * `a_n = sum_{i=0}^{n-1} a_i c_{n-i}`
/// * `c_n = sum_{i=0}^{n-1} i a_{n-1,i}` for `n >= 2`
/// * `a_{n,k} = sum_{i=0}^{k-1} a_i sum_{j=k-i}^{n-1-i} a_{n-1-i,j}` for
///   `1 <= k <= n-1`, and `a_{n,n} = a_{n-1}`
///
/// `a_{m,j}` is zero outside `1 <= j <= m`.
pub fn callan_3142(n_max: usize) -> Vec<BigUint> {
    let mut a: Vec<BigUint> = vec![BigUint::one()];
    let mut c: Vec<BigUint> = vec![BigUint::zero(), BigUint::one()];
    // table[m][j] = a_{m,j}, with a running suffix sum for the inner range
    let mut table: Vec<Vec<BigUint>> = vec![vec![BigUint::zero()]];
    let mut suffix: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); 2]];
    let range_sum = |suffix: &[Vec<BigUint>], m: usize, lo: usize, hi: usize| -> BigUint {
        let lo = lo.max(1);
        let hi = hi.min(m);
        if lo > hi {
            BigUint::zero()
        } else {
            &suffix[m][lo] - &suffix[m][hi + 1]
        }
    };
    for n in 1..=n_max {
        if n >= 2 {
            let cn: BigUint = table[n - 1]
                .iter()
                .enumerate()
                .map(|(i, v)| v * BigUint::from(i))
                .sum();
            c.push(cn);
        }
        let an: BigUint = (0..n).map(|i| &a[i] * &c[n - i]).sum();
        a.push(an);
        let mut row = vec![BigUint::zero(); n + 1];
        for (k, slot) in row.iter_mut().enumerate().take(n).skip(1) {
            *slot = (0..k)
                .map(|i| &a[i] * range_sum(&suffix, n - 1 - i, k - i, n - 1 - i))
                .sum();
        }
        row[n] = a[n - 1].clone();
        let mut suf = vec![BigUint::zero(); n + 2];
        for j in (0..=n).rev() {
            suf[j] = &suf[j + 1] + &row[j];
        }
        table.push(row);
        suffix.push(suf);
    }
    a
}

fn cf_eval(n_max: usize, depth: usize) -> Result<UnivariateSeries> {
    let one = UnivariateSeries::one(n_max);
    let z = UnivariateSeries::monomial(n_max, 1, BigInt::one());
    let mut tail = one.clone();
    for n in (0..depth).rev() {
        let z_n = UnivariateSeries::monomial(n_max, n, BigInt::one());
        tail = &(&one - &z_n) - &(&z * &tail.inverse()?);
    }
    Ok(&one - &(&z * &(&tail - &z)))
}

/// Coefficients through `z^n_max` of `1 - z (U(0) - z)` with
/// `U(n) = 1 - z^n - z / U(n+1)`, evaluated bottom-up from `U(depth) = 1`.
/// Fails unless `depth >= n_max + 2` and one more level leaves the
/// coefficients unchanged.
pub fn continued_fraction_series(n_max: usize, depth: usize) -> Result<UnivariateSeries> {
    if depth < n_max + 2 {
        return Err(Error::UnstableContinuedFraction {
            depth,
            order: n_max,
        });
    }
    let s = cf_eval(n_max, depth)?;
    if cf_eval(n_max, depth + 1)? != s {
        return Err(Error::UnstableContinuedFraction {
            depth,
            order: n_max,
        });
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesMismatch {
    pub order: usize,
    pub series: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesComparison {
    pub agrees: bool,
    pub compared_through: usize,
    pub first_mismatch: Option<SeriesMismatch>,
}

impl fmt::Display for SeriesComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_mismatch {
            None => write!(f, "agrees through order {}", self.compared_through),
            Some(m) => write!(
                f,
                "first mismatch at order {}: series gives {}, count is {}",
                m.order, m.series, m.expected
            ),
        }
    }
}

/// Compares series coefficients against counts, order by order.
pub fn compare_with_counts(series: &UnivariateSeries, counts: &[BigUint]) -> SeriesComparison {
    let through = series.order().min(counts.len().saturating_sub(1));
    let first_mismatch = (0..=through).find_map(|i| {
        let expected = BigInt::from(counts[i].clone());
        let got = series.coeff(i);
        (got != expected).then(|| SeriesMismatch {
            order: i,
            series: got.to_string(),
            expected: expected.to_string(),
        })
    });
    SeriesComparison {
        agrees: first_mismatch.is_none(),
        compared_through: through,
        first_mismatch,
    }
}

/// How the linear operator treats the constant monomial `u^0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstantTerm {
    /// `u^0 -> u^axiom`, every other monomial through the productions.
    Axiom,
    /// Every monomial, `u^0` included, through the productions. This is the
    /// one-level transition of the rule tree.
    Productions,
}

/// Applies the `z`-linear operator `u^k -> sum_i u^{e_i(k)}` coefficient-wise.
pub fn lomega_apply(
    s: &BivariateSeries,
    rule: &SuccessionRule,
    constant: ConstantTerm,
) -> BivariateSeries {
    s.map_monomials(|k| {
        if k == 0 && constant == ConstantTerm::Axiom {
            return vec![(rule.axiom(), BigInt::one())];
        }
        rule.production_counts(k)
            .into_iter()
            .map(|(l, m)| (l, BigInt::from(m)))
            .collect()
    })
}

/// `sum z^{|s|} u^{label(s)}` over generated avoiders of length `1..=n_max`.
pub fn label_series(n_max: usize) -> BivariateSeries {
    let mut a = BivariateSeries::zero(n_max);
    for n in 1..=n_max {
        for t in generate_level(n) {
            a.add_term(n, label(&t).expect("non-empty"), BigInt::one());
        }
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquationReport {
    pub n_max: usize,
    /// `A - z u^axiom - z L(A)`, truncated at `z^n_max`.
    pub residual: BivariateSeries,
    pub ok: bool,
}

/// Checks `A(z,u) = z u^axiom + z L(A(z,u))` on the series built from the
/// generated tree, where `A` runs over lengths `>= 1` so the root
/// contributes `z u^axiom`. `ok` iff the residual vanishes through
/// `z^(n_max-1)`.
pub fn check_functional_equation(n_max: usize) -> FunctionalEquationReport {
    let rule = omega_rule();
    let a = label_series(n_max);
    let root = BivariateSeries::monomial(n_max, 1, rule.axiom(), BigInt::one());
    let step = lomega_apply(&a, &rule, ConstantTerm::Productions).shift(1, 0);
    let residual = &(&a - &root) - &step;
    let ok = n_max == 0 || residual.vanishes_through(n_max - 1);
    FunctionalEquationReport {
        n_max,
        residual,
        ok,
    }
}

/// Ways of forming `u(z,t)` from the label triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PdeConvention {
    /// `sum_{n>=1} v(n,k) z^n t^k`
    Label,
    /// `1 + sum_{n>=1} v(n,k) z^n t^k`
    LabelWithEmpty,
    /// `sum_{n>=1} v(n,k) z^n t^(k+1)`, i.e. `t` marks the label plus one.
    ShiftedLabel,
    /// `1 + sum_{n>=1} v(n,k) z^n t^(k+1)`
    ShiftedLabelWithEmpty,
}

impl PdeConvention {
    pub const ALL: [PdeConvention; 4] = [
        PdeConvention::Label,
        PdeConvention::LabelWithEmpty,
        PdeConvention::ShiftedLabel,
        PdeConvention::ShiftedLabelWithEmpty,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            PdeConvention::Label => "u(z,t) = sum_{n>=1} v(n,k) z^n t^k",
            PdeConvention::LabelWithEmpty => "u(z,t) = 1 + sum_{n>=1} v(n,k) z^n t^k",
            PdeConvention::ShiftedLabel => "u(z,t) = sum_{n>=1} v(n,k) z^n t^(k+1)",
            PdeConvention::ShiftedLabelWithEmpty => "u(z,t) = 1 + sum_{n>=1} v(n,k) z^n t^(k+1)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeAttempt {
    pub convention: PdeConvention,
    pub residual: BivariateSeries,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeReport {
    pub n_max: usize,
    pub ok: bool,
    /// First convention whose residual vanishes, if any.
    pub convention: Option<PdeConvention>,
    /// Residual under the passing convention, or under the first one tried.
    pub residual: BivariateSeries,
    pub attempts: Vec<PdeAttempt>,
}

/// `u(z,t)` under a convention, truncated at `z^n_max`.
pub fn pde_series(n_max: usize, convention: PdeConvention) -> BivariateSeries {
    let v = v_triangle(n_max);
    let shift = matches!(
        convention,
        PdeConvention::ShiftedLabel | PdeConvention::ShiftedLabelWithEmpty
    ) as usize;
    let mut u = BivariateSeries::zero(n_max);
    for ((n, k), value) in v.entries() {
        u.add_term(n, k + shift, BigInt::from(value.clone()));
    }
    if matches!(
        convention,
        PdeConvention::LabelWithEmpty | PdeConvention::ShiftedLabelWithEmpty
    ) {
        u.add_term(0, 0, BigInt::one());
    }
    u
}

/// Left minus right side of
/// `(1-t) z t^2 du/dt + ((1-t)^2 (1-zt) + zt) u = zt (1-t)^2 + zt u(z,1)`.
pub fn pde_residual(u: &BivariateSeries) -> BivariateSeries {
    let order = u.order();
    let one_minus_t = BivariateSeries::poly_in_t(order, &[1, -1]);
    let one_minus_t_sq = &one_minus_t * &one_minus_t;
    let zt = BivariateSeries::monomial(order, 1, 1, BigInt::one());
    let one_minus_zt = &BivariateSeries::poly_in_t(order, &[1]) - &zt;

    let derivative_term = (&one_minus_t * &u.d_dt()).shift(1, 2);
    let factor = &(&one_minus_t_sq * &one_minus_zt) + &zt;
    let lhs = &derivative_term + &(&factor * u);
    let rhs = &(&zt * &one_minus_t_sq) + &(&zt * &u.at_t_one());
    &lhs - &rhs
}

/// Tries every [`PdeConvention`] and reports the first whose residual
/// vanishes through `z^(n_max-1)`.
pub fn check_pde(n_max: usize) -> PdeReport {
    let attempts: Vec<PdeAttempt> = PdeConvention::ALL
        .iter()
        .map(|&convention| {
            let residual = pde_residual(&pde_series(n_max, convention));
            let ok = n_max == 0 || residual.vanishes_through(n_max - 1);
            PdeAttempt {
                convention,
                residual,
                ok,
            }
        })
        .collect();
    let passing = attempts.iter().find(|a| a.ok);
    PdeReport {
        n_max,
        ok: passing.is_some(),
        convention: passing.map(|a| a.convention),
        residual: passing.unwrap_or(&attempts[0]).residual.clone(),
        attempts,
    }
}
