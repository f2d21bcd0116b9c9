//! Truncated power series with exact integer coefficients.
//!
//! `UnivariateSeries` holds the coefficients of `z^0 ..= z^order`.
//! `BivariateSeries` holds, for each power of `z` up to its order, a
//! polynomial in the second variable (`u` or `t`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    coeffs: Vec<BigInt>,
}

impl UnivariateSeries {
    pub fn zero(order: usize) -> Self {
        UnivariateSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `c * z^power`, dropped if `power > order`.
    pub fn monomial(order: usize, power: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Multiplicative inverse; the constant term must be a unit (±1) so the
    /// result stays integral.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::Series(format!(
                "cannot invert a series with constant term {c0}"
            )));
        }
        let n = self.order();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = c0.clone();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                acc += &self.coeffs[i] * &inv.coeffs[m - i];
            }
            inv.coeffs[m] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Dump as `order,coefficient` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

impl Add for &UnivariateSeries {
    type Output = UnivariateSeries;

    fn add(self, rhs: &UnivariateSeries) -> UnivariateSeries {
        let order = self.order().min(rhs.order());
        UnivariateSeries::from_coeffs(
            order,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b),
        )
    }
}

impl Sub for &UnivariateSeries {
    type Output = UnivariateSeries;

    fn sub(self, rhs: &UnivariateSeries) -> UnivariateSeries {
        self + &(-rhs)
    }
}

impl Neg for &UnivariateSeries {
    type Output = UnivariateSeries;

    fn neg(self) -> UnivariateSeries {
        UnivariateSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UnivariateSeries {
    type Output = UnivariateSeries;

    fn mul(self, rhs: &UnivariateSeries) -> UnivariateSeries {
        let order = self.order().min(rhs.order());
        let mut out = UnivariateSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// Polynomial in the second variable, keyed by exponent.
pub type Poly = BTreeMap<usize, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    /// `c * z^zp * t^tp`, dropped if `zp > order`.
    pub fn monomial(order: usize, zp: usize, tp: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        s.add_term(zp, tp, c);
        s
    }

    /// A polynomial in the second variable only, `sum c_i t^i`.
    pub fn poly_in_t(order: usize, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(order);
        for (i, &c) in coeffs.iter().enumerate() {
            s.add_term(0, i, BigInt::from(c));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_term(&mut self, zp: usize, tp: usize, c: BigInt) {
        if zp > self.order || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((zp, tp)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(zp, tp));
        }
    }

    pub fn coeff(&self, zp: usize, tp: usize) -> BigInt {
        self.terms.get(&(zp, tp)).cloned().unwrap_or_default()
    }

    /// Non-zero terms in `(z power, t power)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// The polynomial in `t` multiplying `z^zp`.
    pub fn z_coeff(&self, zp: usize) -> Poly {
        self.terms
            .range((zp, 0)..=(zp, usize::MAX))
            .map(|(&(_, tp), c)| (tp, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every coefficient of `z^0 ..= z^through` vanishes.
    pub fn vanishes_through(&self, through: usize) -> bool {
        self.terms.keys().all(|&(zp, _)| zp > through)
    }

    /// Lowest power of `z` with a non-zero coefficient.
    pub fn lowest_z_order(&self) -> Option<usize> {
        self.terms.keys().next().map(|&(zp, _)| zp)
    }

    /// Formal derivative with respect to the second variable.
    pub fn d_dt(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&(zp, tp), c) in &self.terms {
            if tp > 0 {
                out.add_term(zp, tp - 1, c * BigInt::from(tp));
            }
        }
        out
    }

    /// Substitutes `t = 1`, keeping the result as a series with `t^0` terms.
    pub fn at_t_one(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&(zp, _), c) in &self.terms {
            out.add_term(zp, 0, c.clone());
        }
        out
    }

    /// Multiplies by `z^zp t^tp`, truncating.
    pub fn shift(&self, zp: usize, tp: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (&(a, b), c) in &self.terms {
            out.add_term(a + zp, b + tp, c.clone());
        }
        out
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(order.min(self.order));
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Coefficient-wise map of each `z^n` polynomial through a linear map
    /// on monomials `t^k -> sum_i t^{image_i}`.
    pub fn map_monomials<F>(&self, mut image: F) -> Self
    where
        F: FnMut(usize) -> Vec<(usize, BigInt)>,
    {
        let mut out = Self::zero(self.order);
        let mut cache: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for (&(zp, tp), c) in &self.terms {
            let img = cache.entry(tp).or_insert_with(|| image(tp));
            for (target, mult) in img.iter() {
                out.add_term(zp, *target, c * mult);
            }
        }
        out
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let mut out = self.truncate(rhs.order);
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        BivariateSeries {
            order: self.order,
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        self + &(-rhs)
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let mut out = BivariateSeries::zero(self.order.min(rhs.order));
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(z^{})", self.order + 1);
        }
        for (n, (&(zp, tp), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*z^{zp}*t^{tp}")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}
