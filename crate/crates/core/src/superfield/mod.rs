//! Superfunctions and super vector fields on the two standard charts of the
//! projective line with `m` odd coordinates.
//!
//! Chart `U0` has coordinates `(x, ξ_1..ξ_m)`, chart `U1` has `(y, η_1..η_m)`,
//! glued by `y = x⁻¹`, `η_i = x^{-k_i} ξ_i`. All coefficients are Laurent
//! polynomials in the even coordinate of the chart, so every value here lives
//! on the overlap; holomorphy on a chart means "no negative exponents".

mod chart;
mod odd;
mod ops;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPoly, Rational};
use crate::error::{Error, Result};

pub use chart::{change_chart, holomorphic_split, HolomorphicSplit};
pub use odd::{OddMonomial, MAX_ODD};
pub use ops::{apply_derivation, grading_decompose, super_bracket};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    U0,
    U1,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::U0 => Chart::U1,
            Chart::U1 => Chart::U0,
        }
    }

    pub fn even_name(self) -> &'static str {
        match self {
            Chart::U0 => "x",
            Chart::U1 => "y",
        }
    }

    pub fn odd_name(self) -> &'static str {
        match self {
            Chart::U0 => "xi",
            Chart::U1 => "eta",
        }
    }
}

/// The line-bundle degrees `(k_1, …, k_m)` of a split supermanifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradingVector(pub Vec<i64>);

impl GradingVector {
    pub fn new(k: Vec<i64>) -> Self {
        GradingVector(k)
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `k_l` for a 1-based index.
    pub fn get(&self, l: usize) -> i64 {
        self.0[l - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `Σ_{i ∈ I} k_i`.
    pub fn weight(&self, odd: OddMonomial) -> i64 {
        odd.indices().map(|i| self.get(i)).sum()
    }

    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|k| k.abs()).sum()
    }
}

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// What a field term differentiates: the even coordinate or `ξ_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Even,
    Odd(usize),
}

/// `coeff · odd · ∂/∂target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTerm {
    pub coeff: LaurentPoly,
    pub odd: OddMonomial,
    pub target: Target,
}

impl FieldTerm {
    /// Grading degree: `|odd|` for `∂/∂x`, `|odd| − 1` for `∂/∂ξ_l`.
    pub fn degree(&self) -> i64 {
        shape_degree(self.odd, self.target)
    }

    pub fn parity(&self) -> u8 {
        shape_parity(self.odd, self.target)
    }
}

pub(crate) fn shape_degree(odd: OddMonomial, target: Target) -> i64 {
    match target {
        Target::Even => odd.len() as i64,
        Target::Odd(_) => odd.len() as i64 - 1,
    }
}

pub(crate) fn shape_parity(odd: OddMonomial, target: Target) -> u8 {
    match target {
        Target::Even => (odd.len() % 2) as u8,
        Target::Odd(_) => ((odd.len() + 1) % 2) as u8,
    }
}

/// An element `Σ f_I(x) ξ^I` of the structure sheaf over the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperFunction {
    chart: Chart,
    m: usize,
    terms: BTreeMap<OddMonomial, LaurentPoly>,
}

impl SuperFunction {
    pub fn zero(chart: Chart, m: usize) -> Self {
        SuperFunction {
            chart,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_laurent(chart: Chart, m: usize, f: LaurentPoly) -> Self {
        Self::term(chart, m, f, OddMonomial::ONE)
    }

    pub fn term(chart: Chart, m: usize, f: LaurentPoly, odd: OddMonomial) -> Self {
        let mut out = Self::zero(chart, m);
        out.add_term(odd, &f);
        out
    }

    /// The even coordinate (`x` or `y`).
    pub fn even_coordinate(chart: Chart, m: usize) -> Self {
        Self::from_laurent(chart, m, LaurentPoly::x_pow(1))
    }

    /// The odd coordinate `ξ_i` (or `η_i`).
    pub fn odd_coordinate(chart: Chart, m: usize, i: usize) -> Self {
        Self::term(chart, m, LaurentPoly::one(), OddMonomial::generator(i))
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (OddMonomial, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(o, c)| (*o, c))
    }

    pub fn coeff(&self, odd: OddMonomial) -> LaurentPoly {
        self.terms.get(&odd).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, odd: OddMonomial, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(odd).or_default();
        *slot += f;
        if slot.is_zero() {
            self.terms.remove(&odd);
        }
    }

    pub(crate) fn check_compatible(&self, other: &SuperFunction) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                left: self.chart,
                right: other.chart,
            });
        }
        if self.m != other.m {
            return Err(Error::OddDimMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &SuperFunction) -> Result<SuperFunction> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.chart, self.m);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((s, ab)) = a.wedge(*b) {
                    let fg = f * g;
                    out.add_term(ab, &if s < 0 { -&fg } else { fg });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, f: &LaurentPoly) -> SuperFunction {
        let mut out = Self::zero(self.chart, self.m);
        for (o, g) in &self.terms {
            out.add_term(*o, &(f * g));
        }
        out
    }

    /// Part with exactly `d` odd factors.
    pub fn odd_degree_part(&self, d: usize) -> SuperFunction {
        SuperFunction {
            chart: self.chart,
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(o, _)| o.len() == d)
                .map(|(o, c)| (*o, c.clone()))
                .collect(),
        }
    }

    /// Parity if all terms share one.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|o| (o.len() % 2) as u8);
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    /// Sets every odd coordinate to zero.
    pub fn body(&self) -> LaurentPoly {
        self.coeff(OddMonomial::ONE)
    }
}

impl Add for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        let mut out = self.clone();
        for (o, c) in &rhs.terms {
            out.add_term(*o, c);
        }
        out
    }
}

impl Sub for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        let mut out = self.clone();
        for (o, c) in &rhs.terms {
            out.add_term(*o, &-c);
        }
        out
    }
}

impl fmt::Display for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_function(self))
    }
}

/// A super vector field `Σ c(x) ξ^I ∂/∂target` over the overlap of one chart.
///
/// Terms are kept in canonical order: by odd monomial (lexicographic), then
/// `∂/∂x` before `∂/∂ξ_l`, then by `l`; equal shapes are merged and zero
/// coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperField {
    chart: Chart,
    m: usize,
    terms: BTreeMap<(OddMonomial, Target), LaurentPoly>,
}

impl SuperField {
    pub fn zero(chart: Chart, m: usize) -> Self {
        SuperField {
            chart,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(chart: Chart, m: usize, coeff: LaurentPoly, odd: OddMonomial, target: Target) -> Self {
        let mut out = Self::zero(chart, m);
        out.add_term(coeff, odd, target);
        out
    }

    /// `c · x^n · ξ_{i1}…ξ_{ir} ∂/∂target` with the odd factors taken in the
    /// given (not necessarily sorted) order.
    pub fn monomial(chart: Chart, m: usize, c: Rational, n: i64, odd: &[usize], target: Target) -> Self {
        let mut out = Self::zero(chart, m);
        if let Some((s, mono)) = OddMonomial::product_of(odd) {
            let c = if s < 0 { -c } else { c };
            out.add_term(LaurentPoly::monomial(c, n), mono, target);
        }
        out
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = FieldTerm> + '_ {
        self.terms.iter().map(|((o, t), c)| FieldTerm {
            coeff: c.clone(),
            odd: *o,
            target: *t,
        })
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (OddMonomial, Target, &LaurentPoly)> + '_ {
        self.terms.iter().map(|((o, t), c)| (*o, *t, c))
    }

    pub fn coeff(&self, odd: OddMonomial, target: Target) -> LaurentPoly {
        self.terms.get(&(odd, target)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: LaurentPoly, odd: OddMonomial, target: Target) {
        if coeff.is_zero() {
            return;
        }
        if let Target::Odd(l) = target {
            assert!(l >= 1 && l <= self.m, "derivation index out of range");
        }
        assert!(odd.max_index() <= self.m, "odd index out of range");
        let slot = self.terms.entry((odd, target)).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&(odd, target));
        }
    }

    pub(crate) fn add_field_term(&mut self, t: FieldTerm) {
        self.add_term(t.coeff, t.odd, t.target);
    }

    pub(crate) fn check_compatible(&self, other: &SuperField) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch {
                left: self.chart,
                right: other.chart,
            });
        }
        if self.m != other.m {
            return Err(Error::OddDimMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> SuperField {
        let mut out = Self::zero(self.chart, self.m);
        for ((o, t), f) in &self.terms {
            out.add_term(f.scale(c), *o, *t);
        }
        out
    }

    /// Multiplies every coefficient by the even function `f`.
    pub fn scale_laurent(&self, f: &LaurentPoly) -> SuperField {
        let mut out = Self::zero(self.chart, self.m);
        for ((o, t), g) in &self.terms {
            out.add_term(f * g, *o, *t);
        }
        out
    }

    pub fn map_coefficients(&self, mut op: impl FnMut(&LaurentPoly) -> LaurentPoly) -> SuperField {
        let mut out = Self::zero(self.chart, self.m);
        for ((o, t), g) in &self.terms {
            out.add_term(op(g), *o, *t);
        }
        out
    }

    /// Set of grading degrees present.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|(o, t)| shape_degree(*o, *t)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(q)` if every term has grading degree `q`; `None` for mixed or zero fields.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [q] => Some(*q),
            _ => None,
        }
    }

    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|(o, t)| shape_parity(*o, *t));
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    /// Splits into `(even part, odd part)`.
    pub fn parity_parts(&self) -> [SuperField; 2] {
        let mut parts = [Self::zero(self.chart, self.m), Self::zero(self.chart, self.m)];
        for ((o, t), c) in &self.terms {
            parts[shape_parity(*o, *t) as usize].add_term(c.clone(), *o, *t);
        }
        parts
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.values().filter_map(LaurentPoly::min_exponent).min()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.values().filter_map(LaurentPoly::max_exponent).max()
    }

    /// No negative exponents anywhere (holomorphic on the field's own chart).
    pub fn is_holomorphic(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_polynomial)
    }

    /// Keeps only the coefficient terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i64) -> bool + Copy) -> SuperField {
        self.map_coefficients(|c| c.filter_exponents(keep))
    }


    /// Whether `other = c · self` for some nonzero rational `c`; returns `c`.
    pub fn proportionality(&self, other: &SuperField) -> Option<Rational> {
        use num_traits::Zero;
        if self.chart != other.chart || self.m != other.m || self.terms.len() != other.terms.len() {
            return None;
        }
        let ((o, t), c0) = self.terms.iter().next()?;
        let d0 = other.terms.get(&(*o, *t))?;
        let (n, a) = c0.terms().next()?;
        let ratio = d0.coeff(n) / a;
        if ratio.is_zero() {
            return None;
        }
        (self.scale(&ratio) == *other).then_some(ratio)
    }
}

impl Add for &SuperField {
    type Output = SuperField;
    fn add(self, rhs: &SuperField) -> SuperField {
        assert_eq!((self.chart, self.m), (rhs.chart, rhs.m), "incompatible fields");
        let mut out = self.clone();
        for ((o, t), c) in &rhs.terms {
            out.add_term(c.clone(), *o, *t);
        }
        out
    }
}

impl Sub for &SuperField {
    type Output = SuperField;
    fn sub(self, rhs: &SuperField) -> SuperField {
        assert_eq!((self.chart, self.m), (rhs.chart, rhs.m), "incompatible fields");
        let mut out = self.clone();
        for ((o, t), c) in &rhs.terms {
            out.add_term(-c, *o, *t);
        }
        out
    }
}

impl Neg for &SuperField {
    type Output = SuperField;
    fn neg(self) -> SuperField {
        self.map_coefficients(|c| -c)
    }
}

impl fmt::Display for SuperField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render_field(self))
    }
}
