//! Sparse Laurent polynomials in one variable over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::{format_rational, int, is_neg, parse_rational, Rational};
use crate::error::{Error, Result};

/// A finite sum `Σ c_n x^n` with `n` ranging over all integers.
///
/// The exponent map never stores a zero coefficient, so structural equality
/// is mathematical equality and the zero polynomial is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^n`.
    pub fn monomial(c: Rational, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    /// `x^n`.
    pub fn x_pow(n: i64) -> Self {
        Self::monomial(Rational::one(), n)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (n, c) in it {
            p.add_term(n, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, n: i64) -> Rational {
        self.terms.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|n| n >= 0)
    }

    /// Constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, n: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (*n, a * c)).collect(),
        }
    }

    /// Multiplication by `x^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (n + s, a.clone())).collect(),
        }
    }

    /// Termwise `d/dx`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(n, _)| **n != 0)
                .map(|(n, a)| (n - 1, a * int(*n))),
        )
    }

    /// The substitution `x ↦ x⁻¹`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (-n, a.clone())).collect(),
        }
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i64) -> bool) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(n, _)| keep(**n))
                .map(|(n, a)| (*n, a.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero(), "Laurent polynomials are not defined at 0");
        self.terms.iter().fold(Rational::zero(), |acc, (n, a)| {
            let p = if *n >= 0 {
                num_traits::pow(x.clone(), *n as usize)
            } else {
                num_traits::pow(x.recip(), (-n) as usize)
            };
            acc + a * p
        })
    }
}

/// Product of two Laurent polynomials.
pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (n, c) in &a.terms {
        for (m, d) in &b.terms {
            out.add_term(n + m, c * d);
        }
    }
    out
}

pub fn laurent_derivative(a: &LaurentPoly) -> LaurentPoly {
    a.derivative()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        laurent_mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(n, a)| (*n, -a)).collect(),
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, -c);
        }
    }
}

/// `c*x^n` terms in ascending exponent order, e.g. `-2*x^-3 + 1/2*x^0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (n, c)) in self.terms.iter().enumerate() {
            let mag = if is_neg(c) { -c } else { c.clone() };
            match (i, is_neg(c)) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            write!(f, "{}*x^{}", format_rational(&mag), n)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the serialized form plus the obvious shorthands: `x`, `x^n`,
    /// `c*x`, `c x^n`, `-2*x/3` is not accepted (write `-2/3*x`).
    fn from_str(s: &str) -> Result<Self> {
        parse_laurent(s)
    }
}

pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = LaurentPoly::zero();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            if first {
                return Err(Error::parse(pos, "Laurent term", "end of input"));
            }
            break;
        }
        let mut sign = Rational::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(Error::parse(pos, "'+' or '-'", chars[pos].to_string()));
        }
        first = false;
        let start = pos;
        while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
            pos += 1;
        }
        let coeff = if pos > start {
            let text: String = chars[start..pos].iter().collect();
            parse_rational(&text).map_err(|_| Error::parse(start, "rational", text))?
        } else {
            Rational::one()
        };
        skip_ws(&mut pos);
        let had_coeff = pos > start;
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            skip_ws(&mut pos);
        }
        let mut exp = 0i64;
        if pos < chars.len() && chars[pos] == 'x' {
            pos += 1;
            exp = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let es = pos;
                if pos < chars.len() && (chars[pos] == '-' || chars[pos] == '+') {
                    pos += 1;
                }
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let text: String = chars[es..pos].iter().collect();
                exp = text
                    .parse()
                    .map_err(|_| Error::parse(es, "integer exponent", text.clone()))?;
            }
        } else if !had_coeff {
            let found = chars.get(pos).map_or("end of input".to_string(), |c| c.to_string());
            return Err(Error::parse(pos, "rational or 'x'", found));
        }
        out.add_term(exp, sign * coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn x(n: i64) -> LaurentPoly {
        LaurentPoly::x_pow(n)
    }

    #[test]
    fn mul_examples() {
        let a = &x(-1) + &LaurentPoly::constant(int(2));
        assert_eq!(laurent_mul(&a, &x(1)), &LaurentPoly::one() + &LaurentPoly::monomial(int(2), 1));
        assert_eq!(laurent_mul(&x(-2), &x(2)), LaurentPoly::one());
        let p = LaurentPoly::monomial(rat(3, 2), -2);
        let q = LaurentPoly::monomial(rat(2, 3), -1);
        let prod = laurent_mul(&p, &q);
        assert_eq!(prod, x(-3));
        // cross-check by evaluation at x = 2
        let two = int(2);
        assert_eq!(prod.evaluate(&two), p.evaluate(&two) * q.evaluate(&two));
        assert_eq!(prod.evaluate(&two), rat(1, 8));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(x(-2).derivative(), LaurentPoly::monomial(int(-2), -3));
        assert!(LaurentPoly::constant(int(5)).derivative().is_zero());
        let p = LaurentPoly::monomial(rat(-2, 3), 1);
        assert_eq!(p.derivative(), LaurentPoly::constant(rat(-2, 3)));
    }

    #[test]
    fn zero_coefficients_pruned() {
        let p = &x(3) - &x(3);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(LaurentPoly::monomial(int(0), 4), LaurentPoly::zero());
    }

    #[test]
    fn serialization() {
        let p = LaurentPoly::from_terms([(-3, int(-2)), (0, rat(1, 2))]);
        assert_eq!(p.to_string(), "-2*x^-3 + 1/2*x^0");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q = LaurentPoly::from_terms([(1, rat(-2, 3)), (2, int(-1))]);
        assert_eq!(q.to_string(), "-2/3*x^1 - 1*x^2");
        assert_eq!(parse_laurent(&p.to_string()).unwrap(), p);
        assert_eq!(parse_laurent(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn parse_shorthands() {
        assert_eq!(parse_laurent("x").unwrap(), x(1));
        assert_eq!(parse_laurent("-x").unwrap(), -&x(1));
        assert_eq!(parse_laurent("-2/3*x").unwrap(), LaurentPoly::monomial(rat(-2, 3), 1));
        assert_eq!(parse_laurent("2").unwrap(), LaurentPoly::constant(int(2)));
        assert_eq!(parse_laurent("0").unwrap(), LaurentPoly::zero());
        assert_eq!(parse_laurent("1 + x^-2").unwrap(), &LaurentPoly::one() + &x(-2));
        assert!(parse_laurent("").is_err());
        assert!(parse_laurent("2 3").is_err());
        assert!(parse_laurent("y").is_err());
    }
}
