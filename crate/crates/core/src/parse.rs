//! Text form of fields and functions.
//!
//! ```text
//! field  := term (('+'|'-') term)*
//! term   := coeff? odd* deriv
//! coeff  := rational ('*'? 'x^' integer)? | 'x^' integer | 'x'
//! odd    := 'xi' index ('*')?
//! deriv  := 'd/dx' | 'd/dxi' index
//! ```
//!
//! On the second chart the names are `y`, `eta`, `d/dy`, `d/deta`.
//! Whitespace is insignificant. The single token `0` is the zero field.

use num_traits::{One, Zero};

use crate::algebra::{format_rational, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::superfield::{Chart, OddMonomial, SuperField, SuperFunction, Target};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn found(&self) -> String {
        let r = self.rest();
        if r.is_empty() {
            "end of input".to_string()
        } else {
            let snippet: String = r.chars().take(8).collect();
            format!("'{snippet}'")
        }
    }

    fn error(&self, expected: &str) -> Error {
        Error::parse(self.pos, expected, self.found())
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let len = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        self.pos += len;
        (len > 0).then(|| &self.text[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let Some(d) = self.digits() else {
            return Err(self.error("integer"));
        };
        let v: i64 = d
            .parse()
            .map_err(|_| Error::parse(start, "integer in range", d.to_string()))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let num = self.digits().ok_or_else(|| self.error("rational"))?;
        let num: num_bigint::BigInt = num.parse().expect("digits");
        if self.eat("/") {
            let den = self.digits().ok_or_else(|| self.error("denominator"))?;
            let den: num_bigint::BigInt = den.parse().expect("digits");
            if den.is_zero() {
                return Err(Error::parse(start, "nonzero denominator", "0"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// `x^n` or a bare `x` (not the start of `xi`). Returns `None` without
    /// consuming anything when no power is present.
    fn power(&mut self, chart: Chart) -> Result<Option<i64>> {
        let var = chart.even_name();
        let odd = chart.odd_name();
        if !self.rest().starts_with(var) || self.rest().starts_with(odd) || self.rest().starts_with("d/") {
            return Ok(None);
        }
        self.pos += var.len();
        if self.eat("^") {
            self.skip_ws();
            Ok(Some(self.integer()?))
        } else {
            Ok(Some(1))
        }
    }

    fn index(&mut self, m: usize) -> Result<usize> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("odd index"))?;
        match d.parse::<usize>() {
            Ok(i) if (1..=m).contains(&i) => Ok(i),
            _ => Err(Error::parse(start, format!("odd index in 1..={m}"), d.to_string())),
        }
    }
}

fn parse_term(cur: &mut Cursor, chart: Chart, m: usize) -> Result<(Rational, i64, OddMonomial, Target)> {
    let even = chart.even_name();
    let odd = chart.odd_name();
    cur.skip_ws();
    let mut c = Rational::one();
    let mut n = 0i64;
    if cur.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        c = cur.rational()?;
        cur.skip_ws();
        let save = cur.pos;
        let star = cur.eat("*");
        cur.skip_ws();
        match cur.power(chart)? {
            Some(p) => n = p,
            None if star => cur.pos = save,
            None => {}
        }
    } else if let Some(p) = cur.power(chart)? {
        n = p;
    }

    let mut factors: Vec<(usize, usize)> = Vec::new();
    loop {
        cur.skip_ws();
        let save = cur.pos;
        cur.eat("*");
        cur.skip_ws();
        if !cur.rest().starts_with(odd) {
            cur.pos = save;
            break;
        }
        let at = cur.pos;
        cur.pos += odd.len();
        let i = cur.index(m)?;
        if factors.iter().any(|(j, _)| *j == i) {
            return Err(Error::parse(at, "distinct odd indices", format!("repeated {odd}{i}")));
        }
        factors.push((i, at));
    }

    cur.skip_ws();
    cur.eat("*");
    cur.skip_ws();
    let deriv_expected = format!("'d/d{even}' or 'd/d{odd}<index>'");
    if !cur.eat("d/d") {
        return Err(cur.error(&deriv_expected));
    }
    let target = if cur.eat(odd) {
        Target::Odd(cur.index(m)?)
    } else if cur.eat(even) {
        Target::Even
    } else {
        return Err(cur.error(&deriv_expected));
    };

    let indices: Vec<usize> = factors.iter().map(|(i, _)| *i).collect();
    let (sign, mono) = OddMonomial::product_of(&indices).expect("indices are distinct");
    if sign < 0 {
        c = -c;
    }
    Ok((c, n, mono, target))
}

/// Parses a field on the given chart with `m` odd coordinates.
pub fn parse_field(text: &str, chart: Chart, m: usize) -> Result<SuperField> {
    let mut cur = Cursor::new(text);
    let mut out = SuperField::zero(chart, m);
    if text.trim() == "0" {
        return Ok(out);
    }
    let mut first = true;
    loop {
        if cur.at_end() {
            if first {
                return Err(cur.error("term"));
            }
            break;
        }
        let negative = if cur.eat("-") {
            true
        } else if cur.eat("+") || first {
            false
        } else {
            return Err(cur.error("'+' or '-'"));
        };
        first = false;
        let (c, n, mono, target) = parse_term(&mut cur, chart, m)?;
        let c = if negative { -c } else { c };
        out.add_term(LaurentPoly::monomial(c, n), mono, target);
    }
    Ok(out)
}

/// Chart from the variable names used: any of `y`, `eta`, `d/dy` selects the
/// second chart, otherwise the first.
pub fn detect_chart(text: &str) -> Chart {
    if text.contains('y') || text.contains("eta") {
        Chart::U1
    } else {
        Chart::U0
    }
}

pub fn parse_field_auto(text: &str, m: usize) -> Result<SuperField> {
    parse_field(text, detect_chart(text), m)
}

/// Writes one signed piece, choosing the separator from its position.
fn push_signed(out: &mut String, negative: bool, body: &str) {
    match (out.is_empty(), negative) {
        (true, false) => {}
        (true, true) => out.push('-'),
        (false, false) => out.push_str(" + "),
        (false, true) => out.push_str(" - "),
    }
    out.push_str(body);
}

/// `c*x^n`, `x^n` or `c`; empty when the coefficient is exactly 1 with `n = 0`.
fn render_coefficient(mag: &Rational, n: i64, var: &str) -> String {
    match (mag.is_one(), n) {
        (true, 0) => String::new(),
        (false, 0) => format_rational(mag),
        (true, n) => format!("{var}^{n}"),
        (false, n) => format!("{}*{var}^{n}", format_rational(mag)),
    }
}

fn render_odd(mono: OddMonomial, name: &str) -> String {
    mono.indices()
        .map(|i| format!("{name}{i}"))
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text: shapes in canonical order, Laurent exponents ascending
/// within a shape.
pub fn render_field(v: &SuperField) -> String {
    let chart = v.chart();
    let (even, odd) = (chart.even_name(), chart.odd_name());
    let mut out = String::new();
    for (mono, target, coeff) in v.raw_terms() {
        let deriv = match target {
            Target::Even => format!("d/d{even}"),
            Target::Odd(l) => format!("d/d{odd}{l}"),
        };
        for (n, c) in coeff.terms() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let parts: Vec<String> = [render_coefficient(&mag, n, even), render_odd(mono, odd), deriv.clone()]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            push_signed(&mut out, negative, &parts.join(" "));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Terms ordered by odd degree, then lexicographically; a pure-constant term
/// renders as its value.
pub fn render_function(f: &SuperFunction) -> String {
    let chart = f.chart();
    let (even, odd) = (chart.even_name(), chart.odd_name());
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by_key(|(mono, _)| (mono.len(), *mono));
    let mut out = String::new();
    for (mono, coeff) in terms {
        for (n, c) in coeff.terms() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let parts: Vec<String> = [render_coefficient(&mag, n, even), render_odd(mono, odd)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
            push_signed(&mut out, negative, &body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn parses_examples() {
        let v = parse_field("x^-1 xi1*xi2 d/dx", Chart::U0, 2).unwrap();
        assert_eq!(v, SuperField::monomial(Chart::U0, 2, int(1), -1, &[1, 2], Target::Even));

        let v = parse_field("1/2*x^-2 xi1*xi2*xi3 d/dxi3", Chart::U0, 3).unwrap();
        assert_eq!(v, SuperField::monomial(Chart::U0, 3, rat(1, 2), -2, &[1, 2, 3], Target::Odd(3)));

        let v = parse_field(" - 2 xi2 xi1 d/dxi1 + d/dx", Chart::U0, 2).unwrap();
        let expected = &SuperField::monomial(Chart::U0, 2, int(2), 0, &[1, 2], Target::Odd(1))
            + &SuperField::monomial(Chart::U0, 2, int(1), 0, &[], Target::Even);
        assert_eq!(v, expected);

        let v = parse_field("3/2*x xi1 d/dxi1 - x^2 d/dx", Chart::U0, 1).unwrap();
        let expected = &SuperField::monomial(Chart::U0, 1, rat(3, 2), 1, &[1], Target::Odd(1))
            + &SuperField::monomial(Chart::U0, 1, int(-1), 2, &[], Target::Even);
        assert_eq!(v, expected);
    }

    #[test]
    fn second_chart_names() {
        let v = parse_field_auto("-y^3 eta1*eta2 d/dy + y^2 d/deta2", 2).unwrap();
        assert_eq!(v.chart(), Chart::U1);
        assert_eq!(render_field(&v), "y^2 d/deta2 - y^3 eta1*eta2 d/dy");
    }

    #[test]
    fn errors_carry_position() {
        match parse_field("xi1*xi1 d/dx", Chart::U0, 2) {
            Err(Error::Parse { pos, expected, .. }) => {
                assert_eq!(pos, 4);
                assert!(expected.contains("distinct"));
            }
            other => panic!("{other:?}"),
        }
        match parse_field("x^-1 xi4 d/dx", Chart::U0, 3) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse_field("x^-1 xi1", Chart::U0, 3) {
            Err(Error::Parse { pos, expected, found }) => {
                assert_eq!(pos, 8);
                assert!(expected.contains("d/dx"));
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_field("", Chart::U0, 1).is_err());
        assert!(parse_field("d/dx d/dx", Chart::U0, 1).is_err());
        assert!(parse_field("1/0 d/dx", Chart::U0, 1).is_err());
    }

    #[test]
    fn renders_canonically() {
        let v = SuperField::monomial(Chart::U0, 2, int(1), -1, &[1, 2], Target::Even);
        assert_eq!(render_field(&v), "x^-1 xi1*xi2 d/dx");
        assert_eq!(render_field(&SuperField::zero(Chart::U0, 3)), "0");
        assert_eq!(parse_field("0", Chart::U0, 3).unwrap(), SuperField::zero(Chart::U0, 3));

        // odd-derivative shapes are sorted by index, so ∂/∂ξ1 comes first
        let text = "x^-3 xi1*xi2*xi3 d/dxi3 - 1/2*x^-2 xi1*xi2*xi3 d/dxi2 + 1/2*x^-1 xi1*xi2*xi3 d/dxi1";
        let v = parse_field(text, Chart::U0, 3).unwrap();
        assert_eq!(
            render_field(&v),
            "1/2*x^-1 xi1*xi2*xi3 d/dxi1 - 1/2*x^-2 xi1*xi2*xi3 d/dxi2 + x^-3 xi1*xi2*xi3 d/dxi3"
        );
        assert_eq!(parse_field(&render_field(&v), Chart::U0, 3).unwrap(), v);

        let v = parse_field("-d/dx + 2 d/dx + x^-1 d/dx", Chart::U0, 1).unwrap();
        assert_eq!(render_field(&v), "x^-1 d/dx + d/dx");
        assert_eq!(render_field(&v.scale(&int(-1))), "-x^-1 d/dx - d/dx");
    }

    #[test]
    fn renders_functions() {
        let mut f = SuperFunction::from_laurent(Chart::U0, 2, LaurentPoly::x_pow(-1));
        f.add_term(OddMonomial::from_sorted(&[1, 2]).unwrap(), &LaurentPoly::monomial(int(-1), -3));
        assert_eq!(render_function(&f), "x^-1 - x^-3 xi1*xi2");
        assert_eq!(render_function(&SuperFunction::from_laurent(Chart::U0, 1, LaurentPoly::one())), "1");
    }
}
