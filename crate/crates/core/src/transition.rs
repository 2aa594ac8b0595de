//! Transition functions of the non-split supermanifold attached to a
//! degree-2 cocycle.
//!
//! For a cocycle `v` on `U0`, the gluing becomes
//! `y' = (id + v)(x⁻¹)` and `η'_i = (id + v)(x^{-k_i} ξ_i)`, written in the
//! primed `U0` coordinates. `id + v` is the full exponential here: a degree-2
//! field applied twice raises odd degree by 4 and kills these functions when
//! `m ≤ 3`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{int, LaurentPoly};
use crate::error::{Error, Result};
use crate::parse::render_function;
use crate::superfield::{apply_derivation, Chart, GradingVector, OddMonomial, SuperField, SuperFunction, Target};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionFunctions {
    pub k: GradingVector,
    pub y_prime: SuperFunction,
    pub eta_primes: Vec<SuperFunction>,
}

fn split_even(m: usize) -> SuperFunction {
    SuperFunction::from_laurent(Chart::U0, m, LaurentPoly::x_pow(-1))
}

fn split_odd(k: &GradingVector, i: usize) -> SuperFunction {
    SuperFunction::term(Chart::U0, k.m(), LaurentPoly::x_pow(-k.get(i)), OddMonomial::generator(i))
}

pub fn emit_transition(k: &GradingVector, v: &SuperField) -> Result<TransitionFunctions> {
    let m = k.m();
    if v.m() != m {
        return Err(Error::OddDimMismatch { left: m, right: v.m() });
    }
    if v.chart() != Chart::U0 {
        return Err(Error::ChartMismatch {
            left: Chart::U0,
            right: v.chart(),
        });
    }
    if !v.is_zero() && v.homogeneous_degree() != Some(2) {
        return Err(Error::NotHomogeneous { expected: 2 });
    }
    let shifted = |f: SuperFunction| -> Result<SuperFunction> { Ok(&f + &apply_derivation(v, &f)?) };
    Ok(TransitionFunctions {
        k: k.clone(),
        y_prime: shifted(split_even(m))?,
        eta_primes: (1..=m).map(|i| shifted(split_odd(k, i))).collect::<Result<_>>()?,
    })
}

/// Reads the derivation back off the transition functions:
/// `v(x) = −x²(y' − x⁻¹)` and
/// `v(ξ_i) = x^{k_i} (η'_i − x^{-k_i} ξ_i + k_i x^{-k_i-1} v(x) ξ_i)`.
pub fn recover_cocycle(t: &TransitionFunctions) -> Result<SuperField> {
    let k = &t.k;
    let m = k.m();
    let dx = (&t.y_prime - &split_even(m)).scale(&LaurentPoly::monomial(int(-1), 2));
    let mut out = SuperField::zero(Chart::U0, m);
    for (mono, c) in dx.terms() {
        out.add_term(c.clone(), mono, Target::Even);
    }
    for i in 1..=m {
        let xi = SuperFunction::odd_coordinate(Chart::U0, m, i);
        let correction = dx
            .mul(&xi)?
            .scale(&LaurentPoly::monomial(int(k.get(i)), -k.get(i) - 1));
        let value = (&(&t.eta_primes[i - 1] - &split_odd(k, i)) + &correction).scale(&LaurentPoly::x_pow(k.get(i)));
        for (mono, c) in value.terms() {
            out.add_term(c.clone(), mono, Target::Odd(i));
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct TransitionView {
    k: Vec<i64>,
    y_prime: String,
    eta_primes: Vec<String>,
}

impl TransitionFunctions {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TransitionView {
            k: self.k.0.clone(),
            y_prime: render_function(&self.y_prime),
            eta_primes: self.eta_primes.iter().map(render_function).collect(),
        })
        .expect("serializable")
    }
}

impl fmt::Display for TransitionFunctions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "y' = {}", render_function(&self.y_prime))?;
        for (i, eta) in self.eta_primes.iter().enumerate() {
            writeln!(f, "eta{}' = {}", i + 1, render_function(eta))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_field;

    #[test]
    fn split_case() {
        let k = GradingVector::new(vec![3, -1]);
        let t = emit_transition(&k, &SuperField::zero(Chart::U0, 2)).unwrap();
        assert_eq!(t.y_prime, split_even(2));
        assert_eq!(t.eta_primes, vec![split_odd(&k, 1), split_odd(&k, 2)]);
    }

    #[test]
    fn one_two_atlas() {
        let k = GradingVector::new(vec![1, 1]);
        let v = parse_field("x^-1 xi1*xi2 d/dx", Chart::U0, 2).unwrap();
        let t = emit_transition(&k, &v).unwrap();
        assert_eq!(render_function(&t.y_prime), "x^-1 - x^-3 xi1*xi2");
        assert_eq!(render_function(&t.eta_primes[0]), "x^-1 xi1");
        assert_eq!(render_function(&t.eta_primes[1]), "x^-1 xi2");
        assert_eq!(recover_cocycle(&t).unwrap(), v);
    }

    #[test]
    fn third_odd_coordinate() {
        let k = GradingVector::new(vec![2, 2, 2]);
        let v = parse_field("x^-1 xi1*xi2 d/dx + x^-2 xi1*xi2*xi3 d/dxi3", Chart::U0, 3).unwrap();
        let t = emit_transition(&k, &v).unwrap();
        assert_eq!(render_function(&t.y_prime), "x^-1 - x^-3 xi1*xi2");
        assert_eq!(render_function(&t.eta_primes[2]), "x^-2 xi3 - x^-4 xi1*xi2*xi3");
        assert_eq!(recover_cocycle(&t).unwrap(), v);
    }

    #[test]
    fn rejects_wrong_degree() {
        let k = GradingVector::new(vec![1, 1]);
        let v = parse_field("x^-1 xi1 d/dx", Chart::U0, 2).unwrap();
        assert!(emit_transition(&k, &v).is_err());
    }
}
