use std::collections::BTreeMap;

use super::{shape_degree, SuperField, SuperFunction, Target};
use crate::error::Result;

/// `v(f)` by the graded Leibniz rule. A term `c ξ^I ∂/∂ξ_l` picks up the sign
/// of moving `∂/∂ξ_l` past the odd factors of `f` that precede `ξ_l`, then is
/// multiplied on the left by `c ξ^I`.
pub fn apply_derivation(v: &SuperField, f: &SuperFunction) -> Result<SuperFunction> {
    if v.chart() != f.chart() {
        return Err(crate::error::Error::ChartMismatch {
            left: v.chart(),
            right: f.chart(),
        });
    }
    if v.m() != f.m() {
        return Err(crate::error::Error::OddDimMismatch {
            left: v.m(),
            right: f.m(),
        });
    }
    let mut out = SuperFunction::zero(f.chart(), f.m());
    for (odd, target, c) in v.raw_terms() {
        for (j, g) in f.terms() {
            let (sign, rest, g) = match target {
                Target::Even => (1, j, g.derivative()),
                Target::Odd(l) => match j.remove(l) {
                    Some((s, rest)) => (s, rest, g.clone()),
                    None => continue,
                },
            };
            if g.is_zero() {
                continue;
            }
            let Some((s2, mono)) = odd.wedge(rest) else { continue };
            let coeff = c * &g;
            out.add_term(mono, &if sign * s2 < 0 { -&coeff } else { coeff });
        }
    }
    Ok(out)
}

/// Assembles the field `Σ D(x) ∂/∂x + Σ D(ξ_l) ∂/∂ξ_l` from its values on the
/// coordinates.
pub(crate) fn field_from_values(
    even_value: &SuperFunction,
    odd_values: &[SuperFunction],
) -> SuperField {
    let mut out = SuperField::zero(even_value.chart(), even_value.m());
    for (o, c) in even_value.terms() {
        out.add_term(c.clone(), o, Target::Even);
    }
    for (idx, val) in odd_values.iter().enumerate() {
        for (o, c) in val.terms() {
            out.add_term(c.clone(), o, Target::Odd(idx + 1));
        }
    }
    out
}

fn bracket_homogeneous(v: &SuperField, a: u8, w: &SuperField, b: u8) -> Result<SuperField> {
    let (chart, m) = (v.chart(), v.m());
    let sign_flip = a == 1 && b == 1;
    let commutator_on = |g: &SuperFunction| -> Result<SuperFunction> {
        let vw = apply_derivation(v, &apply_derivation(w, g)?)?;
        let wv = apply_derivation(w, &apply_derivation(v, g)?)?;
        Ok(if sign_flip { &vw + &wv } else { &vw - &wv })
    };
    let even = commutator_on(&SuperFunction::even_coordinate(chart, m))?;
    let odds = (1..=m)
        .map(|l| commutator_on(&SuperFunction::odd_coordinate(chart, m, l)))
        .collect::<Result<Vec<_>>>()?;
    Ok(field_from_values(&even, &odds))
}

/// The super bracket `[v, w] = v∘w − (−1)^{|v||w|} w∘v`.
///
/// Mixed-parity inputs are split into parity-homogeneous parts and the
/// results recombined bilinearly.
pub fn super_bracket(v: &SuperField, w: &SuperField) -> Result<SuperField> {
    v.check_compatible(w)?;
    let mut out = SuperField::zero(v.chart(), v.m());
    let vp = v.parity_parts();
    let wp = w.parity_parts();
    for (a, vv) in vp.iter().enumerate() {
        if vv.is_zero() {
            continue;
        }
        for (b, ww) in wp.iter().enumerate() {
            if ww.is_zero() {
                continue;
            }
            let part = bracket_homogeneous(vv, a as u8, ww, b as u8)?;
            out = &out + &part;
        }
    }
    Ok(out)
}

/// Partition of the terms by grading degree.
pub fn grading_decompose(v: &SuperField) -> BTreeMap<i64, SuperField> {
    let mut out: BTreeMap<i64, SuperField> = BTreeMap::new();
    for t in v.terms() {
        let d = shape_degree(t.odd, t.target);
        out.entry(d)
            .or_insert_with(|| SuperField::zero(v.chart(), v.m()))
            .add_field_term(t);
    }
    out
}
