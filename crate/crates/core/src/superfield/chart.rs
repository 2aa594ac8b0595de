use super::ops::{apply_derivation, field_from_values};
use super::{GradingVector, SuperField, SuperFunction};
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// Rewrites a function in the other chart's coordinates.
///
/// The gluing `y = x⁻¹, η_i = x^{-k_i} ξ_i` is its own inverse in shape
/// (`x = y⁻¹, ξ_i = y^{-k_i} η_i`), so one substitution serves both
/// directions: `g(x) ξ^I ↦ g(1/y) y^{-k_I} η^I`.
fn transport_function(f: &SuperFunction, k: &GradingVector) -> SuperFunction {
    let mut out = SuperFunction::zero(f.chart().other(), f.m());
    for (odd, g) in f.terms() {
        out.add_term(odd, &g.invert_variable().shift(-k.weight(odd)));
    }
    out
}

/// The same derivation expressed in the other chart.
///
/// Computed by the chain rule: the new components are the values of `v` on
/// the other chart's coordinates (`v(x⁻¹)` and `v(x^{-k_l} ξ_l)`), rewritten
/// in those coordinates. The map is an involution.
pub fn change_chart(v: &SuperField, k: &GradingVector) -> Result<SuperField> {
    if k.m() != v.m() {
        return Err(Error::OddDimMismatch {
            left: v.m(),
            right: k.m(),
        });
    }
    let (chart, m) = (v.chart(), v.m());
    let new_even = SuperFunction::from_laurent(chart, m, LaurentPoly::x_pow(-1));
    let even_val = transport_function(&apply_derivation(v, &new_even)?, k);
    let odd_vals = (1..=m)
        .map(|l| {
            let new_odd = SuperFunction::odd_coordinate(chart, m, l).scale(&LaurentPoly::x_pow(-k.get(l)));
            apply_derivation(v, &new_odd).map(|val| transport_function(&val, k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(field_from_values(&even_val, &odd_vals))
}

/// `v = u0 + u1 + obstruction` on chart `U0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphicSplit {
    /// Holomorphic on `U0` (no negative powers of `x`).
    pub u0: SuperField,
    /// Holomorphic on `U1` once transported (no negative powers of `y`).
    pub u1: SuperField,
    pub obstruction: SuperField,
}

/// Greedy split of a `U0` field into a `U0`-holomorphic part, a
/// `U1`-holomorphic part and the remainder.
///
/// Nonnegative powers of `x` go to `u0` first; the rest is transported and
/// its nonnegative powers of `y` go to `u1`. Transporting back can reintroduce
/// nonnegative powers of `x`, so the two steps repeat until nothing moves.
pub fn holomorphic_split(v: &SuperField, k: &GradingVector) -> Result<HolomorphicSplit> {
    if v.chart() != super::Chart::U0 {
        return Err(Error::ChartMismatch {
            left: super::Chart::U0,
            right: v.chart(),
        });
    }
    let mut u0 = SuperField::zero(v.chart(), v.m());
    let mut u1 = SuperField::zero(v.chart(), v.m());
    let mut rest = v.clone();
    loop {
        let pos = rest.filter_exponents(|n| n >= 0);
        let neg = &rest - &pos;
        u0 = &u0 + &pos;
        let far = change_chart(&neg, k)?;
        let far_pos = far.filter_exponents(|n| n >= 0);
        let back = change_chart(&far_pos, k)?;
        u1 = &u1 + &back;
        rest = &neg - &back;
        if pos.is_zero() && far_pos.is_zero() {
            break;
        }
    }
    Ok(HolomorphicSplit {
        u0,
        u1,
        obstruction: rest,
    })
}
