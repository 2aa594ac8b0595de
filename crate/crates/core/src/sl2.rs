//! The three `sl₂` triples of global degree-0 vector fields and their action
//! on `H¹(𝒯₂)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Rational, RationalMatrix};
use crate::cohomology::{build_context, reduce, CohClass, H1Context};
use crate::error::{Error, Result};
use crate::parse::parse_field;
use crate::superfield::{change_chart, super_bracket, Chart, GradingVector, SuperField, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sl2Kind {
    /// `e = ∂/∂x`, `f = ∂/∂y`.
    S,
    /// Adds `ξ2 ∂/∂ξ1` to `e` and `η1 ∂/∂η2` to `f`; needs `k1 = k2`.
    SPrime,
    /// Adds `ξ2 ∂/∂ξ1 + ξ3 ∂/∂ξ2` to `e` and `2η1 ∂/∂η2 + 2η2 ∂/∂η3` to `f`;
    /// needs `m = 3` and `k1 = k2 = k3`.
    SDoublePrime,
}

impl Sl2Kind {
    pub const ALL: [Sl2Kind; 3] = [Sl2Kind::S, Sl2Kind::SPrime, Sl2Kind::SDoublePrime];

    pub fn name(self) -> &'static str {
        match self {
            Sl2Kind::S => "s",
            Sl2Kind::SPrime => "s-prime",
            Sl2Kind::SDoublePrime => "s-double-prime",
        }
    }

    /// Whether the triple exists for `k` (as given, without renumbering).
    pub fn is_available(self, k: &GradingVector) -> bool {
        let s = k.as_slice();
        match self {
            Sl2Kind::S => true,
            Sl2Kind::SPrime => s.len() >= 2 && s[0] == s[1],
            Sl2Kind::SDoublePrime => s.len() == 3 && s[0] == s[1] && s[1] == s[2],
        }
    }
}

impl fmt::Display for Sl2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sl2Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sl2Kind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| Error::parse(0, "one of s, s-prime, s-double-prime", s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    H,
}

/// `⟨e, f, h⟩` on chart `U0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub kind: Sl2Kind,
    pub k: GradingVector,
    pub e: SuperField,
    pub f: SuperField,
    pub h: SuperField,
}

impl Sl2Triple {
    pub fn generator(&self, g: Generator) -> &SuperField {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::H => &self.h,
        }
    }
}

/// Builds the triple. The `f` parts are written in `U1` coordinates and
/// transported; `h = [e, f]`.
pub fn make_algebra(kind: Sl2Kind, k: &GradingVector) -> Result<Sl2Triple> {
    let m = k.m();
    if !kind.is_available(k) {
        let requirement = match kind {
            Sl2Kind::SPrime => "k1=k2",
            _ => "k1=k2=k3",
        };
        return Err(Error::AlgebraUnavailable {
            k: k.0.clone(),
            requirement: requirement.to_string(),
        });
    }
    let unit = |chart, c: i64, odd: &[usize], target| SuperField::monomial(chart, m, Rational::from_integer(c.into()), 0, odd, target);
    let mut e = unit(Chart::U0, 1, &[], Target::Even);
    let mut f_far = unit(Chart::U1, 1, &[], Target::Even);
    match kind {
        Sl2Kind::S => {}
        Sl2Kind::SPrime => {
            e = &e + &unit(Chart::U0, 1, &[2], Target::Odd(1));
            f_far = &f_far + &unit(Chart::U1, 1, &[1], Target::Odd(2));
        }
        Sl2Kind::SDoublePrime => {
            e = &(&e + &unit(Chart::U0, 1, &[2], Target::Odd(1))) + &unit(Chart::U0, 1, &[3], Target::Odd(2));
            f_far = &(&f_far + &unit(Chart::U1, 2, &[1], Target::Odd(2))) + &unit(Chart::U1, 2, &[2], Target::Odd(3));
        }
    }
    let f = change_chart(&f_far, k)?;
    let h = super_bracket(&e, &f)?;
    Ok(Sl2Triple {
        kind,
        k: k.clone(),
        e,
        f,
        h,
    })
}

/// Matrix of `w ↦ [g, w]` on the basis of `ctx`; column `t` holds the
/// coordinates of `[g, basis_t]`.
pub fn ad_matrix(a: &Sl2Triple, g: Generator, ctx: &Arc<H1Context>) -> Result<RationalMatrix> {
    if a.k != *ctx.k() {
        return Err(Error::ContextMismatch(format!(
            "algebra built for {} but context for {}",
            a.k,
            ctx.k()
        )));
    }
    let gen = a.generator(g);
    let cols = ctx
        .basis()
        .iter()
        .map(|b| Ok(reduce(ctx, &super_bracket(gen, b)?)?.coords().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_columns(ctx.dim(), &cols)
}

/// Coordinate vectors spanning the common kernel of `ad e`, `ad f`, `ad h`.
pub fn invariant_kernel(a: &Sl2Triple, ctx: &Arc<H1Context>) -> Result<Vec<Vec<Rational>>> {
    if ctx.dim() == 0 {
        return Ok(Vec::new());
    }
    let me = ad_matrix(a, Generator::E, ctx)?;
    let mf = ad_matrix(a, Generator::F, ctx)?;
    let mh = ad_matrix(a, Generator::H, ctx)?;
    Ok(me.vstack(&mf)?.vstack(&mh)?.kernel())
}

/// Invariant classes of `kind` in `H¹(𝒯₂)` for `k` as given.
pub fn invariant_subspace(kind: Sl2Kind, k: &GradingVector) -> Result<Vec<CohClass>> {
    let ctx = build_context(k, 2)?;
    invariant_subspace_in(kind, &ctx)
}

/// As [`invariant_subspace`] on an existing `q = 2` context.
///
/// When the published representatives for `(kind, k)` span exactly the
/// computed kernel they are returned; otherwise the kernel basis is.
pub fn invariant_subspace_in(kind: Sl2Kind, ctx: &Arc<H1Context>) -> Result<Vec<CohClass>> {
    let triple = make_algebra(kind, ctx.k())?;
    let kernel = invariant_kernel(&triple, ctx)?;
    let published = published_invariants(kind, ctx.k());
    if !published.is_empty() && published.len() == kernel.len() {
        let classes = published
            .iter()
            .map(|v| reduce(ctx, v))
            .collect::<Result<Vec<_>>>()?;
        let coords: Vec<Vec<Rational>> = classes.iter().map(|c| c.coords().to_vec()).collect();
        let independent = RationalMatrix::from_rows(coords.clone())?.rank() == coords.len();
        let inside = coords.iter().all(|c| crate::algebra::in_span(&kernel, c));
        if independent && inside {
            return Ok(classes);
        }
    }
    kernel
        .into_iter()
        .map(|c| CohClass::from_coords(ctx, c))
        .collect()
}

/// Kinds available for `k` whose whole triple annihilates `[z]`.
pub fn homogeneity_certificate(k: &GradingVector, z: &CohClass) -> Result<Vec<Sl2Kind>> {
    let ctx = z.context();
    let mut out = Vec::new();
    for kind in Sl2Kind::ALL {
        if !kind.is_available(k) {
            continue;
        }
        let triple = make_algebra(kind, k)?;
        let mut annihilated = true;
        for g in [Generator::E, Generator::F, Generator::H] {
            let image = reduce(ctx, &super_bracket(triple.generator(g), z.representative())?)?;
            if !image.is_zero() {
                annihilated = false;
                break;
            }
        }
        if annihilated {
            out.push(kind);
        }
    }
    Ok(out)
}

fn field(text: &str) -> SuperField {
    parse_field(text, Chart::U0, 3).expect("published cocycle text")
}

/// `(1/x) ξ_iξ_j ∂/∂x + (k_l / 2x²) ξ_iξ_jξ_l ∂/∂ξ_l` for `m = 3`, or just the
/// first term for `m = 2`.
pub fn pair_invariant_sum_four(k: &GradingVector, i: usize, j: usize) -> SuperField {
    let m = k.m();
    let mut v = SuperField::monomial(Chart::U0, m, Rational::from_integer(1.into()), -1, &[i, j], Target::Even);
    if m == 3 {
        let l = 6 - i - j;
        v = &v + &SuperField::monomial(Chart::U0, 3, rat(k.get(l), 2), -2, &[i, j, l], Target::Odd(l));
    }
    v
}

/// `(1/x) ξ_iξ_jξ_l ∂/∂ξ_l`.
pub fn pair_invariant_sum_two(i: usize, j: usize) -> SuperField {
    let l = 6 - i - j;
    SuperField::monomial(Chart::U0, 3, Rational::from_integer(1.into()), -1, &[i, j, l], Target::Odd(l))
}

/// `x⁻² ξ1ξ2ξ3 ∂/∂ξ2 − x⁻¹ ξ1ξ2ξ3 ∂/∂ξ1`.
pub fn s_prime_sum_three() -> SuperField {
    field("x^-2 xi1*xi2*xi3 d/dxi2 - x^-1 xi1*xi2*xi3 d/dxi1")
}

/// `x⁻¹ ξ2ξ3 ∂/∂x + x⁻² ξ1ξ3 ∂/∂x + (k/3) x⁻² ξ1ξ2ξ3 ∂/∂ξ1 − (2k/3) x⁻³ ξ1ξ2ξ3 ∂/∂ξ2`.
pub fn s_prime_sum_five(k: i64) -> SuperField {
    let one = Rational::from_integer(1.into());
    let terms = [
        SuperField::monomial(Chart::U0, 3, one.clone(), -1, &[2, 3], Target::Even),
        SuperField::monomial(Chart::U0, 3, one, -2, &[1, 3], Target::Even),
        SuperField::monomial(Chart::U0, 3, rat(k, 3), -2, &[1, 2, 3], Target::Odd(1)),
        SuperField::monomial(Chart::U0, 3, rat(-2 * k, 3), -3, &[1, 2, 3], Target::Odd(2)),
    ];
    terms.iter().fold(SuperField::zero(Chart::U0, 3), |acc, t| &acc + t)
}

pub fn s_double_prime_222() -> SuperField {
    field("x^-3 xi1*xi2*xi3 d/dxi3 - 1/2*x^-2 xi1*xi2*xi3 d/dxi2 + 1/2*x^-1 xi1*xi2*xi3 d/dxi1")
}

pub fn s_double_prime_333() -> SuperField {
    field(
        "x^-3 xi1*xi2 d/dx + 1/2*x^-2 xi1*xi3 d/dx + 1/2*x^-1 xi2*xi3 d/dx \
         + 3/8*x^-2 xi1*xi2*xi3 d/dxi1 - 3/4*x^-3 xi1*xi2*xi3 d/dxi2 + 9/4*x^-4 xi1*xi2*xi3 d/dxi3",
    )
}

/// The published invariant cocycles for `(kind, k)` with `k` as given, in
/// the published order; empty when the case list has no entry.
pub fn published_invariants(kind: Sl2Kind, k: &GradingVector) -> Vec<SuperField> {
    if !kind.is_available(k) {
        return Vec::new();
    }
    let m = k.m();
    match (kind, m) {
        (Sl2Kind::S, 2) | (Sl2Kind::SPrime, 2) => {
            if k.get(1) + k.get(2) == 4 {
                vec![pair_invariant_sum_four(k, 1, 2)]
            } else {
                Vec::new()
            }
        }
        (Sl2Kind::S, 3) => {
            let mut out = Vec::new();
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                let l = 6 - i - j;
                let sum = k.get(i) + k.get(j);
                if sum == 4 {
                    out.push(pair_invariant_sum_four(k, i, j));
                } else if sum == 2 && k.get(l) == 0 {
                    out.push(pair_invariant_sum_two(i, j));
                }
            }
            out
        }
        (Sl2Kind::SPrime, 3) => {
            let (a, c) = (k.get(1), k.get(3));
            match (a, c) {
                (2, 1) => vec![pair_invariant_sum_four(k, 1, 2), s_prime_sum_three()],
                (2, 3) => vec![pair_invariant_sum_four(k, 1, 2), s_prime_sum_five(2)],
                (2, _) => vec![pair_invariant_sum_four(k, 1, 2)],
                (1, 0) => vec![pair_invariant_sum_two(1, 2)],
                (a, c) if c == 3 - a => vec![s_prime_sum_three()],
                (a, c) if c == 5 - a => vec![s_prime_sum_five(a)],
                _ => Vec::new(),
            }
        }
        (Sl2Kind::SDoublePrime, 3) => match k.get(1) {
            2 => vec![s_double_prime_222()],
            3 => vec![s_double_prime_333()],
            _ => Vec::new(),
        },
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn k3(a: i64, b: i64, c: i64) -> GradingVector {
        GradingVector::new(vec![a, b, c])
    }

    #[test]
    fn standard_triple() {
        let k = k3(2, -1, 3);
        let t = make_algebra(Sl2Kind::S, &k).unwrap();
        let f = parse_field("-2*x xi1 d/dxi1 + x xi2 d/dxi2 - 3*x xi3 d/dxi3 - x^2 d/dx", Chart::U0, 3).unwrap();
        assert_eq!(t.f, f);
        let h = parse_field("-2 xi1 d/dxi1 + xi2 d/dxi2 - 3 xi3 d/dxi3 - 2*x d/dx", Chart::U0, 3).unwrap();
        assert_eq!(t.h, h);
    }

    #[test]
    fn availability_errors_name_the_condition() {
        assert!(make_algebra(Sl2Kind::SPrime, &k3(2, 2, 3)).is_ok());
        match make_algebra(Sl2Kind::SPrime, &k3(2, 1, 3)) {
            Err(Error::AlgebraUnavailable { requirement, .. }) => assert_eq!(requirement, "k1=k2"),
            other => panic!("{other:?}"),
        }
        match make_algebra(Sl2Kind::SDoublePrime, &k3(2, 2, 3)) {
            Err(Error::AlgebraUnavailable { requirement, .. }) => assert_eq!(requirement, "k1=k2=k3"),
            other => panic!("{other:?}"),
        }
        let t = make_algebra(Sl2Kind::SDoublePrime, &k3(2, 2, 2)).unwrap();
        let e = parse_field("d/dx + xi2 d/dxi1 + xi3 d/dxi2", Chart::U0, 3).unwrap();
        assert_eq!(t.e, e);
        let f = parse_field("-x^2 d/dx - 2*x xi1 d/dxi1 - 2*x xi2 d/dxi2 - 2*x xi3 d/dxi3 + 2 xi1 d/dxi2 + 2 xi2 d/dxi3", Chart::U0, 3)
            .unwrap();
        assert_eq!(t.f, f);
    }

    #[test]
    fn relations_for_all_kinds() {
        for k in [k3(2, 2, 2), k3(-3, -3, -3), k3(1, 1, 5)] {
            for kind in Sl2Kind::ALL.into_iter().filter(|kind| kind.is_available(&k)) {
                let t = make_algebra(kind, &k).unwrap();
                assert_eq!(super_bracket(&t.h, &t.e).unwrap(), t.e.scale(&int(2)));
                assert_eq!(super_bracket(&t.h, &t.f).unwrap(), t.f.scale(&int(-2)));
                for g in [&t.e, &t.f, &t.h] {
                    assert_eq!(g.homogeneous_degree(), Some(0));
                }
            }
        }
    }

    #[test]
    fn zero_weight_cocycles() {
        // 2r = k_i + k_j − 2 for ∂/∂x, 2r = k_i + k_j for ∂/∂ξ_l
        let k = k3(3, 3, 1);
        let ctx = build_context(&k, 2).unwrap();
        let t = make_algebra(Sl2Kind::S, &k).unwrap();
        for z in [
            SuperField::monomial(Chart::U0, 3, int(1), -2, &[1, 2], Target::Even),
            SuperField::monomial(Chart::U0, 3, int(1), -3, &[1, 2, 3], Target::Odd(3)),
        ] {
            let hz = reduce(&ctx, &super_bracket(&t.h, &z).unwrap()).unwrap();
            assert!(hz.is_zero());
        }
    }

    #[test]
    fn s_invariants_match_published() {
        let k = k3(2, 0, 0);
        let inv = invariant_subspace(Sl2Kind::S, &k).unwrap();
        assert_eq!(inv.len(), 2);
        assert_eq!(inv[0].representative(), &pair_invariant_sum_two(1, 2));
        assert_eq!(inv[1].representative(), &pair_invariant_sum_two(1, 3));

        assert!(invariant_subspace(Sl2Kind::S, &k3(1, 1, 1)).unwrap().is_empty());
    }

    #[test]
    fn certificate_of_zero_class_lists_every_kind() {
        let k = k3(2, 2, 2);
        let ctx = build_context(&k, 2).unwrap();
        let zero = CohClass::from_coords(&ctx, vec![int(0); ctx.dim()]).unwrap();
        assert_eq!(homogeneity_certificate(&k, &zero).unwrap(), Sl2Kind::ALL.to_vec());
        let z = reduce(&ctx, &s_double_prime_222()).unwrap();
        assert!(homogeneity_certificate(&k, &z).unwrap().contains(&Sl2Kind::SDoublePrime));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in Sl2Kind::ALL {
            assert_eq!(kind.name().parse::<Sl2Kind>().unwrap(), kind);
        }
        assert!("t".parse::<Sl2Kind>().is_err());
    }
}
