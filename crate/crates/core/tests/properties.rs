mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_odd_monomials, field_strategy, grading_strategy, homogeneous_parity_strategy, random_automorphism};
use superp1::algebra::{int, rat, LaurentPoly};
use superp1::automorphism::int_action;
use superp1::cohomology::{build_context, reduce, CohClass};
use superp1::parse::{parse_field, render_field};
use superp1::superfield::{apply_derivation, change_chart, grading_decompose, Chart, GradingVector, SuperField, SuperFunction};

fn function_strategy(m: usize) -> impl Strategy<Value = SuperFunction> {
    let monos = all_odd_monomials(m);
    let term = (-3i64..=3, -3i64..=3, 0..monos.len());
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        terms.into_iter().fold(SuperFunction::zero(Chart::U0, m), |acc, (c, e, i)| {
            &acc + &SuperFunction::term(Chart::U0, m, LaurentPoly::monomial(int(c), e), monos[i])
        })
    })
}

fn parity_function_strategy(m: usize) -> impl Strategy<Value = SuperFunction> {
    (function_strategy(m), any::<bool>()).prop_map(|(f, odd)| {
        let mut out = SuperFunction::zero(f.chart(), f.m());
        for (mono, c) in f.terms() {
            if (mono.len() % 2 == 1) == odd {
                out.add_term(mono, c);
            }
        }
        out
    })
}

fn degree_two_strategy() -> impl Strategy<Value = SuperField> {
    field_strategy(3).prop_map(|v| grading_decompose(&v).remove(&2).unwrap_or_else(|| SuperField::zero(Chart::U0, 3)))
}

fn add_classes(a: &CohClass, b: &CohClass) -> Vec<superp1::algebra::Rational> {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(v in field_strategy(3), k in grading_strategy(3), far in any::<bool>()) {
        let v = if far { change_chart(&v, &k).unwrap() } else { v };
        let text = render_field(&v);
        let back = parse_field(&text, v.chart(), 3).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(render_field(&back), text);
    }

    #[test]
    fn chart_change_is_an_involution(v in field_strategy(3), k in grading_strategy(3)) {
        let w = change_chart(&v, &k).unwrap();
        prop_assert_eq!(w.chart(), Chart::U1);
        prop_assert_eq!(change_chart(&w, &k).unwrap(), v);
    }

    #[test]
    fn derivations_obey_graded_leibniz(
        v in homogeneous_parity_strategy(3),
        f in parity_function_strategy(3),
        g in function_strategy(3),
    ) {
        let lhs = apply_derivation(&v, &f.mul(&g).unwrap()).unwrap();
        let first = apply_derivation(&v, &f).unwrap().mul(&g).unwrap();
        let second = f.mul(&apply_derivation(&v, &g).unwrap()).unwrap();
        let odd_odd = v.parity() == Some(1) && f.parity() == Some(1);
        let second = if odd_odd { second.scale(&LaurentPoly::constant(int(-1))) } else { second };
        prop_assert_eq!(lhs, &first + &second);
    }

    #[test]
    fn reduction_is_linear(v in degree_two_strategy(), w in degree_two_strategy(), k in grading_strategy(3), a in -3i64..=3, b in 1i64..=3) {
        let ctx = build_context(&k, 2).unwrap();
        let c = rat(a, b);
        let combined = reduce(&ctx, &(&v + &w.scale(&c))).unwrap();
        let scaled_w = reduce(&ctx, &w.scale(&c)).unwrap();
        prop_assert_eq!(combined.coords().to_vec(), add_classes(&reduce(&ctx, &v).unwrap(), &scaled_w));
        let wc = reduce(&ctx, &w).unwrap();
        let expected: Vec<_> = wc.coords().iter().map(|x| x * &c).collect();
        prop_assert_eq!(scaled_w.coords().to_vec(), expected);
    }

    #[test]
    fn holomorphic_fields_are_coboundaries(v in degree_two_strategy(), k in grading_strategy(3)) {
        let ctx = build_context(&k, 2).unwrap();
        let u0_part = v.filter_exponents(|n| n >= 0);
        prop_assert!(reduce(&ctx, &u0_part).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conjugation_is_a_group_action(
        seed in any::<u64>(),
        which in 0usize..4,
        v in degree_two_strategy(),
    ) {
        let k = [vec![2, 2, 1], vec![-2, 0, 4], vec![2, 0, 0], vec![3, 1, 1]][which].clone();
        let k = GradingVector::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automorphism(&k, &mut rng);
        let b = random_automorphism(&k, &mut rng);
        let ctx = build_context(&k, 2).unwrap();
        let z = reduce(&ctx, &v).unwrap();
        let ab = a.compose(&b).unwrap();
        let lhs = int_action(&ab, &z).unwrap();
        let rhs = int_action(&a, &int_action(&b, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs.coords(), rhs.coords());
        let back = int_action(&a.inverse().unwrap(), &int_action(&a, &z).unwrap()).unwrap();
        prop_assert_eq!(back.coords(), z.coords());
    }
}
