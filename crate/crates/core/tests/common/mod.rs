#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use superp1::algebra::{int, rat, LaurentPoly, Rational};
use superp1::automorphism::BundleAutomorphism;
use superp1::parse::parse_field;
use superp1::superfield::{Chart, GradingVector, OddMonomial, SuperField, Target};

pub fn k3(a: i64, b: i64, c: i64) -> GradingVector {
    GradingVector::new(vec![a, b, c])
}

pub fn f3(text: &str) -> SuperField {
    parse_field(text, Chart::U0, 3).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// `Σ c_i · text_i`, so coefficients never have to be spliced into text.
pub fn combo(m: usize, terms: &[(Rational, &str)]) -> SuperField {
    terms.iter().fold(SuperField::zero(Chart::U0, m), |acc, (c, text)| {
        let t = parse_field(text, Chart::U0, m).unwrap_or_else(|e| panic!("{text}: {e}"));
        &acc + &t.scale(c)
    })
}

pub fn ordered_box(lo: i64, hi: i64) -> Vec<GradingVector> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                out.push(k3(a, b, c));
            }
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-4..=4);
    let d = if rng.gen_bool(0.25) { rng.gen_range(1..=3) } else { 1 };
    rat(n, d)
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// Entries within their degree bounds; retried until `det A ≠ 0`.
pub fn random_automorphism(k: &GradingVector, rng: &mut ChaCha8Rng) -> BundleAutomorphism {
    let m = k.m();
    loop {
        let entries: Vec<Vec<LaurentPoly>> = (1..=m)
            .map(|i| {
                (1..=m)
                    .map(|j| match BundleAutomorphism::degree_bound(k, i, j) {
                        None => LaurentPoly::zero(),
                        Some(d) => LaurentPoly::from_terms((0..=d).map(|n| (n, random_rational(rng)))),
                    })
                    .collect()
            })
            .collect();
        let a = BundleAutomorphism::new(k.clone(), entries).unwrap();
        if a.validate().valid {
            return a;
        }
    }
}

pub fn random_diagonal(k: &GradingVector, rng: &mut ChaCha8Rng) -> BundleAutomorphism {
    let d: Vec<Rational> = (0..k.m()).map(|_| random_nonzero(rng)).collect();
    BundleAutomorphism::diagonal(k.clone(), &d)
}

fn odd_from_bits(bits: u32, m: usize) -> Vec<usize> {
    (1..=m).filter(|i| bits & (1 << (i - 1)) != 0).collect()
}

/// Sparse random fields on `U0` with small Laurent support.
pub fn field_strategy(m: usize) -> impl Strategy<Value = SuperField> {
    let term = (-3i64..=3, 1i64..=3, -3i64..=3, 0u32..(1 << m), 0usize..=m);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        terms.into_iter().fold(SuperField::zero(Chart::U0, m), |acc, (n, d, e, bits, t)| {
            let target = if t == 0 { Target::Even } else { Target::Odd(t) };
            let odd = odd_from_bits(bits, m);
            &acc + &SuperField::monomial(Chart::U0, m, rat(n, d), e, &odd, target)
        })
    })
}

/// Random field with a single parity (the even or odd part of a random one).
pub fn homogeneous_parity_strategy(m: usize) -> impl Strategy<Value = SuperField> {
    (field_strategy(m), any::<bool>()).prop_map(|(v, odd)| {
        let [even_part, odd_part] = v.parity_parts();
        if odd {
            odd_part
        } else {
            even_part
        }
    })
}

pub fn grading_strategy(m: usize) -> impl Strategy<Value = GradingVector> {
    prop::collection::vec(-3i64..=4, m).prop_map(GradingVector::new)
}

pub fn all_odd_monomials(m: usize) -> Vec<OddMonomial> {
    (0u32..(1 << m))
        .map(|bits| OddMonomial::from_sorted(&odd_from_bits(bits, m)).unwrap())
        .collect()
}
