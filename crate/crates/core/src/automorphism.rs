//! Automorphisms of the odd bundle and their conjugation action on fields and
//! cohomology classes.
//!
//! An automorphism `A = (a_ij)` acts on the odd frame of `U0` by
//! `ξ_j ↦ Σ_i a_ij(x) ξ_i` and fixes `x`. Writing `φ` for this algebra map,
//! `Int A(v) = φ ∘ v ∘ φ⁻¹`; it is read off from its values on the
//! coordinates: `Int A(v)(x) = φ(v(x))` and
//! `Int A(v)(ξ_j) = φ(v(Σ_i b_ij ξ_i))` with `B = A⁻¹`.

use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_laurent, quotient_coordinates, LaurentPoly, Rational, RationalMatrix};
use crate::cohomology::{reduce, CohClass};
use crate::error::{Error, Result};
use crate::superfield::{
    apply_derivation, Chart, FieldTerm, GradingVector, OddMonomial, SuperField, SuperFunction, Target,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleAutomorphism {
    k: GradingVector,
    /// `entries[i][j] = a_{i+1, j+1}`.
    entries: Vec<Vec<LaurentPoly>>,
}

/// Outcome of [`BundleAutomorphism::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AutomorphismFile {
    k: Vec<i64>,
    entries: Vec<Vec<String>>,
}

fn det_of(entries: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = entries.len();
    match n {
        0 => LaurentPoly::one(),
        1 => entries[0][0].clone(),
        _ => {
            let mut acc = LaurentPoly::zero();
            for (j, a) in entries[0].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let minor = minor_of(entries, 0, j);
                let term = a * &det_of(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

fn minor_of(entries: &[Vec<LaurentPoly>], row: usize, col: usize) -> Vec<Vec<LaurentPoly>> {
    entries
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect()
}

impl BundleAutomorphism {
    /// Checks only the shape; see [`BundleAutomorphism::validate`] for the
    /// degree constraints.
    pub fn new(k: GradingVector, entries: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let m = k.m();
        if entries.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: entries.len(),
            });
        }
        for row in &entries {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
        }
        Ok(BundleAutomorphism { k, entries })
    }

    pub fn identity(k: GradingVector) -> Self {
        let d: Vec<Rational> = vec![Rational::one(); k.m()];
        Self::diagonal(k, &d)
    }

    pub fn diagonal(k: GradingVector, diag: &[Rational]) -> Self {
        let m = k.m();
        assert_eq!(diag.len(), m, "diagonal length");
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { LaurentPoly::constant(diag[i].clone()) } else { LaurentPoly::zero() })
                    .collect()
            })
            .collect();
        BundleAutomorphism { k, entries }
    }

    pub fn k(&self) -> &GradingVector {
        &self.k
    }

    pub fn m(&self) -> usize {
        self.k.m()
    }

    /// `a_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    /// Largest admissible degree of `a_ij`, or `None` when the entry must vanish.
    pub fn degree_bound(k: &GradingVector, i: usize, j: usize) -> Option<i64> {
        let d = k.get(j) - k.get(i);
        (d >= 0).then_some(d)
    }

    pub fn validate(&self) -> Validation {
        let m = self.m();
        let mut diagnostics = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                match Self::degree_bound(&self.k, i, j) {
                    None => diagnostics.push(format!(
                        "a{i}{j} = {a} must vanish since k{j} - k{i} = {} < 0",
                        self.k.get(j) - self.k.get(i)
                    )),
                    Some(bound) => {
                        if !a.is_polynomial() {
                            diagnostics.push(format!("a{i}{j} = {a} has negative powers of x"));
                        } else if a.max_exponent().unwrap_or(0) > bound {
                            diagnostics.push(format!(
                                "a{i}{j} = {a} has degree {} > k{j} - k{i} = {bound}",
                                a.max_exponent().unwrap_or(0)
                            ));
                        }
                    }
                }
            }
        }
        let det = self.det();
        match det.as_constant() {
            Some(c) if !c.is_zero() => {}
            Some(_) => diagnostics.push("determinant is zero".to_string()),
            None => diagnostics.push(format!("determinant {det} is not a constant")),
        }
        Validation {
            valid: diagnostics.is_empty(),
            diagnostics,
        }
    }

    pub fn det(&self) -> LaurentPoly {
        det_of(&self.entries)
    }

    /// Classical adjugate: `adj[i][j] = (−1)^{i+j} det(minor(j, i))`.
    pub fn adjugate(&self) -> Vec<Vec<LaurentPoly>> {
        let m = self.m();
        if m == 1 {
            return vec![vec![LaurentPoly::one()]];
        }
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let d = det_of(&minor_of(&self.entries, j, i));
                        if (i + j) % 2 == 0 {
                            d
                        } else {
                            -&d
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `A⁻¹`, defined whenever the determinant is a unit `c·x^n`.
    pub fn inverse(&self) -> Result<BundleAutomorphism> {
        let det = self.det();
        if det.num_terms() != 1 {
            return Err(Error::InvalidAutomorphism(format!("determinant {det} is not invertible")));
        }
        let (n, c) = det.terms().next().map(|(n, c)| (n, c.clone())).expect("one term");
        let inv = LaurentPoly::monomial(c.recip(), -n);
        let entries = self
            .adjugate()
            .into_iter()
            .map(|row| row.iter().map(|a| a * &inv).collect())
            .collect();
        Ok(BundleAutomorphism {
            k: self.k.clone(),
            entries,
        })
    }

    /// `self · other` (apply `other` first on the frame).
    pub fn compose(&self, other: &BundleAutomorphism) -> Result<BundleAutomorphism> {
        if self.k != other.k {
            return Err(Error::InvalidAutomorphism(format!(
                "cannot compose automorphisms for {} and {}",
                self.k, other.k
            )));
        }
        let m = self.m();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut acc = LaurentPoly::zero();
                        for t in 0..m {
                            acc += &(&self.entries[i][t] * &other.entries[t][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(BundleAutomorphism {
            k: self.k.clone(),
            entries,
        })
    }

    /// Constant entries as a rational matrix, if every entry is constant.
    pub fn constant_matrix(&self) -> Option<RationalMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(LaurentPoly::as_constant).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        RationalMatrix::from_rows(rows).ok()
    }

    /// `φ(ξ_j) = Σ_i a_ij ξ_i`.
    fn image_of_generator(&self, j: usize) -> SuperFunction {
        let m = self.m();
        let mut out = SuperFunction::zero(Chart::U0, m);
        for i in 1..=m {
            out.add_term(OddMonomial::generator(i), self.entry(i, j));
        }
        out
    }

    /// The algebra map `φ` on a `U0` function.
    pub fn substitute(&self, f: &SuperFunction) -> Result<SuperFunction> {
        let m = self.m();
        if f.m() != m {
            return Err(Error::OddDimMismatch { left: m, right: f.m() });
        }
        let mut out = SuperFunction::zero(Chart::U0, m);
        for (mono, c) in f.terms() {
            let mut prod = SuperFunction::from_laurent(Chart::U0, m, c.clone());
            for i in mono.indices() {
                prod = prod.mul(&self.image_of_generator(i))?;
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// `φ ∘ v ∘ φ⁻¹` for a field on `U0`.
    pub fn conjugate_field(&self, v: &SuperField) -> Result<SuperField> {
        let m = self.m();
        if v.chart() != Chart::U0 {
            return Err(Error::ChartMismatch {
                left: Chart::U0,
                right: v.chart(),
            });
        }
        if v.m() != m {
            return Err(Error::OddDimMismatch { left: m, right: v.m() });
        }
        let inv = self.inverse()?;
        let x = SuperFunction::even_coordinate(Chart::U0, m);
        let even_value = self.substitute(&apply_derivation(v, &x)?)?;
        let mut out = SuperField::zero(Chart::U0, m);
        for (mono, c) in even_value.terms() {
            out.add_term(c.clone(), mono, Target::Even);
        }
        for j in 1..=m {
            let pre = inv.image_of_generator(j);
            let value = self.substitute(&apply_derivation(v, &pre)?)?;
            for (mono, c) in value.terms() {
                out.add_term(c.clone(), mono, Target::Odd(j));
            }
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// `{"k": [..], "entries": [["1", "-x", "0"], ..]}` with Laurent strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AutomorphismFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            expected: "automorphism JSON {\"k\": [...], \"entries\": [[...]]}".to_string(),
            found: e.to_string(),
        })?;
        let entries = file
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_laurent(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(GradingVector::new(file.k), entries)
    }

    pub fn to_json(&self) -> String {
        let file = AutomorphismFile {
            k: self.k.0.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|a| a.to_string()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

impl fmt::Display for BundleAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|a| a.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Whether the automorphism's degree constraints are enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    Enforce,
    Skip,
}

/// `[Int A (z)]`, computed by conjugating the representative and reducing.
pub fn int_action(a: &BundleAutomorphism, z: &CohClass) -> Result<CohClass> {
    int_action_with(a, z, ValidationMode::Enforce)
}

pub fn int_action_with(a: &BundleAutomorphism, z: &CohClass, mode: ValidationMode) -> Result<CohClass> {
    if *a.k() != *z.context().k() {
        return Err(Error::ContextMismatch(format!(
            "automorphism for {} but class for {}",
            a.k(),
            z.context().k()
        )));
    }
    if mode == ValidationMode::Enforce {
        let check = a.validate();
        if !check.valid {
            return Err(Error::InvalidAutomorphism(check.diagnostics.join("; ")));
        }
    }
    reduce(z.context(), &a.conjugate_field(z.representative())?)
}

/// The closed-form conjugation of a degree-2 generator for `m = 3`.
///
/// With `B = A⁻¹` and `b'` its entrywise `x`-derivative:
///
/// * `ξ1ξ2ξ3 ∂/∂ξ_k ↦ det A · Σ_s b_ks ξ1ξ2ξ3 ∂/∂ξ_s`
/// * `ξ_iξ_j ∂/∂x ↦ det A · Σ_{p<s} (−1)^{l+r} b_lr ξ_pξ_s ∂/∂x
///   + det A · Σ_s b'_ls ξ_iξ_jξ_l ∂/∂ξ_s`
///
/// where `i < j`, `l` is the index missing from `{i, j}`, `r` the index
/// missing from `{p, s}`, and `ξ_iξ_jξ_l` is taken in that order (so it is
/// `−ξ1ξ2ξ3` for the pair `(1, 3)`). The Laurent coefficient of the term
/// passes through unchanged since `φ` fixes `x`.
pub fn closed_form_action(a: &BundleAutomorphism, t: &FieldTerm) -> Result<SuperField> {
    if a.m() != 3 || t.degree() != 2 {
        return Err(Error::UnsupportedTerm(format!(
            "closed form covers degree-2 terms with m = 3, got degree {} with m = {}",
            t.degree(),
            a.m()
        )));
    }
    let inv = a.inverse()?;
    let det = a.det();
    let b = |i: usize, j: usize| inv.entry(i, j).clone();
    let full = OddMonomial::from_sorted(&[1, 2, 3]).expect("sorted");
    let mut out = SuperField::zero(Chart::U0, 3);
    match t.target {
        Target::Odd(kk) => {
            for s in 1..=3 {
                out.add_term(&(&det * &b(kk, s)) * &t.coeff, full, Target::Odd(s));
            }
        }
        Target::Even => {
            let idx: Vec<usize> = t.odd.indices().collect();
            let (i, j) = (idx[0], idx[1]);
            let l = 6 - i - j;
            for (p, s) in [(1, 2), (1, 3), (2, 3)] {
                let r = 6 - p - s;
                let coeff = &(&det * &b(l, r)) * &t.coeff;
                let coeff = if (l + r) % 2 == 0 { coeff } else { -&coeff };
                let pair = OddMonomial::from_sorted(&[p, s]).expect("sorted");
                out.add_term(coeff, pair, Target::Even);
            }
            let (sign, _) = OddMonomial::product_of(&[i, j, l]).expect("distinct");
            for s in 1..=3 {
                let coeff = &(&det * &b(l, s).derivative()) * &t.coeff;
                let coeff = if sign > 0 { coeff } else { -&coeff };
                out.add_term(coeff, full, Target::Odd(s));
            }
        }
    }
    Ok(out)
}

/// `c` with `z2 = c · z1`, if any (`c = 1` when both vanish).
pub fn scalar_equivalent(z1: &CohClass, z2: &CohClass) -> Option<Rational> {
    let (a, b) = (z1.coords(), z2.coords());
    if a.len() != b.len() {
        return None;
    }
    if z1.is_zero() && z2.is_zero() {
        return Some(Rational::one());
    }
    let pivot = a.iter().position(|c| !c.is_zero())?;
    let ratio = &b[pivot] / &a[pivot];
    if ratio.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y).then_some(ratio)
}

/// Result of testing a claimed identity `Int A (z1) = z2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub holds: bool,
    /// `Some(c)` with `Int A (z1) = c · z2` when checked up to a scalar.
    pub scalar: Option<Rational>,
    pub image: Vec<Rational>,
    pub validation: Validation,
}

pub fn orbit_witness_check(
    a: &BundleAutomorphism,
    z1: &CohClass,
    z2: &CohClass,
    up_to_scalar: bool,
    mode: ValidationMode,
) -> Result<WitnessReport> {
    if z1.context().k() != z2.context().k() || z1.context().dim() != z2.context().dim() {
        return Err(Error::ContextMismatch("witness classes live in different contexts".to_string()));
    }
    let validation = a.validate();
    let image = int_action_with(a, z1, mode)?;
    let (holds, scalar) = if up_to_scalar {
        let c = scalar_equivalent(z2, &image);
        (c.is_some(), c)
    } else {
        (image.coords() == z2.coords(), None)
    };
    Ok(WitnessReport {
        holds,
        scalar,
        image: image.coords().to_vec(),
        validation,
    })
}

/// Matrix `M` with `Int A (v_i) = Σ_j M_ij v_j`, or an error when some image
/// leaves the span of the `v_j`.
pub fn action_matrix(a: &BundleAutomorphism, vs: &[CohClass]) -> Result<RationalMatrix> {
    let basis: Vec<Vec<Rational>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    let mut rows = Vec::with_capacity(vs.len());
    for v in vs {
        let image = int_action(a, v)?;
        let coords = quotient_coordinates(&basis, &[], image.coords())?
            .ok_or_else(|| Error::Precondition("image leaves the spanned subspace".to_string()))?;
        rows.push(coords);
    }
    RationalMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::cohomology::build_context;
    use crate::parse::parse_field;

    fn k3(a: i64, b: i64, c: i64) -> GradingVector {
        GradingVector::new(vec![a, b, c])
    }

    fn lp(s: &str) -> LaurentPoly {
        parse_laurent(s).unwrap()
    }

    fn matrix(k: GradingVector, rows: [[&str; 3]; 3]) -> BundleAutomorphism {
        BundleAutomorphism::new(k, rows.iter().map(|r| r.iter().map(|s| lp(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let a = matrix(k3(-2, 0, 4), [["1", "-x", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
        assert!(a.validate().valid);
        let d = BundleAutomorphism::diagonal(k3(5, -1, 2), &[int(2), int(-3), rat(1, 2)]);
        assert!(d.validate().valid);
        let bad = matrix(k3(2, 2, 1), [["1", "0", "0"], ["0", "1", "1"], ["0", "0", "1"]]);
        let v = bad.validate();
        assert!(!v.valid);
        assert_eq!(v.diagnostics.len(), 1);
        assert!(v.diagnostics[0].starts_with("a23"));
        let singular = matrix(k3(0, 0, 0), [["1", "1", "0"], ["1", "1", "0"], ["0", "0", "1"]]);
        assert!(!singular.validate().valid);
    }

    #[test]
    fn inverse_and_adjugate() {
        let a = matrix(k3(-2, 0, 4), [["2", "-x", "x^3"], ["0", "1", "x^2 + 1"], ["0", "0", "3"]]);
        let b = a.inverse().unwrap();
        assert_eq!(a.compose(&b).unwrap(), BundleAutomorphism::identity(a.k().clone()));
        assert!(b.validate().valid);
    }

    #[test]
    fn substitution_is_the_frame_change() {
        let a = matrix(k3(0, 0, 0), [["1", "2", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
        // φ(ξ2) = 2ξ1 + ξ2, so φ(ξ2ξ3) = 2ξ1ξ3 + ξ2ξ3
        let f = SuperFunction::term(Chart::U0, 3, LaurentPoly::one(), OddMonomial::from_sorted(&[2, 3]).unwrap());
        let g = a.substitute(&f).unwrap();
        assert_eq!(g.coeff(OddMonomial::from_sorted(&[1, 3]).unwrap()), LaurentPoly::constant(int(2)));
        assert_eq!(g.coeff(OddMonomial::from_sorted(&[2, 3]).unwrap()), LaurentPoly::one());
    }

    #[test]
    fn scalar_diagonal_action() {
        // diag(a,a,a) multiplies every degree-2 class by a²
        let k = k3(2, 2, 2);
        let ctx = build_context(&k, 2).unwrap();
        let a = BundleAutomorphism::diagonal(k, &[int(3), int(3), int(3)]);
        for t in 0..ctx.dim() {
            let mut coords = vec![int(0); ctx.dim()];
            coords[t] = int(1);
            let z = CohClass::from_coords(&ctx, coords).unwrap();
            let image = int_action(&a, &z).unwrap();
            assert_eq!(scalar_equivalent(&z, &image), Some(int(9)));
        }
    }

    #[test]
    fn closed_form_identity_and_diagonal() {
        let k = k3(1, 2, 3);
        let id = BundleAutomorphism::identity(k.clone());
        let d = BundleAutomorphism::diagonal(k, &[int(2), int(3), int(5)]);
        let v = parse_field("x^-1 xi1*xi2*xi3 d/dxi2", Chart::U0, 3).unwrap();
        let t = v.terms().next().unwrap();
        assert_eq!(closed_form_action(&id, &t).unwrap(), v);
        assert_eq!(closed_form_action(&d, &t).unwrap(), v.scale(&int(10)));
        assert_eq!(d.conjugate_field(&v).unwrap(), v.scale(&int(10)));
        let bad = parse_field("x^-1 xi1 d/dx", Chart::U0, 3).unwrap();
        assert!(closed_form_action(&id, &bad.terms().next().unwrap()).is_err());
    }

    #[test]
    fn scalar_equivalence() {
        let k = k3(2, 2, 1);
        let ctx = build_context(&k, 2).unwrap();
        let z = CohClass::from_coords(&ctx, (0..ctx.dim()).map(|i| int(i as i64 - 2)).collect()).unwrap();
        let z2 = CohClass::from_coords(&ctx, z.coords().iter().map(|c| c * int(2)).collect()).unwrap();
        let zero = CohClass::from_coords(&ctx, vec![int(0); ctx.dim()]).unwrap();
        assert_eq!(scalar_equivalent(&z, &z2), Some(int(2)));
        assert_eq!(scalar_equivalent(&z, &zero), None);
        assert_eq!(scalar_equivalent(&zero, &zero), Some(int(1)));
    }

    #[test]
    fn json_round_trip() {
        let a = matrix(k3(-2, 0, 4), [["1", "-x", "0"], ["0", "1", "0"], ["0", "0", "1"]]);
        let back = BundleAutomorphism::from_json(&a.to_json()).unwrap();
        assert_eq!(a, back);
        let text = r#"{"k": [-2, 0, 4], "entries": [["1", "-x", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#;
        assert_eq!(BundleAutomorphism::from_json(text).unwrap(), a);
        assert!(BundleAutomorphism::from_json(r#"{"k": [1], "entries": [["1", "2"]]}"#).is_err());
    }
}
