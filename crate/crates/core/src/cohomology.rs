//! First Čech cohomology of the degree-`q` tangent sheaf for the cover
//! `{U0, U1}`.
//!
//! A 1-cocycle is a degree-`q` field on the overlap, written in `U0`
//! coordinates with Laurent coefficients. Coboundaries are sums of a
//! `U0`-holomorphic field and a `U1`-holomorphic field transported to `U0`.
//! Everything is exact linear algebra on a finite window of exponents.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::sparse::{axpy, SparseVec, TaggedEchelon};
use crate::algebra::{LaurentPoly, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::superfield::{change_chart, Chart, GradingVector, OddMonomial, SuperField, Target};

/// Extra room on both sides of the exponent range touched by chart transport.
const WINDOW_MARGIN: i64 = 2;

/// Closed exponent interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentWindow {
    pub lo: i64,
    pub hi: i64,
}

impl ExponentWindow {
    fn for_grading(k: &GradingVector) -> Self {
        let s = k.abs_sum();
        ExponentWindow {
            lo: -(s + 2) - WINDOW_MARGIN,
            hi: s + 2 + WINDOW_MARGIN,
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

/// `x^n ξ^I ∂/∂target`, one coordinate of the windowed cocycle space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WindowMonomial {
    pub exponent: i64,
    pub odd: OddMonomial,
    pub target: Target,
}

/// All `(ξ^I, target)` of grading degree `q` with `m` odd coordinates, in
/// canonical order.
pub fn shapes_of_degree(m: usize, q: i64) -> Vec<(OddMonomial, Target)> {
    let mut monos: Vec<OddMonomial> = (0u32..(1u32 << m))
        .map(|bits| {
            let idx: Vec<usize> = (1..=m).filter(|i| bits & (1 << (i - 1)) != 0).collect();
            OddMonomial::from_sorted(&idx).expect("sorted")
        })
        .collect();
    monos.sort();
    let mut out = Vec::new();
    for mono in monos {
        if mono.len() as i64 == q {
            out.push((mono, Target::Even));
        }
        if mono.len() as i64 == q + 1 {
            out.extend((1..=m).map(|l| (mono, Target::Odd(l))));
        }
    }
    out
}

/// Basis of `H¹(𝒯_q)` for one grading vector, with the linear map that reads
/// off coordinates of any windowed cocycle.
#[derive(Clone, Debug)]
pub struct H1Context {
    k: GradingVector,
    q: i64,
    window: ExponentWindow,
    shapes: Vec<(OddMonomial, Target)>,
    shape_index: HashMap<(OddMonomial, Target), usize>,
    basis: Vec<SuperField>,
    reducer: RationalMatrix,
}

impl H1Context {
    pub fn k(&self) -> &GradingVector {
        &self.k
    }

    pub fn m(&self) -> usize {
        self.k.m()
    }

    pub fn degree(&self) -> i64 {
        self.q
    }

    pub fn window(&self) -> ExponentWindow {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SuperField] {
        &self.basis
    }

    /// Windowed monomials, in column order of [`H1Context::reducer`].
    pub fn monomials(&self) -> Vec<WindowMonomial> {
        (0..self.shapes.len() * self.window.width())
            .map(|c| self.monomial_at(c))
            .collect()
    }

    pub fn reducer(&self) -> &RationalMatrix {
        &self.reducer
    }

    fn column(&self, odd: OddMonomial, target: Target, n: i64) -> usize {
        self.shape_index[&(odd, target)] * self.window.width() + (n - self.window.lo) as usize
    }

    fn monomial_at(&self, col: usize) -> WindowMonomial {
        let w = self.window.width();
        let (odd, target) = self.shapes[col / w];
        WindowMonomial {
            exponent: self.window.lo + (col % w) as i64,
            odd,
            target,
        }
    }

    fn to_sparse(&self, v: &SuperField) -> SparseVec {
        let mut out = SparseVec::new();
        for (odd, target, c) in v.raw_terms() {
            for (n, a) in c.terms() {
                out.insert(self.column(odd, target, n), a.clone());
            }
        }
        out
    }

    fn same_basis(&self, other: &H1Context) -> bool {
        self.basis == other.basis
    }
}

/// Exponents at or below this value only occur in coboundaries.
fn trivial_threshold(k: &GradingVector) -> i64 {
    -k.abs_sum() - 1
}

/// The published representatives for `m = 3, q = 2`, pair by pair: for
/// `i < j` with `l` the remaining index and `K = k_i + k_j`,
/// `x^{-n} ξ_iξ_j ∂/∂x` for `n = 1..K−3`, then `x^{-n} ξ_iξ_jξ_l ∂/∂ξ_l` for
/// `n = 1..K−1`.
fn pair_candidates(k: &GradingVector) -> Vec<SuperField> {
    let mut out = Vec::new();
    for (i, j, l) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        let kk = k.get(i) + k.get(j);
        for n in 1..=kk - 3 {
            out.push(SuperField::monomial(Chart::U0, 3, Rational::one(), -n, &[i, j], Target::Even));
        }
        for n in 1..=kk - 1 {
            out.push(SuperField::monomial(Chart::U0, 3, Rational::one(), -n, &[i, j, l], Target::Odd(l)));
        }
    }
    out
}

pub fn build_context(k: &GradingVector, q: i64) -> Result<Arc<H1Context>> {
    build_context_with_window(k, q, ExponentWindow::for_grading(k))
}

/// As [`build_context`], with an explicit window. The window must reach at
/// least two below the trivial threshold `−Σ|k_i| − 1` and up to `0`.
pub fn build_context_with_window(k: &GradingVector, q: i64, window: ExponentWindow) -> Result<Arc<H1Context>> {
    let m = k.m();
    // above degree m the sheaf is zero and the basis simply comes out empty
    if q < -1 {
        return Err(Error::DegreeOutOfRange { degree: q, m });
    }
    let threshold = trivial_threshold(k);
    if window.lo > threshold - WINDOW_MARGIN || window.hi < 0 {
        return Err(Error::Precondition(format!(
            "window [{}, {}] too narrow for k = {k}",
            window.lo, window.hi
        )));
    }
    let shapes = shapes_of_degree(m, q);
    let shape_index = shapes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut ctx = H1Context {
        k: k.clone(),
        q,
        window,
        shapes,
        shape_index,
        basis: Vec::new(),
        reducer: RationalMatrix::zeros(0, 0),
    };

    let mut ech = TaggedEchelon::new();
    // U0-holomorphic monomials
    for &(odd, target) in &ctx.shapes {
        for n in 0..=window.hi {
            let mut unit = SparseVec::new();
            unit.insert(ctx.column(odd, target, n), Rational::one());
            ech.insert(&unit, SparseVec::new());
        }
    }
    // U1-holomorphic fields y^p η^J ∂/∂target, transported; y^p = x^{-p}
    for &(odd, target) in &ctx.shapes {
        let far = SuperField::term(Chart::U1, m, LaurentPoly::one(), odd, target);
        let near = change_chart(&far, k)?;
        let (Some(lo), Some(hi)) = (near.min_exponent(), near.max_exponent()) else {
            continue;
        };
        for p in 0.. {
            if lo - p < window.lo {
                break;
            }
            if hi - p > window.hi {
                continue;
            }
            let shifted = near.scale_laurent(&LaurentPoly::x_pow(-p));
            ech.insert(&ctx.to_sparse(&shifted), SparseVec::new());
        }
    }

    let mut candidates = if (m, q) == (3, 2) { pair_candidates(k) } else { Vec::new() };
    for &(odd, target) in &ctx.shapes {
        for n in (window.lo + WINDOW_MARGIN..=-1).rev() {
            candidates.push(SuperField::term(Chart::U0, m, LaurentPoly::x_pow(n), odd, target));
        }
    }
    for cand in candidates {
        let mut tag = SparseVec::new();
        tag.insert(ctx.basis.len(), Rational::one());
        if ech.insert(&ctx.to_sparse(&cand), tag) {
            ctx.basis.push(cand);
        }
    }

    let ncols = ctx.shapes.len() * window.width();
    let mut reducer = RationalMatrix::zeros(ctx.basis.len(), ncols);
    for col in 0..ncols {
        let mono = ctx.monomial_at(col);
        let mut unit = SparseVec::new();
        unit.insert(col, Rational::one());
        match ech.solve(&unit) {
            Some(coords) => {
                for (t, a) in coords {
                    reducer.set(t, col, a);
                }
            }
            None => assert!(
                mono.exponent <= threshold,
                "monomial {mono:?} outside the coboundary span for k = {k}"
            ),
        }
    }
    ctx.reducer = reducer;
    Ok(Arc::new(ctx))
}

/// A cohomology class: coordinates in a context's basis plus the field it was
/// read from.
#[derive(Clone, Debug)]
pub struct CohClass {
    context: Arc<H1Context>,
    coords: Vec<Rational>,
    representative: SuperField,
}

impl CohClass {
    /// The class `Σ coords_t · basis_t`.
    pub fn from_coords(context: &Arc<H1Context>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != context.dim() {
            return Err(Error::DimensionMismatch {
                expected: context.dim(),
                found: coords.len(),
            });
        }
        let mut rep = SuperField::zero(Chart::U0, context.m());
        for (c, b) in coords.iter().zip(&context.basis) {
            rep = &rep + &b.scale(c);
        }
        Ok(CohClass {
            context: Arc::clone(context),
            coords,
            representative: rep,
        })
    }

    pub fn context(&self) -> &Arc<H1Context> {
        &self.context
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn representative(&self) -> &SuperField {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Coordinates of `[v]`.
///
/// Exponents above the window are `U0`-holomorphic and contribute nothing.
/// Exponents below it are handled by a wider context (same basis).
pub fn reduce(ctx: &Arc<H1Context>, v: &SuperField) -> Result<CohClass> {
    if v.chart() != Chart::U0 {
        return Err(Error::ChartMismatch {
            left: Chart::U0,
            right: v.chart(),
        });
    }
    if v.m() != ctx.m() {
        return Err(Error::OddDimMismatch {
            left: ctx.m(),
            right: v.m(),
        });
    }
    if !v.is_zero() && v.homogeneous_degree() != Some(ctx.q) {
        return Err(Error::NotHomogeneous { expected: ctx.q });
    }
    let coords = match v.min_exponent() {
        Some(lo) if lo < ctx.window.lo => {
            let wide = ExponentWindow {
                lo: lo - WINDOW_MARGIN,
                hi: ctx.window.hi,
            };
            let wider = build_context_with_window(&ctx.k, ctx.q, wide)?;
            if !wider.same_basis(ctx) {
                return Err(Error::ContextMismatch(format!(
                    "widened window changed the basis for k = {}",
                    ctx.k
                )));
            }
            coordinates(&wider, v)
        }
        _ => coordinates(ctx, v),
    };
    Ok(CohClass {
        context: Arc::clone(ctx),
        coords,
        representative: v.clone(),
    })
}

fn coordinates(ctx: &H1Context, v: &SuperField) -> Vec<Rational> {
    let mut acc = SparseVec::new();
    for (odd, target, c) in v.raw_terms() {
        for (n, a) in c.terms() {
            if n > ctx.window.hi {
                continue;
            }
            let col = ctx.column(odd, target, n);
            let image: SparseVec = (0..ctx.dim())
                .filter(|&t| !ctx.reducer.get(t, col).is_zero())
                .map(|t| (t, ctx.reducer.get(t, col).clone()))
                .collect();
            axpy(&mut acc, a, &image);
        }
    }
    (0..ctx.dim())
        .map(|t| acc.get(&t).cloned().unwrap_or_else(Rational::zero))
        .collect()
}

pub fn is_coboundary(ctx: &Arc<H1Context>, v: &SuperField) -> Result<bool> {
    Ok(reduce(ctx, v)?.is_zero())
}
