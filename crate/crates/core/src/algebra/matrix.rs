//! Dense matrices over the rationals: exact row reduction with a recorded
//! operation log, kernels, and quotient coordinates.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::rational::{format_rational, height, Rational};
use super::sparse::{from_dense, to_dense, SparseVec, TaggedEchelon};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// An elementary row operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// Multiply a row by a nonzero scalar.
    Scale(usize, Rational),
    /// `row[target] += factor * row[source]`
    AddMultiple {
        target: usize,
        source: usize,
        factor: Rational,
    },
}

#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: RationalMatrix,
    pub pivots: Vec<usize>,
    pub ops: Vec<RowOp>,
}

impl RowReduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Undoes the recorded operations, recovering the reduced matrix's input.
    pub fn reconstruct(&self) -> RationalMatrix {
        let mut m = self.rref.clone();
        for op in self.ops.iter().rev() {
            match op {
                RowOp::Swap(i, j) => m.swap_rows(*i, *j),
                RowOp::Scale(i, c) => m.scale_row(*i, &c.recip()),
                RowOp::AddMultiple {
                    target,
                    source,
                    factor,
                } => m.add_row_multiple(*target, *source, &-factor),
            }
        }
        m
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors. `height` fixes the
    /// row count so that an empty column list is still well-shaped.
    pub fn from_columns(height: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(height, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != height {
                return Err(Error::DimensionMismatch {
                    expected: height,
                    found: col.len(),
                });
            }
            for (i, a) in col.iter().enumerate() {
                m.set(i, j, a.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Rational) {
        for a in &mut self.entries[i * self.cols..(i + 1) * self.cols] {
            *a *= c;
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Rational) {
        for c in 0..self.cols {
            let s = &self.entries[source * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = s * factor;
            self.entries[target * self.cols + c] += v;
        }
    }

    /// Gauss–Jordan elimination to reduced row echelon form. Among the
    /// candidate rows of a column the pivot with the smallest bit size is
    /// chosen.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| height(m.get(i, c)));
            let Some(p) = best else { continue };
            if p != r {
                m.swap_rows(p, r);
                ops.push(RowOp::Swap(p, r));
            }
            let lead = m.get(r, c).clone();
            if !lead.is_one() {
                let inv = lead.recip();
                m.scale_row(r, &inv);
                ops.push(RowOp::Scale(r, inv));
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = -m.get(i, c).clone();
                m.add_row_multiple(i, r, &factor);
                ops.push(RowOp::AddMultiple {
                    target: i,
                    source: r,
                    factor,
                });
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            rref: m,
            pivots,
            ops,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank()
    }

    /// A basis of the right kernel `{v : self · v = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let red = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in red.pivots.iter().enumerate() {
                    v[pc] = -red.rref.get(row, f).clone();
                }
                v
            })
            .collect()
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.matmul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Coordinates of `target` with respect to the images of `vecs` in the
/// quotient by `span(subspace)`.
///
/// Returns `None` when `target` is outside `span(vecs) + span(subspace)`.
/// When the `vecs` are dependent modulo the subspace, the redundant ones get
/// coordinate zero.
pub fn quotient_coordinates(
    vecs: &[Vec<Rational>],
    subspace: &[Vec<Rational>],
    target: &[Rational],
) -> Result<Option<Vec<Rational>>> {
    let n = target.len();
    for v in vecs.iter().chain(subspace) {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut ech = TaggedEchelon::new();
    for s in subspace {
        ech.insert(&from_dense(s), SparseVec::new());
    }
    for (i, v) in vecs.iter().enumerate() {
        let mut tag = SparseVec::new();
        tag.insert(i, Rational::one());
        ech.insert(&from_dense(v), tag);
    }
    Ok(ech
        .solve(&from_dense(target))
        .map(|c| to_dense(&c, vecs.len())))
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut ech = TaggedEchelon::new();
    for b in basis {
        ech.insert(&from_dense(b), SparseVec::new());
    }
    ech.contains(&from_dense(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn quotient_examples() {
        let vecs = vec![v(&[1, 0]), v(&[0, 1])];
        let sub = vec![v(&[1, 1])];
        let c = quotient_coordinates(&vecs, &sub, &v(&[2, 1])).unwrap().unwrap();
        // (2,1) - 1*(1,0) = (1,1) lies in the subspace
        let resid: Vec<Rational> = v(&[2, 1])
            .iter()
            .zip(vecs[0].iter().zip(&vecs[1]))
            .map(|(t, (a, b))| t - &c[0] * a - &c[1] * b)
            .collect();
        assert!(in_span(&sub, &resid));

        let zero = quotient_coordinates(&vecs, &sub, &v(&[0, 0])).unwrap().unwrap();
        assert!(zero.iter().all(Zero::is_zero));

        assert_eq!(quotient_coordinates(&[v(&[1, 0])], &[], &v(&[0, 1])).unwrap(), None);
        assert!(quotient_coordinates(&[v(&[1, 0, 0])], &[], &v(&[0, 1])).is_err());
    }

    #[test]
    fn quotient_unique_modulo_subspace() {
        let vecs = vec![v(&[1, 0])];
        let sub = vec![v(&[1, 1])];
        // (2,1) = 1*(1,0) + (1,1)
        let c = quotient_coordinates(&vecs, &sub, &v(&[2, 1])).unwrap().unwrap();
        assert_eq!(c, v(&[1]));
    }

    #[test]
    fn row_reduce_replays_exactly() {
        let m = RationalMatrix::from_rows(vec![
            vec![int(0), rat(3, 2), int(1)],
            vec![int(2), int(4), rat(-1, 3)],
            vec![int(1), int(2), rat(-1, 6)],
        ])
        .unwrap();
        let red = m.row_reduce();
        assert_eq!(red.rank(), 2);
        assert_eq!(red.reconstruct(), m);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = RationalMatrix::from_rows(vec![v(&[1, 2, 3, 4]), v(&[2, 4, 6, 8]), v(&[0, 1, 1, 0])]).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn identity_product() {
        let m = RationalMatrix::from_rows(vec![v(&[1, 2]), v(&[3, 4])]).unwrap();
        assert_eq!(&m * &RationalMatrix::identity(2), m);
        assert_eq!(m.transpose().transpose(), m);
    }
}
