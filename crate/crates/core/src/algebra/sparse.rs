//! Sparse vectors and an incremental echelon basis that tracks, for every
//! row, which combination of tagged generators it came from.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

/// `dst += c * src`, pruning cancelled entries.
pub fn axpy(dst: &mut SparseVec, c: &Rational, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, a) in src {
        let slot = dst.entry(*i).or_insert_with(Rational::zero);
        *slot += c * a;
        if slot.is_zero() {
            dst.remove(i);
        }
    }
}

pub fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(i, a)| (*i, a * c)).collect()
}

pub fn from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, a) in v {
        out[*i] = a.clone();
    }
    out
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    tag: SparseVec,
}

/// Row echelon basis built one vector at a time.
///
/// Each stored row has coefficient 1 at its pivot and zeros in every column
/// before it. Every row equals `Σ tag_j g_j` modulo the span of untagged
/// rows, where `g_j` is the generator inserted with tag `e_j`.
#[derive(Clone, Debug, Default)]
pub struct TaggedEchelon {
    rows: BTreeMap<usize, Row>,
}

impl TaggedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates all pivot columns from `v`, returning the remainder and the
    /// accumulated tag: `v = remainder + Σ acc_j g_j + (untagged part)`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut cur = v.clone();
        let mut acc = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = cur
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, a)| (*c, a.clone()));
            let Some((col, a)) = hit else { break };
            let row = &self.rows[&col];
            axpy(&mut cur, &-&a, &row.vec);
            axpy(&mut acc, &a, &row.tag);
            cursor = col + 1;
        }
        (cur, acc)
    }

    /// Inserts `v` carrying `tag`. Returns false (and stores nothing) when
    /// `v` already lies in the span.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> bool {
        let (rem, acc) = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let mut t = tag;
        axpy(&mut t, &-Rational::one(), &acc);
        let row = Row {
            vec: scale(&rem, &inv),
            tag: scale(&t, &inv),
        };
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` in terms of the tagged generators, if `v` lies in
    /// the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, acc) = self.reduce(v);
        rem.is_empty().then_some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, a)| (*i, int(*a))).collect()
    }

    #[test]
    fn tags_track_generators() {
        let mut e = TaggedEchelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 1)]), SparseVec::new()));
        assert!(e.insert(&sv(&[(0, 1)]), sv(&[(0, 1)])));
        assert!(!e.insert(&sv(&[(1, 3)]), sv(&[(1, 1)])));
        // (2,1) = 1*(1,0) + (1,1) → coordinate 1 on generator 0
        let c = e.solve(&sv(&[(0, 2), (1, 1)])).unwrap();
        assert_eq!(c, sv(&[(0, 1)]));
        assert!(e.solve(&sv(&[(2, 1)])).is_none());
    }
}
