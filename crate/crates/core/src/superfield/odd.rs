use std::cmp::Ordering;
use std::fmt;

/// A product `ξ_{i1} ξ_{i2} … ξ_{ir}` with `i1 < i2 < … < ir`, stored as a
/// bit set (bit `i-1` for `ξ_i`). Indices are 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OddMonomial(u32);

pub const MAX_ODD: usize = 31;

impl OddMonomial {
    pub const ONE: OddMonomial = OddMonomial(0);

    /// From a strictly increasing index list; `None` on repeats, disorder, or
    /// out-of-range indices.
    pub fn from_sorted(indices: &[usize]) -> Option<Self> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_ODD || i <= last {
                return None;
            }
            bits |= 1 << (i - 1);
            last = i;
        }
        Some(OddMonomial(bits))
    }

    /// The product of the listed generators in the given order, as
    /// `(sign, monomial)`. `None` when an index repeats (the product is 0).
    pub fn product_of(indices: &[usize]) -> Option<(i32, Self)> {
        let mut acc = (1, OddMonomial::ONE);
        for &i in indices {
            let g = OddMonomial::generator(i);
            let (s, m) = acc.1.wedge(g)?;
            acc = (acc.0 * s, m);
        }
        Some(acc)
    }

    pub fn generator(i: usize) -> Self {
        assert!((1..=MAX_ODD).contains(&i), "odd index out of range");
        OddMonomial(1 << (i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_ODD).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest index present (0 for the empty monomial).
    pub fn max_index(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (1..=MAX_ODD).filter(move |&i| self.0 & (1 << (i - 1)) != 0)
    }

    /// `self · other` as `(sign, monomial)`, or `None` if they share a factor.
    pub fn wedge(self, other: OddMonomial) -> Option<(i32, OddMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // every factor of `other` moves left past the larger factors of `self`
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> j).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, OddMonomial(self.0 | other.0)))
    }

    /// `∂/∂ξ_l` of the monomial: `(sign, remaining)` or `None` if `ξ_l` is absent.
    pub fn remove(self, l: usize) -> Option<(i32, OddMonomial)> {
        if !self.contains(l) {
            return None;
        }
        let before = (self.0 & ((1u32 << (l - 1)) - 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, OddMonomial(self.0 & !(1 << (l - 1)))))
    }
}

impl Ord for OddMonomial {
    /// Lexicographic order on the increasing index sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for OddMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OddMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| format!("xi{i}")).collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(ix: &[usize]) -> OddMonomial {
        OddMonomial::from_sorted(ix).unwrap()
    }

    #[test]
    fn anticommuting_products() {
        assert_eq!(mono(&[2]).wedge(mono(&[1])), Some((-1, mono(&[1, 2]))));
        assert_eq!(mono(&[1]).wedge(mono(&[2])), Some((1, mono(&[1, 2]))));
        assert_eq!(mono(&[1]).wedge(mono(&[1])), None);
        // ξ2ξ3 · ξ1 = ξ1ξ2ξ3 (two transpositions)
        assert_eq!(mono(&[2, 3]).wedge(mono(&[1])), Some((1, mono(&[1, 2, 3]))));
        // ξ1ξ3 · ξ2 = -ξ1ξ2ξ3
        assert_eq!(OddMonomial::product_of(&[1, 3, 2]), Some((-1, mono(&[1, 2, 3]))));
        assert_eq!(OddMonomial::product_of(&[1, 1]), None);
    }

    #[test]
    fn removal_sign() {
        assert_eq!(mono(&[1, 2]).remove(2), Some((-1, mono(&[1]))));
        assert_eq!(mono(&[1, 2]).remove(1), Some((1, mono(&[2]))));
        assert_eq!(mono(&[1, 2, 3]).remove(3), Some((1, mono(&[1, 2]))));
        assert_eq!(mono(&[1]).remove(2), None);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut v = vec![mono(&[2]), mono(&[1, 2]), mono(&[]), mono(&[1]), mono(&[1, 3])];
        v.sort();
        assert_eq!(v, vec![mono(&[]), mono(&[1]), mono(&[1, 2]), mono(&[1, 3]), mono(&[2])]);
    }

    #[test]
    fn rejects_repeats() {
        assert!(OddMonomial::from_sorted(&[1, 1]).is_none());
        assert!(OddMonomial::from_sorted(&[2, 1]).is_none());
        assert!(OddMonomial::from_sorted(&[0]).is_none());
    }
}
