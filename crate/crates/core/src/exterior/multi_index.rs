//! Strictly increasing multi-indices over the coframe `{1..6}`, stored as
//! bitmasks, with the permutation-parity bookkeeping for wedge products.

use std::fmt;

/// Subset of `{1..6}` as a bitmask (bit `i-1` for index `i`), representing
/// the basis monomial `e^{i_1 … i_p}` with strictly increasing indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u8);

pub const FULL_MASK: u8 = 0x3f;

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// From already-increasing indices; panics on duplicates or range errors.
    pub fn new(indices: &[u8]) -> Self {
        let mut mask = 0u8;
        for &i in indices {
            assert!((1..=6).contains(&i), "coframe index out of range: {i}");
            let bit = 1u8 << (i - 1);
            assert!(mask & bit == 0, "repeated coframe index: {i}");
            mask |= bit;
        }
        Self(mask)
    }

    /// From indices in arbitrary order, with the sorting sign; `None` when an
    /// index repeats.
    pub fn from_unordered(indices: &[u8]) -> Option<(Self, i8)> {
        let mut mask = 0u8;
        let mut inversions = 0u32;
        for (n, &i) in indices.iter().enumerate() {
            assert!((1..=6).contains(&i), "coframe index out of range: {i}");
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            for &j in &indices[..n] {
                if j > i {
                    inversions += 1;
                }
            }
            mask |= bit;
        }
        Some((
            Self(mask),
            if inversions.is_multiple_of(2) { 1 } else { -1 },
        ))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn from_mask(mask: u8) -> Self {
        debug_assert!(mask & !FULL_MASK == 0);
        Self(mask)
    }

    pub fn degree(self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn contains(self, index: u8) -> bool {
        self.0 & (1 << (index - 1)) != 0
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> Vec<u8> {
        (1..=6).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(self) -> Self {
        Self(!self.0 & FULL_MASK)
    }

    pub fn difference(self, other: MultiIndex) -> Self {
        Self(self.0 & !other.0)
    }

    /// Number of base directions (indices ≤ 4) in the multi-index.
    pub fn base_count(self) -> u8 {
        (self.0 & 0b001111).count_ones() as u8
    }

    /// Sign `s` and merged index `m` with `e^self ∧ e^other = s · e^m`;
    /// `None` when the factors share an index.
    pub fn wedge(self, other: MultiIndex) -> Option<(MultiIndex, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in 1..=6u8 {
            if other.contains(j) {
                // indices of `self` above j must move past it
                let above = self.0 & !((1u16 << j) as u8).wrapping_sub(1);
                inversions += above.count_ones();
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Self(self.0 | other.0), sign))
    }

    /// All increasing multi-indices of the given degree.
    pub fn all_of_degree(p: u8) -> Vec<MultiIndex> {
        (0..=FULL_MASK)
            .map(MultiIndex::from_mask)
            .filter(|m| m.degree() == p)
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let e14 = MultiIndex::new(&[1, 4]);
        let e23 = MultiIndex::new(&[2, 3]);
        let (m, s) = e14.wedge(e23).unwrap();
        assert_eq!(m, MultiIndex::new(&[1, 2, 3, 4]));
        assert_eq!(s, 1);

        let e13 = MultiIndex::new(&[1, 3]);
        let e24 = MultiIndex::new(&[2, 4]);
        let (m, s) = e13.wedge(e24).unwrap();
        assert_eq!(m, MultiIndex::new(&[1, 2, 3, 4]));
        assert_eq!(s, -1);

        assert!(e13.wedge(e14).is_none());
    }

    #[test]
    fn unordered_sign() {
        let (m, s) = MultiIndex::from_unordered(&[2, 1]).unwrap();
        assert_eq!((m, s), (MultiIndex::new(&[1, 2]), -1));
        let (m, s) = MultiIndex::from_unordered(&[3, 1, 2]).unwrap();
        assert_eq!((m, s), (MultiIndex::new(&[1, 2, 3]), 1));
        assert!(MultiIndex::from_unordered(&[1, 1]).is_none());
    }

    #[test]
    fn complements() {
        let e12 = MultiIndex::new(&[1, 2]);
        assert_eq!(e12.complement(), MultiIndex::new(&[3, 4, 5, 6]));
        assert_eq!(e12.base_count(), 2);
        assert_eq!(MultiIndex::new(&[1, 5, 6]).base_count(), 1);
    }
}
