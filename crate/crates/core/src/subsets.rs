//! Subsets of a ground set as bitmasks, and explicit set families.

use std::cmp::Ordering;
use std::fmt;

/// A subset of a ground set with at most 31 elements, stored as a bitmask.
/// The `Ord` impl is the canonical subset order: lexicographic comparison of
/// the ascending element-index sequences.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u32;
        for e in indices {
            assert!(e < 32, "subset elements must be below 32");
            mask |= 1 << e;
        }
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 32 && self.0 & (1 << e) != 0
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | (1 << e))
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << e))
    }

    pub fn card(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Elements of `self` missing from `other`.
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Element indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let e = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(e)
            }
        })
    }

    /// Characteristic vector over `n` elements.
    pub fn char_point(self, n: usize) -> crate::ground::IntPoint {
        let mut coords = vec![0i64; n];
        for e in self.iter() {
            assert!(e < n, "subset element out of range");
            coords[e] = 1;
        }
        crate::ground::IntPoint::new(coords)
    }

    /// Reads a point as a subset when every coordinate is 0 or 1.
    pub fn from_point(x: &crate::ground::IntPoint) -> Option<Subset> {
        let mut mask = 0u32;
        for e in 0..x.len() {
            match x.coord(e) {
                0 => {}
                1 => mask |= 1 << e,
                _ => return None,
            }
        }
        Some(Subset(mask))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {
                    let i = a.trailing_zeros();
                    let j = b.trailing_zeros();
                    if i != j {
                        return i.cmp(&j);
                    }
                    a &= a - 1;
                    b &= b - 1;
                }
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An explicit family of subsets over `0..n`, held in canonical order
/// without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<Subset>,
}

impl SetFamily {
    /// # Panics
    /// Panics when `n > 31` or a member mentions an element `>= n`.
    pub fn new(n: usize, mut sets: Vec<Subset>) -> Self {
        assert!(n <= 31, "explicit families support at most 31 elements");
        let full = (1u32 << n) - 1;
        for s in &sets {
            assert!(s.mask() & !full == 0, "family member mentions an element outside 0..{n}");
        }
        sets.sort();
        sets.dedup();
        SetFamily { n, sets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Largest member cardinality (the rank for base families).
    pub fn max_card(&self) -> usize {
        self.sets.iter().map(|s| s.card()).max().unwrap_or(0)
    }

    /// The common cardinality, when all members share one.
    pub fn equal_cardinality(&self) -> Option<usize> {
        let mut it = self.sets.iter();
        let first = it.next()?.card();
        it.all(|s| s.card() == first).then_some(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_compares_index_sequences() {
        let ac = Subset::from_indices([0, 2]);
        let bc = Subset::from_indices([1, 2]);
        assert!(ac < bc);

        // [0,3] precedes [1,2] even though its mask is numerically larger
        let a = Subset::from_indices([0, 3]);
        let b = Subset::from_indices([1, 2]);
        assert!(a.mask() > b.mask());
        assert!(a < b);

        // a strict prefix comes first
        assert!(Subset::from_indices([0]) < Subset::from_indices([0, 3]));
        assert!(Subset::EMPTY < Subset::from_indices([0]));
    }

    #[test]
    fn family_is_sorted_and_deduped() {
        let fam = SetFamily::new(
            3,
            vec![
                Subset::from_indices([1, 2]),
                Subset::from_indices([0, 1]),
                Subset::from_indices([0, 1]),
            ],
        );
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.sets()[0], Subset::from_indices([0, 1]));
        assert!(fam.contains(Subset::from_indices([1, 2])));
        assert!(!fam.contains(Subset::from_indices([0, 2])));
        assert_eq!(fam.equal_cardinality(), Some(2));
        assert_eq!(fam.max_card(), 2);
    }

    #[test]
    fn char_point_round_trip() {
        let s = Subset::from_indices([0, 3]);
        let p = s.char_point(4);
        assert_eq!(p.coords(), &[1, 0, 0, 1]);
        assert_eq!(Subset::from_point(&p), Some(s));
        assert_eq!(Subset::from_point(&crate::ground::IntPoint::new(vec![0, 2])), None);
        assert_eq!(s.to_string(), "{0, 3}");
    }
}
