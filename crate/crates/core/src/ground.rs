//! Ground sets and subsets of them, both packed into a single `u64`.
//!
//! Element `i` (1-based, `1..=64`) lives in bit `i - 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{AmfError, Result};

/// Largest element a ground set may contain.
pub const MAX_ELEMENT: u32 = 64;

/// A subset of a ground set.
///
/// Ordered by cardinality first and numeric value second, which is the
/// canonical member order of an [`AntiChain`](crate::AntiChain).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_ELEMENT {
                return Err(AmfError::InvalidElement(e));
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// `{1, ..., n}`.
    pub fn prefix(n: u32) -> Self {
        assert!(n <= MAX_ELEMENT, "prefix length {n} exceeds {MAX_ELEMENT}");
        if n == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        if lo > hi {
            return SubsetMask::EMPTY;
        }
        SubsetMask(Self::prefix(hi).0 & !Self::prefix(lo - 1).0)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=MAX_ELEMENT).contains(&element) && self.0 & (1u64 << (element - 1)) != 0
    }

    pub const fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_strict_subset(self, other: SubsetMask) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub fn without(self, element: u32) -> SubsetMask {
        SubsetMask(self.0 & !(1u64 << (element - 1)))
    }

    pub fn with(self, element: u32) -> SubsetMask {
        SubsetMask(self.0 | (1u64 << (element - 1)))
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, starting with `self` and ending with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(self.0),
        }
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: Self) -> Self {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending iterator over the elements of a [`SubsetMask`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(e + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Subset enumeration in decreasing numeric order (`s = (s - 1) & set`).
#[derive(Clone)]
pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = (cur != 0).then(|| cur.wrapping_sub(1) & self.set);
        Some(SubsetMask(cur))
    }
}

/// The finite set of elements antimonotonic functions are defined over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSet(SubsetMask);

impl GroundSet {
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        SubsetMask::from_elements(elements).map(GroundSet)
    }

    pub const fn from_mask(mask: SubsetMask) -> Self {
        GroundSet(mask)
    }

    /// `P_n = {1, ..., n}`.
    pub fn prefix(n: u32) -> Self {
        GroundSet(SubsetMask::prefix(n))
    }

    /// `{lo, ..., hi}`.
    pub fn range(lo: u32, hi: u32) -> Self {
        GroundSet(SubsetMask::range(lo, hi))
    }

    pub const fn empty() -> Self {
        GroundSet(SubsetMask::EMPTY)
    }

    pub const fn mask(self) -> SubsetMask {
        self.0
    }

    pub const fn len(self) -> u32 {
        self.0.len()
    }

    pub const fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(self, element: u32) -> bool {
        self.0.contains(element)
    }

    pub const fn contains_mask(self, mask: SubsetMask) -> bool {
        mask.is_subset(self.0)
    }

    pub fn elements(self) -> Elements {
        self.0.elements()
    }

    /// Fails with [`AmfError::ElementOutOfRange`] naming the first stray element.
    pub fn check(self, mask: SubsetMask) -> Result<()> {
        match (mask - self.0).min_element() {
            None => Ok(()),
            Some(element) => Err(AmfError::ElementOutOfRange {
                element,
                ground: self,
            }),
        }
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_bits_are_one_based() {
        let s = SubsetMask::from_elements([1, 3]).unwrap();
        assert_eq!(s.bits(), 0b101);
        assert!(s.contains(3));
        assert!(!s.contains(2));
        assert_eq!(s.to_string(), "{1,3}");
        assert!(SubsetMask::from_elements([0]).is_err());
        assert!(SubsetMask::from_elements([65]).is_err());
        assert_eq!(SubsetMask::from_elements([64]).unwrap().bits(), 1 << 63);
    }

    #[test]
    fn canonical_order_is_cardinality_then_value() {
        let mut v: Vec<SubsetMask> = [0b11, 0b100, 0b1, 0b0, 0b110]
            .into_iter()
            .map(SubsetMask::from_bits)
            .collect();
        v.sort();
        let bits: Vec<u64> = v.iter().map(|s| s.bits()).collect();
        assert_eq!(bits, vec![0b0, 0b1, 0b100, 0b11, 0b110]);
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = SubsetMask::from_bits(0b1011);
        let all: Vec<u64> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all.first(), Some(&0b1011));
        assert_eq!(all.last(), Some(&0));
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn ranges() {
        assert_eq!(GroundSet::range(2, 4).mask().bits(), 0b1110);
        assert!(GroundSet::range(3, 2).is_empty());
        assert_eq!(GroundSet::prefix(64).len(), 64);
        assert_eq!(GroundSet::prefix(0), GroundSet::empty());
        let g = GroundSet::prefix(3);
        assert!(g.check(SubsetMask::from_bits(0b111)).is_ok());
        assert_eq!(
            g.check(SubsetMask::from_bits(0b1001)),
            Err(AmfError::ElementOutOfRange { element: 4, ground: g })
        );
    }
}
