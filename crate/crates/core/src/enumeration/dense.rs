//! Down-set bitmaps for functions over at most seven elements.
//!
//! Bit `i` of a [`DownSet`] is set when the subset with compressed mask `i`
//! lies below some member. In this form the order is bitmap inclusion, meet
//! and join are `&` and `|`, rank is a popcount, and projection onto `X`
//! masks with the bitmap of all subsets of `X`.

use crate::antichain::AntiChain;
use crate::enumeration::element::Element;
use crate::ground::{GroundSet, SubsetMask};

pub(crate) const MAX_DIMS: usize = 7;
const SUBSETS: usize = 1 << MAX_DIMS;

const fn subsets_of_table() -> [u128; SUBSETS] {
    let mut t = [0u128; SUBSETS];
    let mut x = 0;
    while x < SUBSETS {
        let mut y = 0;
        while y < SUBSETS {
            if y & !x == 0 {
                t[x] |= 1u128 << y;
            }
            y += 1;
        }
        x += 1;
    }
    t
}

const fn without_table() -> [u128; MAX_DIMS] {
    let mut t = [0u128; MAX_DIMS];
    let mut j = 0;
    while j < MAX_DIMS {
        let mut y = 0;
        while y < SUBSETS {
            if y & (1 << j) == 0 {
                t[j] |= 1u128 << y;
            }
            y += 1;
        }
        j += 1;
    }
    t
}

/// `SUBSETS_OF[x]`: bitmap of every subset of `x`.
static SUBSETS_OF: [u128; SUBSETS] = subsets_of_table();
/// `WITHOUT[j]`: bitmap of every subset not containing `j`.
static WITHOUT: [u128; MAX_DIMS] = without_table();

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct DownSet(u128);

impl DownSet {
    fn extend(mut bits: u128, dims: u64) -> u128 {
        let mut d = dims;
        while d != 0 {
            let j = d.trailing_zeros();
            bits |= bits << (1u32 << j);
            d &= d - 1;
        }
        bits
    }

    /// Maximal elements as a bitmap.
    fn maximal(self) -> u128 {
        let mut covered = 0u128;
        for (j, w) in WITHOUT.iter().enumerate() {
            covered |= (self.0 >> (1u32 << j)) & w;
        }
        self.0 & !covered
    }
}

impl Element for DownSet {
    fn leq(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    fn join(&self, other: &Self) -> Self {
        DownSet(self.0 | other.0)
    }

    fn meet(&self, other: &Self) -> Self {
        DownSet(self.0 & other.0)
    }

    fn product(&self, other: &Self) -> Self {
        if self.0 == 0 || other.0 == 0 {
            return DownSet(0);
        }
        let (sa, sb) = (self.span(), other.span());
        let u = sa | sb;
        DownSet(Self::extend(self.0, u & !sa) & Self::extend(other.0, u & !sb))
    }

    fn project(&self, onto: u64) -> Self {
        DownSet(self.0 & SUBSETS_OF[onto as usize])
    }

    fn span(&self) -> u64 {
        let mut s = 0u64;
        for (j, w) in WITHOUT.iter().enumerate() {
            if self.0 & !w != 0 {
                s |= 1 << j;
            }
        }
        s
    }

    fn rank(&self) -> u128 {
        self.0.count_ones() as u128
    }

    fn is_principal(&self) -> bool {
        self.0 != 0 && self.0 == SUBSETS_OF[self.span() as usize]
    }

    fn covers(&self, lower: &Self) -> bool {
        lower.leq(self) && self.0.count_ones() == lower.0.count_ones() + 1
    }

    fn min_fresh_member(&self, lower: &Self) -> Option<u64> {
        let mut fresh = self.maximal() & !lower.maximal() & !1u128;
        let mut best: Option<u64> = None;
        while fresh != 0 {
            let i = fresh.trailing_zeros() as u64;
            fresh &= fresh - 1;
            if best.is_none_or(|b| i.count_ones() < b.count_ones()) {
                best = Some(i);
            }
        }
        best
    }

    fn dominates(&self, set: u64) -> bool {
        self.0 >> set & 1 == 1
    }
}

/// Maps between real masks over at most seven elements and compressed
/// indices `0..2^k`.
#[derive(Clone, Debug)]
pub(crate) struct Compressor {
    ground: GroundSet,
    elements: Vec<u32>,
}

impl Compressor {
    pub(crate) fn new(ground: GroundSet, span: SubsetMask) -> Option<Self> {
        (span.len() as usize <= MAX_DIMS).then(|| Compressor {
            ground,
            elements: span.elements().collect(),
        })
    }

    /// Caller guarantees `mask` lies inside the compressed span.
    pub(crate) fn compress(&self, mask: SubsetMask) -> u64 {
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, e)| mask.contains(**e))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub(crate) fn expand(&self, compressed: u64) -> SubsetMask {
        self.elements
            .iter()
            .enumerate()
            .filter(|(i, _)| compressed >> i & 1 == 1)
            .fold(SubsetMask::EMPTY, |acc, (_, e)| acc.with(*e))
    }

    pub(crate) fn to_dense(&self, a: &AntiChain) -> DownSet {
        DownSet(
            a.sets()
                .iter()
                .fold(0u128, |acc, s| acc | SUBSETS_OF[self.compress(*s) as usize]),
        )
    }

    pub(crate) fn to_sparse(&self, d: &DownSet) -> AntiChain {
        let mut max = d.maximal();
        let mut sets = Vec::with_capacity(max.count_ones() as usize);
        while max != 0 {
            let i = max.trailing_zeros() as u64;
            max &= max - 1;
            sets.push(self.expand(i));
        }
        sets.sort_unstable();
        AntiChain::from_canonical(self.ground, sets)
    }
}
