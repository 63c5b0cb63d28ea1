//! Projection, meet, join, external product, rank and distance.
//!
//! All binary operators re-canonicalize through the maximal-element
//! reduction; intermediate families need not be antichains.

use std::collections::HashSet;

use crate::antichain::{sup_masks, AntiChain};
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};

impl AntiChain {
    /// Union of all members. `∅` and `{∅}` both have empty span.
    pub fn span(&self) -> SubsetMask {
        self.sets()
            .iter()
            .fold(SubsetMask::EMPTY, |acc, s| acc | *s)
    }

    /// `sup{A ∩ N' | A ∈ self}`. The result stays over the same ground set.
    pub fn project(&self, onto: SubsetMask) -> AntiChain {
        let sets = self.sets().iter().map(|a| *a & onto).collect();
        AntiChain::from_canonical(self.ground(), sup_masks(sets))
    }

    pub(crate) fn meet_unchecked(&self, other: &AntiChain) -> AntiChain {
        let mut sets = Vec::with_capacity(self.len() * other.len());
        for a in self.sets() {
            for b in other.sets() {
                sets.push(*a & *b);
            }
        }
        AntiChain::from_canonical(self.ground(), sup_masks(sets))
    }

    pub(crate) fn join_unchecked(&self, other: &AntiChain) -> AntiChain {
        let mut sets = Vec::with_capacity(self.len() + other.len());
        sets.extend_from_slice(self.sets());
        sets.extend_from_slice(other.sets());
        AntiChain::from_canonical(self.ground(), sup_masks(sets))
    }

    pub(crate) fn product_unchecked(&self, other: &AntiChain) -> AntiChain {
        let (sa, sb) = (self.span(), other.span());
        let mut sets = Vec::with_capacity(self.len() * other.len());
        for a in self.sets() {
            for b in other.sets() {
                sets.push((*a - sb) | (*b - sa) | (*a & *b));
            }
        }
        AntiChain::from_canonical(self.ground(), sup_masks(sets))
    }

    /// Greatest lower bound: `sup{A ∩ B}`.
    pub fn meet(&self, other: &AntiChain) -> Result<AntiChain> {
        self.same_ground(other)?;
        Ok(self.meet_unchecked(other))
    }

    /// Least upper bound: `sup(self ∪ other)`.
    pub fn join(&self, other: &AntiChain) -> Result<AntiChain> {
        self.same_ground(other)?;
        Ok(self.join_unchecked(other))
    }

    /// External product: the largest function spanning `sp(self) ∪ sp(other)`
    /// whose projections onto the two spans stay below `self` and `other`.
    ///
    /// Built as `sup{(A ∖ sp(other)) ∪ (B ∖ sp(self)) ∪ (A ∩ B)}`. Neutral
    /// element `{∅}`, annihilator `∅`.
    pub fn external_product(&self, other: &AntiChain) -> Result<AntiChain> {
        self.same_ground(other)?;
        Ok(self.product_unchecked(other))
    }

    /// Left fold of [`join`](Self::join); the empty family joins to `∅`.
    pub fn join_all<'a, I>(ground: GroundSet, items: I) -> Result<AntiChain>
    where
        I: IntoIterator<Item = &'a AntiChain>,
    {
        items
            .into_iter()
            .try_fold(AntiChain::empty(ground), |acc, x| acc.join(x))
    }

    /// Left fold of [`external_product`](Self::external_product); the empty
    /// family multiplies to `{∅}`.
    pub fn product_all<'a, I>(ground: GroundSet, items: I) -> Result<AntiChain>
    where
        I: IntoIterator<Item = &'a AntiChain>,
    {
        items
            .into_iter()
            .try_fold(AntiChain::unit(ground), |acc, x| acc.external_product(x))
    }

    /// Number of distinct subsets of members, i.e. the size of the down-set.
    ///
    /// Walks the down-set from the members, removing one element at a time,
    /// with a visited set.
    pub fn rank(&self) -> u128 {
        let mut seen: HashSet<SubsetMask> = HashSet::new();
        let mut stack: Vec<SubsetMask> = self.sets().to_vec();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                for x in s.elements() {
                    let t = s.without(x);
                    if !seen.contains(&t) {
                        stack.push(t);
                    }
                }
            }
        }
        seen.len() as u128
    }

    /// `rank(self) + rank(other) - 2 rank(self ∧ other)`: the size of the
    /// symmetric difference of the two down-sets.
    pub fn distance(&self, other: &AntiChain) -> Result<u128> {
        let m = self.meet(other)?;
        Ok(self.rank() + other.rank() - 2 * m.rank())
    }
}

/// Largest family size [`rank_inclusion_exclusion`] accepts.
pub const INCLUSION_EXCLUSION_LIMIT: usize = 20;

/// Rank by the alternating sum over subfamilies,
/// `Σ 2^{|A|} - Σ 2^{|A∩B|} + Σ 2^{|A∩B∩C|} - ...`.
///
/// Exponential in the number of members; kept as an independent check of
/// [`AntiChain::rank`].
pub fn rank_inclusion_exclusion(a: &AntiChain) -> Result<i128> {
    if a.len() > INCLUSION_EXCLUSION_LIMIT {
        return Err(AmfError::SizeBound {
            size: a.len() as u32,
            bound: INCLUSION_EXCLUSION_LIMIT as u32,
        });
    }
    fn go(sets: &[SubsetMask], acc: SubsetMask, depth: u32) -> i128 {
        let mut total = 0i128;
        for (i, s) in sets.iter().enumerate() {
            let inter = acc & *s;
            let term = 1i128 << inter.len();
            total += if depth.is_multiple_of(2) { term } else { -term };
            total += go(&sets[i + 1..], inter, depth + 1);
        }
        total
    }
    Ok(go(a.sets(), a.ground().mask(), 0))
}
