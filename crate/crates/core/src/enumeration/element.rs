//! What the recursive lister needs from a representation of antimonotonic
//! functions. Masks are raw `u64` subsets of the representation's ground.

use crate::antichain::AntiChain;
use crate::ground::SubsetMask;

pub(crate) trait Element: Clone + Eq + Send + Sync {
    fn leq(&self, other: &Self) -> bool;
    fn join(&self, other: &Self) -> Self;
    fn meet(&self, other: &Self) -> Self;
    fn product(&self, other: &Self) -> Self;
    fn project(&self, onto: u64) -> Self;
    fn span(&self) -> u64;
    fn rank(&self) -> u128;
    /// Exactly one member.
    fn is_principal(&self) -> bool;
    /// `lower <_im self`.
    fn covers(&self, lower: &Self) -> bool;
    /// Smallest nonempty member of `self` that is not a member of `lower`.
    fn min_fresh_member(&self, lower: &Self) -> Option<u64>;
    /// Some member contains `set`.
    fn dominates(&self, set: u64) -> bool;
}

/// Rank difference of the projections of a comparable pair.
pub(crate) fn projected_distance<E: Element>(lower: &E, upper: &E, onto: u64) -> u128 {
    upper.project(onto).rank() - lower.project(onto).rank()
}

impl Element for AntiChain {
    fn leq(&self, other: &Self) -> bool {
        self.leq_unchecked(other)
    }

    fn join(&self, other: &Self) -> Self {
        self.join_unchecked(other)
    }

    fn meet(&self, other: &Self) -> Self {
        self.meet_unchecked(other)
    }

    fn product(&self, other: &Self) -> Self {
        self.product_unchecked(other)
    }

    fn project(&self, onto: u64) -> Self {
        AntiChain::project(self, SubsetMask::from_bits(onto))
    }

    fn span(&self) -> u64 {
        AntiChain::span(self).bits()
    }

    fn rank(&self) -> u128 {
        AntiChain::rank(self)
    }

    fn is_principal(&self) -> bool {
        self.len() == 1
    }

    fn covers(&self, lower: &Self) -> bool {
        self.covers_unchecked(lower)
    }

    fn min_fresh_member(&self, lower: &Self) -> Option<u64> {
        self.sets()
            .iter()
            .find(|s| !s.is_empty() && !lower.contains(**s))
            .map(|s| s.bits())
    }

    fn dominates(&self, set: u64) -> bool {
        AntiChain::dominates(self, SubsetMask::from_bits(set))
    }
}
