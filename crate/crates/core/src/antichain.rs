//! Antimonotonic functions stored as antichains of subsets.

use std::collections::HashSet;
use std::fmt;

use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::monotone::MonotoneFamily;

/// An antimonotonic boolean function over a ground set: a family of pairwise
/// incomparable subsets.
///
/// Members are kept sorted by cardinality, then numeric mask, so two values
/// are equal exactly when they denote the same function. The empty family
/// (`∅`, the everywhere-false function) and `{∅}` are different values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntiChain {
    ground: GroundSet,
    sets: Vec<SubsetMask>,
}

/// Maximal elements of `family`, sorted canonically. Duplicates collapse.
pub(crate) fn sup_masks(mut family: Vec<SubsetMask>) -> Vec<SubsetMask> {
    // Largest first: a set can only be absorbed by something that precedes it.
    family.sort_unstable_by(|a, b| b.cmp(a));
    family.dedup();
    let mut kept: Vec<SubsetMask> = Vec::with_capacity(family.len());
    for s in family {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.reverse();
    kept
}

/// Returns the maximal members of `family` as an antichain over `ground`.
///
/// Every mask must lie inside `ground`.
pub fn canonical_sup<I>(ground: GroundSet, family: I) -> Result<AntiChain>
where
    I: IntoIterator<Item = SubsetMask>,
{
    let family: Vec<SubsetMask> = family.into_iter().collect();
    for s in &family {
        ground.check(*s)?;
    }
    Ok(AntiChain::from_canonical(ground, sup_masks(family)))
}

impl AntiChain {
    /// The empty family `∅`, bottom of the order.
    pub fn empty(ground: GroundSet) -> Self {
        AntiChain { ground, sets: Vec::new() }
    }

    /// `{∅}`, the least nonempty function.
    pub fn unit(ground: GroundSet) -> Self {
        AntiChain {
            ground,
            sets: vec![SubsetMask::EMPTY],
        }
    }

    /// `{N}`; with `N` the whole ground set this is the top of the order.
    pub fn principal(ground: GroundSet, set: SubsetMask) -> Result<Self> {
        ground.check(set)?;
        Ok(AntiChain { ground, sets: vec![set] })
    }

    /// `{{x} | x ∈ N}`. For `N = ∅` this is `{∅}`.
    pub fn singletons(ground: GroundSet, set: SubsetMask) -> Result<Self> {
        ground.check(set)?;
        if set.is_empty() {
            return Ok(Self::unit(ground));
        }
        let mut sets: Vec<SubsetMask> = set
            .elements()
            .map(|e| SubsetMask::EMPTY.with(e))
            .collect();
        sets.sort_unstable();
        Ok(AntiChain { ground, sets })
    }

    /// Strict constructor: members may come in any order but must be
    /// pairwise incomparable and inside `ground`. Duplicates are rejected.
    pub fn new<I>(ground: GroundSet, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        let mut sets: Vec<SubsetMask> = sets.into_iter().collect();
        for s in &sets {
            ground.check(*s)?;
        }
        sets.sort_unstable();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if a.is_subset(*b) {
                    return Err(AmfError::NotAnAntichain {
                        first: *a,
                        second: *b,
                    });
                }
            }
        }
        Ok(AntiChain { ground, sets })
    }

    /// Caller guarantees canonical order, the antichain law, and ground containment.
    pub(crate) fn from_canonical(ground: GroundSet, sets: Vec<SubsetMask>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        AntiChain { ground, sets }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// True for `∅` (no members). `{∅}` is not empty.
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// True for `{∅}`.
    pub fn is_unit(&self) -> bool {
        self.sets.len() == 1 && self.sets[0].is_empty()
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    /// Whether some member contains `set`.
    pub fn dominates(&self, set: SubsetMask) -> bool {
        self.sets.iter().any(|m| set.is_subset(*m))
    }

    /// Re-interprets the function over a larger ground set.
    pub fn with_ground(&self, ground: GroundSet) -> Result<Self> {
        if !ground.contains_mask(self.ground.mask()) {
            return Err(AmfError::Precondition(format!(
                "ground {} is not contained in {}",
                self.ground, ground
            )));
        }
        Ok(AntiChain {
            ground,
            sets: self.sets.clone(),
        })
    }

    pub(crate) fn same_ground(&self, other: &AntiChain) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(AmfError::GroundMismatch {
                left: self.ground,
                right: other.ground,
            })
        }
    }

    pub(crate) fn leq_unchecked(&self, other: &AntiChain) -> bool {
        self.sets.iter().all(|s| other.dominates(*s))
    }

    /// `self ≤ other`: every member of `self` lies inside some member of `other`.
    pub fn leq(&self, other: &AntiChain) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.leq_unchecked(other))
    }

    /// `self < other`: `self ≤ other` and `other` has a member `self` lacks.
    pub fn lt(&self, other: &AntiChain) -> Result<bool> {
        Ok(self.leq(other)? && other.sets.iter().any(|s| !self.contains(*s)))
    }

    /// The down-closed family of all subsets of members.
    pub fn to_monotone(&self) -> MonotoneFamily {
        MonotoneFamily::from_antichain(self)
    }

    /// All immediate successors, in canonical order.
    ///
    /// Each successor adds one set `S` that is not yet dominated while all of
    /// its maximal proper subsets `S ∖ {x}` are. For `∅` the only successor is
    /// `{∅}`.
    pub fn immediate_successors(&self) -> Vec<AntiChain> {
        let mut out: Vec<AntiChain> = successor_sets(self.ground, &self.to_monotone())
            .into_iter()
            .map(|s| {
                let mut sets = self.sets.clone();
                sets.push(s);
                AntiChain::from_canonical(self.ground, sup_masks(sets))
            })
            .collect();
        out.sort();
        out
    }

    /// `lower <_im self`, decided by the set-level characterisation: `lower < self`,
    /// `self ∖ lower = {S}`, and every `S ∖ {x}` is dominated in `lower`.
    pub fn is_immediate_successor_of(&self, lower: &AntiChain) -> Result<bool> {
        self.same_ground(lower)?;
        Ok(self.covers_unchecked(lower))
    }

    pub(crate) fn covers_unchecked(&self, lower: &AntiChain) -> bool {
        if !lower.leq_unchecked(self) {
            return false;
        }
        let mut fresh = self.sets.iter().filter(|s| !lower.contains(**s));
        let (Some(s), None) = (fresh.next(), fresh.next()) else {
            return false;
        };
        s.elements().all(|x| lower.dominates(s.without(x)))
    }
}

/// Sets that may be added to the down-set `f` while keeping it down-closed:
/// `S ∉ f` with every `S ∖ {x}` in `f`.
pub(crate) fn successor_sets(ground: GroundSet, f: &MonotoneFamily) -> Vec<SubsetMask> {
    if f.is_empty() {
        return vec![SubsetMask::EMPTY];
    }
    let members: HashSet<SubsetMask> = f.sets().iter().copied().collect();
    let mut found = HashSet::new();
    for t in f.sets() {
        for x in (ground.mask() - *t).elements() {
            let s = t.with(x);
            if !members.contains(&s) && s.elements().all(|y| members.contains(&s.without(y))) {
                found.insert(s);
            }
        }
    }
    let mut v: Vec<SubsetMask> = found.into_iter().collect();
    v.sort_unstable();
    v
}

impl fmt::Display for AntiChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for AntiChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(elems: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(elems.iter().copied()).unwrap()
    }

    fn ac(n: u32, sets: &[&[u32]]) -> AntiChain {
        AntiChain::new(GroundSet::prefix(n), sets.iter().map(|s| m(s))).unwrap()
    }

    #[test]
    fn sup_examples() {
        let g = GroundSet::prefix(2);
        assert_eq!(canonical_sup(g, []).unwrap(), AntiChain::empty(g));
        assert_eq!(
            canonical_sup(g, [m(&[1]), m(&[1, 2]), m(&[2])]).unwrap(),
            ac(2, &[&[1, 2]])
        );
        assert_eq!(
            canonical_sup(g, [m(&[2]), m(&[1])]).unwrap(),
            ac(2, &[&[1], &[2]])
        );
        assert!(canonical_sup(g, [m(&[3])]).is_err());
    }

    #[test]
    fn strict_constructor_rejects_comparable_members() {
        let g = GroundSet::prefix(2);
        assert!(matches!(
            AntiChain::new(g, [m(&[1]), m(&[1, 2])]),
            Err(AmfError::NotAnAntichain { .. })
        ));
        assert!(AntiChain::new(g, [m(&[1]), m(&[1])]).is_err());
        assert_ne!(AntiChain::empty(g), AntiChain::unit(g));
    }

    #[test]
    fn order_examples() {
        let g = GroundSet::prefix(2);
        let top = ac(2, &[&[1, 2]]);
        let pair = ac(2, &[&[1], &[2]]);
        assert!(AntiChain::empty(g).leq(&pair).unwrap());
        assert!(pair.leq(&top).unwrap());
        assert!(!top.leq(&pair).unwrap());
        assert!(pair.lt(&top).unwrap());
        assert!(!pair.lt(&pair).unwrap());
        assert!(pair.leq(&ac(3, &[&[1, 2]])).is_err());
    }

    #[test]
    fn successor_examples() {
        let g = GroundSet::prefix(2);
        assert_eq!(
            AntiChain::unit(g).immediate_successors(),
            vec![ac(2, &[&[1]]), ac(2, &[&[2]])]
        );
        assert_eq!(
            ac(2, &[&[1], &[2]]).immediate_successors(),
            vec![ac(2, &[&[1, 2]])]
        );
        assert!(ac(2, &[&[1, 2]]).immediate_successors().is_empty());
        assert_eq!(
            AntiChain::empty(g).immediate_successors(),
            vec![AntiChain::unit(g)]
        );
    }

    #[test]
    fn covering_relation() {
        let lo = ac(3, &[&[1, 2], &[3]]);
        let hi = ac(3, &[&[1, 2], &[1, 3]]);
        assert!(hi.is_immediate_successor_of(&lo).unwrap());
        assert!(!ac(3, &[&[1, 2, 3]]).is_immediate_successor_of(&lo).unwrap());
        assert!(!lo.is_immediate_successor_of(&lo).unwrap());
    }
}
