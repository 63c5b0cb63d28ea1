//! Monotonic boolean functions as explicit down-closed families.

use std::collections::HashSet;

use crate::antichain::{successor_sets, sup_masks, AntiChain};
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};

/// A down-closed family of subsets: `S ∈ f ∧ S' ⊆ S ⇒ S' ∈ f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonotoneFamily {
    ground: GroundSet,
    sets: Vec<SubsetMask>,
}

impl MonotoneFamily {
    pub fn empty(ground: GroundSet) -> Self {
        MonotoneFamily { ground, sets: Vec::new() }
    }

    /// Validates down-closure.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, sets: I) -> Result<Self> {
        let mut sets: Vec<SubsetMask> = sets.into_iter().collect();
        for s in &sets {
            ground.check(*s)?;
        }
        sets.sort_unstable();
        sets.dedup();
        let members: HashSet<SubsetMask> = sets.iter().copied().collect();
        for s in &sets {
            if let Some(x) = s.elements().find(|x| !members.contains(&s.without(*x))) {
                return Err(AmfError::Precondition(format!(
                    "family is not down-closed: {} present but {} missing",
                    s,
                    s.without(x)
                )));
            }
        }
        Ok(MonotoneFamily { ground, sets })
    }

    pub(crate) fn from_antichain(a: &AntiChain) -> Self {
        let mut seen: HashSet<SubsetMask> = HashSet::new();
        let mut stack: Vec<SubsetMask> = a.sets().to_vec();
        while let Some(s) = stack.pop() {
            if seen.insert(s) {
                stack.extend(s.elements().map(|x| s.without(x)));
            }
        }
        let mut sets: Vec<SubsetMask> = seen.into_iter().collect();
        sets.sort_unstable();
        MonotoneFamily {
            ground: a.ground(),
            sets,
        }
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

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn is_subset(&self, other: &MonotoneFamily) -> bool {
        self.sets.iter().all(|s| other.contains(*s))
    }

    /// The maximal members.
    pub fn to_antichain(&self) -> AntiChain {
        AntiChain::from_canonical(self.ground, sup_masks(self.sets.clone()))
    }

    /// Each successor adds exactly one set whose proper subsets are all present.
    pub fn immediate_successors(&self) -> Vec<MonotoneFamily> {
        successor_sets(self.ground, self)
            .into_iter()
            .map(|s| {
                let mut sets = self.sets.clone();
                sets.push(s);
                sets.sort_unstable();
                MonotoneFamily {
                    ground: self.ground,
                    sets,
                }
            })
            .collect()
    }
}
