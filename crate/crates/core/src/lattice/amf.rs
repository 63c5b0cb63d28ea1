//! `AMT(P_n)` as a [`FiniteDistributiveLattice`].

use super::{FiniteDistributiveLattice, Generic};
use crate::antichain::AntiChain;
use crate::enumeration::oracle::oracle_enumerate;
use crate::error::Result;
use crate::ground::GroundSet;

/// Antimonotonic functions on `P_n`, listed once by the oracle.
#[derive(Clone, Debug)]
pub struct AmfLattice {
    ground: GroundSet,
    elements: Vec<AntiChain>,
}

impl AmfLattice {
    pub fn new(n: u32) -> Result<Self> {
        let ground = GroundSet::prefix(n.min(crate::ground::MAX_ELEMENT));
        let elements = oracle_enumerate(ground)?;
        Ok(AmfLattice { ground, elements })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }
}

impl FiniteDistributiveLattice for AmfLattice {
    type Elem = AntiChain;

    fn elements(&self) -> Vec<AntiChain> {
        self.elements.clone()
    }

    fn leq(&self, a: &AntiChain, b: &AntiChain) -> bool {
        a.leq_unchecked(b)
    }

    fn meet(&self, a: &AntiChain, b: &AntiChain) -> AntiChain {
        a.meet_unchecked(b)
    }

    fn join(&self, a: &AntiChain, b: &AntiChain) -> AntiChain {
        a.join_unchecked(b)
    }

    fn bottom(&self) -> AntiChain {
        AntiChain::empty(self.ground)
    }

    fn top(&self) -> AntiChain {
        AntiChain::from_canonical(self.ground, vec![self.ground.mask()])
    }

    fn unit(&self) -> AntiChain {
        AntiChain::unit(self.ground)
    }
}

/// Comparison of the lattice product with the external product. Pairs with
/// an `∅` operand are counted apart, since `∅` annihilates the external
/// product but not the lattice one. The remaining pairs are split by whether
/// the two spans cover the ground set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductComparison {
    pub empty_operand_pairs: usize,
    pub empty_operand_mismatches: usize,
    pub covering_pairs: usize,
    pub covering_mismatches: usize,
    pub other_pairs: usize,
    pub other_mismatches: usize,
    pub covering_witness: Option<String>,
    pub other_witness: Option<String>,
}

/// Evaluates both products on every pair of elements.
pub fn compare_products(g: &Generic<'_, AmfLattice>) -> ProductComparison {
    let ground = g.lattice().ground().mask();
    let mut r = ProductComparison::default();
    for a in g.elements() {
        for b in g.elements() {
            let generic = g.product(a, b);
            let external = a.product_unchecked(b);
            let same = generic == external;
            let witness = || Some(format!("{a} × {b}: lattice {generic}, external {external}"));
            if a.is_empty() || b.is_empty() {
                r.empty_operand_pairs += 1;
                r.empty_operand_mismatches += usize::from(!same);
            } else if (a.span() | b.span()) == ground {
                r.covering_pairs += 1;
                if !same {
                    r.covering_mismatches += 1;
                    r.covering_witness = r.covering_witness.take().or_else(witness);
                }
            } else {
                r.other_pairs += 1;
                if !same {
                    r.other_mismatches += 1;
                    r.other_witness = r.other_witness.take().or_else(witness);
                }
            }
        }
    }
    r
}
