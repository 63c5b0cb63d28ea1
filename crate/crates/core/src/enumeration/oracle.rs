//! Brute-force enumeration of a whole space, independent of the interval
//! machinery: breadth-first closure of `∅` under immediate successors.

use std::collections::HashSet;

use crate::antichain::AntiChain;
use crate::error::{AmfError, Result};
use crate::ground::GroundSet;

/// Largest ground set [`oracle_enumerate`] accepts.
pub const ORACLE_MAX_ELEMENTS: u32 = 5;

/// Every antimonotonic function over `ground`, each exactly once, in
/// breadth-first (rank) order.
pub fn oracle_enumerate(ground: GroundSet) -> Result<Vec<AntiChain>> {
    if ground.len() > ORACLE_MAX_ELEMENTS {
        return Err(AmfError::SizeBound {
            size: ground.len(),
            bound: ORACLE_MAX_ELEMENTS,
        });
    }
    let start = AntiChain::empty(ground);
    let mut seen: HashSet<AntiChain> = HashSet::from([start.clone()]);
    let mut out = vec![start.clone()];
    let mut layer = vec![start];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for a in &layer {
            for b in a.immediate_successors() {
                if seen.insert(b.clone()) {
                    next.push(b);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}
