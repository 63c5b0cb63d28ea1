//! Antimonotonic functions over a finite ground set, their lattice
//! operations, intervals, and recursive enumeration of intervals.
//!
//! An antimonotonic function is represented by the antichain of its maximal
//! true sets ([`AntiChain`]). Subsets of the ground set are `u64` bitmasks,
//! so ground sets hold at most 64 elements.

pub mod antichain;
pub mod count;
pub mod dedekind;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod ground;
pub mod interval;
pub mod lattice;
pub mod monotone;
pub mod operators;
mod text;
pub mod verify;

pub use antichain::{canonical_sup, AntiChain};
pub use count::BigCount;
pub use enumeration::{count_interval, list_interval, Engine, SplitPolicy};
pub use error::{AmfError, Result};
pub use ground::{GroundSet, SubsetMask, MAX_ELEMENT};
pub use interval::{alpha, omega, product_interval, upsilon, Interval};
pub use monotone::MonotoneFamily;
