use thiserror::Error;

use crate::ground::{GroundSet, SubsetMask};

pub type Result<T> = std::result::Result<T, AmfError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmfError {
    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: GroundSet, right: GroundSet },

    #[error("element {element} is outside the ground set {ground}")]
    ElementOutOfRange { element: u32, ground: GroundSet },

    #[error("elements must lie in 1..=64, got {0}")]
    InvalidElement(u32),

    #[error("{first} and {second} are comparable, family is not an antichain")]
    NotAnAntichain { first: SubsetMask, second: SubsetMask },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("ground set of {size} elements exceeds the enumeration bound {bound}")]
    SizeBound { size: u32, bound: u32 },

    #[error("internal defect: {0}")]
    Defect(String),
}

impl AmfError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        AmfError::Parse { pos, msg: msg.into() }
    }
}
