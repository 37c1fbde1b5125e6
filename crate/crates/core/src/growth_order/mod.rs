//! Orders of growth: empirical sequences, symbolic classes and the partial
//! order between them.

mod classify;
mod compare;
mod project;
mod sequence;
mod symbolic;

pub use classify::{classify_sequence, default_catalog, Classification, RESIDUAL_THRESHOLD};
pub use compare::{compare_sequences, EQUIV_BAND, DIVERGENCE_RATIO, DEFAULT_TAIL};
pub use project::{project_onto_family, Family};
pub use sequence::GrowthSequence;
pub use symbolic::{compare_symbolic, Sentinel, SymbolicOrder};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Equivalent,
    Less,
    Greater,
    Incomparable,
    Inconclusive,
}

impl OrderRelation {
    pub fn reverse(self) -> Self {
        match self {
            Self::Less => Self::Greater,
            Self::Greater => Self::Less,
            r => r,
        }
    }

    /// `Less` or `Equivalent`.
    pub fn is_le(self) -> bool {
        matches!(self, Self::Less | Self::Equivalent)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Self::Greater | Self::Equivalent)
    }
}

impl std::fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}
