//! Positive roots, orderings, root vectors and atoms for the classical
//! families.
//!
//! Ranks count simple roots. Type `A` of rank `n` lives on `ε_1..ε_{n+1}`.

mod eta;
mod system;

use thiserror::Error;

pub use eta::eta;
pub use system::{Family, LieType, PositiveRoot, RootKind, RootSystemData};

use crate::freealg::FreeError;
use crate::polyrat::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("type {family:?} needs rank at least {min}, got {rank}")]
    RankTooSmall { family: Family, rank: usize, min: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(alloc::string::String),
    #[error("no positive root {0}")]
    UnknownRoot(alloc::string::String),
    #[error("weight has {got} colors, the root system has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("root order is not a permutation")]
    BadOrder,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Free(#[from] FreeError),
}
