//! The canonical form, its PBW expansions and the verification suites.

mod omega;
mod pbw;
mod rep;
mod verify;

use thiserror::Error;

pub use omega::{asym_log_wedge, log_wedge, omega_free, omega_j, omega_sym, CanonicalForm};
pub use pbw::{omega_pbw, Atoms, PbwExpansion, PbwProjection};
pub use rep::{omega_rep, RepForm};
pub use verify::{
    constant_ratio, orthogonal_poles, pole_support, summarize, verify_anchor_specialization, verify_atom, verify_duality,
    verify_matsuo, verify_pbw_equivalence, verify_pole_support, verify_residue_recursion, verify_shuffle_duality,
    Counterexample, Report,
};

use crate::flags::FlagError;
use crate::freealg::FreeError;
use crate::polyrat::PolyError;
use crate::roots::RootError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("precondition failed: {0}")]
    Precondition(alloc::string::String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Root(#[from] RootError),
}
