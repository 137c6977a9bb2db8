//! Flags of the discriminantal arrangement and iterated residues.
//!
//! A residue along `v = w` eliminates the larger of the two variables (or
//! `v` itself for `v = 0` and `v = z`), moving `dv` to the front of the
//! wedge first. The resulting sign is `(-1)^(pos - 1)` with `pos` the
//! position of `dv` in the current wedge.

mod chain;
mod residue;

use thiserror::Error;

pub use chain::{flag_of_free_element, flag_of_word, Equation, FlagChain, FlagCombination};
pub use residue::{iterated_residue, residue_pairing, residue_step, residue_value, TopForm};

use crate::freealg::FreeError;
use crate::polyrat::{LinearForm, PolyError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("equation {0} does not cut a new hyperplane")]
    Degenerate(Equation),
    #[error("{0} is not a variable of the form")]
    VariableAbsent(Var),
    #[error("{0} appears in the coefficient but not in the wedge")]
    StrayVariable(Var),
    #[error("pole of order {order} along {form}")]
    HigherPole { form: LinearForm, order: u32 },
    #[error("content of the multi-index does not match the weight")]
    ContentMismatch,
    #[error("element is not homogeneous of the requested content")]
    Inhomogeneous,
    #[error("flag is shorter than the form's degree")]
    NotFullLength,
    #[error("pairing depends on the anchors")]
    NotConstant,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Free(#[from] FreeError),
}
