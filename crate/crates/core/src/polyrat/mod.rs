//! Exact rational functions on the discriminantal arrangement.

mod linear;
mod parse;
mod perm;
mod poly;
mod ratfun;
mod sample;
mod sym;
mod var;

use thiserror::Error;

pub use linear::{LinearForm, Rewritten};
pub use perm::{act_perm, group_elements, permutations, GroupElement, Permutation};
pub use poly::{Monomial, Polynomial};
pub use ratfun::{factor_linear, RatFun};
pub use sample::{equals, equals_with, seed, set_seed, Sampler, CROSS_CHECK_POINTS, DEFAULT_SEED};
pub use sym::{asym, inverse_factorials, is_symmetric, star, sum_all, sym, symmetrize, SymFun};
pub use var::{permutation_sign, MultiIndex, Var, Weight};

pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("bad variable `{0}`")]
    BadVariable(alloc::string::String),
    #[error("weight has no colors")]
    EmptyWeight,
    #[error("bad weight `{0}`")]
    BadWeight(alloc::string::String),
    #[error("linear form is not oriented larger variable first")]
    BadForm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a product of arrangement hyperplanes")]
    NonLinearDivisor,
    #[error("substitution lands on the pole {form}")]
    PoleHit { form: LinearForm },
    #[error("evaluation point lies on {form}")]
    PoleAtPoint { form: LinearForm },
    #[error("no value for {0}")]
    UnassignedVariable(Var),
    #[error("{from} -> {to} does not preserve colors")]
    ColorMixing { from: Var, to: Var },
    #[error("map is not a bijection")]
    NotAPermutation,
    #[error("function is not symmetric under its weight's group")]
    AsymmetricInput,
    #[error("{0} is outside the weight")]
    VariableOutsideWeight(Var),
    #[error("weights do not match")]
    WeightMismatch,
    #[error("syntax error at {offset}: {message}")]
    Syntax { offset: usize, message: alloc::string::String },
}

/// Sign of a multi-index; see [`MultiIndex::sign`].
pub fn sgn_multiindex(j: &MultiIndex) -> i32 {
    j.sign()
}
