//! The free associative algebra on generators `f_1, ..., f_r`.

mod bracket;
mod hopf;
pub mod linalg;
mod serre;
mod word;

use thiserror::Error;

pub use bracket::{bracket_expand, nested_bracket, BracketTree};
pub use hopf::{coproduct, coproduct_element, shuffle_counts, shuffles, Tensor};
pub use linalg::{express_in_basis, PbwSolver};
pub use serre::{ad_power, serre_ideal_span, serre_relations, CartanMatrix};
pub use word::{words_with_content, FreeElement, Word};

use crate::polyrat::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("empty bracket")]
    EmptyBracket,
    #[error("generator {letter} is out of range for rank {rank}")]
    LetterOutOfRange { letter: u32, rank: usize },
    #[error("bad word `{0}`")]
    BadWord(alloc::string::String),
    #[error("malformed Cartan matrix")]
    MalformedCartan,
    #[error("element {index} of the family is dependent modulo the ideal")]
    DependentFamily { index: usize },
    #[error("ideal (rank {ideal_rank}) and {family} family elements do not span the {dimension}-dimensional piece")]
    SpanDefect { ideal_rank: usize, family: usize, dimension: usize },
    #[error("target is not in the span")]
    NotInSpan,
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}
