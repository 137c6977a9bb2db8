use alloc::boxed::Box;
use core::fmt;

use super::{FreeElement, FreeError};
use crate::polyrat::Weight;

/// A bracket monomial in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(u32),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn bracket(left: BracketTree, right: BracketTree) -> BracketTree {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn content(&self, rank: usize) -> Weight {
        let mut parts = alloc::vec![0; rank];
        self.count(&mut parts);
        Weight::new(parts).expect("rank is positive")
    }

    fn count(&self, parts: &mut [u32]) {
        match self {
            BracketTree::Leaf(i) => parts[*i as usize - 1] += 1,
            BracketTree::Node(a, b) => {
                a.count(parts);
                b.count(parts);
            }
        }
    }

    pub fn expand(&self) -> FreeElement {
        bracket_expand(self)
    }
}

/// `[f_{s_1}, [f_{s_2}, [..., f_{s_n}]]]`.
pub fn nested_bracket(seq: &[u32]) -> Result<BracketTree, FreeError> {
    let (&last, rest) = seq.split_last().ok_or(FreeError::EmptyBracket)?;
    Ok(rest.iter().rev().fold(BracketTree::Leaf(last), |acc, &i| BracketTree::bracket(BracketTree::Leaf(i), acc)))
}

pub fn bracket_expand(t: &BracketTree) -> FreeElement {
    match t {
        BracketTree::Leaf(i) => FreeElement::generator(*i),
        BracketTree::Node(a, b) => bracket_expand(a).commutator(&bracket_expand(b)),
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(i) => write!(f, "f{i}"),
            BracketTree::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Word;
    use crate::polyrat::Q;

    #[test]
    fn nested_is_right_comb() {
        assert_eq!(nested_bracket(&[2, 1]).unwrap().to_string(), "[f2,f1]");
        assert_eq!(nested_bracket(&[3, 2, 1]).unwrap().to_string(), "[f3,[f2,f1]]");
        assert_eq!(nested_bracket(&[4]).unwrap(), BracketTree::Leaf(4));
        assert!(matches!(nested_bracket(&[]), Err(FreeError::EmptyBracket)));
    }

    #[test]
    fn expansion_of_double_bracket() {
        let e = bracket_expand(&nested_bracket(&[1, 1, 2]).unwrap());
        assert_eq!(e.len(), 3);
        assert_eq!(e.coefficient(&Word::new([1, 1, 2])), Q::from_integer(1.into()));
        assert_eq!(e.coefficient(&Word::new([1, 2, 1])), Q::from_integer((-2).into()));
        assert_eq!(e.coefficient(&Word::new([2, 1, 1])), Q::from_integer(1.into()));
    }
}
