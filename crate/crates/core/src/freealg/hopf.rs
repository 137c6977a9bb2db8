use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use super::{FreeElement, Word};
use crate::polyrat::{MultiIndex, Q};

/// An element of `U ⊗ U`.
pub type Tensor = BTreeMap<(Word, Word), Q>;

/// `Δ(w)` for the coproduct with primitive generators: a sum over all ways of
/// splitting the letters of `w` into two order-preserving subwords.
pub fn coproduct(w: &Word) -> Tensor {
    let n = w.len();
    let mut out = Tensor::new();
    for mask in 0u64..(1u64 << n) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (pos, &letter) in w.letters().iter().enumerate() {
            if mask >> pos & 1 == 1 {
                left.push(letter);
            } else {
                right.push(letter);
            }
        }
        *out.entry((Word::new(left), Word::new(right))).or_insert_with(Q::default) += Q::one();
    }
    out
}

pub fn coproduct_element(e: &FreeElement) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in e.terms() {
        for (pair, m) in coproduct(w) {
            *out.entry(pair).or_insert_with(Q::default) += m * c;
        }
    }
    out.retain(|_, c| *c != Q::default());
    out
}

/// All shuffles of `j1` and `j2`, one entry per shuffle triple, so
/// multiplicities appear as repeats.
pub fn shuffles(j1: &MultiIndex, j2: &MultiIndex) -> Vec<MultiIndex> {
    fn go(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        match (a.split_first(), b.split_first()) {
            (None, None) => out.push(MultiIndex::new(prefix.clone())),
            (x, y) => {
                if let Some((&head, rest)) = x {
                    prefix.push(head);
                    go(rest, b, prefix, out);
                    prefix.pop();
                }
                if let Some((&head, rest)) = y {
                    prefix.push(head);
                    go(a, rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(j1.colors(), j2.colors(), &mut Vec::new(), &mut out);
    out
}

/// Shuffles grouped by result.
pub fn shuffle_counts(j1: &MultiIndex, j2: &MultiIndex) -> BTreeMap<MultiIndex, u64> {
    let mut out = BTreeMap::new();
    for j in shuffles(j1, j2) {
        *out.entry(j).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn coproduct_of_two_letters() {
        let d = coproduct(&Word::new([1, 2]));
        assert_eq!(d.len(), 4);
        assert!(d.contains_key(&(Word::new([2]), Word::new([1]))));
        assert!(d.contains_key(&(Word::empty(), Word::new([1, 2]))));
        assert_eq!(coproduct(&Word::empty()).len(), 1);
    }

    #[test]
    fn shuffle_multiplicities() {
        let one = MultiIndex::new(vec![1]);
        let counts = shuffle_counts(&one, &one);
        assert_eq!(counts.get(&MultiIndex::new(vec![1, 1])), Some(&2));
        let mixed = shuffles(&one, &MultiIndex::new(vec![2]));
        assert_eq!(mixed, vec![MultiIndex::new(vec![1, 2]), MultiIndex::new(vec![2, 1])]);
        assert_eq!(shuffles(&MultiIndex::new(vec![]), &one), vec![one.clone()]);
    }
}
