use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{words_with_content, FreeElement, FreeError, Word};
use crate::polyrat::{Q, Weight};

/// A generalized Cartan matrix with `a_ii = 2`, `a_ij <= 0` and
/// `a_ij = 0` exactly when `a_ji = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i32>>) -> Result<Self, FreeError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(FreeError::MalformedCartan);
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                let ok = if i == j { a == 2 } else { a <= 0 && ((a == 0) == (b == 0)) };
                if !ok {
                    return Err(FreeError::MalformedCartan);
                }
            }
        }
        Ok(CartanMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `a_ij` with 1-based indices.
    pub fn get(&self, i: u32, j: u32) -> i32 {
        self.entries[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// `ad(f_i)^n (f_j) = sum_m (-1)^m C(n, m) f_i^{n-m} f_j f_i^m`.
pub fn ad_power(i: u32, n: u32, j: u32) -> FreeElement {
    let mut out = FreeElement::zero();
    let mut binom = BigInt::from(1);
    for m in 0..=n {
        let mut letters = alloc::vec![i; (n - m) as usize];
        letters.push(j);
        letters.extend(core::iter::repeat(i).take(m as usize));
        let sign = if m % 2 == 0 { 1 } else { -1 };
        out.add_term(Word::new(letters), Q::from_integer(binom.clone() * sign));
        binom = binom * (n - m) / (m + 1);
    }
    out
}

/// `(i, j, ad(f_i)^{1 - a_ij} f_j)` for every `i != j`.
pub fn serre_relations(cartan: &CartanMatrix) -> Vec<(u32, u32, FreeElement)> {
    let n = cartan.rank() as u32;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push((i, j, ad_power(i, (1 - cartan.get(i, j)) as u32, j)));
            }
        }
    }
    out
}

/// Every `u * rel * v` of content `k`, without duplicates, in a fixed order.
pub fn serre_ideal_span(cartan: &CartanMatrix, k: &Weight) -> Vec<FreeElement> {
    let rank = cartan.rank();
    let mut seen = BTreeSet::new();
    for (_, _, rel) in serre_relations(cartan) {
        let c = rel.content(rank).ok().flatten().expect("relations are homogeneous");
        let Some(rest) = k.checked_sub(&c) else { continue };
        for w in words_with_content(&rest) {
            for split in 0..=w.len() {
                let u = FreeElement::word(Word::new(w.letters()[..split].iter().copied()));
                let v = FreeElement::word(Word::new(w.letters()[split..].iter().copied()));
                seen.insert(u.mul(&rel).mul(&v));
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a(n: usize) -> CartanMatrix {
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            rows[i][i] = 2;
            if i + 1 < n {
                rows[i][i + 1] = -1;
                rows[i + 1][i] = -1;
            }
        }
        CartanMatrix::new(rows).unwrap()
    }

    #[test]
    fn relation_shapes() {
        let rels = serre_relations(&a(2));
        assert_eq!(rels[0].2, crate::freealg::nested_bracket(&[1, 1, 2]).unwrap().expand());
        let b = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(serre_relations(&b)[0].2.len(), 4);
        assert_eq!(ad_power(1, 3, 2), crate::freealg::nested_bracket(&[1, 1, 1, 2]).unwrap().expand());
    }

    #[test]
    fn ideal_span_examples() {
        assert!(serre_ideal_span(&a(2), &Weight::new(vec![1, 1]).unwrap()).is_empty());
        let span = serre_ideal_span(&a(3), &Weight::new(vec![1, 0, 1]).unwrap());
        assert_eq!(span.len(), 2);
        assert!(span.contains(&crate::freealg::nested_bracket(&[1, 3]).unwrap().expand()));
        assert!(serre_ideal_span(&a(3), &Weight::new(vec![1, 0, 0]).unwrap()).is_empty());
    }

    #[test]
    fn malformed_matrices() {
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![1]]).is_err());
    }
}
