//! Exact elimination over sparse rational vectors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{FreeElement, FreeError, Word};
use crate::polyrat::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Q::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

/// Rows in echelon form keyed by their largest key, each carrying the
/// combination of inserted vectors it came from.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows; returns the residual and the tracked
    /// combination that was subtracted.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some((row, track)) = self.rows.get(&key) {
                let c = v[&key].clone();
                axpy(&mut v, &-c.clone(), row);
                axpy(&mut used, &c, track);
            }
            bound = Some(key);
        }
        (v, used)
    }

    /// Inserts `v`, tagged as the combination `track`. Returns false when
    /// `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec<K>, mut track: SparseVec<usize>) -> bool {
        let (rest, used) = self.reduce(v);
        let Some((pivot, lead)) = rest.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        axpy(&mut track, &-Q::one(), &used);
        let inv = Q::one() / lead;
        let row = rest.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let track = track.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.insert(pivot, (row, track));
        true
    }
}

fn to_sparse(e: &FreeElement) -> SparseVec<Word> {
    e.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Writes `target` as a combination of `spanners`, if possible.
pub fn express_in_basis(target: &FreeElement, spanners: &[FreeElement]) -> Option<Vec<Q>> {
    let mut ech = Echelon::new();
    for (n, s) in spanners.iter().enumerate() {
        ech.insert(to_sparse(s), SparseVec::from([(n, Q::one())]));
    }
    let (rest, used) = ech.reduce(to_sparse(target));
    if !rest.is_empty() {
        return None;
    }
    Some((0..spanners.len()).map(|n| used.get(&n).cloned().unwrap_or_else(Q::zero)).collect())
}

/// Projection of one graded piece of the free algebra onto the span of a
/// family of elements modulo an ideal.
///
/// Construction fails unless the ideal together with the family spans the
/// whole piece and the family is independent modulo the ideal.
#[derive(Clone, Debug)]
pub struct PbwSolver {
    echelon: Echelon<Word>,
    size: usize,
}

impl PbwSolver {
    pub fn new(ideal: &[FreeElement], family: &[FreeElement], dimension: usize) -> Result<Self, FreeError> {
        let mut echelon = Echelon::new();
        for rel in ideal {
            echelon.insert(to_sparse(rel), SparseVec::new());
        }
        let ideal_rank = echelon.rank();
        for (n, e) in family.iter().enumerate() {
            if !echelon.insert(to_sparse(e), SparseVec::from([(n, Q::one())])) {
                return Err(FreeError::DependentFamily { index: n });
            }
        }
        if echelon.rank() != dimension {
            return Err(FreeError::SpanDefect { ideal_rank, family: family.len(), dimension });
        }
        Ok(PbwSolver { echelon, size: family.len() })
    }

    /// Coefficients of `w` on the family, modulo the ideal.
    pub fn coordinates(&self, w: &Word) -> Result<Vec<Q>, FreeError> {
        let (rest, used) = self.echelon.reduce(SparseVec::from([(w.clone(), Q::one())]));
        if !rest.is_empty() {
            return Err(FreeError::NotInSpan);
        }
        Ok((0..self.size).map(|n| used.get(&n).cloned().unwrap_or_else(Q::zero)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn express_simple_change_of_basis() {
        let f12 = FreeElement::word(Word::new([1, 2]));
        let f21 = FreeElement::word(Word::new([2, 1]));
        let br = f21.sub(&f12);
        assert_eq!(express_in_basis(&f21, &[f12.clone(), br.clone()]), Some(vec![q(1), q(1)]));
        assert_eq!(express_in_basis(&br, &[f12.clone(), br.clone()]), Some(vec![q(0), q(1)]));
        assert_eq!(express_in_basis(&f21, &[f12]), None);
    }

    #[test]
    fn solver_detects_defects() {
        let f12 = FreeElement::word(Word::new([1, 2]));
        let f21 = FreeElement::word(Word::new([2, 1]));
        assert!(matches!(PbwSolver::new(&[], &[f12.clone()], 2), Err(FreeError::SpanDefect { .. })));
        assert!(matches!(
            PbwSolver::new(&[f12.sub(&f21)], &[f12.clone(), f21.clone()], 2),
            Err(FreeError::DependentFamily { index: 1 })
        ));
        let s = PbwSolver::new(&[f12.sub(&f21)], &[f12], 2).unwrap();
        assert_eq!(s.coordinates(&Word::new([2, 1])).unwrap(), vec![q(1)]);
    }
}
