use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Atoms, CanonError};
use crate::polyrat::{star, RatFun, SymFun, Var, Weight};
use crate::roots::RootSystemData;

/// The form with values in a tensor product of highest weight modules.
///
/// A key lists one PBW exponent vector per factor; it stands for
/// `F^{p_1} v_1 ⊗ ... ⊗ F^{p_n} v_n` with no module relations imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepForm {
    pub anchors: Vec<Var>,
    pub weight: Weight,
    pub coeffs: BTreeMap<Vec<Vec<u32>>, RatFun>,
}

impl RepForm {
    /// The weights carried by each factor of a key.
    pub fn factor_weights(&self, data: &RootSystemData, key: &[Vec<u32>]) -> Vec<Weight> {
        key.iter()
            .map(|p| {
                let mut parts = alloc::vec![0; data.rank()];
                for (l, &e) in p.iter().enumerate() {
                    for (slot, c) in parts.iter_mut().zip(data.content(l).parts()) {
                        *slot += e * c;
                    }
                }
                Weight::new(parts).expect("rank is positive")
            })
            .collect()
    }
}

/// Splits of `k` into `n` ordered summands.
fn decompositions(k: &Weight, n: usize) -> Vec<Vec<Weight>> {
    if n == 1 {
        return alloc::vec![alloc::vec![k.clone()]];
    }
    let mut out = Vec::new();
    for first in Weight::all_up_to(k.rank(), k.total()) {
        let Some(rest) = k.checked_sub(&first) else { continue };
        for mut tail in decompositions(&rest, n - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// `⊕ Ω^g_{k^(1)}(z_1) v_1 * ... * Ω^g_{k^(n)}(z_n) v_n` over all splits
/// `k^(1) + ... + k^(n) = k`.
pub fn omega_rep(data: &RootSystemData, anchors: &[Var], k: &Weight) -> Result<RepForm, CanonError> {
    if anchors.is_empty() {
        return Err(CanonError::Precondition("at least one anchor is needed".into()));
    }
    let atoms: Vec<Atoms> = anchors.iter().map(|&z| Atoms::new(data, Some(z))).collect();
    let mut per_factor: Vec<BTreeMap<Weight, Vec<(Vec<u32>, SymFun)>>> = alloc::vec![BTreeMap::new(); anchors.len()];
    let mut coeffs = BTreeMap::new();
    for split in decompositions(k, anchors.len()) {
        let mut partial: Vec<(Vec<Vec<u32>>, SymFun)> = alloc::vec![(Vec::new(), SymFun::unit(data.rank()))];
        for (m, km) in split.iter().enumerate() {
            if !per_factor[m].contains_key(km) {
                let mut list = Vec::new();
                for p in data.pbw_monomials(km)? {
                    let f = atoms[m].product(&p, data.rank())?;
                    list.push((p, f));
                }
                per_factor[m].insert(km.clone(), list);
            }
            let mut next = Vec::new();
            for (key, acc) in &partial {
                for (p, f) in &per_factor[m][km] {
                    let mut key = key.clone();
                    key.push(p.clone());
                    next.push((key, star(acc, f)?));
                }
            }
            partial = next;
        }
        for (key, f) in partial {
            coeffs.insert(key, f.into_fun());
        }
    }
    Ok(RepForm { anchors: anchors.to_vec(), weight: k.clone(), coeffs })
}
