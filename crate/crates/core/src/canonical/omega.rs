use alloc::collections::BTreeMap;

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::CanonError;
use crate::freealg::Word;
use crate::polyrat::{sym, MultiIndex, Q, RatFun, SymFun, Var, Weight};

/// `Ω_k` as the family of coefficients `ω_J` of `dV_k ⊗ f_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    weight: Weight,
    anchor: Option<Var>,
    coeffs: BTreeMap<MultiIndex, RatFun>,
}

impl CanonicalForm {
    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn anchor(&self) -> Option<Var> {
        self.anchor
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, RatFun> {
        &self.coeffs
    }

    pub fn coeff(&self, j: &MultiIndex) -> Option<&RatFun> {
        self.coeffs.get(j)
    }

    /// The coefficient of the monomial `w`.
    pub fn coeff_of_word(&self, w: &Word) -> Option<&RatFun> {
        self.coeffs.get(&w.to_multi_index())
    }
}

/// `sym_k^J(prod_u 1/(t_u - t_{u-1}))` with `t_0` the anchor (or 0).
pub fn omega_j(j: &MultiIndex, k: &Weight, anchor: Option<Var>) -> RatFun {
    let mut prev = anchor;
    let mut chain = RatFun::one();
    for x in j.identification() {
        chain = chain.mul(&RatFun::inv_diff(Some(x), prev).expect("consecutive variables differ"));
        prev = Some(x);
    }
    sym(&chain, k)
}

pub fn omega_free(k: &Weight, anchor: Option<Var>) -> CanonicalForm {
    let coeffs = MultiIndex::all_with_content(k).into_iter().map(|j| {
        let f = omega_j(&j, k, anchor);
        (j, f)
    });
    CanonicalForm { weight: k.clone(), anchor, coeffs: coeffs.collect() }
}

/// `ω_J` wrapped with its weight.
pub fn omega_sym(j: &MultiIndex, k: &Weight, anchor: Option<Var>) -> SymFun {
    SymFun::new(k.clone(), omega_j(j, k, anchor)).expect("symmetrized chains are symmetric")
}

/// The coefficient of `dv_1 ∧ ... ∧ dv_n` in
/// `d(a_1 - b_1)/(a_1 - b_1) ∧ ... ∧ d(a_n - b_n)/(a_n - b_n)`, where `b = None`
/// stands for 0 and anchors count as constants.
pub fn log_wedge(factors: &[(Var, Option<Var>)], vars: &[Var]) -> Result<RatFun, CanonError> {
    let n = vars.len();
    if factors.len() != n {
        return Err(CanonError::Precondition(format!("{} factors for {n} variables", factors.len())));
    }
    let column = |v: Var| vars.iter().position(|&x| x == v);
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(n);
    let mut coeff = RatFun::one();
    for &(a, b) in factors {
        coeff = coeff.mul(&RatFun::inv_diff(Some(a), b)?);
        let mut row = alloc::vec![Q::zero(); n];
        if let Some(c) = column(a) {
            row[c] += Q::one();
        }
        if let Some(c) = b.and_then(column) {
            row[c] -= Q::one();
        }
        rows.push(row);
    }
    Ok(coeff.scale(&determinant(rows)))
}

/// `asym_k` of a wedge of logarithmic forms, as the coefficient of `dV_k`.
pub fn asym_log_wedge(factors: &[(Var, Option<Var>)], k: &Weight) -> Result<RatFun, CanonError> {
    // g acts on dV_k by sign(g), so asym of f dV_k is sym(f) dV_k.
    Ok(sym(&log_wedge(factors, &k.variables())?, k))
}

fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else { return Q::zero() };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_colors() {
        let k = Weight::new(vec![1, 1]).unwrap();
        let om = omega_free(&k, None);
        let (t, s) = (Var::t(1, 1), Var::t(2, 1));
        let f21 = RatFun::inv_diff(Some(t), None).unwrap().mul(&RatFun::inv_diff(Some(s), Some(t)).unwrap());
        assert_eq!(om.coeff_of_word(&Word::new([2, 1])), Some(&f21));
        assert_eq!(om.coeffs().len(), 2);
        let empty = omega_free(&Weight::zero(2), None);
        assert_eq!(empty.coeffs().values().collect::<alloc::vec::Vec<_>>(), vec![&RatFun::one()]);
    }

    #[test]
    fn log_wedges() {
        let (t1, t2) = (Var::t(1, 1), Var::t(1, 2));
        let k = Weight::new(vec![2]).unwrap();
        // asym(dt1/t1 ∧ d(t2-t1)/(t2-t1)) = dt1 ∧ dt2 / (t1 t2)
        let got = asym_log_wedge(&[(t1, None), (t2, Some(t1))], &k).unwrap();
        let expected = RatFun::inv_diff(Some(t1), None).unwrap().mul(&RatFun::inv_diff(Some(t2), None).unwrap());
        assert_eq!(got, expected);
        // the wedge is alternating in its factors
        let swapped = log_wedge(&[(t2, Some(t1)), (t1, None)], &k.variables()).unwrap();
        assert_eq!(swapped, log_wedge(&[(t1, None), (t2, Some(t1))], &k.variables()).unwrap().neg());
        assert!(log_wedge(&[(t1, None), (t1, None)], &k.variables()).unwrap().is_zero());
    }
}
