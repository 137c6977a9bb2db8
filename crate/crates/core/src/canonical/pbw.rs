use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{CanonError, CanonicalForm};
use crate::freealg::{serre_ideal_span, words_with_content, PbwSolver, Word};
use crate::polyrat::{inverse_factorials, star, sum_all, Q, RatFun, SymFun, Var, Weight};
use crate::roots::{eta, LieType, RootSystemData};

/// The atoms `η_β` of a root system, in root order.
#[derive(Clone, Debug)]
pub struct Atoms {
    anchor: Option<Var>,
    etas: Vec<SymFun>,
}

impl Atoms {
    pub fn new(data: &RootSystemData, anchor: Option<Var>) -> Self {
        Atoms { anchor, etas: (0..data.roots().len()).map(|l| eta(data, l, anchor)).collect() }
    }

    pub fn from_parts(anchor: Option<Var>, etas: Vec<SymFun>) -> Self {
        Atoms { anchor, etas }
    }

    pub fn anchor(&self) -> Option<Var> {
        self.anchor
    }

    pub fn get(&self, index: usize) -> &SymFun {
        &self.etas[index]
    }

    pub fn len(&self) -> usize {
        self.etas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.etas.is_empty()
    }

    /// `(1/prod_l p_l!) η_{β_1}^{*p_1} * ... * η_{β_m}^{*p_m}`.
    pub fn product(&self, p: &[u32], rank: usize) -> Result<SymFun, CanonError> {
        let mut acc = SymFun::unit(rank);
        for (l, &e) in p.iter().enumerate() {
            for _ in 0..e {
                acc = star(&acc, &self.etas[l])?;
            }
        }
        let p_weight = Weight::new(p.to_vec())?;
        Ok(acc.scale(&inverse_factorials(&p_weight)))
    }
}

/// `Ω^g_k` in a PBW basis: `ω_p` for every exponent vector `p` of content `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwExpansion {
    pub lie_type: LieType,
    pub weight: Weight,
    pub anchor: Option<Var>,
    pub coeffs: BTreeMap<Vec<u32>, RatFun>,
}

/// Coefficients from the product formula.
pub fn omega_pbw(data: &RootSystemData, k: &Weight, atoms: &Atoms) -> Result<PbwExpansion, CanonError> {
    let mut coeffs = BTreeMap::new();
    for p in data.pbw_monomials(k)? {
        let f = atoms.product(&p, data.rank())?.into_fun();
        coeffs.insert(p, f);
    }
    Ok(PbwExpansion { lie_type: data.lie_type(), weight: k.clone(), anchor: atoms.anchor(), coeffs })
}

/// The quotient map from words of content `k` onto PBW monomials:
/// `f_w = sum_p c_{w,p} F^p` modulo the Serre ideal.
#[derive(Clone, Debug)]
pub struct PbwProjection {
    monomials: Vec<Vec<u32>>,
    coords: BTreeMap<Word, Vec<Q>>,
}

impl PbwProjection {
    pub fn new(data: &RootSystemData, k: &Weight) -> Result<Self, CanonError> {
        let monomials = data.pbw_monomials(k)?;
        let family: Vec<_> = monomials.iter().map(|p| data.pbw_element(p)).collect();
        let words = words_with_content(k);
        let ideal = serre_ideal_span(data.cartan(), k);
        let solver = PbwSolver::new(&ideal, &family, words.len())?;
        let mut coords = BTreeMap::new();
        for w in words {
            let c = solver.coordinates(&w)?;
            coords.insert(w, c);
        }
        Ok(PbwProjection { monomials, coords })
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn coordinates(&self, w: &Word) -> Option<&[Q]> {
        self.coords.get(w).map(|c| c.as_slice())
    }

    /// `ω_p = sum_w c_{w,p} ω_w`.
    pub fn project(&self, form: &CanonicalForm) -> BTreeMap<Vec<u32>, RatFun> {
        self.monomials
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let terms = self.coords.iter().filter(|(_, c)| !c[n].is_zero()).map(|(w, c)| {
                    form.coeff_of_word(w).expect("form has every word of its weight").scale(&c[n])
                });
                (p.clone(), sum_all(terms))
            })
            .collect()
    }
}
