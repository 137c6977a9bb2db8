use alloc::vec::Vec;

use num_traits::Zero;

use super::chain::Resolver;
use super::{Equation, FlagChain, FlagCombination, FlagError};
use crate::polyrat::{Q, RatFun, Var, Weight};

/// `coeff * dv_1 ∧ ... ∧ dv_n` for the listed variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopForm {
    coeff: RatFun,
    vars: Vec<Var>,
}

impl TopForm {
    pub fn new(coeff: RatFun, vars: Vec<Var>) -> Result<Self, FlagError> {
        for v in coeff.vars() {
            if !v.is_anchor() && !vars.contains(&v) {
                return Err(FlagError::StrayVariable(v));
            }
        }
        Ok(TopForm { coeff, vars })
    }

    /// `coeff * dV_k`.
    pub fn standard(coeff: RatFun, k: &Weight) -> Result<Self, FlagError> {
        Self::new(coeff, k.variables())
    }

    pub fn coeff(&self) -> &RatFun {
        &self.coeff
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn into_coeff(self) -> RatFun {
        self.coeff
    }
}

/// Residue along a single equation, already written in the surviving
/// variables of `f`.
pub fn residue_step(f: &TopForm, eq: &Equation) -> Result<TopForm, FlagError> {
    let (v, target) = eq.solve()?;
    let form = eq.form()?;
    let pos = f.vars.iter().position(|&x| x == v).ok_or(FlagError::VariableAbsent(v))?;
    let vars: Vec<Var> = f.vars.iter().copied().filter(|&x| x != v).collect();
    let coeff = match f.coeff.den_multiplicity(&form) {
        0 => RatFun::zero(),
        1 => {
            let c = f.coeff.mul_form(&form).substitute(v, target)?;
            if pos % 2 == 1 {
                c.neg()
            } else {
                c
            }
        }
        order => return Err(FlagError::HigherPole { form, order }),
    };
    Ok(TopForm { coeff, vars })
}

/// Successive residues along the equations of `chain`, first equation
/// first. Later equations may mention variables eliminated earlier.
pub fn iterated_residue(f: &TopForm, chain: &FlagChain) -> Result<TopForm, FlagError> {
    let mut resolver = Resolver::default();
    let mut current = f.clone();
    for eq in chain.equations() {
        let rewritten = resolver.eliminate(eq)?;
        if current.coeff.is_zero() {
            let (v, _) = rewritten.solve()?;
            current.vars.retain(|&x| x != v);
            continue;
        }
        current = residue_step(&current, &rewritten)?;
    }
    Ok(current)
}

/// The pairing of a flag combination with a top form. Every chain must
/// have full length; the value may still depend on anchors.
pub fn residue_pairing(flags: &FlagCombination, f: &TopForm) -> Result<RatFun, FlagError> {
    let mut terms = Vec::with_capacity(flags.len());
    for (chain, c) in flags.terms() {
        if chain.len() != f.vars.len() {
            return Err(FlagError::NotFullLength);
        }
        let r = iterated_residue(f, chain)?;
        terms.push(r.coeff.scale(c));
    }
    Ok(crate::polyrat::sum_all(terms))
}

/// [`residue_pairing`] for forms without anchors, where the value is a number.
pub fn residue_value(flags: &FlagCombination, f: &TopForm) -> Result<Q, FlagError> {
    let r = residue_pairing(flags, f)?;
    if r.is_zero() {
        return Ok(Q::zero());
    }
    r.as_constant().ok_or(FlagError::NotConstant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::flag_of_word;
    use crate::polyrat::MultiIndex;
    use alloc::vec;
    use num_traits::One;

    fn inv(a: Var, b: Option<Var>) -> RatFun {
        RatFun::inv_diff(Some(a), b).unwrap()
    }

    #[test]
    fn single_steps() {
        let (t, s) = (Var::t(1, 1), Var::t(2, 1));
        let f = TopForm::new(inv(t, None).mul(&inv(s, Some(t))), vec![t, s]).unwrap();
        let r = residue_step(&f, &Equation::new(s, Some(t))).unwrap();
        assert_eq!(r.coeff, inv(t, None).neg());
        assert_eq!(r.vars, vec![t]);
        let g = TopForm::new(inv(t, None), vec![t]).unwrap();
        assert_eq!(residue_step(&g, &Equation::to_zero(t)).unwrap().coeff, RatFun::one());
        let h = TopForm::new(inv(s, Some(t)), vec![t, s]).unwrap();
        assert!(residue_step(&h, &Equation::to_zero(t)).unwrap().coeff.is_zero());
        let sq = TopForm::new(inv(t, None).mul(&inv(t, None)), vec![t]).unwrap();
        assert!(matches!(residue_step(&sq, &Equation::to_zero(t)), Err(FlagError::HigherPole { .. })));
    }

    #[test]
    fn chains_and_pairings() {
        let (t, s) = (Var::t(1, 1), Var::t(2, 1));
        let k = Weight::new(vec![1, 1]).unwrap();
        let omega = TopForm::standard(inv(t, None).mul(&inv(s, Some(t))), &k).unwrap();
        let chain = FlagChain::new(vec![Equation::to_zero(t), Equation::to_zero(s)]).unwrap();
        assert_eq!(iterated_residue(&omega, &chain).unwrap().coeff, RatFun::one());
        let flag = flag_of_word(&MultiIndex::new(vec![1, 2]), &k, None).unwrap();
        assert_eq!(residue_value(&flag, &omega).unwrap(), Q::one());
        let other = flag_of_word(&MultiIndex::new(vec![2, 1]), &k, None).unwrap();
        assert!(residue_value(&other, &omega).unwrap().is_zero());
        assert_eq!(iterated_residue(&omega, &FlagChain::default()).unwrap(), omega);
    }
}
