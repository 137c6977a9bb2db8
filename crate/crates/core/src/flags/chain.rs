use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::FlagError;
use crate::freealg::FreeElement;
use crate::polyrat::{group_elements, LinearForm, MultiIndex, Q, Rewritten, Var, Weight};

/// `lhs = rhs`, where `rhs = None` means `lhs = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub lhs: Var,
    pub rhs: Option<Var>,
}

impl Equation {
    pub fn new(lhs: Var, rhs: Option<Var>) -> Self {
        Equation { lhs, rhs }
    }

    pub fn to_zero(v: Var) -> Self {
        Equation { lhs: v, rhs: None }
    }

    /// The variable removed by a residue along this equation (the larger
    /// one) and the value it is set to.
    pub fn solve(&self) -> Result<(Var, Option<Var>), FlagError> {
        let (a, b) = match self.rhs {
            Some(r) if r > self.lhs => (r, Some(self.lhs)),
            other => (self.lhs, other),
        };
        if a.is_anchor() || Some(a) == b {
            return Err(FlagError::Degenerate(*self));
        }
        Ok((a, b))
    }

    /// The hyperplane `eliminated - value`.
    pub fn form(&self) -> Result<LinearForm, FlagError> {
        let (v, w) = self.solve()?;
        match LinearForm::difference(Some(v), w) {
            Rewritten::Form(1, f) => Ok(f),
            _ => Err(FlagError::Degenerate(*self)),
        }
    }

    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Equation {
        Equation { lhs: map(self.lhs), rhs: self.rhs.map(map) }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rhs {
            Some(r) => write!(f, "{}={}", self.lhs, r),
            None => write!(f, "{}=0", self.lhs),
        }
    }
}

/// A flag given by the equations cutting out each successive edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagChain(Vec<Equation>);

impl FlagChain {
    /// Checks that every equation is independent of the earlier ones.
    pub fn new(equations: Vec<Equation>) -> Result<Self, FlagError> {
        let mut resolver = Resolver::default();
        for eq in &equations {
            resolver.eliminate(eq)?;
        }
        Ok(FlagChain(equations))
    }

    pub fn equations(&self) -> &[Equation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rename(&self, map: impl Fn(Var) -> Var + Copy) -> FlagChain {
        FlagChain(self.0.iter().map(|e| e.rename(map)).collect())
    }
}

impl fmt::Display for FlagChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (n, e) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// Tracks variables eliminated by earlier steps of a chain.
#[derive(Clone, Debug, Default)]
pub(crate) struct Resolver {
    solved: BTreeMap<Var, Option<Var>>,
}

impl Resolver {
    pub(crate) fn resolve(&self, mut v: Option<Var>) -> Option<Var> {
        while let Some(x) = v {
            match self.solved.get(&x) {
                Some(&next) => v = next,
                None => break,
            }
        }
        v
    }

    /// Rewrites `eq` in the surviving variables and records its solution.
    pub(crate) fn eliminate(&mut self, eq: &Equation) -> Result<Equation, FlagError> {
        let lhs = self.resolve(Some(eq.lhs));
        let rhs = self.resolve(eq.rhs);
        let current = match (lhs, rhs) {
            (Some(l), r) => Equation::new(l, r),
            (None, Some(r)) => Equation::new(r, None),
            (None, None) => return Err(FlagError::Degenerate(*eq)),
        };
        let (v, w) = current.solve()?;
        self.solved.insert(v, w);
        Ok(current)
    }
}

/// A rational combination of flags.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlagCombination(BTreeMap<FlagChain, Q>);

impl FlagCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(chain: FlagChain) -> Self {
        let mut c = Self::zero();
        c.add_term(chain, Q::one());
        c
    }

    pub fn add_term(&mut self, chain: FlagChain, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(chain.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&chain);
        }
    }

    pub fn add_scaled(&mut self, other: &FlagCombination, factor: &Q) {
        for (chain, c) in &other.0 {
            self.add_term(chain.clone(), c * factor);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FlagChain, &Q)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for FlagCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (chain, c)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){chain}")?;
        }
        Ok(())
    }
}

/// The flag combination dual to the monomial of `j`: the normalized signed
/// symmetrization of the chain `(x_1 = a), (x_2 = a), ...` in the variables
/// identified by `j`, where `a` is 0 or the anchor.
pub fn flag_of_word(j: &MultiIndex, k: &Weight, anchor: Option<Var>) -> Result<FlagCombination, FlagError> {
    if j.content(k.rank()) != *k {
        return Err(FlagError::ContentMismatch);
    }
    let base = FlagChain(j.identification().into_iter().map(|x| Equation::new(x, anchor)).collect());
    let prefactor = Q::from_integer(j.sign().into()) * crate::polyrat::inverse_factorials(k);
    let mut out = FlagCombination::zero();
    for g in group_elements(k) {
        let c = if g.sign() < 0 { -prefactor.clone() } else { prefactor.clone() };
        out.add_term(base.rename(|v| g.apply(v)), c);
    }
    Ok(out)
}

/// Linear extension of [`flag_of_word`] to free-algebra elements of content `k`.
pub fn flag_of_free_element(e: &FreeElement, k: &Weight, anchor: Option<Var>) -> Result<FlagCombination, FlagError> {
    let mut out = FlagCombination::zero();
    for (w, c) in e.terms() {
        if w.content(k.rank())? != *k {
            return Err(FlagError::Inhomogeneous);
        }
        out.add_scaled(&flag_of_word(&w.to_multi_index(), k, anchor)?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(parts: &[u32]) -> Weight {
        Weight::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn two_color_examples() {
        let (t, s) = (Var::t(1, 1), Var::t(2, 1));
        let k = w(&[1, 1]);
        let a = flag_of_word(&MultiIndex::new(vec![1, 2]), &k, None).unwrap();
        let expected = FlagChain::new(vec![Equation::to_zero(t), Equation::to_zero(s)]).unwrap();
        assert_eq!(a, FlagCombination::single(expected));
        let b = flag_of_word(&MultiIndex::new(vec![2, 1]), &k, None).unwrap();
        let chain = FlagChain::new(vec![Equation::to_zero(s), Equation::to_zero(t)]).unwrap();
        let mut expected = FlagCombination::zero();
        expected.add_term(chain, -Q::one());
        assert_eq!(b, expected);
    }

    #[test]
    fn repeated_color_gets_half() {
        let k = w(&[2, 1]);
        let f = flag_of_word(&MultiIndex::new(vec![2, 1, 1]), &k, None).unwrap();
        assert_eq!(f.len(), 2);
        let half = Q::new(1.into(), 2.into());
        let mut coeffs: Vec<Q> = f.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![-half.clone(), half]);
    }

    #[test]
    fn dependent_equations_are_rejected() {
        let (t, s) = (Var::t(1, 1), Var::t(1, 2));
        assert!(FlagChain::new(vec![Equation::new(s, Some(t)), Equation::new(t, Some(s))]).is_err());
        assert!(FlagChain::new(vec![Equation::new(s, Some(t)), Equation::to_zero(s)]).is_ok());
        assert!(flag_of_word(&MultiIndex::new(vec![1]), &w(&[1, 1]), None).is_err());
    }
}
