use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::{LinearForm, Q, Var};

/// A monomial: `(variable, exponent)` pairs sorted by variable, exponents > 0.
///
/// Monomials are ordered lexicographically with the largest variable most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Var, e: u32) -> Self {
        let mut m = SmallVec::new();
        if e > 0 {
            m.push((v, e));
        }
        Monomial(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        pairs.into_iter().fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::power(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Splits off the power of `v`: returns `(e, m / v^e)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        match self.0.iter().position(|(w, _)| *w == v) {
            Some(pos) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(pos);
                (e, Monomial(rest))
            }
            None => (0, self.clone()),
        }
    }

    /// Applies a variable renaming; the renaming must be injective on the
    /// support of the monomial.
    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Monomial {
        let mut pairs: SmallVec<[(Var, u32); 6]> = self.0.iter().map(|&(v, e)| (map(v), e)).collect();
        pairs.sort_unstable_by_key(|p| p.0);
        debug_assert!(pairs.windows(2).all(|w| w[0].0 != w[1].0), "renaming is not injective");
        Monomial(pairs)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => {
                    if va != vb {
                        return va.cmp(vb);
                    }
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().rev().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, factor: &Q) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        big.add_assign(small);
        big
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, factor: &Q) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// `self * (hi - lo)`.
    pub fn mul_form(&self, form: &LinearForm) -> Polynomial {
        let mut out = self.mul_monomial(&Monomial::var(form.hi()));
        if let Some(lo) = form.lo() {
            out.add_scaled(&self.mul_monomial(&Monomial::var(lo)), &-Q::one());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Replaces `v` by `target` (`None` meaning 0).
    pub fn substitute(&self, v: Var, target: Option<Var>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == 0 {
                out.add_term(rest, c.clone());
            } else if let Some(t) = target {
                out.add_term(rest.mul(&Monomial::power(t, e)), c.clone());
            }
        }
        out
    }

    pub fn rename(&self, map: impl Fn(Var) -> Var + Copy) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.rename(map), c.clone())).collect() }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|p| p.0)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Exact quotient by a linear form, or `None` when it does not divide.
    ///
    /// Synthetic division in the leading variable `x` of `form = x - c`.
    pub fn div_form(&self, form: &LinearForm) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let x = form.hi();
        let degree = self.degree_in(x) as usize;
        if degree == 0 {
            return None;
        }
        let mut slices: Vec<Polynomial> = (0..=degree).map(|_| Polynomial::zero()).collect();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(x);
            slices[e as usize].add_term(rest, c.clone());
        }
        let mut quotient_slices: Vec<Polynomial> = (0..degree).map(|_| Polynomial::zero()).collect();
        // q_{d-1} = a_d + c q_d, remainder a_0 + c q_0.
        let mut carry = Polynomial::zero();
        for d in (1..=degree).rev() {
            let mut q = core::mem::take(&mut slices[d]);
            if let Some(lo) = form.lo() {
                q.add_assign(&carry.mul_monomial(&Monomial::var(lo)));
            }
            carry = q.clone();
            quotient_slices[d - 1] = q;
        }
        let mut remainder = core::mem::take(&mut slices[0]);
        if let Some(lo) = form.lo() {
            remainder.add_assign(&carry.mul_monomial(&Monomial::var(lo)));
        }
        if !remainder.is_zero() {
            return None;
        }
        let mut out = Polynomial::zero();
        for (d, q) in quotient_slices.into_iter().enumerate() {
            let xd = Monomial::power(x, d as u32);
            for (m, c) in q.terms {
                out.add_term(m.mul(&xd), c);
            }
        }
        Some(out)
    }

    /// Exact evaluation; `None` if some variable is unassigned.
    pub fn eval(&self, point: &impl Fn(Var) -> Option<Q>) -> Result<Q, Var> {
        let mut cache: BTreeMap<Var, Q> = BTreeMap::new();
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.pairs() {
                let value = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = point(v).ok_or(v)?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                for _ in 0..e {
                    term *= &value;
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Q::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u32, j: u32) -> Polynomial {
        Polynomial::var(Var::t(i, j))
    }

    #[test]
    fn lex_order_has_largest_variable_most_significant() {
        let a = Monomial::var(Var::t(2, 1));
        let b = Monomial::power(Var::t(1, 1), 5);
        assert!(a > b);
        assert!(Monomial::one() < b);
        let ab = a.mul(&b);
        assert!(ab > a);
    }

    #[test]
    fn synthetic_division_recovers_factor() {
        let form = LinearForm::new(Var::t(2, 1), Some(Var::t(1, 1))).unwrap();
        let q = t(1, 1).mul(&t(1, 1)).add(&t(2, 1).mul(&t(1, 2)));
        let p = q.mul_form(&form);
        assert_eq!(p.div_form(&form), Some(q.clone()));
        assert_eq!(q.div_form(&form), None);
        let origin = LinearForm::new(Var::t(1, 1), None).unwrap();
        assert_eq!(t(1, 1).mul(&t(2, 1)).div_form(&origin), Some(t(2, 1)));
    }

    #[test]
    fn substitution_to_zero_drops_terms() {
        let p = t(1, 1).mul(&t(2, 1)).add(&t(2, 1));
        assert_eq!(p.substitute(Var::t(1, 1), None), t(2, 1));
        assert_eq!(p.substitute(Var::t(1, 1), Some(Var::t(2, 1))), t(2, 1).mul(&t(2, 1)).add(&t(2, 1)));
    }
}
