use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::linear::Rewritten;
use super::{LinearForm, Monomial, Polynomial, PolyError, Q, Var};

/// An exact rational function whose denominator is a product of
/// arrangement hyperplanes.
///
/// Normal form: the denominator is a product of canonically oriented linear
/// forms, none of which divides the numerator, and zero is `0 / 1`. Two equal
/// functions therefore have identical representations, so the derived
/// `PartialEq` decides equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: Polynomial,
    den: BTreeMap<LinearForm, u32>,
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Polynomial::zero(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFun { num: Polynomial::constant(c), den: BTreeMap::new() }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFun { num: p, den: BTreeMap::new() }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    /// `1 / form`.
    pub fn inv_form(form: LinearForm) -> Self {
        let mut den = BTreeMap::new();
        den.insert(form, 1);
        RatFun { num: Polynomial::one(), den }
    }

    /// `1 / (a - b)`, `None` standing for 0.
    pub fn inv_diff(a: Option<Var>, b: Option<Var>) -> Result<Self, PolyError> {
        match LinearForm::difference(a, b) {
            Rewritten::Zero => Err(PolyError::DivisionByZero),
            Rewritten::Form(sign, form) => Ok(Self::inv_form(form).scale(&Q::from_integer(sign.into()))),
        }
    }

    /// The polynomial `a - b`.
    pub fn diff(a: Option<Var>, b: Option<Var>) -> Self {
        let mut p = Polynomial::zero();
        if let Some(a) = a {
            p.add_term(Monomial::var(a), Q::one());
        }
        if let Some(b) = b {
            p.add_term(Monomial::var(b), -Q::one());
        }
        Self::from_poly(p)
    }

    /// Builds `num / prod den` and brings it to normal form.
    pub fn from_parts(num: Polynomial, den: BTreeMap<LinearForm, u32>) -> Self {
        Self::normalized(num, den)
    }

    fn normalized(mut num: Polynomial, den: BTreeMap<LinearForm, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut kept = BTreeMap::new();
        for (form, mut mult) in den {
            while mult > 0 {
                match num.div_form(&form) {
                    Some(q) => {
                        num = q;
                        mult -= 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                kept.insert(form, mult);
            }
        }
        RatFun { num, den: kept }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.den
    }

    /// The denominator as a polynomial.
    pub fn denominator_poly(&self) -> Polynomial {
        self.den.iter().fold(Polynomial::one(), |acc, (f, &m)| (0..m).fold(acc, |a, _| a.mul_form(f)))
    }

    pub fn den_multiplicity(&self, form: &LinearForm) -> u32 {
        self.den.get(form).copied().unwrap_or(0)
    }

    /// The hyperplanes along which the function has a pole.
    pub fn pole_support(&self) -> Vec<LinearForm> {
        self.den.keys().copied().collect()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        for f in self.den.keys() {
            vs.push(f.hi());
            vs.extend(f.lo());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Q) -> RatFun {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `self` times `form`, i.e. one power of `form` removed from the denominator
    /// when present.
    pub fn mul_form(&self, form: &LinearForm) -> RatFun {
        let mut den = self.den.clone();
        match den.get_mut(form) {
            Some(m) if *m > 1 => {
                *m -= 1;
                RatFun { num: self.num.clone(), den }
            }
            Some(_) => {
                den.remove(form);
                RatFun { num: self.num.clone(), den }
            }
            None => RatFun { num: self.num.mul_form(form), den },
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |r: &RatFun| {
            let mut num = r.num.clone();
            for (f, &m) in &den {
                for _ in r.den_multiplicity(f)..m {
                    num = num.mul_form(f);
                }
            }
            num
        };
        let num = lift(self).add(&lift(other));
        Self::normalized(num, den)
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, &m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        let num = self.num.mul(&other.num);
        if self.den.keys().all(|f| !other.num.contains_var(f.hi()))
            && other.den.keys().all(|f| !self.num.contains_var(f.hi()))
        {
            return RatFun { num, den };
        }
        Self::normalized(num, den)
    }

    /// Exact division; the divisor's numerator must factor into linear forms.
    pub fn div(&self, other: &RatFun) -> Result<RatFun, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (c, forms) = factor_linear(&other.num).ok_or(PolyError::NonLinearDivisor)?;
        let mut num = self.num.scale(&(Q::one() / c));
        for (f, &m) in &other.den {
            for _ in 0..m {
                num = num.mul_form(f);
            }
        }
        let mut den = self.den.clone();
        for f in forms {
            *den.entry(f).or_insert(0) += 1;
        }
        Ok(Self::normalized(num, den))
    }

    /// Replaces `v` by `target` (`None` meaning 0).
    pub fn substitute(&self, v: Var, target: Option<Var>) -> Result<RatFun, PolyError> {
        if target == Some(v) {
            return Ok(self.clone());
        }
        let mut num = self.num.substitute(v, target);
        let mut den = BTreeMap::new();
        let mut negate = false;
        for (f, &m) in &self.den {
            match f.substitute(v, target) {
                Rewritten::Zero => return Err(PolyError::PoleHit { form: *f }),
                Rewritten::Form(sign, g) => {
                    *den.entry(g).or_insert(0) += m;
                    if sign < 0 && m % 2 == 1 {
                        negate = !negate;
                    }
                }
            }
        }
        if negate {
            num = num.neg();
        }
        Ok(Self::normalized(num, den))
    }

    /// Applies an injective variable renaming.
    pub fn rename(&self, map: impl Fn(Var) -> Var + Copy) -> RatFun {
        let mut num = self.num.rename(map);
        let mut den = BTreeMap::new();
        let mut negate = false;
        for (f, &m) in &self.den {
            match f.rename(map) {
                Rewritten::Zero => panic!("renaming collapsed the hyperplane {f}"),
                Rewritten::Form(sign, g) => {
                    *den.entry(g).or_insert(0) += m;
                    if sign < 0 && m % 2 == 1 {
                        negate = !negate;
                    }
                }
            }
        }
        if negate {
            num = num.neg();
        }
        RatFun { num, den }
    }

    pub fn eval(&self, point: &impl Fn(Var) -> Option<Q>) -> Result<Q, PolyError> {
        let mut den = Q::one();
        for (f, &m) in &self.den {
            let value = f.eval(point).map_err(PolyError::UnassignedVariable)?;
            if value.is_zero() {
                return Err(PolyError::PoleAtPoint { form: *f });
            }
            for _ in 0..m {
                den *= &value;
            }
        }
        let num = self.num.eval(point).map_err(PolyError::UnassignedVariable)?;
        Ok(num / den)
    }

    /// Evaluation at a point given as a map.
    pub fn eval_at(&self, point: &BTreeMap<Var, Q>) -> Result<Q, PolyError> {
        self.eval(&|v| point.get(&v).cloned())
    }
}

/// Factors `p` as `c * prod forms` over arrangement hyperplanes between its
/// variables, if possible.
pub fn factor_linear(p: &Polynomial) -> Option<(Q, Vec<LinearForm>)> {
    let mut rest = p.clone();
    let mut forms = Vec::new();
    let vars = p.vars();
    let mut candidates = Vec::new();
    for (n, &a) in vars.iter().enumerate() {
        candidates.push(LinearForm::new(a, None).ok()?);
        for &b in &vars[..n] {
            candidates.push(LinearForm::new(a, Some(b)).ok()?);
        }
    }
    loop {
        if let Some(c) = rest.as_constant() {
            return (!c.is_zero()).then_some((c, forms));
        }
        let (form, q) = candidates.iter().find_map(|f| rest.div_form(f).map(|q| (*f, q)))?;
        forms.push(form);
        rest = q;
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::add(self, rhs)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::sub(self, rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::mul(self, rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::neg(self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/(")?;
        for (n, (form, m)) in self.den.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if form.lo().is_some() {
                write!(f, "({form})")?;
            } else {
                write!(f, "{form}")?;
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32, j: u32) -> Option<Var> {
        Some(Var::t(i, j))
    }

    fn inv(a: Option<Var>, b: Option<Var>) -> RatFun {
        RatFun::inv_diff(a, b).unwrap()
    }

    #[test]
    fn surgery_identity() {
        // 1/((y-x)(z-y)) + 1/((z-x)(y-z)) = 1/((y-x)(z-x))
        let (x, y, z) = (v(1, 1), v(2, 1), v(3, 1));
        let lhs = &(&inv(y, x) * &inv(z, y)) + &(&inv(z, x) * &inv(y, z));
        assert_eq!(lhs, &inv(y, x) * &inv(z, x));
    }

    #[test]
    fn adding_zero_is_identity() {
        let a = &inv(v(1, 1), None) * &inv(v(2, 1), v(1, 1));
        assert_eq!(&a + &RatFun::zero(), a);
    }

    #[test]
    fn partial_fraction_by_hand() {
        // 1/(t1 (t2 - t1)) + 1/(t2 (t1 - t2)) = 1/(t1 t2)
        let (t1, t2) = (v(1, 1), v(1, 2));
        let sum = &(&inv(t1, None) * &inv(t2, t1)) + &(&inv(t2, None) * &inv(t1, t2));
        assert_eq!(sum, &inv(t1, None) * &inv(t2, None));
    }

    #[test]
    fn substitution_cases() {
        let (t, s) = (v(1, 1), v(2, 1));
        let f = inv(s, t);
        assert_eq!(f.substitute(Var::t(1, 1), None).unwrap(), inv(s, None));
        let g = &RatFun::diff(v(1, 2), v(1, 1)) * &(&inv(v(1, 1), None) * &inv(v(1, 2), v(1, 1)));
        assert_eq!(g.substitute(Var::t(1, 2), v(1, 1)).unwrap(), inv(v(1, 1), None));
        let h = &inv(t, None) * &inv(s, t);
        assert!(matches!(h.substitute(Var::t(2, 1), t), Err(PolyError::PoleHit { .. })));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = &inv(v(1, 1), None) * &inv(v(1, 2), None);
        let point = |x: Var| match x {
            Var::T(1, 1) => Some(Q::from_integer(2.into())),
            Var::T(1, 2) => Some(Q::from_integer(3.into())),
            _ => None,
        };
        assert_eq!(f.eval(&point).unwrap(), Q::new(1.into(), 6.into()));
        let at_pole = |x: Var| match x {
            Var::T(1, 1) => Some(Q::zero()),
            _ => Some(Q::one()),
        };
        assert!(matches!(f.eval(&at_pole), Err(PolyError::PoleAtPoint { .. })));
        assert!(matches!(f.eval(&|_| None), Err(PolyError::UnassignedVariable(_))));
    }

    #[test]
    fn division_through_linear_factors() {
        let (t, s) = (v(1, 1), v(2, 1));
        let a = inv(t, None);
        let b = &RatFun::diff(s, t).scale(&Q::from_integer(3.into())) * &inv(s, None);
        let q = a.div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(matches!(a.div(&RatFun::zero()), Err(PolyError::DivisionByZero)));
        let sum = RatFun::from_poly(Polynomial::var(Var::t(1, 1)).add(&Polynomial::var(Var::t(2, 1))));
        assert!(matches!(a.div(&sum), Err(PolyError::NonLinearDivisor)));
    }
}
