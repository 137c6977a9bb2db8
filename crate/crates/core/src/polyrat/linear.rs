use core::fmt;
use core::str::FromStr;

use super::{Polynomial, PolyError, Q, Var};

/// A hyperplane `hi - lo = 0` (or `hi = 0` when `lo` is `None`), stored with
/// the larger variable first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    hi: Var,
    lo: Option<Var>,
}

/// Result of rewriting a linear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewritten {
    /// The form vanished identically.
    Zero,
    /// `sign * form`.
    Form(i32, LinearForm),
}

impl LinearForm {
    /// The canonical form `hi - lo`; `lo` must be smaller than `hi`.
    pub fn new(hi: Var, lo: Option<Var>) -> Result<Self, PolyError> {
        match lo {
            Some(l) if l >= hi => Err(PolyError::BadForm),
            _ => Ok(LinearForm { hi, lo }),
        }
    }

    /// `a - b` (with `None` meaning 0) as `sign * canonical form`.
    pub fn difference(a: Option<Var>, b: Option<Var>) -> Rewritten {
        match (a, b) {
            (None, None) => Rewritten::Zero,
            (Some(x), None) => Rewritten::Form(1, LinearForm { hi: x, lo: None }),
            (None, Some(y)) => Rewritten::Form(-1, LinearForm { hi: y, lo: None }),
            (Some(x), Some(y)) if x == y => Rewritten::Zero,
            (Some(x), Some(y)) if x > y => Rewritten::Form(1, LinearForm { hi: x, lo: Some(y) }),
            (Some(x), Some(y)) => Rewritten::Form(-1, LinearForm { hi: y, lo: Some(x) }),
        }
    }

    pub fn hi(&self) -> Var {
        self.hi
    }

    pub fn lo(&self) -> Option<Var> {
        self.lo
    }

    pub fn contains(&self, v: Var) -> bool {
        self.hi == v || self.lo == Some(v)
    }

    pub fn to_poly(&self) -> Polynomial {
        let mut p = Polynomial::var(self.hi);
        if let Some(lo) = self.lo {
            p = p.sub(&Polynomial::var(lo));
        }
        p
    }

    pub fn substitute(&self, v: Var, target: Option<Var>) -> Rewritten {
        let swap = |x: Var| if x == v { target } else { Some(x) };
        LinearForm::difference(swap(self.hi), self.lo.and_then(swap))
    }

    pub fn rename(&self, map: impl Fn(Var) -> Var) -> Rewritten {
        LinearForm::difference(Some(map(self.hi)), self.lo.map(map))
    }

    pub fn eval(&self, point: &impl Fn(Var) -> Option<Q>) -> Result<Q, Var> {
        let hi = point(self.hi).ok_or(self.hi)?;
        match self.lo {
            Some(lo) => Ok(hi - point(lo).ok_or(lo)?),
            None => Ok(hi),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(lo) => write!(f, "{}-{}", self.hi, lo),
            None => write!(f, "{}", self.hi),
        }
    }
}

impl FromStr for LinearForm {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('-') {
            Some((a, b)) => LinearForm::new(a.parse()?, Some(b.parse()?)),
            None => LinearForm::new(s.parse()?, None),
        }
    }
}
