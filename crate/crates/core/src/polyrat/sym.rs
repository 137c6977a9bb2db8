use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::perm::{group_elements, GroupElement};
use super::{LinearForm, PolyError, Polynomial, Q, RatFun, Var, Weight};

/// Sums many functions, first merging terms that share a denominator and
/// then adding the groups pairwise.
pub fn sum_all(terms: impl IntoIterator<Item = RatFun>) -> RatFun {
    let mut groups: BTreeMap<BTreeMap<LinearForm, u32>, Polynomial> = BTreeMap::new();
    for t in terms {
        if t.is_zero() {
            continue;
        }
        groups.entry(t.denominator().clone()).or_insert_with(Polynomial::zero).add_assign(t.numerator());
    }
    let mut level: Vec<RatFun> = groups.into_iter().map(|(den, num)| RatFun::from_parts(num, den)).collect();
    while level.len() > 1 {
        level = level
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a.add(b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    level.pop().unwrap_or_else(RatFun::zero)
}

/// `sum over g in G_k of g . f`, with each term multiplied by `sign(g)` when
/// `signed` is set.
pub fn symmetrize(f: &RatFun, k: &Weight, signed: bool) -> RatFun {
    sum_all(group_elements(k).into_iter().map(|g| {
        let t = g.act(f);
        if signed && g.sign() < 0 {
            t.neg()
        } else {
            t
        }
    }))
}

pub fn sym(f: &RatFun, k: &Weight) -> RatFun {
    symmetrize(f, k, false)
}

pub fn asym(f: &RatFun, k: &Weight) -> RatFun {
    symmetrize(f, k, true)
}

/// Whether `f` is invariant under `G_k`, tested on adjacent transpositions.
pub fn is_symmetric(f: &RatFun, k: &Weight) -> bool {
    for (i, &n) in k.parts().iter().enumerate() {
        for a in 1..n {
            let g = GroupElement::transposition(k, i as u32 + 1, a, a + 1);
            if g.act(f) != *f {
                return false;
            }
        }
    }
    true
}

/// A `G_k`-invariant function of weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymFun {
    weight: Weight,
    fun: RatFun,
}

impl SymFun {
    pub fn new(weight: Weight, fun: RatFun) -> Result<Self, PolyError> {
        for v in fun.vars() {
            if let Var::T(i, j) = v {
                if i as usize > weight.rank() || j > weight.get(i) {
                    return Err(PolyError::VariableOutsideWeight(v));
                }
            }
        }
        if !is_symmetric(&fun, &weight) {
            return Err(PolyError::AsymmetricInput);
        }
        Ok(SymFun { weight, fun })
    }

    /// The constant `1` of weight zero.
    pub fn unit(rank: usize) -> Self {
        SymFun { weight: Weight::zero(rank), fun: RatFun::one() }
    }

    /// Symmetrizes `f` over `G_k` and wraps the result.
    pub fn symmetrized(f: &RatFun, k: &Weight) -> Self {
        SymFun { weight: k.clone(), fun: sym(f, k) }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn fun(&self) -> &RatFun {
        &self.fun
    }

    pub fn into_fun(self) -> RatFun {
        self.fun
    }

    pub fn scale(&self, c: &Q) -> SymFun {
        SymFun { weight: self.weight.clone(), fun: self.fun.scale(c) }
    }

    pub fn add(&self, other: &SymFun) -> Result<SymFun, PolyError> {
        if self.weight != other.weight {
            return Err(PolyError::WeightMismatch);
        }
        Ok(SymFun { weight: self.weight.clone(), fun: self.fun.add(&other.fun) })
    }

    /// The shuffle product: `sym_{k+l}(f(t_1..t_k) g(t_{k+1}..t_{k+l})) / (k! l!)`.
    pub fn star(&self, other: &SymFun) -> Result<SymFun, PolyError> {
        star(self, other)
    }
}

/// The shuffle product of two symmetric functions, computed as a sum over
/// per-color subsets rather than over the whole group.
pub fn star(f: &SymFun, g: &SymFun) -> Result<SymFun, PolyError> {
    let (k, l) = (&f.weight, &g.weight);
    if k.rank() != l.rank() {
        return Err(PolyError::WeightMismatch);
    }
    let total = k + l;
    let per_color: Vec<Vec<Vec<u32>>> =
        k.parts().iter().zip(l.parts()).map(|(&a, &b)| subsets(a + b, a)).collect();

    let mut choices: Vec<Vec<&Vec<u32>>> = alloc::vec![Vec::new()];
    for options in &per_color {
        let mut next = Vec::with_capacity(choices.len() * options.len());
        for c in &choices {
            for s in options {
                let mut c = c.clone();
                c.push(s);
                next.push(c);
            }
        }
        choices = next;
    }

    let terms = choices.into_iter().map(|choice| {
        let complements: Vec<Vec<u32>> = choice
            .iter()
            .zip(total.parts())
            .map(|(s, &n)| (1..=n).filter(|x| !s.contains(x)).collect())
            .collect();
        let left = f.fun.rename(|v| match v {
            Var::T(i, j) => Var::T(i, choice[i as usize - 1][j as usize - 1]),
            z => z,
        });
        let right = g.fun.rename(|v| match v {
            Var::T(i, j) => Var::T(i, complements[i as usize - 1][j as usize - 1]),
            z => z,
        });
        left.mul(&right)
    });
    let fun = sum_all(terms);
    Ok(SymFun { weight: total, fun })
}

/// Increasing `size`-subsets of `1..=n`, lexicographically.
fn subsets(n: u32, size: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, size: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() as u32 == size {
            out.push(prefix.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < size - prefix.len() as u32 {
                break;
            }
            prefix.push(x);
            go(x + 1, n, size, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// `1 / prod_i k_i!` as an exact rational.
pub fn inverse_factorials(k: &Weight) -> Q {
    let mut d = BigInt::from(1);
    for &n in k.parts() {
        for x in 2..=n {
            d *= x;
        }
    }
    Q::new(BigInt::from(1), d)
}
