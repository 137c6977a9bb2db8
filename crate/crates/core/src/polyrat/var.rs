use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::PolyError;

/// A variable of the discriminantal arrangement.
///
/// The derived order is the global variable order: every anchor precedes
/// every colored variable, anchors are ordered by `m`, colored variables by
/// `(color, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Anchor `z_m`, `m >= 1`.
    Z(u32),
    /// Colored variable `t^(color)_index`, both `>= 1`.
    T(u32, u32),
}

impl Var {
    pub const fn t(color: u32, index: u32) -> Var {
        Var::T(color, index)
    }

    pub const fn z(m: u32) -> Var {
        Var::Z(m)
    }

    pub fn color(self) -> Option<u32> {
        match self {
            Var::T(c, _) => Some(c),
            Var::Z(_) => None,
        }
    }

    pub fn is_anchor(self) -> bool {
        matches!(self, Var::Z(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i, j) => write!(f, "t:{i}:{j}"),
            Var::Z(m) => write!(f, "z:{m}"),
        }
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::BadVariable(s.into());
        let mut parts = s.trim().split(':');
        let kind = parts.next().ok_or_else(bad)?;
        let mut next_index = || -> Result<u32, PolyError> {
            let n: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(n)
        };
        let var = match kind {
            "t" => {
                let i = next_index()?;
                let j = next_index()?;
                Var::T(i, j)
            }
            "z" => Var::Z(next_index()?),
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(var)
    }
}

/// Multidegree `k = (k_1, ..., k_r)`; color `i` is 1-based throughout.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn new(parts: Vec<u32>) -> Result<Self, PolyError> {
        if parts.is_empty() {
            return Err(PolyError::EmptyWeight);
        }
        Ok(Weight(parts))
    }

    pub fn zero(rank: usize) -> Self {
        Weight(alloc::vec![0; rank.max(1)])
    }

    /// `1_i`, the unit weight of color `i`.
    pub fn unit(rank: usize, color: u32) -> Self {
        let mut w = Self::zero(rank);
        w.0[color as usize - 1] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of variables of `color` (0 for colors beyond the rank).
    pub fn get(&self, color: u32) -> u32 {
        self.0.get(color as usize - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// `k - 1_i`, or `None` when `k_i = 0`.
    pub fn minus_unit(&self, color: u32) -> Option<Weight> {
        let mut w = self.clone();
        let slot = w.0.get_mut(color as usize - 1)?;
        *slot = slot.checked_sub(1)?;
        Some(w)
    }

    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        if self.rank() != other.rank() {
            return None;
        }
        let parts = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Weight(parts))
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &Weight) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The variables in the order of the standard volume form `dV_k`.
    pub fn variables(&self) -> Vec<Var> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| (1..=k).map(move |j| Var::T(i as u32 + 1, j)))
            .collect()
    }

    /// 1-based position of `t^(color)_index` in `dV_k`.
    pub fn position(&self, color: u32, index: u32) -> usize {
        let before: u32 = self.0[..color as usize - 1].iter().sum();
        (before + index) as usize
    }

    /// `prod_i k_i!` as a `u64`.
    pub fn factorial_product(&self) -> u64 {
        self.0.iter().map(|&k| (1..=k as u64).product::<u64>()).product()
    }

    /// Every weight `w` of the same rank with `|w| <= max_total`, graded by
    /// total and then lexicographic.
    pub fn all_up_to(rank: usize, max_total: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        for total in 0..=max_total {
            let mut acc = Vec::new();
            compositions(rank, total, &mut Vec::new(), &mut acc);
            out.extend(acc.into_iter().map(Weight));
        }
        out
    }
}

fn compositions(slots: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(slots - 1, total - first, prefix, out);
        prefix.pop();
    }
}

impl core::ops::Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weights of different rank");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, k) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Weight {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = trimmed
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PolyError::BadWeight(s.into()))?;
        Weight::new(parts)
    }
}

/// A multi-index `J : {1..|k|} -> {1..r}`, stored as `(J(1), ..., J(|k|))`.
///
/// `J` identifies `t_u` with `t^(J(u))_{c(u)}` where `c` numbers the
/// positions of each color increasingly. The monomial of `J` is the
/// *reversed* product `f_{J(|k|)} ... f_{J(1)}`; see [`MultiIndex::to_word`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(colors: Vec<u32>) -> Self {
        assert!(colors.iter().all(|&c| c >= 1), "colors are 1-based");
        MultiIndex(colors)
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn content(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for &c in &self.0 {
            w.0[c as usize - 1] += 1;
        }
        w
    }

    /// `t_u -> t^(J(u))_{c(u)}` for `u = 1..|k|`.
    pub fn identification(&self) -> Vec<Var> {
        let mut seen: Vec<u32> = Vec::new();
        self.0
            .iter()
            .map(|&c| {
                if seen.len() < c as usize {
                    seen.resize(c as usize, 0);
                }
                seen[c as usize - 1] += 1;
                Var::T(c, seen[c as usize - 1])
            })
            .collect()
    }

    /// `sgn(J)`: the sign of the permutation sending each position `u` to the
    /// position the variable `t_u` has under the increasing multi-index.
    pub fn sign(&self) -> i32 {
        let rank = self.0.iter().copied().max().unwrap_or(1) as usize;
        let content = self.content(rank);
        let target: Vec<usize> = self
            .identification()
            .into_iter()
            .map(|v| match v {
                Var::T(i, j) => content.position(i, j),
                Var::Z(_) => unreachable!(),
            })
            .collect();
        permutation_sign(&target)
    }

    /// The word `f_{J(|k|)} ... f_{J(1)}` in left-to-right product order.
    pub fn to_word(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }

    /// Inverse of [`MultiIndex::to_word`].
    pub fn from_word(word: &[u32]) -> Self {
        MultiIndex::new(word.iter().rev().copied().collect())
    }

    /// All multi-indices of the given content, in lexicographic order.
    pub fn all_with_content(content: &Weight) -> Vec<MultiIndex> {
        let mut remaining: Vec<u32> = content.parts().to_vec();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(content.total() as usize);
        multiset_permutations(&mut remaining, &mut prefix, &mut out);
        out.into_iter().map(MultiIndex).collect()
    }

    /// `(J(1), ..., J(n), extra)`.
    pub fn push(&self, color: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v.push(color);
        MultiIndex(v)
    }

    /// `(color, J(1), ..., J(n))`.
    pub fn prepend(&self, color: u32) -> MultiIndex {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(color);
        v.extend_from_slice(&self.0);
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn multiset_permutations(remaining: &mut [u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining.iter().all(|&k| k == 0) {
        out.push(prefix.clone());
        return;
    }
    for c in 0..remaining.len() {
        if remaining[c] == 0 {
            continue;
        }
        remaining[c] -= 1;
        prefix.push(c as u32 + 1);
        multiset_permutations(remaining, prefix, out);
        prefix.pop();
        remaining[c] += 1;
    }
}

/// Sign of a permutation of `1..n` (or of any sequence of distinct keys),
/// via inversion count.
pub fn permutation_sign<T: Ord>(images: &[T]) -> i32 {
    let mut inversions = 0usize;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
