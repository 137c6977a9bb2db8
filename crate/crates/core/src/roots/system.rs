use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::RootError;
use crate::freealg::{nested_bracket, BracketTree, CartanMatrix, FreeElement};
use crate::polyrat::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }
}

impl FromStr for Family {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(RootError::UnknownFamily(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        if rank < family.min_rank() {
            return Err(RootError::RankTooSmall { family, rank, min: family.min_rank() });
        }
        Ok(LieType { family, rank })
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Parses names like `B3`.
impl FromStr for LieType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (fam, rank) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(n, _)| n));
        let rank = rank.parse().map_err(|_| RootError::UnknownFamily(s.into()))?;
        LieType::new(fam.parse()?, rank)
    }
}

/// The shape of a positive root in ε-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootKind {
    /// `ε_a - ε_b`.
    Minus(u32, u32),
    /// `ε_a + ε_b`, `a < b`.
    Plus(u32, u32),
    /// `ε_a`.
    Short(u32),
    /// `2ε_a`.
    Long(u32),
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::Minus(a, b) => write!(f, "e{a}-e{b}"),
            RootKind::Plus(a, b) => write!(f, "e{a}+e{b}"),
            RootKind::Short(a) => write!(f, "e{a}"),
            RootKind::Long(a) => write!(f, "2e{a}"),
        }
    }
}

impl FromStr for RootKind {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootError::UnknownRoot(s.into());
        let index = |p: &str| p.strip_prefix('e').and_then(|n| n.parse::<u32>().ok()).ok_or_else(bad);
        if let Some(rest) = s.strip_prefix("2e") {
            return rest.parse().map(RootKind::Long).map_err(|_| bad());
        }
        if let Some((a, b)) = s.split_once('+') {
            return Ok(RootKind::Plus(index(a)?, index(b)?));
        }
        if let Some((a, b)) = s.split_once('-') {
            return Ok(RootKind::Minus(index(a)?, index(b)?));
        }
        Ok(RootKind::Short(index(s)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub kind: RootKind,
    /// Coordinates in the ε basis.
    pub eps: Vec<i32>,
    /// Coordinates in the simple-root basis.
    pub content: Weight,
}

/// Ordered positive roots with their contents, root vectors and Cartan
/// matrix.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    ty: LieType,
    roots: Vec<PositiveRoot>,
    simple: Vec<Vec<i32>>,
    cartan: CartanMatrix,
}

fn range_weight(rank: usize, spans: &[(u32, u32, u32)]) -> Weight {
    let mut parts = alloc::vec![0; rank];
    for &(lo, hi, mult) in spans {
        for u in lo..=hi {
            parts[u as usize - 1] += mult;
        }
    }
    Weight::new(parts).expect("rank is positive")
}

fn eps_vector(kind: RootKind, dim: usize) -> Vec<i32> {
    let mut v = alloc::vec![0; dim];
    match kind {
        RootKind::Minus(a, b) => {
            v[a as usize - 1] += 1;
            v[b as usize - 1] -= 1;
        }
        RootKind::Plus(a, b) => {
            v[a as usize - 1] += 1;
            v[b as usize - 1] += 1;
        }
        RootKind::Short(a) => v[a as usize - 1] += 1,
        RootKind::Long(a) => v[a as usize - 1] += 2,
    }
    v
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystemData {
    pub fn build(ty: LieType) -> RootSystemData {
        let r = ty.rank;
        let n = r as u32;
        let mut kinds = Vec::new();
        let (dim, simple): (usize, Vec<RootKind>) = match ty.family {
            Family::A => {
                for i in 1..=n + 1 {
                    for j in i + 1..=n + 1 {
                        kinds.push(RootKind::Minus(i, j));
                    }
                }
                (r + 1, (1..=n).map(|i| RootKind::Minus(i, i + 1)).collect())
            }
            Family::B | Family::C => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        kinds.push(RootKind::Minus(i, j));
                        kinds.push(RootKind::Plus(i, j));
                    }
                    kinds.push(if ty.family == Family::B { RootKind::Short(i) } else { RootKind::Long(i) });
                }
                let last = if ty.family == Family::B { RootKind::Short(n) } else { RootKind::Long(n) };
                (r, (1..n).map(|i| RootKind::Minus(i, i + 1)).chain([last]).collect())
            }
            Family::D => {
                for j in 1..=n {
                    for i in 1..j {
                        kinds.push(RootKind::Minus(j, i));
                        kinds.push(RootKind::Plus(i, j));
                    }
                }
                (r, [RootKind::Plus(1, 2)].into_iter().chain((2..=n).map(|i| RootKind::Minus(i, i - 1))).collect())
            }
        };
        kinds.sort_by_key(|&k| order_key(ty.family, k));
        let roots = kinds
            .into_iter()
            .map(|kind| PositiveRoot { kind, eps: eps_vector(kind, dim), content: content_of(ty, kind) })
            .collect();
        let simple: Vec<Vec<i32>> = simple.into_iter().map(|k| eps_vector(k, dim)).collect();
        let cartan = CartanMatrix::new(
            simple
                .iter()
                .map(|a| simple.iter().map(|b| 2 * dot(a, b) / dot(a, a)).collect())
                .collect(),
        )
        .expect("classical Cartan matrices are valid");
        RootSystemData { ty, roots, simple, cartan }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Positive roots in PBW order.
    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[Vec<i32>] {
        &self.simple
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn index_of(&self, kind: RootKind) -> Result<usize, RootError> {
        self.roots.iter().position(|b| b.kind == kind).ok_or_else(|| RootError::UnknownRoot(alloc::format!("{kind}")))
    }

    pub fn index_of_eps(&self, eps: &[i32]) -> Option<usize> {
        self.roots.iter().position(|b| b.eps == eps)
    }

    pub fn content(&self, index: usize) -> &Weight {
        &self.roots[index].content
    }

    /// The root vector chosen for the `index`-th root, as a bracket in the
    /// generators.
    pub fn f_beta(&self, index: usize) -> BracketTree {
        f_beta(self.ty, self.roots[index].kind)
    }

    /// `F^p = F_{β_1}^{p_1} ... F_{β_m}^{p_m}` expanded into words.
    pub fn pbw_element(&self, p: &[u32]) -> FreeElement {
        let mut out = FreeElement::one();
        for (l, &e) in p.iter().enumerate() {
            if e > 0 {
                out = out.mul(&self.f_beta(l).expand().pow(e));
            }
        }
        out
    }

    /// All exponent vectors `p` with `sum_l p_l content(β_l) = k`, in
    /// lexicographic order.
    pub fn pbw_monomials(&self, k: &Weight) -> Result<Vec<Vec<u32>>, RootError> {
        if k.rank() != self.rank() {
            return Err(RootError::RankMismatch { got: k.rank(), rank: self.rank() });
        }
        fn go(roots: &[PositiveRoot], l: usize, rest: &Weight, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if l == roots.len() {
                if rest.is_zero() {
                    out.push(p.clone());
                }
                return;
            }
            let mut copies = Vec::new();
            let mut current = rest.clone();
            loop {
                copies.push(current.clone());
                match current.checked_sub(&roots[l].content) {
                    Some(next) => current = next,
                    None => break,
                }
            }
            for (e, remaining) in copies.iter().enumerate() {
                p.push(e as u32);
                go(roots, l + 1, remaining, p, out);
                p.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.roots, 0, k, &mut Vec::new(), &mut out);
        Ok(out)
    }

    /// The positive root with the given ε-coordinates minus a simple root,
    /// if that is again a positive root.
    pub fn minus_simple(&self, index: usize, color: u32) -> Option<usize> {
        let eps: Vec<i32> =
            self.roots[index].eps.iter().zip(&self.simple[color as usize - 1]).map(|(a, b)| a - b).collect();
        self.index_of_eps(&eps)
    }

    /// The same roots listed in another order; `order[n]` is the current
    /// index of the root that moves to position `n`.
    pub fn reordered(&self, order: &[usize]) -> Result<RootSystemData, RootError> {
        let mut seen = alloc::vec![false; self.roots.len()];
        if order.len() != seen.len() || !order.iter().all(|&n| n < seen.len() && !core::mem::replace(&mut seen[n], true)) {
            return Err(RootError::BadOrder);
        }
        let roots = order.iter().map(|&n| self.roots[n].clone()).collect();
        Ok(RootSystemData { roots, ..self.clone() })
    }

    pub fn describe(&self) -> String {
        let mut s = alloc::format!("{}:", self.ty);
        for b in &self.roots {
            s.push_str(&alloc::format!(" {}", b.kind));
        }
        s
    }
}

fn order_key(family: Family, kind: RootKind) -> (i64, i64, i64) {
    use RootKind::*;
    let (a, b) = match kind {
        Minus(a, b) | Plus(a, b) => (a as i64, b as i64),
        Short(a) | Long(a) => (a as i64, 0),
    };
    match family {
        Family::A => (a, b, 0),
        Family::B | Family::C => match kind {
            Plus(..) => (-a, 0, b),
            Short(_) | Long(_) => (-a, 1, 0),
            Minus(..) => (-a, 2, -b),
        },
        // Roots ε_j ± ε_i are grouped by j.
        Family::D => match kind {
            Plus(i, j) => (j as i64, 0, -(i as i64)),
            _ => (a, 1, b),
        },
    }
}

fn content_of(ty: LieType, kind: RootKind) -> Weight {
    let r = ty.rank;
    let n = r as u32;
    use RootKind::*;
    match (ty.family, kind) {
        (Family::A | Family::B | Family::C, Minus(i, j)) => range_weight(r, &[(i, j - 1, 1)]),
        (Family::B, Short(i)) => range_weight(r, &[(i, n, 1)]),
        (Family::B, Plus(i, j)) => range_weight(r, &[(i, j - 1, 1), (j, n, 2)]),
        (Family::C, Plus(i, j)) => range_weight(r, &[(i, j - 1, 1), (j, n - 1, 2), (n, n, 1)]),
        (Family::C, Long(i)) => range_weight(r, &[(i, n - 1, 2), (n, n, 1)]),
        (Family::D, Minus(j, i)) => range_weight(r, &[(i + 1, j, 1)]),
        (Family::D, Plus(1, j)) => range_weight(r, &[(1, 1, 1), (3, j, 1)]),
        (Family::D, Plus(i, j)) => range_weight(r, &[(1, 2, 1), (3, i, 2), (i + 1, j, 1)]),
        _ => unreachable!("{kind} is not a root of type {ty}"),
    }
}

fn comb(seq: &[u32]) -> BracketTree {
    nested_bracket(seq).expect("root words are nonempty")
}

fn left_comb(seq: &[u32]) -> BracketTree {
    let mut letters = seq.iter().map(|&a| BracketTree::Leaf(a));
    let first = letters.next().expect("root words are nonempty");
    letters.fold(first, BracketTree::bracket)
}

fn up(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).collect()
}

fn down(hi: u32, lo: u32) -> Vec<u32> {
    (lo..=hi).rev().collect()
}

fn f_beta(ty: LieType, kind: RootKind) -> BracketTree {
    let n = ty.rank as u32;
    use RootKind::*;
    match (ty.family, kind) {
        (Family::A, Minus(i, j)) => comb(&down(j - 1, i)),
        // Increasing order; the decreasing word does not reproduce the type B atoms.
        (Family::B | Family::C, Minus(i, j)) => comb(&up(i, j - 1)),
        (Family::B, Short(i)) => comb(&up(i, n)),
        (Family::B, Plus(i, j)) => BracketTree::bracket(comb(&up(i, n)), comb(&down(n, j))),
        (Family::C, Plus(i, j)) => {
            let mut seq = up(i, n);
            seq.extend(down(n - 1, j));
            comb(&seq)
        }
        (Family::C, Long(i)) if i == n => BracketTree::Leaf(n),
        (Family::C, Long(i)) => BracketTree::bracket(comb(&up(i, n - 1)), comb(&up(i, n))),
        (Family::D, Minus(j, i)) => comb(&down(j, i + 1)),
        (Family::D, Plus(1, j)) => {
            let mut seq = down(j, 3);
            seq.push(1);
            comb(&seq)
        }
        // Nested to the right this word vanishes for every i >= 2, so it is
        // nested to the left instead.
        (Family::D, Plus(i, j)) => {
            let mut seq = down(j, 2);
            seq.push(1);
            seq.extend(up(3, i));
            left_comb(&seq)
        }
        _ => unreachable!("{kind} is not a root of type {ty}"),
    }
}
