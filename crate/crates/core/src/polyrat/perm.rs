use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::var::permutation_sign;
use super::{PolyError, RatFun, Var, Weight};

/// An element of `G_k = prod_i S_{k_i}`, acting on `t^(i)_j` for `j <= k_i`
/// and fixing every other variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    /// `images[i - 1][j - 1]` is the index that `t^(i)_j` is sent to.
    images: Vec<Vec<u32>>,
}

impl GroupElement {
    pub fn identity(k: &Weight) -> Self {
        GroupElement { images: k.parts().iter().map(|&n| (1..=n).collect()).collect() }
    }

    /// The transposition of `t^(color)_a` and `t^(color)_b`.
    pub fn transposition(k: &Weight, color: u32, a: u32, b: u32) -> Self {
        let mut g = Self::identity(k);
        g.images[color as usize - 1].swap(a as usize - 1, b as usize - 1);
        g
    }

    pub fn sign(&self) -> i32 {
        self.images.iter().map(|p| permutation_sign(p)).product()
    }

    pub fn apply(&self, v: Var) -> Var {
        match v {
            Var::T(i, j) => match self.images.get(i as usize - 1).and_then(|p| p.get(j as usize - 1)) {
                Some(&image) => Var::T(i, image),
                None => v,
            },
            Var::Z(_) => v,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| b.iter().map(|&j| a[j as usize - 1]).collect())
            .collect();
        GroupElement { images }
    }

    pub fn inverse(&self) -> GroupElement {
        let images = self
            .images
            .iter()
            .map(|p| {
                let mut inv = alloc::vec![0; p.len()];
                for (j, &image) in p.iter().enumerate() {
                    inv[image as usize - 1] = j as u32 + 1;
                }
                inv
            })
            .collect();
        GroupElement { images }
    }

    pub fn act(&self, f: &RatFun) -> RatFun {
        f.rename(|v| self.apply(v))
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut map = BTreeMap::new();
        for (i, p) in self.images.iter().enumerate() {
            for (j, &image) in p.iter().enumerate() {
                if image != j as u32 + 1 {
                    map.insert(Var::T(i as u32 + 1, j as u32 + 1), Var::T(i as u32 + 1, image));
                }
            }
        }
        Permutation(map)
    }
}

/// All elements of `G_k`, in lexicographic order of their image tables.
pub fn group_elements(k: &Weight) -> Vec<GroupElement> {
    let per_color: Vec<Vec<Vec<u32>>> = k.parts().iter().map(|&n| permutations(n)).collect();
    let mut out = alloc::vec![GroupElement { images: Vec::new() }];
    for perms in per_color {
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for g in &out {
            for p in &perms {
                let mut images = g.images.clone();
                images.push(p.clone());
                next.push(GroupElement { images });
            }
        }
        out = next;
    }
    out
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: &mut Vec<u32>, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for idx in 0..rest.len() {
            let x = rest.remove(idx);
            prefix.push(x);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(idx, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

/// A color-preserving bijection of colored variables, given by the
/// variables it moves.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Permutation(BTreeMap<Var, Var>);

impl Permutation {
    pub fn new(moves: impl IntoIterator<Item = (Var, Var)>) -> Result<Self, PolyError> {
        let map: BTreeMap<Var, Var> = moves.into_iter().filter(|(a, b)| a != b).collect();
        let mut targets: Vec<Var> = map.values().copied().collect();
        targets.sort_unstable();
        let sources: Vec<Var> = map.keys().copied().collect();
        if targets != sources {
            return Err(PolyError::NotAPermutation);
        }
        for (a, b) in &map {
            match (a, b) {
                (Var::T(i, _), Var::T(j, _)) if i == j => {}
                _ => return Err(PolyError::ColorMixing { from: *a, to: *b }),
            }
        }
        Ok(Permutation(map))
    }

    pub fn apply(&self, v: Var) -> Var {
        self.0.get(&v).copied().unwrap_or(v)
    }
}

/// `pi . f`: relabels the variables of `f`.
pub fn act_perm(f: &RatFun, pi: &Permutation) -> RatFun {
    f.rename(|v| pi.apply(v))
}
