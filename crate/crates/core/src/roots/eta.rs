use alloc::vec::Vec;

use super::{Family, RootKind, RootSystemData};
use crate::polyrat::{inverse_factorials, sym, Q, RatFun, SymFun, Var, Weight};

/// Builds the product of edge factors `1/(child - parent)` and numerator
/// differences of one diagram.
struct Diagram {
    root: Option<Var>,
    f: RatFun,
}

impl Diagram {
    fn new(root: Option<Var>) -> Self {
        Diagram { root, f: RatFun::one() }
    }

    fn edge(&mut self, child: Var, parent: Option<Var>) {
        let parent = parent.or(self.root);
        self.f = self.f.mul(&RatFun::inv_diff(Some(child), parent).expect("edge endpoints differ"));
    }

    fn from_root(&mut self, child: Var) {
        self.edge(child, None);
    }

    /// A path hanging from `parent` through `nodes`.
    fn chain(&mut self, parent: Option<Var>, nodes: &[Var]) {
        let mut prev = parent;
        for &v in nodes {
            self.edge(v, prev);
            prev = Some(v);
        }
    }

    fn numerator(&mut self, a: Option<Var>, b: Option<Var>) {
        let a = a.or(self.root);
        let b = b.or(self.root);
        self.f = self.f.mul(&RatFun::diff(a, b));
    }
}

fn half() -> Q {
    inverse_factorials(&Weight::new(alloc::vec![2]).expect("nonempty"))
}

fn t(c: u32) -> Var {
    Var::t(c, 1)
}

/// The second variable of color `c`, or the only one if `c` occurs once.
fn second(k: &Weight, c: u32) -> Var {
    Var::t(c, k.get(c).min(2))
}

fn colors_of(vars: impl IntoIterator<Item = u32>) -> Vec<Var> {
    vars.into_iter().map(t).collect()
}

/// `η_β` for the `index`-th root, with the root of every diagram at 0 or
/// at `anchor`.
pub fn eta(data: &RootSystemData, index: usize, anchor: Option<Var>) -> SymFun {
    let beta = &data.roots()[index];
    let k = &beta.content;
    let n = data.rank() as u32;
    let mut d = Diagram::new(anchor);
    let mut scale = None;
    use RootKind::*;
    match (data.lie_type().family, beta.kind) {
        (Family::A, Minus(i, j)) => d.chain(None, &colors_of(i..j)),
        (Family::B, Short(i)) => d.chain(None, &colors_of((i..=n).rev())),
        (Family::B | Family::C, Minus(i, j)) => d.chain(None, &colors_of((i..j).rev())),
        (Family::B, Plus(i, j)) => {
            // Path * - j - ... - (r-1), a square on (r-1), r, r, (r-1)' whose
            // diagonal carries the numerator, then (r-1)' - ... - i.
            let left = if j < n {
                d.chain(None, &colors_of(j..n));
                Some(t(n - 1))
            } else {
                None
            };
            let right = second(k, n - 1);
            let (r1, r2) = (t(n), Var::t(n, 2));
            d.edge(r1, left);
            d.edge(r2, left);
            d.edge(right, Some(r1));
            d.edge(right, Some(r2));
            d.numerator(Some(right), left);
            let tail: Vec<Var> = (i..n - 1).rev().map(|c| second(k, c)).collect();
            d.chain(Some(right), &tail);
            scale = Some(half());
        }
        (Family::C, Plus(i, j)) => {
            let mut nodes = colors_of(j..=n);
            nodes.extend((i..n).rev().map(|c| second(k, c)));
            d.chain(None, &nodes);
            if j < n {
                scale = Some(half());
            }
        }
        (Family::C, Long(i)) => {
            d.from_root(t(n));
            d.chain(Some(t(n)), &colors_of((i..n).rev()));
            let branch: Vec<Var> = (i..n).rev().map(|c| Var::t(c, 2)).collect();
            d.chain(Some(t(n)), &branch);
            if i < n {
                scale = Some(half());
            }
        }
        (Family::D, Minus(j, i)) => d.chain(None, &colors_of(i + 1..=j)),
        (Family::D, Plus(1, j)) => {
            let mut nodes = alloc::vec![t(1)];
            nodes.extend(colors_of(3..=j));
            d.chain(None, &nodes);
        }
        (Family::D, Plus(i, j)) => {
            // Path * - i - ... - 3 (second copies), a square on 3, 1, 2, 3'
            // whose diagonal carries the numerator, then 3' - 4 - ... - j.
            let top = if i >= 3 {
                let path: Vec<Var> = (3..=i).rev().map(|c| Var::t(c, 2)).collect();
                d.chain(None, &path);
                Some(Var::t(3, 2))
            } else {
                None
            };
            d.edge(t(1), top);
            d.edge(t(2), top);
            d.edge(t(3), Some(t(1)));
            d.edge(t(3), Some(t(2)));
            d.numerator(Some(t(3)), top);
            d.chain(Some(t(3)), &colors_of(4..=j));
        }
        (fam, kind) => unreachable!("{kind} is not a root of type {fam:?}"),
    }
    let mut f = sym(&d.f, k);
    if let Some(c) = scale {
        f = f.scale(&c);
    }
    SymFun::new(k.clone(), f).expect("symmetrized atoms are symmetric")
}
