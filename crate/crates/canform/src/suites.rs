//! The verification suites behind `canform verify`.

use canform_core::canonical::{
    verify_anchor_specialization, verify_atom, verify_duality, verify_matsuo, verify_pbw_equivalence,
    verify_pole_support, verify_residue_recursion, verify_shuffle_duality, CanonError, Report,
};
use canform_core::polyrat::{MultiIndex, Var, Weight};
use canform_core::roots::{LieType, RootSystemData};
use clap::ValueEnum;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Duality,
    Residue,
    Shuffle,
    Pbw,
    Serre,
    Matsuo,
    Poles,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Residue => "residue",
            Suite::Shuffle => "shuffle",
            Suite::Pbw => "pbw",
            Suite::Serre => "serre",
            Suite::Matsuo => "matsuo",
            Suite::Poles => "poles",
            Suite::All => "all",
        }
    }
}

/// Which cases a suite covers.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub types: Vec<LieType>,
    /// When set, only this weight; otherwise every nonzero weight up to
    /// `max_weight`.
    pub weight: Option<Weight>,
    pub max_weight: u32,
    pub anchor: Option<Var>,
    /// Reverses the root order the PBW projection sees while keeping the
    /// atoms, so every check that depends on the order fails.
    pub corrupt_order: bool,
}

#[derive(Clone, Debug)]
enum Task {
    Duality(Weight, Option<Var>),
    Anchor(Weight),
    Residue(Weight, u32),
    Shuffle(MultiIndex, MultiIndex, usize),
    Pbw(LieType, Weight, Option<Var>, bool),
    Serre(LieType, usize),
    Matsuo(u32),
    Poles(LieType, Weight),
}

impl Bounds {
    fn ranks(&self) -> Vec<usize> {
        let mut ranks: Vec<usize> = self.types.iter().map(|t| t.rank).collect();
        ranks.sort_unstable();
        ranks.dedup();
        ranks
    }

    fn weights(&self, rank: usize) -> Vec<Weight> {
        match &self.weight {
            Some(k) if k.rank() == rank => vec![k.clone()],
            Some(_) => Vec::new(),
            None => Weight::all_up_to(rank, self.max_weight).into_iter().filter(|k| !k.is_zero()).collect(),
        }
    }

    fn tasks(&self, suite: Suite) -> Vec<Task> {
        let mut out = Vec::new();
        let all = suite == Suite::All;
        if all || suite == Suite::Duality {
            for r in self.ranks() {
                for k in self.weights(r) {
                    out.push(Task::Duality(k.clone(), self.anchor));
                    if self.anchor.is_some() {
                        out.push(Task::Anchor(k));
                    }
                }
            }
        }
        if all || suite == Suite::Residue {
            for r in self.ranks() {
                for k in self.weights(r) {
                    for i in 1..=r as u32 {
                        if k.get(i) > 0 {
                            out.push(Task::Residue(k.clone(), i));
                        }
                    }
                }
            }
        }
        if all || suite == Suite::Shuffle {
            for r in self.ranks() {
                let indices: Vec<MultiIndex> = match &self.weight {
                    Some(k) if k.rank() == r => {
                        Weight::all_up_to(r, k.total()).iter().filter(|w| w.fits_in(k)).flat_map(MultiIndex::all_with_content).collect()
                    }
                    Some(_) => Vec::new(),
                    None => Weight::all_up_to(r, self.max_weight).iter().flat_map(MultiIndex::all_with_content).collect(),
                };
                let limit = self.weight.as_ref().map_or(self.max_weight, |k| k.total()) as usize;
                for j1 in &indices {
                    for j2 in &indices {
                        let fits = match &self.weight {
                            Some(k) => (&j1.content(r) + &j2.content(r)) == *k,
                            None => j1.len() + j2.len() <= limit,
                        };
                        if fits {
                            out.push(Task::Shuffle(j1.clone(), j2.clone(), r));
                        }
                    }
                }
            }
        }
        if all || suite == Suite::Pbw {
            for &ty in &self.types {
                for k in self.weights(ty.rank) {
                    out.push(Task::Pbw(ty, k, self.anchor, self.corrupt_order));
                }
            }
        }
        if all || suite == Suite::Serre {
            for &ty in &self.types {
                let n = RootSystemData::build(ty).roots().len();
                out.extend((0..n).map(|l| Task::Serre(ty, l)));
            }
        }
        if all || suite == Suite::Matsuo {
            let top = self.weight.as_ref().map_or(self.max_weight, |k| k.total());
            out.extend((1..=top).map(Task::Matsuo));
        }
        if all || suite == Suite::Poles {
            for &ty in &self.types {
                for k in self.weights(ty.rank) {
                    out.push(Task::Poles(ty, k));
                }
            }
        }
        out
    }
}

fn corrupted(data: &RootSystemData) -> RootSystemData {
    let order: Vec<usize> = (0..data.roots().len()).rev().collect();
    data.reordered(&order).expect("a reversal is a permutation")
}

fn run(task: &Task) -> Result<Report, CanonError> {
    match task {
        Task::Duality(k, anchor) => verify_duality(k, *anchor),
        Task::Anchor(k) => verify_anchor_specialization(k, Var::Z(1)),
        Task::Residue(k, i) => verify_residue_recursion(k, *i),
        Task::Shuffle(j1, j2, r) => verify_shuffle_duality(j1, j2, *r),
        Task::Pbw(ty, k, anchor, corrupt) => {
            let data = RootSystemData::build(*ty);
            if *corrupt {
                let projected = corrupted(&data);
                let mut report = verify_pbw_equivalence(&projected, k, *anchor)?;
                report.params.push(("order".into(), "reversed".into()));
                Ok(report)
            } else {
                verify_pbw_equivalence(&data, k, *anchor)
            }
        }
        Task::Serre(ty, l) => verify_atom(&RootSystemData::build(*ty), *l),
        Task::Matsuo(n) => Ok(verify_matsuo(*n)),
        Task::Poles(ty, k) => verify_pole_support(&RootSystemData::build(*ty), k),
    }
}

/// Runs a suite on `jobs` threads. Reports come back in task order whatever
/// the number of threads.
pub fn run_suite(suite: Suite, bounds: &Bounds, jobs: usize) -> Result<Vec<Report>, CanonError> {
    let tasks = bounds.tasks(suite);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| tasks.par_iter().map(run).collect())
}
