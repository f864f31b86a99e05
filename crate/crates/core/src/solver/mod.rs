//! Exact values by layered exhaustive search.
//!
//! Minimisation variants scan cardinalities (or guard weights) upwards and
//! stop at the first level holding a valid candidate; upper domination scans
//! downwards from `4n`. The level below (or above) the optimum has been
//! scanned completely and refuted, so every result carries its own
//! optimality proof.
//!
//! Within a level, candidates are visited in lexicographic order of their
//! ascending member lists. The level is split into contiguous lexicographic
//! ranges that workers scan in parallel; the reported witness is always the
//! lexicographically first valid candidate, and `candidates_examined` counts
//! everything up to and including it, so results do not depend on the
//! worker count.
//!
//! The only pruning is the per-copy filter: every copy must contain at least
//! one chosen (or guarded) vertex. Each variant here dominates every closed
//! neighbourhood, and `N[a^i]` is exactly copy `i`, so the filter loses
//! nothing. It can be switched off for brute-force audits.

mod kernel;
mod search;

use std::ops::{ControlFlow, RangeInclusive};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::FlowerSnark;
use crate::validators::{validate, Candidate, GuardFunction, Variant};
use crate::vertex_set::VertexSet;

use kernel::Kernel;
pub use kernel::MAX_KERNEL_N;
use search::{plain_subsets, ComboSpace, Cursor};

/// Depth of the prefix split used to hand ranges to workers.
const SPLIT_DEPTH: usize = 3;
/// How often (in candidates) a worker checks whether its range is moot.
const CANCEL_CHECK: u64 = 0x3ff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Skip candidates leaving some copy empty.
    pub prefilter: bool,
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    /// Allow the opt-in long-running ranges.
    pub long_running: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            prefilter: true,
            threads: None,
            long_running: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub variant: Variant,
    pub n: usize,
    pub optimum: usize,
    pub witness: Candidate,
    /// The adjacent size that was exhaustively refuted: `optimum - 1` when
    /// minimising, `optimum + 1` for upper domination.
    pub proof_bound: usize,
    pub candidates_examined: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    /// Re-checks the witness with the reference validators.
    pub fn verify(&self, g: &FlowerSnark) -> bool {
        self.witness.size() == self.optimum
            && self.optimum.abs_diff(self.proof_bound) == 1
            && validate(g, self.variant, &self.witness).unwrap_or(false)
    }
}

/// Supported `n` for a variant's solver. The long-running flag widens the
/// secure, Roman and weak Roman ranges up to `n = 8`.
pub fn feasible_range(variant: Variant, long_running: bool) -> RangeInclusive<usize> {
    let max = match variant {
        Variant::Domination
        | Variant::Independent
        | Variant::TwoDomination
        | Variant::Total
        | Variant::Connected
        | Variant::Minimal => 7,
        Variant::Upper => 6,
        Variant::Secure if long_running => 8,
        Variant::Secure => 6,
        Variant::Roman | Variant::WeakRoman if long_running => 8,
        Variant::Roman | Variant::WeakRoman => 5,
    };
    3..=max
}

/// A solver bound to one graph.
pub struct Solver<'g> {
    g: &'g FlowerSnark,
    kernel: Kernel,
    opts: SolverOptions,
}

#[derive(Debug, Clone, Copy)]
struct GuardTask {
    twos: u64,
    ones: Cursor,
}

enum Direction {
    Up,
    Down,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g FlowerSnark, opts: SolverOptions) -> Result<Self> {
        let kernel = Kernel::new(g).ok_or(Error::Capacity {
            variant: Variant::Domination,
            n: g.n(),
            min: 3,
            max: MAX_KERNEL_N,
            hint: "; the search kernel holds at most 64 vertices",
        })?;
        Ok(Self { g, kernel, opts })
    }

    pub fn options(&self) -> &SolverOptions {
        &self.opts
    }

    fn check_range(&self, variant: Variant) -> Result<()> {
        let range = feasible_range(variant, self.opts.long_running);
        if range.contains(&self.g.n()) {
            return Ok(());
        }
        let widened = feasible_range(variant, true);
        let hint = if !self.opts.long_running && widened.contains(&self.g.n()) {
            "; enable the long-running range to go further"
        } else {
            ""
        };
        Err(Error::Capacity {
            variant,
            n: self.g.n(),
            min: *range.start(),
            max: *range.end(),
            hint,
        })
    }

    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        match self.opts.threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool")
                .install(job),
            None => job(),
        }
    }

    fn required_copies(&self, covered: u64) -> u64 {
        if self.opts.prefilter {
            self.kernel.all_copies() & !covered
        } else {
            0
        }
    }

    /// Dispatches on the kind of variant.
    pub fn solve(&self, variant: Variant) -> Result<SolveResult> {
        match variant {
            Variant::Upper => self.solve_upper_domination(),
            Variant::Roman | Variant::WeakRoman => self.solve_min_guard(variant),
            _ => self.solve_min_set(variant),
        }
    }

    /// Minimum cardinality of a valid set for a set variant.
    pub fn solve_min_set(&self, variant: Variant) -> Result<SolveResult> {
        if variant.is_guard_variant() || variant == Variant::Upper {
            return Err(Error::KindMismatch {
                variant,
                expected: "minimisation set",
            });
        }
        self.check_range(variant)?;
        self.layered_set_search(variant, Direction::Up)
    }

    /// Largest minimal dominating set.
    pub fn solve_upper_domination(&self) -> Result<SolveResult> {
        self.check_range(Variant::Upper)?;
        self.layered_set_search(Variant::Upper, Direction::Down)
    }

    /// Minimum weight of a Roman or weak Roman dominating function.
    pub fn solve_min_guard(&self, variant: Variant) -> Result<SolveResult> {
        if !variant.is_guard_variant() {
            return Err(Error::KindMismatch {
                variant,
                expected: "guard function",
            });
        }
        self.check_range(variant)?;
        let start = Instant::now();
        let nv = self.g.num_vertices();
        let mut examined = 0u64;
        for weight in 1..=2 * nv {
            let tasks = self.guard_tasks(weight);
            let (count, hit) = self.install(|| {
                first_hit(&tasks, |task, cancelled| {
                    self.scan_guard_task(variant, task, cancelled)
                })
            });
            examined += count;
            if let Some((ones, twos)) = hit {
                return Ok(SolveResult {
                    variant,
                    n: self.g.n(),
                    optimum: weight,
                    witness: Candidate::Guards(GuardFunction::from_sets(
                        &VertexSet::from_mask(nv, ones),
                        &VertexSet::from_mask(nv, twos),
                    )),
                    proof_bound: weight - 1,
                    candidates_examined: examined,
                    elapsed: start.elapsed(),
                });
            }
        }
        unreachable!("two guards everywhere is always a Roman function")
    }

    /// All valid sets of exactly `size` members, lexicographically, up to
    /// `limit` of them. Not bound by the solver ranges.
    pub fn enumerate_valid_sets(
        &self,
        variant: Variant,
        size: usize,
        limit: Option<usize>,
    ) -> Result<Vec<VertexSet>> {
        if variant.is_guard_variant() {
            return Err(Error::KindMismatch {
                variant,
                expected: "vertex set",
            });
        }
        let nv = self.g.num_vertices();
        if size > nv {
            return Ok(Vec::new());
        }
        let space = self.set_space(size);
        let tasks = space.split(SPLIT_DEPTH);
        let limit = limit.unwrap_or(usize::MAX);
        let masks = self.install(|| {
            all_hits(&tasks, limit, |cur, cap| {
                let mut found = Vec::new();
                let _ = space.walk(*cur, &mut |m| {
                    if self.kernel.accepts_set(variant, m) {
                        found.push(m);
                        if found.len() >= cap {
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                });
                found
            })
        });
        Ok(masks
            .into_iter()
            .map(|m| VertexSet::from_mask(nv, m))
            .collect())
    }

    /// All valid guard functions of exactly `weight`, in stratum order (by
    /// number of double guards, then the double-guard set, then the
    /// single-guard set, each lexicographic), up to `limit` of them.
    pub fn enumerate_valid_guards(
        &self,
        variant: Variant,
        weight: usize,
        limit: Option<usize>,
    ) -> Result<Vec<GuardFunction>> {
        if !variant.is_guard_variant() {
            return Err(Error::KindMismatch {
                variant,
                expected: "guard function",
            });
        }
        let nv = self.g.num_vertices();
        let tasks = self.guard_tasks(weight);
        let limit = limit.unwrap_or(usize::MAX);
        let hits = self.install(|| {
            all_hits(&tasks, limit, |task, cap| {
                let mut found = Vec::new();
                let space = self.ones_space(task.twos, 0);
                let _ = space.walk(task.ones, &mut |ones| {
                    if self.kernel.accepts_guards(variant, ones, task.twos) {
                        found.push((ones, task.twos));
                        if found.len() >= cap {
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                });
                found
            })
        });
        Ok(hits
            .into_iter()
            .map(|(ones, twos)| {
                GuardFunction::from_sets(
                    &VertexSet::from_mask(nv, ones),
                    &VertexSet::from_mask(nv, twos),
                )
            })
            .collect())
    }

    fn set_space(&self, size: usize) -> ComboSpace {
        ComboSpace {
            pool: self.kernel.full,
            k: size,
            required: self.required_copies(0),
        }
    }

    fn ones_space(&self, twos: u64, ones: usize) -> ComboSpace {
        ComboSpace {
            pool: self.kernel.full & !twos,
            k: ones,
            required: self.required_copies(Kernel::copies_of(twos)),
        }
    }

    fn guard_tasks(&self, weight: usize) -> Vec<GuardTask> {
        let nv = self.g.num_vertices();
        let mut tasks = Vec::new();
        for doubles in 0..=weight / 2 {
            let singles = weight - 2 * doubles;
            if doubles > nv || singles + doubles > nv {
                continue;
            }
            for twos in plain_subsets(self.kernel.full, doubles) {
                let space = self.ones_space(twos, singles);
                let root = space.root();
                if root.uncovered.count_ones() as usize > singles {
                    continue;
                }
                if doubles == 0 {
                    tasks.extend(
                        space
                            .split(SPLIT_DEPTH)
                            .into_iter()
                            .map(|ones| GuardTask { twos, ones }),
                    );
                } else {
                    tasks.push(GuardTask { twos, ones: root });
                }
            }
        }
        tasks
    }

    fn scan_guard_task(
        &self,
        variant: Variant,
        task: &GuardTask,
        cancelled: &dyn Fn() -> bool,
    ) -> (u64, Option<(u64, u64)>) {
        let space = self.ones_space(task.twos, 0);
        let mut count = 0u64;
        let mut hit = None;
        let _ = space.walk(task.ones, &mut |ones| {
            count += 1;
            if self.kernel.accepts_guards(variant, ones, task.twos) {
                hit = Some((ones, task.twos));
                return ControlFlow::Break(());
            }
            if count & CANCEL_CHECK == 0 && cancelled() {
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        (count, hit)
    }

    fn layered_set_search(&self, variant: Variant, direction: Direction) -> Result<SolveResult> {
        let start = Instant::now();
        let nv = self.g.num_vertices();
        let sizes: Vec<usize> = match direction {
            Direction::Up => (1..=nv).collect(),
            Direction::Down => (1..=nv).rev().collect(),
        };
        let mut examined = 0u64;
        for size in sizes {
            let space = self.set_space(size);
            let tasks = space.split(SPLIT_DEPTH);
            let (count, hit) = self.install(|| {
                first_hit(&tasks, |cur, cancelled| {
                    let mut count = 0u64;
                    let mut hit = None;
                    let _ = space.walk(*cur, &mut |m| {
                        count += 1;
                        if self.kernel.accepts_set(variant, m) {
                            hit = Some(m);
                            return ControlFlow::Break(());
                        }
                        if count & CANCEL_CHECK == 0 && cancelled() {
                            return ControlFlow::Break(());
                        }
                        ControlFlow::Continue(())
                    });
                    (count, hit)
                })
            });
            examined += count;
            if let Some(mask) = hit {
                let proof_bound = match direction {
                    Direction::Up => size - 1,
                    Direction::Down => size + 1,
                };
                return Ok(SolveResult {
                    variant,
                    n: self.g.n(),
                    optimum: size,
                    witness: Candidate::Set(VertexSet::from_mask(nv, mask)),
                    proof_bound,
                    candidates_examined: examined,
                    elapsed: start.elapsed(),
                });
            }
        }
        unreachable!("the full vertex set dominates and a minimal subset of it exists")
    }
}

/// Scans ranges in parallel and returns the first hit in range order,
/// together with the number of candidates examined up to and including it.
/// Ranges after the current best are abandoned; ranges before it always run
/// to completion, so both numbers are independent of scheduling.
fn first_hit<T, H, F>(tasks: &[T], scan: F) -> (u64, Option<H>)
where
    T: Sync,
    H: Send,
    F: Fn(&T, &dyn Fn() -> bool) -> (u64, Option<H>) + Sync,
{
    let best = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<(u64, Option<H>)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, task)| {
            if best.load(Ordering::Relaxed) < i {
                return (0, None);
            }
            let cancelled = || best.load(Ordering::Relaxed) < i;
            let out = scan(task, &cancelled);
            if out.1.is_some() {
                best.fetch_min(i, Ordering::Relaxed);
            }
            out
        })
        .collect();
    let mut examined = 0;
    for (count, hit) in outcomes {
        examined += count;
        if hit.is_some() {
            return (examined, hit);
        }
    }
    (examined, None)
}

/// Collects hits from every range in order, keeping at most `limit`.
fn all_hits<T, H, F>(tasks: &[T], limit: usize, scan: F) -> Vec<H>
where
    T: Sync,
    H: Send,
    F: Fn(&T, usize) -> Vec<H> + Sync,
{
    let mut hits: Vec<H> = tasks
        .par_iter()
        .map(|task| scan(task, limit))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    hits.truncate(limit);
    hits
}

fn default_solver(g: &FlowerSnark) -> Result<Solver<'_>> {
    Solver::new(g, SolverOptions::default())
}

pub fn solve(g: &FlowerSnark, variant: Variant) -> Result<SolveResult> {
    default_solver(g)?.solve(variant)
}

pub fn solve_min_set(g: &FlowerSnark, variant: Variant) -> Result<SolveResult> {
    default_solver(g)?.solve_min_set(variant)
}

pub fn solve_upper_domination(g: &FlowerSnark) -> Result<SolveResult> {
    default_solver(g)?.solve_upper_domination()
}

pub fn solve_min_guard(g: &FlowerSnark, variant: Variant) -> Result<SolveResult> {
    default_solver(g)?.solve_min_guard(variant)
}

pub fn enumerate_valid_sets(
    g: &FlowerSnark,
    variant: Variant,
    size: usize,
    limit: Option<usize>,
) -> Result<Vec<VertexSet>> {
    default_solver(g)?.enumerate_valid_sets(variant, size, limit)
}

pub fn enumerate_valid_guards(
    g: &FlowerSnark,
    variant: Variant,
    weight: usize,
    limit: Option<usize>,
) -> Result<Vec<GuardFunction>> {
    default_solver(g)?.enumerate_valid_guards(variant, weight, limit)
}
