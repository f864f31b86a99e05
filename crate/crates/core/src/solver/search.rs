//! Lexicographic k-subset walks over a pool of vertex ids, with the optional
//! "every required copy gets a member" filter applied during the walk rather
//! than after it, so filtered subsets are never generated.

use std::ops::ControlFlow;

use super::kernel::bits;

#[inline]
fn at_or_above(v: usize) -> u64 {
    if v >= 64 {
        0
    } else {
        u64::MAX << v
    }
}

#[inline]
fn at_or_below(v: usize) -> u64 {
    if v >= 63 {
        u64::MAX
    } else {
        (1u64 << (v + 1)) - 1
    }
}

#[inline]
fn copy_block(c: usize) -> u64 {
    0b1111u64 << (4 * c)
}

/// A partial subset: members chosen so far, the smallest id still allowed,
/// how many members remain to pick, and which required copies are still
/// unhit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cursor {
    pub chosen: u64,
    pub start: usize,
    pub remaining: usize,
    pub uncovered: u64,
}

/// All `k`-subsets of `pool` that hit every copy in `required`, visited in
/// lexicographic order of their ascending member lists.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ComboSpace {
    pub pool: u64,
    pub k: usize,
    pub required: u64,
}

impl ComboSpace {
    pub fn root(&self) -> Cursor {
        Cursor {
            chosen: 0,
            start: 0,
            remaining: self.k,
            uncovered: self.required,
        }
    }

    /// Ids that may extend `cur` by one member, in ascending order.
    #[inline]
    fn extensions(&self, cur: &Cursor) -> Option<u64> {
        if cur.uncovered.count_ones() as usize > cur.remaining {
            return None;
        }
        if (self.pool & at_or_above(cur.start)).count_ones() < cur.remaining as u32 {
            return None;
        }
        let mut cand = self.pool & at_or_above(cur.start);
        if cur.uncovered != 0 {
            // The lowest unhit copy must be hit before the walk passes it.
            let c = cur.uncovered.trailing_zeros() as usize;
            let in_copy = self.pool & copy_block(c) & at_or_above(cur.start);
            if in_copy == 0 {
                return None;
            }
            cand &= at_or_below(63 - in_copy.leading_zeros() as usize);
        }
        Some(cand)
    }

    #[inline]
    fn advance(&self, cur: &Cursor, v: usize) -> Cursor {
        Cursor {
            chosen: cur.chosen | 1 << v,
            start: v + 1,
            remaining: cur.remaining - 1,
            uncovered: cur.uncovered & !(1u64 << (v / 4)),
        }
    }

    /// Visits every completion of `cur`; the visitor may stop the walk early.
    pub fn walk<F>(&self, cur: Cursor, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(u64) -> ControlFlow<()>,
    {
        if cur.remaining == 0 {
            return if cur.uncovered == 0 {
                visit(cur.chosen)
            } else {
                ControlFlow::Continue(())
            };
        }
        let Some(cand) = self.extensions(&cur) else {
            return ControlFlow::Continue(());
        };
        for v in bits(cand) {
            // Too few pool ids left above v to finish.
            if ((self.pool & at_or_above(v + 1)).count_ones() as usize) < cur.remaining - 1 {
                break;
            }
            self.walk(self.advance(&cur, v), visit)?;
        }
        ControlFlow::Continue(())
    }

    /// Live cursors with `depth` members chosen (or fewer, when `k` is
    /// smaller), in lexicographic order. Their walks partition the space
    /// into contiguous lexicographic ranges.
    pub fn split(&self, depth: usize) -> Vec<Cursor> {
        let mut out = Vec::new();
        self.split_into(self.root(), depth.min(self.k), &mut out);
        out
    }

    fn split_into(&self, cur: Cursor, depth: usize, out: &mut Vec<Cursor>) {
        if depth == 0 || cur.remaining == 0 {
            out.push(cur);
            return;
        }
        let Some(cand) = self.extensions(&cur) else {
            return;
        };
        for v in bits(cand) {
            if ((self.pool & at_or_above(v + 1)).count_ones() as usize) < cur.remaining - 1 {
                break;
            }
            self.split_into(self.advance(&cur, v), depth - 1, out);
        }
    }
}

/// Every `k`-subset of `pool`, unfiltered, in lexicographic order.
pub(crate) fn plain_subsets(pool: u64, k: usize) -> Vec<u64> {
    let space = ComboSpace {
        pool,
        k,
        required: 0,
    };
    let mut out = Vec::new();
    let _ = space.walk(space.root(), &mut |m| {
        out.push(m);
        ControlFlow::Continue(())
    });
    out
}
