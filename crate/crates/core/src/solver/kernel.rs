//! Single-word versions of the validators for graphs with at most 64
//! vertices (n <= 16). The hot predicates use closed-neighbourhood coverage
//! counts instead of recomputing domination per swap.

use crate::graph::FlowerSnark;
use crate::validators::Variant;

pub const MAX_KERNEL_N: usize = 16;

#[inline]
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub(crate) n: usize,
    pub(crate) full: u64,
    open: Vec<u64>,
    closed: Vec<u64>,
}

impl Kernel {
    pub(crate) fn new(g: &FlowerSnark) -> Option<Self> {
        if g.n() > MAX_KERNEL_N {
            return None;
        }
        let nv = g.num_vertices();
        let open: Vec<u64> = (0..nv)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        let closed = open.iter().enumerate().map(|(v, m)| m | 1 << v).collect();
        let full = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
        Some(Self {
            n: g.n(),
            full,
            open,
            closed,
        })
    }

    /// Copies touched by the vertices of `s`, as a copy bitmask.
    #[inline]
    pub(crate) fn copies_of(s: u64) -> u64 {
        bits(s).fold(0, |m, v| m | 1 << (v / 4))
    }

    pub(crate) fn all_copies(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    #[inline]
    fn dominated(&self, s: u64) -> u64 {
        bits(s).fold(0, |m, v| m | self.closed[v])
    }

    #[inline]
    fn open_union(&self, s: u64) -> u64 {
        bits(s).fold(0, |m, v| m | self.open[v])
    }

    /// (covered at least once, covered exactly once) by closed neighbourhoods.
    #[inline]
    fn coverage(&self, s: u64) -> (u64, u64) {
        let (mut once, mut twice) = (0u64, 0u64);
        for v in bits(s) {
            twice |= once & self.closed[v];
            once |= self.closed[v];
        }
        (once, once & !twice)
    }

    #[inline]
    fn is_dominating(&self, s: u64) -> bool {
        self.dominated(s) == self.full
    }

    fn is_connected(&self, s: u64) -> bool {
        if s == 0 {
            return true;
        }
        let mut reach = s & s.wrapping_neg();
        let mut frontier = reach;
        while frontier != 0 {
            frontier = self.open_union(frontier) & s & !reach;
            reach |= frontier;
        }
        reach == s
    }

    pub(crate) fn accepts_set(&self, variant: Variant, s: u64) -> bool {
        match variant {
            Variant::Domination => self.is_dominating(s),
            Variant::Independent => self.is_dominating(s) && bits(s).all(|v| self.open[v] & s == 0),
            Variant::TwoDomination => {
                bits(self.full & !s).all(|v| (self.open[v] & s).count_ones() >= 2)
            }
            Variant::Total => self.open_union(s) == self.full,
            Variant::Connected => self.is_dominating(s) && self.is_connected(s),
            Variant::Minimal | Variant::Upper => {
                let (once, exactly) = self.coverage(s);
                once == self.full && bits(s).all(|w| self.closed[w] & exactly != 0)
            }
            Variant::Secure => {
                let (once, exactly) = self.coverage(s);
                once == self.full
                    && bits(self.full & !s).all(|v| {
                        bits(self.open[v] & s)
                            .any(|w| self.closed[w] & exactly & !self.closed[v] == 0)
                    })
            }
            Variant::Roman | Variant::WeakRoman => unreachable!("guard variant on a set"),
        }
    }

    /// `ones` and `twos` must be disjoint.
    pub(crate) fn accepts_guards(&self, variant: Variant, ones: u64, twos: u64) -> bool {
        let pos = ones | twos;
        match variant {
            Variant::Roman => (self.full & !pos) & !self.open_union(twos) == 0,
            Variant::WeakRoman => {
                let (once, exactly) = self.coverage(pos);
                bits(self.full & !pos).all(|v| {
                    bits(self.open[v] & pos).any(|w| {
                        let lost = if twos >> w & 1 == 1 {
                            0
                        } else {
                            self.closed[w] & exactly
                        };
                        (once & !lost) | self.closed[v] == self.full
                    })
                })
            }
            _ => unreachable!("set variant on a guard function"),
        }
    }
}
