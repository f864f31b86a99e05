//! Exact membership tests for each domination variant, plus the copy-weight
//! pattern matcher used by the structural audits.
//!
//! These are the reference predicates: they follow the definitions literally
//! and recompute from scratch. The solver kernel has its own faster
//! single-word versions, which are checked against these.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FlowerSnark;
use crate::vertex_set::VertexSet;

/// The domination variants with a validator in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Domination,
    Independent,
    TwoDomination,
    Total,
    Connected,
    Minimal,
    Upper,
    Secure,
    Roman,
    WeakRoman,
}

impl Variant {
    pub const ALL: [Variant; 10] = [
        Variant::Domination,
        Variant::Independent,
        Variant::TwoDomination,
        Variant::Total,
        Variant::Connected,
        Variant::Minimal,
        Variant::Upper,
        Variant::Secure,
        Variant::Roman,
        Variant::WeakRoman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Domination => "domination",
            Variant::Independent => "independent",
            Variant::TwoDomination => "two_domination",
            Variant::Total => "total",
            Variant::Connected => "connected",
            Variant::Minimal => "minimal",
            Variant::Upper => "upper",
            Variant::Secure => "secure",
            Variant::Roman => "roman",
            Variant::WeakRoman => "weak_roman",
        }
    }

    /// Roman and weak Roman take guard functions; everything else takes sets.
    pub fn is_guard_variant(self) -> bool {
        matches!(self, Variant::Roman | Variant::WeakRoman)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant(s.to_string()))
    }
}

/// Guard counts in `{0, 1, 2}` per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuardFunction {
    guards: Vec<u8>,
}

impl GuardFunction {
    pub fn zero(num_vertices: usize) -> Self {
        Self {
            guards: vec![0; num_vertices],
        }
    }

    pub fn constant(num_vertices: usize, value: u8) -> Result<Self> {
        Self::new(vec![value; num_vertices])
    }

    pub fn new(guards: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = guards.iter().find(|&&g| g > 2) {
            return Err(Error::GuardOutOfRange(bad));
        }
        Ok(Self { guards })
    }

    /// One guard on every member of `s`.
    pub fn indicator(s: &VertexSet) -> Self {
        let mut f = Self::zero(s.universe());
        for v in s {
            f.guards[v] = 1;
        }
        f
    }

    /// Builds `f` with one guard on `ones` and two on `twos`; `twos` wins
    /// where they overlap.
    pub fn from_sets(ones: &VertexSet, twos: &VertexSet) -> Self {
        let mut f = Self::zero(ones.universe());
        for v in ones {
            f.guards[v] = 1;
        }
        for v in twos {
            f.guards[v] = 2;
        }
        f
    }

    pub fn len(&self) -> usize {
        self.guards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.guards.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.guards[v]
    }

    pub fn set(&mut self, v: usize, value: u8) -> Result<()> {
        if value > 2 {
            return Err(Error::GuardOutOfRange(value));
        }
        self.guards[v] = value;
        Ok(())
    }

    pub fn weight(&self) -> usize {
        self.guards.iter().map(|&g| g as usize).sum()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.guards
    }

    /// Vertices carrying exactly `count` guards.
    pub fn level_set(&self, count: u8) -> VertexSet {
        VertexSet::from_ids(
            self.len(),
            self.guards
                .iter()
                .enumerate()
                .filter(|(_, &g)| g == count)
                .map(|(v, _)| v),
        )
    }

    /// Vertices with at least one guard.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_ids(
            self.len(),
            self.guards
                .iter()
                .enumerate()
                .filter(|(_, &g)| g > 0)
                .map(|(v, _)| v),
        )
    }

    /// Total guards per copy.
    pub fn copy_weights(&self) -> Vec<u8> {
        self.guards.chunks(4).map(|c| c.iter().sum()).collect()
    }
}

/// A validator input: a vertex set or a guard function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Candidate {
    Set(VertexSet),
    Guards(GuardFunction),
}

impl Candidate {
    /// Cardinality for sets, weight for guard functions.
    pub fn size(&self) -> usize {
        match self {
            Candidate::Set(s) => s.count(),
            Candidate::Guards(f) => f.weight(),
        }
    }

    pub fn copy_weights(&self, g: &FlowerSnark) -> Vec<u8> {
        match self {
            Candidate::Set(s) => g.copy_weights(s),
            Candidate::Guards(f) => f.copy_weights(),
        }
    }
}

pub fn is_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    (0..g.num_vertices()).all(|v| g.closed_neighborhood(v).intersects(s))
}

pub fn is_independent_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    is_dominating(g, s) && s.iter().all(|v| !g.open_neighborhood(v).intersects(s))
}

pub fn is_2_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    (0..g.num_vertices())
        .filter(|&v| !s.contains(v))
        .all(|v| g.neighbors(v).iter().filter(|&&u| s.contains(u)).count() >= 2)
}

pub fn is_total_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    (0..g.num_vertices()).all(|v| g.open_neighborhood(v).intersects(s))
}

pub fn is_connected_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    is_dominating(g, s) && g.is_connected_induced(s)
}

/// Domination is monotone, so checking single-vertex removals is enough.
pub fn is_minimal_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    is_dominating(g, s)
        && s.iter().all(|w| {
            let mut smaller = s.clone();
            smaller.remove(w);
            !is_dominating(g, &smaller)
        })
}

pub fn is_secure_dominating(g: &FlowerSnark, s: &VertexSet) -> bool {
    if !is_dominating(g, s) {
        return false;
    }
    (0..g.num_vertices()).filter(|&v| !s.contains(v)).all(|v| {
        g.neighbors(v).iter().filter(|&&w| s.contains(w)).any(|&w| {
            let mut swapped = s.clone();
            swapped.remove(w);
            swapped.insert(v);
            is_dominating(g, &swapped)
        })
    })
}

pub fn is_roman_function(g: &FlowerSnark, f: &GuardFunction) -> bool {
    (0..g.num_vertices())
        .filter(|&v| f.get(v) == 0)
        .all(|v| g.neighbors(v).iter().any(|&w| f.get(w) == 2))
}

/// Vertices with no guard on themselves or any neighbour.
pub fn undefended_set(g: &FlowerSnark, f: &GuardFunction) -> VertexSet {
    VertexSet::from_ids(
        g.num_vertices(),
        (0..g.num_vertices())
            .filter(|&v| f.get(v) == 0 && g.neighbors(v).iter().all(|&w| f.get(w) == 0)),
    )
}

/// Every unguarded vertex must be reachable by a single guard move from a
/// guarded neighbour that leaves nothing undefended.
pub fn is_weak_roman_function(g: &FlowerSnark, f: &GuardFunction) -> bool {
    (0..g.num_vertices()).filter(|&v| f.get(v) == 0).all(|v| {
        g.neighbors(v).iter().filter(|&&w| f.get(w) >= 1).any(|&w| {
            let mut moved = f.clone();
            moved.guards[v] = 1;
            moved.guards[w] -= 1;
            undefended_set(g, &moved).is_empty()
        })
    })
}

/// Dispatches to the predicate for `variant`. `upper` and `minimal` both
/// check minimal domination.
pub fn validate(g: &FlowerSnark, variant: Variant, candidate: &Candidate) -> Result<bool> {
    let universe = g.num_vertices();
    match (variant.is_guard_variant(), candidate) {
        (false, Candidate::Set(s)) => {
            if s.universe() != universe {
                return Err(Error::LengthMismatch {
                    got: s.universe(),
                    expected: universe,
                });
            }
            Ok(match variant {
                Variant::Domination => is_dominating(g, s),
                Variant::Independent => is_independent_dominating(g, s),
                Variant::TwoDomination => is_2_dominating(g, s),
                Variant::Total => is_total_dominating(g, s),
                Variant::Connected => is_connected_dominating(g, s),
                Variant::Minimal | Variant::Upper => is_minimal_dominating(g, s),
                Variant::Secure => is_secure_dominating(g, s),
                Variant::Roman | Variant::WeakRoman => unreachable!(),
            })
        }
        (true, Candidate::Guards(f)) => {
            if f.len() != universe {
                return Err(Error::LengthMismatch {
                    got: f.len(),
                    expected: universe,
                });
            }
            Ok(match variant {
                Variant::Roman => is_roman_function(g, f),
                _ => is_weak_roman_function(g, f),
            })
        }
        (true, Candidate::Set(_)) => Err(Error::KindMismatch {
            variant,
            expected: "guard function",
        }),
        (false, Candidate::Guards(_)) => Err(Error::KindMismatch {
            variant,
            expected: "vertex set",
        }),
    }
}

/// How a pattern is matched against a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PatternMatch {
    /// Around the ring, in either direction.
    #[default]
    Cyclic,
    /// Contiguous windows of the vector as given, in either direction.
    Linear,
}

/// Parses a digit string such as `"1121"`.
pub fn parse_pattern(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if d <= 4 => Ok(d as u8),
            _ => Err(Error::InvalidPattern(text.to_string())),
        })
        .collect()
}

/// Whether `pattern` occurs in the copy weights read cyclically, forwards or
/// backwards.
pub fn has_cyclic_pattern(weights: &[u8], pattern: &[u8]) -> Result<bool> {
    has_pattern(weights, pattern, PatternMatch::Cyclic)
}

pub fn has_pattern(weights: &[u8], pattern: &[u8], mode: PatternMatch) -> Result<bool> {
    let n = weights.len();
    let len = pattern.len();
    if len > n {
        return Err(Error::PatternTooLong { len, n });
    }
    if len == 0 {
        return Ok(true);
    }
    let starts = match mode {
        PatternMatch::Cyclic => n,
        PatternMatch::Linear => n - len + 1,
    };
    let forward = |s: usize| (0..len).all(|k| weights[(s + k) % n] == pattern[k]);
    let backward = |s: usize| (0..len).all(|k| weights[(s + k) % n] == pattern[len - 1 - k]);
    Ok((0..starts).any(|s| forward(s) || backward(s)))
}
