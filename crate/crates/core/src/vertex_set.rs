use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

/// Fixed-width bit vector over the vertices `0..universe`.
///
/// All set operations require both operands to share the same universe and
/// never produce bits at or above it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a set from vertex ids. Panics if an id is outside the universe.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for v in ids {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `universe` bits of a single word.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "from_mask needs universe <= 64");
        let mut s = Self::empty(universe);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    /// The single-word form of the set, if it fits.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Number of members (popcount).
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = Self {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending member lists, the order in
    /// which the solvers enumerate candidates of a fixed cardinality.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.same_universe(other);
        Self {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "vertex sets over different universes"
        );
    }

    fn trim(&mut self) {
        let tail = self.universe % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        let full = VertexSet::full(130);
        assert_eq!(full.count(), 130);
        assert!(full.contains(129));
        assert!(!full.contains(130));
        assert!(VertexSet::empty(130).is_empty());
        assert_eq!(full.complement(), VertexSet::empty(130));
    }

    #[test]
    fn iteration_is_ascending() {
        let s = VertexSet::from_ids(200, [150, 3, 64, 63, 0]);
        assert_eq!(s.to_vec(), vec![0, 3, 63, 64, 150]);
    }

    #[test]
    fn lex_order_follows_member_lists() {
        let a = VertexSet::from_ids(12, [0, 5, 6]);
        let b = VertexSet::from_ids(12, [0, 5, 7]);
        let c = VertexSet::from_ids(12, [1, 2, 3]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&c), Ordering::Less);
        assert_eq!(c.lex_cmp(&c), Ordering::Equal);
    }

    #[test]
    fn mask_round_trip() {
        let s = VertexSet::from_mask(20, 0b1011 | (1 << 40));
        assert_eq!(s.to_vec(), vec![0, 1, 3]);
        assert_eq!(s.to_mask(), Some(0b1011));
    }

    fn set_strategy(universe: usize) -> impl Strategy<Value = VertexSet> {
        proptest::collection::vec(any::<bool>(), universe).prop_map(move |bits| {
            VertexSet::from_ids(
                universe,
                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
            )
        })
    }

    proptest! {
        #[test]
        fn set_algebra_closes_over_universe(a in set_strategy(150), b in set_strategy(150)) {
            let u = a.union(&b);
            let i = a.intersection(&b);
            let d = a.difference(&b);
            let c = a.complement();
            for s in [&u, &i, &d, &c] {
                prop_assert!(s.iter().all(|v| v < 150));
                prop_assert_eq!(s.count(), s.iter().count());
            }
            prop_assert_eq!(u.count() + i.count(), a.count() + b.count());
            prop_assert_eq!(d.count(), a.count() - i.count());
            prop_assert_eq!(c.count(), 150 - a.count());
            prop_assert!(i.is_subset(&a) && a.is_subset(&u));
        }
    }
}
