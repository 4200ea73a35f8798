use alloc::vec::Vec;
use core::fmt;

/// A subset of the vertex ids `0..n`, stored as a bitset with a cached
/// population count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexMask {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl VertexMask {
    pub fn empty(universe: usize) -> Self {
        VertexMask {
            words: alloc::vec![0; universe.div_ceil(64)],
            universe,
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut m = VertexMask::empty(universe);
        for w in m.words.iter_mut() {
            *w = u64::MAX;
        }
        if !universe.is_multiple_of(64) {
            if let Some(last) = m.words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        m.len = universe;
        m
    }

    /// Builds a mask from vertex ids; ids `>= universe` are ignored.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut m = VertexMask::empty(universe);
        for v in vertices {
            if v < universe {
                m.insert(v);
            }
        }
        m
    }

    /// Size of the vertex universe the mask is drawn from.
    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of vertices in the set.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v >> 6] & (1u64 << (v & 63)) != 0
    }

    /// Inserts `v`, returning `true` if it was not present.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside mask universe {}", self.universe);
        let bit = 1u64 << (v & 63);
        let w = &mut self.words[v >> 6];
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `v`, returning `true` if it was present.
    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let bit = 1u64 << (v & 63);
        let w = &mut self.words[v >> 6];
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
        self.len = 0;
    }

    /// Ascending iterator over the members.
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

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn union_with(&mut self, other: &VertexMask) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
        self.recount();
    }

    pub fn intersect_with(&mut self, other: &VertexMask) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        self.recount();
    }

    pub fn subtract(&mut self, other: &VertexMask) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        self.recount();
    }

    pub fn union(&self, other: &VertexMask) -> VertexMask {
        let mut m = self.clone();
        m.union_with(other);
        m
    }

    pub fn difference(&self, other: &VertexMask) -> VertexMask {
        let mut m = self.clone();
        m.subtract(other);
        m
    }

    pub fn intersection(&self, other: &VertexMask) -> VertexMask {
        let mut m = self.clone();
        m.intersect_with(other);
        m
    }

    pub fn is_disjoint(&self, other: &VertexMask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexMask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexMask) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for VertexMask {
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

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexMask {
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
        for n in [0, 1, 63, 64, 65, 130] {
            let f = VertexMask::full(n);
            assert_eq!(f.len(), n);
            assert_eq!(f.iter().count(), n);
            assert!(VertexMask::empty(n).is_empty());
        }
    }

    #[test]
    fn insert_remove_tracks_len() {
        let mut m = VertexMask::empty(100);
        assert!(m.insert(70));
        assert!(!m.insert(70));
        assert!(m.insert(3));
        assert_eq!(m.to_vec(), [3, 70]);
        assert!(m.remove(70));
        assert!(!m.remove(70));
        assert_eq!(m.len(), 1);
        assert_eq!(m.first(), Some(3));
    }

    proptest! {
        #[test]
        fn set_ops_match_reference(a in proptest::collection::btree_set(0usize..150, 0..60),
                                   b in proptest::collection::btree_set(0usize..150, 0..60)) {
            let ma = VertexMask::from_vertices(150, a.iter().copied());
            let mb = VertexMask::from_vertices(150, b.iter().copied());
            let u: Vec<usize> = a.union(&b).copied().collect();
            let d: Vec<usize> = a.difference(&b).copied().collect();
            let i: Vec<usize> = a.intersection(&b).copied().collect();
            prop_assert_eq!(ma.union(&mb).to_vec(), u.clone());
            prop_assert_eq!(ma.union(&mb).len(), u.len());
            prop_assert_eq!(ma.difference(&mb).to_vec(), d);
            prop_assert_eq!(ma.intersection(&mb).to_vec(), i.clone());
            prop_assert_eq!(ma.is_disjoint(&mb), i.is_empty());
            prop_assert_eq!(ma.is_subset(&mb), a.is_subset(&b));
        }
    }
}
