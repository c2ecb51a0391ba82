use std::fmt;

/// A fixed-capacity bit-set over world indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl WorldSet {
    pub fn empty(len: usize) -> Self {
        WorldSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in 0..len {
            s.insert(w);
        }
        s
    }

    pub fn singleton(len: usize, w: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(w);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for w in items {
            s.insert(w);
        }
        s
    }

    pub(crate) fn from_words(len: usize, words: &[u64]) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        WorldSet {
            len,
            words: words.to_vec(),
        }
    }

    /// Capacity of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, w: usize) -> bool {
        w < self.len && self.words[w / 64] >> (w % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, w: usize) {
        assert!(w < self.len, "world index {w} out of range {}", self.len);
        self.words[w / 64] |= 1 << (w % 64);
    }

    #[inline]
    pub fn remove(&mut self, w: usize) {
        if w < self.len {
            self.words[w / 64] &= !(1 << (w % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &WorldSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> WorldSet {
        let mut s = WorldSet::full(self.len);
        s.difference_with(self);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_across_word_boundary() {
        let a = WorldSet::from_indices(130, [0, 63, 64, 129]);
        let b = WorldSet::from_indices(130, [63, 129]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(a.complement().count(), 126);
    }

    #[test]
    fn empty_universe() {
        let e = WorldSet::empty(0);
        assert!(e.is_empty());
        assert_eq!(e.complement().count(), 0);
        assert!(e.is_subset(&WorldSet::full(0)));
    }
}
