//! Bitmask sets over sentence and model indices.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;

/// A set of sentence indices. Bit `k` is sentence `k`; the width is fixed by the owning amst.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SentenceSet(pub u32);

impl SentenceSet {
    pub const EMPTY: SentenceSet = SentenceSet(0);

    pub fn full(n: usize) -> Self {
        SentenceSet(low_mask32(n))
    }

    pub fn singleton(k: usize) -> Self {
        SentenceSet(1 << k)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SentenceSet(it.into_iter().fold(0, |m, k| m | (1 << k)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn with(self, k: usize) -> Self {
        SentenceSet(self.0 | 1 << k)
    }

    pub fn without(self, k: usize) -> Self {
        SentenceSet(self.0 & !(1 << k))
    }

    pub fn union(self, o: Self) -> Self {
        SentenceSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        SentenceSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        SentenceSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0 as u64)
    }

    /// All subsets in ascending bitmask order, starting with the empty set.
    pub fn subsets(self) -> Submasks {
        Submasks::new(self.0)
    }

    /// Subsets ordered by cardinality, then bitmask.
    pub fn subsets_by_size(self) -> Vec<SentenceSet> {
        let mut v: Vec<_> = self.subsets().collect();
        v.sort_by_key(|s| (s.len(), s.0));
        v
    }
}

impl fmt::Debug for SentenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_indices(f, self.iter())
    }
}

/// Every subset of an `n`-element universe, in ascending bitmask order.
pub fn all_sets(n: usize) -> impl Iterator<Item = SentenceSet> + Clone {
    (0..1u32 << n).map(SentenceSet)
}

fn low_mask32(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Ascending enumeration of the submasks of a mask.
#[derive(Clone)]
pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Submasks {
    pub fn new(mask: u32) -> Self {
        Submasks {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for Submasks {
    type Item = SentenceSet;

    fn next(&mut self) -> Option<SentenceSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(SentenceSet(cur))
    }
}

/// Iterates set bit positions of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }
}

/// A set of model indices with an explicit universe size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelSet {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl ModelSet {
    pub fn empty(len: usize) -> Self {
        ModelSet {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(64).max(1)),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Builds a set over at most 64 models from a bitmask.
    pub fn from_word(len: usize, w: u64) -> Self {
        debug_assert!(len <= 64);
        let mut s = Self::empty(len);
        s.words[0] = w & if len >= 64 { u64::MAX } else { (1 << len) - 1 };
        s
    }

    /// The bitmask, when the universe fits in one word.
    pub fn word(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "model {i} outside universe of {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a | b)
    }

    pub fn intersection(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a & b)
    }

    pub fn difference(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        ModelSet::full(self.len).difference(self)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, o: &Self) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * 64 + b))
    }

    fn zip(&self, o: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, o.len, "model sets over different universes");
        ModelSet {
            len: self.len,
            words: self.words.iter().zip(&o.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_indices(f, self.iter())
    }
}

fn write_indices(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = usize>) -> fmt::Result {
    f.write_str("{")?;
    for (n, i) in it.enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{i}")?;
    }
    f.write_str("}")
}

/// Renders a set of indices with labels, e.g. `{a,b}`.
pub fn render<I: IntoIterator<Item = usize>>(labels: &[String], it: I) -> String {
    let parts: Vec<&str> = it.into_iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_ascending() {
        let got: Vec<u32> = SentenceSet(0b1010).subsets().map(|s| s.0).collect();
        assert_eq!(got, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(SentenceSet(0).subsets().count(), 1);
    }

    #[test]
    fn subsets_by_size_orders_by_cardinality() {
        let got: Vec<u32> = SentenceSet(0b111).subsets_by_size().iter().map(|s| s.0).collect();
        assert_eq!(got, vec![0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn model_set_ops_across_words() {
        let a = ModelSet::from_indices(130, [0, 64, 129]);
        let b = ModelSet::from_indices(130, [64, 100]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![64]);
        assert_eq!(a.union(&b).count(), 4);
        assert_eq!(a.complement().count(), 127);
        assert!(!a.is_subset(&b));
        assert!(ModelSet::empty(130).is_subset(&b));
        assert_eq!(a.word(), None);
    }

    #[test]
    fn word_roundtrip() {
        let s = ModelSet::from_word(5, 0b10110);
        assert_eq!(s.word(), Some(0b10110));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(format!("{s:?}"), "{1,2,4}");
    }
}
