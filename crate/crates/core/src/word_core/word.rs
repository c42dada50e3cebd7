use std::ops::RangeInclusive;

use crate::word_core::alphabet::LetterSet;

/// A finite word, stored as a sequence of letter ranks.
///
/// Public accessors use 1-based positions; slices of the underlying ranks are
/// plain 0-based Rust slices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_ranks(ranks: Vec<u8>) -> Self {
        Word(ranks)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_ranks(&self) -> &[u8] {
        &self.0
    }

    pub fn into_ranks(self) -> Vec<u8> {
        self.0
    }

    /// Letter at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.0[pos - 1]
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    /// The factor `w[i..j]` (1-based, inclusive). An empty range gives ε.
    pub fn factor(&self, range: RangeInclusive<usize>) -> Word {
        let (i, j) = (*range.start(), *range.end());
        if i > j || i == 0 {
            return Word::empty();
        }
        Word(self.0[i - 1..j].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn alph(&self) -> LetterSet {
        self.iter().collect()
    }

    /// Collapses maximal runs of equal letters.
    pub fn condense(&self) -> Word {
        let mut out = self.0.clone();
        out.dedup();
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}
