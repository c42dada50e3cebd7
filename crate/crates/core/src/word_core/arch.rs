use crate::word_core::alphabet::{Alphabet, LetterSet};
use crate::word_core::word::Word;

/// Greedy leftmost split of a word into arches followed by the rest.
///
/// Every arch contains the whole alphabet and its final letter occurs in it
/// exactly once; the rest misses at least one letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchFactorization {
    arches: Vec<Word>,
    rest: Word,
    modus: Word,
    ends: Vec<usize>,
}

impl ArchFactorization {
    pub fn arches(&self) -> &[Word] {
        &self.arches
    }

    /// The `i`-th arch, 1-based.
    pub fn arch(&self, i: usize) -> &Word {
        &self.arches[i - 1]
    }

    pub fn rest(&self) -> &Word {
        &self.rest
    }

    /// Universality index ι(w).
    pub fn iota(&self) -> usize {
        self.arches.len()
    }

    /// Final letters of the arches, in order.
    pub fn modus(&self) -> &Word {
        &self.modus
    }

    /// 1-based end position of each arch in the original word.
    pub fn arch_ends(&self) -> &[usize] {
        &self.ends
    }

    /// 1-based position where the rest starts (`|w| + 1` when it is empty).
    pub fn rest_start(&self) -> usize {
        self.ends.last().map_or(1, |e| e + 1)
    }

    /// The `i`-th arch without its final letter.
    pub fn inner(&self, i: usize) -> Word {
        let a = self.arch(i);
        a.factor(1..=a.len() - 1)
    }

    /// The letter missing from the rest, if exactly one is missing.
    pub fn missing_rest_letter(&self, sigma: usize) -> Option<u8> {
        LetterSet::full(sigma).difference(self.rest.alph()).only()
    }

    pub fn reassemble(&self) -> Word {
        let mut w = Word::empty();
        for a in &self.arches {
            w.extend_from(a);
        }
        w.extend_from(&self.rest);
        w
    }
}

/// 1-based end positions of the arches of `ranks`, scanning left to right.
pub(crate) fn arch_ends_of(ranks: &[u8], sigma: usize) -> Vec<usize> {
    let full = LetterSet::full(sigma);
    let mut seen = LetterSet::EMPTY;
    let mut ends = Vec::new();
    for (i, &r) in ranks.iter().enumerate() {
        seen.insert(r);
        if seen == full {
            ends.push(i + 1);
            seen = LetterSet::EMPTY;
        }
    }
    ends
}

/// Start positions (1-based, in the original word) of the arches of the reversal,
/// i.e. the reversed arches read from the right. The `j`-th entry is where the
/// suffix made of the first `j + 1` reversed arches begins.
pub(crate) fn reverse_arch_starts_of(ranks: &[u8], sigma: usize) -> Vec<usize> {
    let full = LetterSet::full(sigma);
    let mut seen = LetterSet::EMPTY;
    let mut starts = Vec::new();
    for (i, &r) in ranks.iter().enumerate().rev() {
        seen.insert(r);
        if seen == full {
            starts.push(i + 1);
            seen = LetterSet::EMPTY;
        }
    }
    starts
}

/// ι(w) without materializing the arches.
pub fn universality_index(alphabet: &Alphabet, word: &Word) -> usize {
    arch_ends_of(word.as_ranks(), alphabet.sigma()).len()
}

pub fn arch_factorize(alphabet: &Alphabet, word: &Word) -> ArchFactorization {
    let ends = arch_ends_of(word.as_ranks(), alphabet.sigma());
    let mut arches = Vec::with_capacity(ends.len());
    let mut start = 1;
    for &e in &ends {
        arches.push(word.factor(start..=e));
        start = e + 1;
    }
    let rest = word.factor(start..=word.len());
    let modus = ends.iter().map(|&e| word.at(e)).collect();
    ArchFactorization {
        arches,
        rest,
        modus,
        ends,
    }
}

/// Perfectly `j`-universal: exactly `j` arches and an empty rest.
pub fn is_perfectly_universal(alphabet: &Alphabet, word: &Word, j: usize) -> bool {
    let ends = arch_ends_of(word.as_ranks(), alphabet.sigma());
    ends.len() == j && ends.last().copied().unwrap_or(0) == word.len()
}
