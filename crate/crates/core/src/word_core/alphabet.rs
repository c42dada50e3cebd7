use std::fmt;

use crate::error::{Error, Result};
use crate::word_core::word::Word;

/// Set of letters, stored as a bitmask over letter ranks.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    /// All ranks `0..sigma`.
    pub fn full(sigma: usize) -> Self {
        debug_assert!(sigma <= Alphabet::MAX_SIGMA);
        if sigma == 32 {
            LetterSet(u32::MAX)
        } else {
            LetterSet((1u32 << sigma) - 1)
        }
    }

    pub fn singleton(letter: u8) -> Self {
        LetterSet(1 << letter)
    }

    #[inline]
    pub fn insert(&mut self, letter: u8) {
        self.0 |= 1 << letter;
    }

    #[inline]
    pub fn remove(&mut self, letter: u8) {
        self.0 &= !(1 << letter);
    }

    #[inline]
    pub fn contains(self, letter: u8) -> bool {
        self.0 & (1 << letter) != 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LetterSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        LetterSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member ranks in ascending (alphabet) order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let low = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                Some(low)
            }
        })
    }

    /// The unique member, if there is exactly one.
    pub fn only(self) -> Option<u8> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as u8)
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u8> for LetterSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut set = LetterSet::EMPTY;
        for l in iter {
            set.insert(l);
        }
        set
    }
}

/// An ordered finite alphabet of ASCII lowercase letters.
///
/// Letters are identified inside words by their *rank*, the position in the
/// order string, so comparing rank sequences lexicographically is the same as
/// comparing words in `<_Σ`-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<u8>,
    ranks: [u8; 128],
}

const NO_RANK: u8 = u8::MAX;

impl Alphabet {
    pub const MAX_SIGMA: usize = 26;

    /// Builds an alphabet whose order is the order of `spec`.
    pub fn new(spec: &str) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::Validation("alphabet must not be empty".into()));
        }
        let mut ranks = [NO_RANK; 128];
        let mut letters = Vec::with_capacity(spec.len());
        for ch in spec.chars() {
            if !ch.is_ascii_lowercase() {
                return Err(Error::Validation(format!(
                    "alphabet letter {ch:?} is not ASCII lowercase"
                )));
            }
            let b = ch as u8;
            if ranks[b as usize] != NO_RANK {
                return Err(Error::Validation(format!(
                    "duplicate letter {ch:?} in alphabet {spec:?}"
                )));
            }
            ranks[b as usize] = letters.len() as u8;
            letters.push(b);
        }
        Ok(Alphabet { letters, ranks })
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.letters.len()
    }

    pub fn full(&self) -> LetterSet {
        LetterSet::full(self.sigma())
    }

    /// The letter with the given rank.
    pub fn letter(&self, rank: u8) -> char {
        self.letters[rank as usize] as char
    }

    pub fn rank_of(&self, ch: char) -> Option<u8> {
        if !ch.is_ascii() {
            return None;
        }
        match self.ranks[ch as usize] {
            NO_RANK => None,
            r => Some(r),
        }
    }

    /// The order string this alphabet was built from.
    pub fn spec(&self) -> String {
        self.letters.iter().map(|&b| b as char).collect()
    }

    /// Parses `text` as a word over this alphabet.
    pub fn parse(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|ch| {
                self.rank_of(ch).ok_or_else(|| {
                    Error::Validation(format!(
                        "letter {ch:?} of {text:?} is not in alphabet {:?}",
                        self.spec()
                    ))
                })
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word::from_ranks)
    }

    pub fn render(&self, word: &Word) -> String {
        word.iter().map(|r| self.letter(r)).collect()
    }

    pub fn render_set(&self, set: LetterSet) -> String {
        set.iter().map(|r| self.letter(r)).collect()
    }

    /// Checks that every rank of `word` is a letter of this alphabet.
    pub fn validate(&self, word: &Word) -> Result<()> {
        match word.iter().position(|r| r as usize >= self.sigma()) {
            None => Ok(()),
            Some(i) => Err(Error::Validation(format!(
                "position {} holds rank {} outside an alphabet of size {}",
                i + 1,
                word.as_ranks()[i],
                self.sigma()
            ))),
        }
    }

    /// The word listing the letters of `set` in alphabet order (`w_A`).
    pub fn canonical_word(&self, set: LetterSet) -> Word {
        Word::from_ranks(set.iter().collect())
    }

    /// True when both alphabets contain the same letters, in any order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        let mut a = self.letters.clone();
        let mut b = other.letters.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Re-expresses a word over `from` in this alphabet's ranks.
    pub fn translate(&self, word: &Word, from: &Alphabet) -> Result<Word> {
        self.parse(&from.render(word))
    }

    /// All words of length `len` in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> WordsOfLength {
        WordsOfLength {
            sigma: self.sigma() as u8,
            current: Some(vec![0; len]),
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.spec())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// Odometer over `Σ^len` in lexicographic order.
#[derive(Debug, Clone)]
pub struct WordsOfLength {
    sigma: u8,
    current: Option<Vec<u8>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        let mut advanced = false;
        for slot in succ.iter_mut().rev() {
            if *slot + 1 < self.sigma {
                *slot += 1;
                advanced = true;
                break;
            }
            *slot = 0;
        }
        if advanced {
            self.current = Some(succ);
        }
        Some(Word::from_ranks(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_ordered_alphabets() {
        let a = Alphabet::new("abc").unwrap();
        assert_eq!(a.sigma(), 3);
        assert_eq!(a.rank_of('a'), Some(0));
        assert_eq!(a.rank_of('c'), Some(2));
        let unary = Alphabet::new("a").unwrap();
        assert_eq!(unary.sigma(), 1);
        let reordered = Alphabet::new("cab").unwrap();
        assert_eq!(reordered.rank_of('c'), Some(0));
        assert!(a.same_letters(&reordered));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(Alphabet::new("aba"), Err(Error::Validation(_))));
        assert!(matches!(Alphabet::new(""), Err(Error::Validation(_))));
        assert!(matches!(Alphabet::new("aB"), Err(Error::Validation(_))));
    }

    #[test]
    fn parse_rejects_foreign_letters() {
        let a = Alphabet::new("ab").unwrap();
        assert!(a.parse("abba").is_ok());
        assert!(a.parse("abc").is_err());
    }

    #[test]
    fn canonical_words_follow_order() {
        let a = Alphabet::new("cab").unwrap();
        let mut set = a.full();
        set.remove(a.rank_of('a').unwrap());
        assert_eq!(a.render(&a.canonical_word(set)), "cb");
    }

    #[test]
    fn words_of_length_enumerates_lexicographically() {
        let a = Alphabet::new("ab").unwrap();
        let all: Vec<String> = a.words_of_length(2).map(|w| a.render(&w)).collect();
        assert_eq!(all, ["aa", "ab", "ba", "bb"]);
        assert_eq!(a.words_of_length(0).count(), 1);
    }

    #[test]
    fn letter_set_ops() {
        let s: LetterSet = [0u8, 2].into_iter().collect();
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(LetterSet::full(3).difference(s).only(), Some(1));
        assert!(s.is_subset(LetterSet::full(3)));
    }
}
