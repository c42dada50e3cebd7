use crate::word_core::word::Word;

const NONE: u32 = u32::MAX;

/// Constant-time successor queries: for every position `p` in `0..=|w|` and
/// letter `a`, the smallest 1-based position `j > p` with `w[j] = a`.
#[derive(Debug, Clone)]
pub struct NextOccurrenceTable {
    sigma: usize,
    len: usize,
    next: Vec<u32>,
}

impl NextOccurrenceTable {
    pub fn new(word: &Word, sigma: usize) -> Self {
        let len = word.len();
        assert!(len < NONE as usize, "word too long for a 32-bit table");
        let mut next = vec![NONE; (len + 1) * sigma];
        for p in (0..len).rev() {
            let (row, below) = next.split_at_mut((p + 1) * sigma);
            let row = &mut row[p * sigma..];
            row.copy_from_slice(&below[..sigma]);
            row[word.as_ranks()[p] as usize] = (p + 1) as u32;
        }
        NextOccurrenceTable { sigma, len, next }
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Next occurrence of `letter` strictly after position `pos`.
    #[inline]
    pub fn next(&self, pos: usize, letter: u8) -> Option<usize> {
        match self.next[pos * self.sigma + letter as usize] {
            NONE => None,
            j => Some(j as usize),
        }
    }

    /// Positions of the leftmost (greedy) embedding of `u`, if any.
    pub fn embedding(&self, u: &Word) -> Option<Vec<usize>> {
        let mut pos = 0;
        u.iter()
            .map(|a| {
                pos = self.next(pos, a)?;
                Some(pos)
            })
            .collect()
    }

    pub fn embeds(&self, u: &Word) -> bool {
        self.embeds_ranks(u.as_ranks())
    }

    #[inline]
    pub fn embeds_ranks(&self, u: &[u8]) -> bool {
        let mut pos = 0;
        for &a in u {
            match self.next(pos, a) {
                Some(j) => pos = j,
                None => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_core::Alphabet;
    use proptest::prelude::*;

    fn two_pointer(u: &[u8], w: &[u8]) -> bool {
        let mut i = 0;
        for &c in w {
            if i < u.len() && u[i] == c {
                i += 1;
            }
        }
        i == u.len()
    }

    #[test]
    fn greedy_positions() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("aabcbccab").unwrap();
        let t = NextOccurrenceTable::new(&w, 3);
        assert_eq!(t.embedding(&a.parse("bca").unwrap()), Some(vec![3, 4, 8]));
        assert_eq!(t.embedding(&a.parse("baa").unwrap()), None);
        assert_eq!(t.embedding(&Word::empty()), Some(vec![]));
        assert_eq!(t.next(9, 0), None);
    }

    #[test]
    fn next_is_strictly_after() {
        let w = Word::from_ranks(vec![0, 1, 0, 0, 2, 1]);
        let t = NextOccurrenceTable::new(&w, 3);
        for p in 0..=w.len() {
            for a in 0..3u8 {
                if let Some(j) = t.next(p, a) {
                    assert!(j > p);
                    assert_eq!(w.at(j), a);
                    assert!((p + 1..j).all(|q| w.at(q) != a));
                }
            }
        }
    }

    #[test]
    fn exhaustive_agreement_with_two_pointer() {
        let a = Alphabet::new("ab").unwrap();
        for n in 0..=7 {
            for w in a.words_of_length(n) {
                let t = NextOccurrenceTable::new(&w, 2);
                for m in 0..=4 {
                    for u in a.words_of_length(m) {
                        assert_eq!(t.embeds(&u), two_pointer(u.as_ranks(), w.as_ranks()));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn agrees_with_two_pointer(
            w in proptest::collection::vec(0u8..4, 0..60),
            u in proptest::collection::vec(0u8..4, 0..8),
        ) {
            let t = NextOccurrenceTable::new(&Word::from_ranks(w.clone()), 4);
            prop_assert_eq!(t.embeds_ranks(&u), two_pointer(&u, &w));
        }
    }
}
