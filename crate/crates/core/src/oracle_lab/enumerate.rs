use crate::error::{checked_pow, Budget, Result};
use crate::word_core::{count_distinct_subsequences, Alphabet, Word, WordsOfLength};

/// Number of words of length at most `max_len`, `None` on overflow.
pub(crate) fn word_space(sigma: usize, max_len: usize) -> Option<u128> {
    (0..=max_len).try_fold(0u128, |acc, n| acc.checked_add(checked_pow(sigma, n)?))
}

/// Every word of length `0..=max_len`, length first, then `<_Σ`-lexicographic.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> impl Iterator<Item = Word> + '_ {
    (0..=max_len).flat_map(move |n| alphabet.words_of_length(n))
}

/// Lazy stream over the words with exactly `m` absent length-`k` factors.
#[derive(Debug, Clone)]
pub struct NunivStream<'a> {
    alphabet: &'a Alphabet,
    m: u128,
    k: usize,
    max_len: usize,
    len: usize,
    current: WordsOfLength,
}

impl Iterator for NunivStream<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            match self.current.next() {
                Some(w) => {
                    let present = count_distinct_subsequences(self.alphabet, &w, self.k)
                        .expect("word lengths in a bounded space cannot overflow u128");
                    let total = checked_pow(self.alphabet.sigma(), self.k)?;
                    if total - present == self.m {
                        return Some(w);
                    }
                }
                None if self.len < self.max_len => {
                    self.len += 1;
                    self.current = self.alphabet.words_of_length(self.len);
                }
                None => return None,
            }
        }
    }
}

/// All `w` with `|w| ≤ max_len` and `deficiency(w, k) = m`, in length-then-lex order.
pub fn enumerate_nuniv(
    alphabet: &Alphabet,
    m: u128,
    k: usize,
    max_len: usize,
    budget: Budget,
) -> Result<NunivStream<'_>> {
    budget.admit("word space", word_space(alphabet.sigma(), max_len))?;
    budget.admit("length-k factor space", checked_pow(alphabet.sigma(), k))?;
    Ok(NunivStream {
        alphabet,
        m,
        k,
        max_len,
        len: 0,
        current: alphabet.words_of_length(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::word_core::deficiency;

    fn words(a: &Alphabet, m: u128, k: usize, l: usize) -> Vec<String> {
        enumerate_nuniv(a, m, k, l, Budget::DEFAULT)
            .unwrap()
            .map(|w| a.render(&w))
            .collect()
    }

    #[test]
    fn binary_nearly_two_universal() {
        let a = Alphabet::new("ab").unwrap();
        let got = words(&a, 1, 2, 5);
        assert!(got.contains(&"aaba".to_string()));
        assert!(!got.contains(&"aab".to_string()));
        let expected: Vec<String> = all_words(&a, 5)
            .filter(|w| deficiency(&a, w, 2).unwrap() == 1)
            .map(|w| a.render(&w))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn worked_example_has_deficiency_four() {
        let a = Alphabet::new("abc").unwrap();
        assert!(words(&a, 4, 3, 9).contains(&"aabcbccab".to_string()));
    }

    #[test]
    fn full_deficiency_means_too_short() {
        for spec in ["ab", "abc"] {
            let a = Alphabet::new(spec).unwrap();
            let sigma = a.sigma();
            for k in 1..=3 {
                let total = (sigma as u128).pow(k as u32);
                let got = words(&a, total, k, k + 2);
                let expected: Vec<String> = all_words(&a, k - 1).map(|w| a.render(&w)).collect();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn ordered_by_length_then_lex() {
        let a = Alphabet::new("abc").unwrap();
        let got: Vec<Word> = enumerate_nuniv(&a, 1, 2, 7, Budget::DEFAULT).unwrap().collect();
        for pair in got.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
    }

    #[test]
    fn budget_caps_the_word_space() {
        let a = Alphabet::new("abc").unwrap();
        let err = enumerate_nuniv(&a, 1, 3, 12, Budget(1000)).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }
}
