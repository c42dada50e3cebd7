//! Words at the far end of the deficiency scale: no, one, or two present
//! length-`k` factors, and the structure of words missing exactly two.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word_core::{
    arch_factorize, count_distinct_capped, deficiency, universality_index, Alphabet, Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremeTag {
    AllAbsent,
    SinglePresent,
    TwoPresent,
    None,
}

/// `w = x^p y^q` with `x ≠ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoBlock {
    pub x: u8,
    pub y: u8,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremeClassification {
    pub tag: ExtremeTag,
    pub detail: Option<TwoBlock>,
}

fn two_block(w: &Word) -> Option<TwoBlock> {
    let cond = w.condense();
    if cond.len() != 2 {
        return None;
    }
    let (x, y) = (cond.at(1), cond.at(2));
    let p = w.iter().take_while(|&c| c == x).count();
    Some(TwoBlock { x, y, p, q: w.len() - p })
}

pub fn classify_extreme(alphabet: &Alphabet, w: &Word, k: usize) -> ExtremeClassification {
    let tag = match count_distinct_capped(alphabet, w, k, 3) {
        0 => ExtremeTag::AllAbsent,
        1 => ExtremeTag::SinglePresent,
        2 => ExtremeTag::TwoPresent,
        _ => ExtremeTag::None,
    };
    let detail = (tag == ExtremeTag::TwoPresent).then(|| two_block(w)).flatten();
    ExtremeClassification { tag, detail }
}

/// Outcome of checking the structure forced on words with exactly two absent
/// length-`k` factors over alphabets with more than two letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M2Report {
    pub holds: bool,
    pub iota: usize,
    pub rest_size: usize,
    pub reverse_rest_size: usize,
    /// `"symmetric"` when both rests miss one letter, `"skewed"` when one misses
    /// one and the other two, `"neither"` otherwise.
    pub branch: &'static str,
    pub reading: &'static str,
}

const M2_READING: &str = "first branch read as |alph(r(w))| = |alph(r(w^R))| = sigma-1; \
second branch read as holding for one orientation u in {w, w^R}";

pub fn m2_property_check(alphabet: &Alphabet, w: &Word, k: usize) -> Result<M2Report> {
    let sigma = alphabet.sigma();
    if sigma <= 2 {
        return Err(Error::Contract(format!(
            "alphabet size must exceed 2, got {sigma}"
        )));
    }
    let m = deficiency(alphabet, w, k)?;
    if m != 2 {
        return Err(Error::Contract(format!(
            "{} misses {m} factors of length {k}, expected 2",
            alphabet.render(w)
        )));
    }
    let iota = universality_index(alphabet, w);
    let rest_size = arch_factorize(alphabet, w).rest().alph().len();
    let reverse_rest_size = arch_factorize(alphabet, &w.reversed()).rest().alph().len();
    let branch = match (sigma - rest_size, sigma - reverse_rest_size) {
        (1, 1) => "symmetric",
        (1, 2) | (2, 1) => "skewed",
        _ => "neither",
    };
    Ok(M2Report {
        holds: iota + 1 == k && branch != "neither",
        iota,
        rest_size,
        reverse_rest_size,
        branch,
        reading: M2_READING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let ab = Alphabet::new("ab").unwrap();
        let abc = Alphabet::new("abc").unwrap();
        assert_eq!(classify_extreme(&ab, &ab.parse("ab").unwrap(), 3).tag, ExtremeTag::AllAbsent);
        assert_eq!(
            classify_extreme(&abc, &abc.parse("abc").unwrap(), 3).tag,
            ExtremeTag::SinglePresent
        );
        let c = classify_extreme(&ab, &ab.parse("aab").unwrap(), 2);
        assert_eq!(c.tag, ExtremeTag::TwoPresent);
        assert_eq!(c.detail, Some(TwoBlock { x: 0, y: 1, p: 2, q: 1 }));
        assert_eq!(classify_extreme(&ab, &ab.parse("abab").unwrap(), 2).tag, ExtremeTag::None);
    }

    #[test]
    fn long_unary_word_is_single_present() {
        let abc = Alphabet::new("abc").unwrap();
        let w = abc.parse(&"b".repeat(50_000)).unwrap();
        assert_eq!(classify_extreme(&abc, &w, 10_000).tag, ExtremeTag::SinglePresent);
    }

    #[test]
    fn m2_guards() {
        let ab = Alphabet::new("ab").unwrap();
        let w = ab.parse("aabaa").unwrap();
        assert_eq!(deficiency(&ab, &w, 3).unwrap(), 4);
        assert_eq!(universality_index(&ab, &w), 1);
        assert!(matches!(m2_property_check(&ab, &w, 3), Err(Error::Contract(_))));
        let abc = Alphabet::new("abc").unwrap();
        let not_two = abc.parse("aabcbccab").unwrap();
        assert!(matches!(m2_property_check(&abc, &not_two, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn m2_holds_exhaustively_for_ternary() {
        let abc = Alphabet::new("abc").unwrap();
        let mut seen = 0;
        for n in 0..=9 {
            for w in abc.words_of_length(n) {
                if deficiency(&abc, &w, 3).unwrap() == 2 {
                    seen += 1;
                    let r = m2_property_check(&abc, &w, 3).unwrap();
                    assert!(r.holds, "{} {r:?}", abc.render(&w));
                }
            }
        }
        assert!(seen > 0);
    }
}
