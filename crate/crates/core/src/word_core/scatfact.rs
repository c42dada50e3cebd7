use std::ops::ControlFlow;

use crate::error::{checked_pow, Budget, Error, Result};
use crate::word_core::alphabet::Alphabet;
use crate::word_core::next::NextOccurrenceTable;
use crate::word_core::word::Word;

/// Whether `u` embeds into `w` as a scattered factor.
pub fn is_scattered_factor(alphabet: &Alphabet, u: &Word, w: &Word) -> bool {
    NextOccurrenceTable::new(w, alphabet.sigma()).embeds(u)
}

/// Visits each distinct length-`k` scattered factor of the table's word once,
/// in lexicographic order. Only prefixes that can still be completed are
/// explored, so every visited node leads to an emitted factor.
pub(crate) fn for_each_scattered_factor<F>(table: &NextOccurrenceTable, k: usize, mut visit: F)
where
    F: FnMut(&[u8]) -> ControlFlow<()>,
{
    let n = table.word_len();
    let sigma = table.sigma() as u8;
    if k > n {
        return;
    }
    if k == 0 {
        let _ = visit(&[]);
        return;
    }
    // stack of (position reached, next letter to try); prefix mirrors the letters chosen
    let mut stack: Vec<(usize, u8)> = vec![(0, 0)];
    let mut prefix: Vec<u8> = Vec::with_capacity(k);
    while let Some(top) = stack.last_mut() {
        let (pos, letter) = *top;
        if letter == sigma {
            stack.pop();
            prefix.pop();
            continue;
        }
        top.1 += 1;
        let depth = prefix.len();
        let Some(j) = table.next(pos, letter) else { continue };
        if n - j < k - depth - 1 {
            continue;
        }
        prefix.push(letter);
        if depth + 1 == k {
            if visit(&prefix).is_break() {
                return;
            }
            prefix.pop();
        } else {
            stack.push((j, 0));
        }
    }
}

/// All length-`k` scattered factors of `w`, sorted `<_Σ`-lexicographically.
pub fn scatfact_set(alphabet: &Alphabet, w: &Word, k: usize, budget: Budget) -> Result<Vec<Word>> {
    budget.admit("scattered factor set", checked_pow(alphabet.sigma(), k))?;
    let table = NextOccurrenceTable::new(w, alphabet.sigma());
    let mut out = Vec::new();
    for_each_scattered_factor(&table, k, |f| {
        out.push(Word::from_ranks(f.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// `Σ^k ∖ ScatFact_k(w)`, sorted.
pub fn absent_set(alphabet: &Alphabet, w: &Word, k: usize, budget: Budget) -> Result<Vec<Word>> {
    budget.admit("absent factor set", checked_pow(alphabet.sigma(), k))?;
    let table = NextOccurrenceTable::new(w, alphabet.sigma());
    Ok(alphabet
        .words_of_length(k)
        .filter(|u| !table.embeds(u))
        .collect())
}

/// |ScatFact_k(w)| by the distinct-subsequence recurrence
/// `D_i[j] = D_{i-1}[j] + D_{i-1}[j-1] - D_{p-1}[j-1]`, where `p` is the previous
/// occurrence of `w[i]`.
pub fn count_distinct_subsequences(alphabet: &Alphabet, w: &Word, k: usize) -> Result<u128> {
    let sigma = alphabet.sigma();
    let mut dp = vec![0u128; k + 1];
    dp[0] = 1;
    // dp vector as it was just before the previous occurrence of each letter
    let mut before_last: Vec<Option<Vec<u128>>> = vec![None; sigma];
    for (i, c) in w.iter().enumerate() {
        let old = dp.clone();
        let top = k.min(i + 1);
        let snap = before_last[c as usize].as_deref();
        for j in 1..=top {
            let fresh = old[j - 1] - snap.map_or(0, |s| s[j - 1]);
            dp[j] = old[j]
                .checked_add(fresh)
                .ok_or(Error::Overflow("counting distinct subsequences"))?;
        }
        before_last[c as usize] = Some(old);
    }
    Ok(dp[k])
}

/// min(|ScatFact_k(w)|, cap), stopping as soon as `cap` factors are found.
pub fn count_distinct_capped(alphabet: &Alphabet, w: &Word, k: usize, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    let table = NextOccurrenceTable::new(w, alphabet.sigma());
    let mut found = 0;
    for_each_scattered_factor(&table, k, |_| {
        found += 1;
        if found >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// The `m` with `|ScatFact_k(w)| = σ^k - m`.
pub fn deficiency(alphabet: &Alphabet, w: &Word, k: usize) -> Result<u128> {
    let total = checked_pow(alphabet.sigma(), k).ok_or(Error::Overflow("computing σ^k"))?;
    Ok(total - count_distinct_subsequences(alphabet, w, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    fn abc() -> Alphabet {
        Alphabet::new("abc").unwrap()
    }

    /// Subsequences by choosing index sets; independent of the table.
    fn by_combinations(w: &Word, k: usize) -> BTreeSet<Vec<u8>> {
        w.as_ranks().iter().copied().combinations(k).collect()
    }

    #[test]
    fn membership_examples() {
        let a = abc();
        let w = a.parse("aabcbccab").unwrap();
        assert!(is_scattered_factor(&a, &a.parse("bca").unwrap(), &w));
        assert!(!is_scattered_factor(&a, &a.parse("baa").unwrap(), &w));
        assert!(is_scattered_factor(&a, &Word::empty(), &w));
    }

    #[test]
    fn scatfact_examples() {
        let a = abc();
        let b = Budget::DEFAULT;
        assert_eq!(scatfact_set(&a, &a.parse("ababca").unwrap(), 3, b).unwrap().len(), 13);
        let unary = scatfact_set(&a, &a.parse("aaaaa").unwrap(), 3, b).unwrap();
        assert_eq!(unary, vec![a.parse("aaa").unwrap()]);
        let absent: Vec<String> = absent_set(&a, &a.parse("aabcbccab").unwrap(), 3, b)
            .unwrap()
            .iter()
            .map(|u| a.render(u))
            .collect();
        assert_eq!(absent, ["baa", "bac", "caa", "cac"]);
        assert_eq!(scatfact_set(&a, &a.parse("aabcbccab").unwrap(), 3, b).unwrap().len(), 23);
    }

    #[test]
    fn scatfact_respects_budget() {
        let a = abc();
        let w = a.parse("abc").unwrap();
        assert!(matches!(
            scatfact_set(&a, &w, 3, Budget(26)),
            Err(Error::Capacity { .. })
        ));
        assert!(scatfact_set(&a, &w, 3, Budget(27)).is_ok());
    }

    #[test]
    fn count_examples() {
        let a = abc();
        assert_eq!(count_distinct_subsequences(&a, &a.parse("ababca").unwrap(), 3).unwrap(), 13);
        assert_eq!(count_distinct_subsequences(&a, &a.parse("aabcbccab").unwrap(), 3).unwrap(), 23);
        assert_eq!(count_distinct_subsequences(&a, &Word::empty(), 1).unwrap(), 0);
        assert_eq!(count_distinct_subsequences(&a, &Word::empty(), 0).unwrap(), 1);
    }

    #[test]
    fn deficiency_examples() {
        let a = abc();
        assert_eq!(deficiency(&a, &a.parse("ababca").unwrap(), 3).unwrap(), 14);
        assert_eq!(deficiency(&a, &a.parse("aabcbccab").unwrap(), 3).unwrap(), 4);
        assert_eq!(deficiency(&a, &a.parse("abcabc").unwrap(), 2).unwrap(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let a = abc();
        let w = a.parse(&"abc".repeat(100)).unwrap();
        assert_eq!(deficiency(&a, &w, 90), Err(Error::Overflow("computing σ^k")));
    }

    #[test]
    fn capped_count_stops_early() {
        let a = abc();
        let w = a.parse(&"abc".repeat(2000)).unwrap();
        assert_eq!(count_distinct_capped(&a, &w, 4000, 3), 3);
        assert_eq!(count_distinct_capped(&a, &a.parse("aab").unwrap(), 2, 3), 2);
        assert_eq!(count_distinct_capped(&a, &a.parse("ab").unwrap(), 3, 3), 0);
    }

    #[test]
    fn oracle_equivalence_exhaustive() {
        for (spec, max_len) in [("ab", 12), ("abc", 8)] {
            let a = Alphabet::new(spec).unwrap();
            for n in 0..=max_len {
                for w in a.words_of_length(n) {
                    for k in 0..=4 {
                        let set = scatfact_set(&a, &w, k, Budget::DEFAULT).unwrap();
                        let count = count_distinct_subsequences(&a, &w, k).unwrap();
                        assert_eq!(count, set.len() as u128, "{} k={k}", a.render(&w));
                        if n <= 8 {
                            let combos: Vec<Vec<u8>> = by_combinations(&w, k).into_iter().collect();
                            let listed: Vec<Vec<u8>> =
                                set.into_iter().map(Word::into_ranks).collect();
                            assert_eq!(listed, combos);
                        }
                    }
                }
            }
        }
    }
}
