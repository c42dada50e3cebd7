use std::fmt;

use crate::error::{Error, Result};
use crate::word_core::{arch_ends_of, reverse_arch_starts_of, Alphabet, LetterSet, Word};

/// Why a split `w = u·x·v^R` with `u` perfectly `prefix_arches`-universal and
/// `v` perfectly `suffix_arches`-universal does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitViolation {
    /// The word has fewer arches than the split asks for on one side.
    NotEnoughArches,
    /// The perfect prefix and suffix meet or overlap, so `x` would be empty.
    EmptyMiddle,
    /// `x` exists but its alphabet has the wrong size.
    MiddleAlphabet { size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitOutcome {
    /// `u = w[1..u_end]`, `x = w[u_end+1 .. v_start-1]`, `v^R = w[v_start..]`.
    Factorized { u_end: usize, v_start: usize },
    Violated(SplitViolation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitRecord {
    pub prefix_arches: usize,
    pub suffix_arches: usize,
    pub outcome: SplitOutcome,
}

impl SplitRecord {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, SplitOutcome::Factorized { .. })
    }
}

/// Outcome of the nearly-universality decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NearlyReason {
    Nearly,
    LevelZero,
    Iota { found: usize, expected: usize },
    RestAlphabet { size: usize },
    ReverseRestAlphabet { size: usize },
    Split { prefix_arches: usize, suffix_arches: usize },
}

impl fmt::Display for NearlyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NearlyReason::Nearly => f.write_str("all conditions hold"),
            NearlyReason::LevelZero => f.write_str("k must be at least 1"),
            NearlyReason::Iota { found, expected } => {
                write!(f, "universality index is {found}, expected {expected}")
            }
            NearlyReason::RestAlphabet { size } => {
                write!(f, "rest has {size} distinct letters, expected sigma-1")
            }
            NearlyReason::ReverseRestAlphabet { size } => {
                write!(f, "rest of the reversal has {size} distinct letters, expected sigma-1")
            }
            NearlyReason::Split { prefix_arches, suffix_arches } => write!(
                f,
                "no factorization u·x·v^R with u perfectly {prefix_arches}-universal and v perfectly {suffix_arches}-universal"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearlyWitness {
    pub is_nearly: bool,
    /// The unique absent length-`k` factor when `is_nearly`.
    pub absent: Option<Word>,
    pub reason: NearlyReason,
    pub splits: Vec<SplitRecord>,
}

/// Forward arch ends and reversed arch starts of one word, computed once.
pub(crate) struct ArchSkeleton {
    pub len: usize,
    pub sigma: usize,
    pub ends: Vec<usize>,
    pub rev_starts: Vec<usize>,
}

impl ArchSkeleton {
    pub fn new(alphabet: &Alphabet, w: &Word) -> Self {
        let sigma = alphabet.sigma();
        ArchSkeleton {
            len: w.len(),
            sigma,
            ends: arch_ends_of(w.as_ranks(), sigma),
            rev_starts: reverse_arch_starts_of(w.as_ranks(), sigma),
        }
    }

    fn prefix_end(&self, arches: usize) -> usize {
        if arches == 0 {
            0
        } else {
            self.ends[arches - 1]
        }
    }

    fn suffix_start(&self, arches: usize) -> usize {
        if arches == 0 {
            self.len + 1
        } else {
            self.rev_starts[arches - 1]
        }
    }

    /// A prefix is perfectly `j`-universal exactly when it ends at the `j`-th
    /// arch boundary, and symmetrically for suffixes, so each split has a single
    /// candidate.
    pub fn split(&self, w: &Word, prefix_arches: usize, suffix_arches: usize) -> SplitRecord {
        let record = |outcome| SplitRecord { prefix_arches, suffix_arches, outcome };
        if prefix_arches > self.ends.len() || suffix_arches > self.rev_starts.len() {
            return record(SplitOutcome::Violated(SplitViolation::NotEnoughArches));
        }
        let u_end = self.prefix_end(prefix_arches);
        let v_start = self.suffix_start(suffix_arches);
        if u_end + 1 >= v_start {
            return record(SplitOutcome::Violated(SplitViolation::EmptyMiddle));
        }
        let size = w.as_ranks()[u_end..v_start - 1]
            .iter()
            .copied()
            .collect::<LetterSet>()
            .len();
        if size + 1 == self.sigma {
            record(SplitOutcome::Factorized { u_end, v_start })
        } else {
            record(SplitOutcome::Violated(SplitViolation::MiddleAlphabet { size }))
        }
    }

    fn rest_alph(&self, w: &Word) -> LetterSet {
        w.as_ranks()[self.prefix_end(self.ends.len())..]
            .iter()
            .copied()
            .collect()
    }

    fn reverse_rest_alph(&self, w: &Word) -> LetterSet {
        w.as_ranks()[..self.suffix_start(self.rev_starts.len()) - 1]
            .iter()
            .copied()
            .collect()
    }
}

/// The splits `(k̂, k̃)` the decision has to verify: one for odd `k`, two for even.
pub fn decision_splits(k: usize) -> Vec<(usize, usize)> {
    if k % 2 == 1 {
        vec![((k - 1) / 2, (k - 1) / 2)]
    } else {
        vec![(k / 2, k / 2 - 1), (k / 2 - 1, k / 2)]
    }
}

/// Decides whether `w` is nearly `k`-universal, in time linear in `|w|`.
pub fn check_nearly(alphabet: &Alphabet, w: &Word, k: usize) -> NearlyWitness {
    let verdict = |reason, splits| NearlyWitness {
        is_nearly: false,
        absent: None,
        reason,
        splits,
    };
    if k == 0 {
        return verdict(NearlyReason::LevelZero, vec![]);
    }
    let sigma = alphabet.sigma();
    if sigma == 1 {
        // σ^k - 1 = 0: exactly the words shorter than k miss the single k-factor
        return if w.len() < k {
            NearlyWitness {
                is_nearly: true,
                absent: Some(Word::from_ranks(vec![0; k])),
                reason: NearlyReason::Nearly,
                splits: vec![],
            }
        } else {
            verdict(NearlyReason::Iota { found: w.len(), expected: k - 1 }, vec![])
        };
    }
    let skel = ArchSkeleton::new(alphabet, w);
    let iota = skel.ends.len();
    if iota != k - 1 {
        return verdict(NearlyReason::Iota { found: iota, expected: k - 1 }, vec![]);
    }
    let rest = skel.rest_alph(w);
    if rest.len() + 1 != sigma {
        return verdict(NearlyReason::RestAlphabet { size: rest.len() }, vec![]);
    }
    let rev_rest = skel.reverse_rest_alph(w).len();
    if rev_rest + 1 != sigma {
        return verdict(NearlyReason::ReverseRestAlphabet { size: rev_rest }, vec![]);
    }
    let splits: Vec<SplitRecord> = decision_splits(k)
        .into_iter()
        .map(|(p, s)| skel.split(w, p, s))
        .collect();
    if let Some(bad) = splits.iter().find(|s| !s.holds()) {
        let reason = NearlyReason::Split {
            prefix_arches: bad.prefix_arches,
            suffix_arches: bad.suffix_arches,
        };
        return verdict(reason, splits);
    }
    let missing = alphabet
        .full()
        .difference(rest)
        .only()
        .expect("rest misses exactly one letter");
    let mut absent: Word = skel.ends.iter().map(|&e| w.at(e)).collect();
    absent.push(missing);
    NearlyWitness {
        is_nearly: true,
        absent: Some(absent),
        reason: NearlyReason::Nearly,
        splits,
    }
}

/// Every split `k̂ + k̃ + 1 = k`, not only the ones the decision needs.
pub fn all_splits(alphabet: &Alphabet, w: &Word, k: usize) -> Vec<SplitRecord> {
    if k == 0 {
        return vec![];
    }
    let skel = ArchSkeleton::new(alphabet, w);
    (0..k).map(|p| skel.split(w, p, k - 1 - p)).collect()
}

/// `m(w)·a_w`, the unique absent length-`k` factor of a nearly `k`-universal word.
pub fn absent_factor_nearly(alphabet: &Alphabet, w: &Word, k: usize) -> Result<Word> {
    let verdict = check_nearly(alphabet, w, k);
    verdict.absent.ok_or_else(|| {
        Error::Contract(format!(
            "{} is not nearly {k}-universal: {}",
            alphabet.render(w),
            verdict.reason
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_core::{deficiency, is_perfectly_universal};

    fn check(spec: &str, w: &str, k: usize) -> NearlyWitness {
        let a = Alphabet::new(spec).unwrap();
        check_nearly(&a, &a.parse(w).unwrap(), k)
    }

    #[test]
    fn worked_examples() {
        assert!(check("abc", "accbbacab", 3).is_nearly);
        assert!(!check("abc", "acbba", 2).is_nearly);
        assert!(check("ab", "abaabb", 3).is_nearly);
    }

    #[test]
    fn even_level_needs_both_splits() {
        let v = check("ab", "aabbaaba", 4);
        assert!(!v.is_nearly);
        assert_eq!(v.splits.len(), 2);
        assert!(v.splits[0].holds(), "(2,1) split exists");
        assert_eq!(
            v.splits[1].outcome,
            SplitOutcome::Violated(SplitViolation::EmptyMiddle)
        );
        assert_eq!(
            v.reason,
            NearlyReason::Split { prefix_arches: 1, suffix_arches: 2 }
        );
    }

    #[test]
    fn absent_factor_examples() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("accbbacab").unwrap();
        assert_eq!(a.render(&absent_factor_nearly(&a, &w, 3).unwrap()), "bcc");
        let b = Alphabet::new("ab").unwrap();
        let w = b.parse("abaabb").unwrap();
        assert_eq!(b.render(&absent_factor_nearly(&b, &w, 3).unwrap()), "bba");
        let w = b.parse("ab").unwrap();
        assert!(matches!(absent_factor_nearly(&b, &w, 1), Err(Error::Contract(_))));
    }

    #[test]
    fn split_records_decompose_the_word() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("accbbacab").unwrap();
        let v = check_nearly(&a, &w, 3);
        let SplitOutcome::Factorized { u_end, v_start } = v.splits[0].outcome else {
            panic!("expected a factorization");
        };
        let u = w.factor(1..=u_end);
        let x = w.factor(u_end + 1..=v_start - 1);
        let v_rev = w.factor(v_start..=w.len());
        assert_eq!(a.render(&u), "accb");
        assert_eq!(a.render(&x), "ba");
        assert_eq!(a.render(&v_rev), "cab");
        assert!(is_perfectly_universal(&a, &u, 1));
        assert!(is_perfectly_universal(&a, &v_rev.reversed(), 1));
        assert_eq!(x.alph().len(), 2);
    }

    #[test]
    fn unary_alphabet() {
        let a = Alphabet::new("a").unwrap();
        for n in 0..6 {
            let w = a.parse(&"a".repeat(n)).unwrap();
            for k in 1..6 {
                let truth = deficiency(&a, &w, k).unwrap() == 1;
                assert_eq!(check_nearly(&a, &w, k).is_nearly, truth, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn level_zero_is_never_nearly() {
        assert_eq!(check("ab", "", 0).reason, NearlyReason::LevelZero);
    }

    #[test]
    fn matches_brute_force_small() {
        let a = Alphabet::new("abc").unwrap();
        for n in 0..=7 {
            for w in a.words_of_length(n) {
                for k in 1..=3 {
                    let truth = deficiency(&a, &w, k).unwrap() == 1;
                    assert_eq!(check_nearly(&a, &w, k).is_nearly, truth, "{}", a.render(&w));
                }
            }
        }
    }
}
