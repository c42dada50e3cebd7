//! Alphabets, words, subsequence queries, arch factorization, and Simon
//! congruence. These are the shared substrate of every other module and the
//! brute-force oracle the structured algorithms are checked against.

mod alphabet;
mod arch;
mod congruence;
mod next;
mod scatfact;
mod word;

pub use alphabet::{Alphabet, LetterSet, WordsOfLength};
pub use arch::{arch_factorize, is_perfectly_universal, universality_index, ArchFactorization};
pub(crate) use arch::{arch_ends_of, reverse_arch_starts_of};
pub use congruence::{simon_congruent, CongruenceMode};
pub use next::NextOccurrenceTable;
pub use scatfact::{
    absent_set, count_distinct_capped, count_distinct_subsequences, deficiency,
    is_scattered_factor, scatfact_set,
};
pub use word::Word;
