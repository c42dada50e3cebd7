//! Analysis toolkit for m-nearly k-universal words.
//!
//! A word `w` over an alphabet of size σ is *m-nearly k-universal* when exactly
//! `σ^k - m` words of length `k` embed into it as scattered factors
//! (subsequences). The crate covers the `m = 1` case completely (linear-time
//! decision, minimal witness construction, congruence-class description), the
//! absent-factor counting machinery for `(k-1)`-universal words, the extreme
//! deficiencies, and an exhaustive oracle that checks all of the above against
//! brute force.
//!
//! ```
//! use nuniv::{Alphabet, nearly};
//!
//! let sigma = Alphabet::new("abc").unwrap();
//! let w = sigma.parse("accbbacab").unwrap();
//! let verdict = nearly::check_nearly(&sigma, &w, 3);
//! assert!(verdict.is_nearly);
//! assert_eq!(sigma.render(verdict.absent.as_ref().unwrap()), "bcc");
//! ```

pub mod alpha_beta;
pub mod cli;
pub mod error;
pub mod extremes;
pub mod nearly;
pub mod oracle_lab;
pub mod word_core;

pub use error::{Budget, Error, Result};
pub use word_core::{
    arch_factorize, count_distinct_subsequences, deficiency, is_scattered_factor, scatfact_set,
    simon_congruent, Alphabet, ArchFactorization, CongruenceMode, LetterSet, NextOccurrenceTable,
    Word,
};
