//! Absent factors of `(k-1)`-universal words via the α-β factorization: the
//! candidate graph, its counting recursion, and congruence through shared
//! candidate chains.

mod absent;
mod congruence;
mod factor;
mod graph;

pub use absent::{
    absence_witnesses, absent_by_blocks, absent_factors_structured, deficiency_structured,
    AbsenceWitness,
};
pub use congruence::{congruent_structured, predicate_c};
pub use factor::{alpha_beta_factorize, AlphaBetaFactorization};
pub use graph::{candidate_graph, CandidateGraph};
