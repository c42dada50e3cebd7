//! Exhaustive enumeration over bounded word spaces, congruence-class censuses,
//! and a registry of property checks run against the brute-force oracle.

mod census;
mod claims;
mod enumerate;

pub use census::{
    census, census_with, claimed_class_count, write_reports_csv, CensusParams, CensusReport,
    CensusStrategy, FormulaComparison, STABILIZATION_RULE,
};
pub use claims::{claim_ids, verify_claims, ClaimReport, ClaimStatus, Scale};
pub use enumerate::{all_words, enumerate_nuniv, NunivStream};
