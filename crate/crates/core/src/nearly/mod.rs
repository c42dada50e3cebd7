//! Nearly k-universal words (exactly one absent length-`k` scattered factor):
//! linear-time decision, the absent factor, minimal witnesses, and the
//! basis/inflation description of each congruence class.

mod basis;
mod construct;
mod decide;
mod pump;

pub use basis::{basis_elements, basis_of, Basis};
pub use construct::{construct_w_u, witness_blocks, Block};
pub use decide::{
    absent_factor_nearly, all_splits, check_nearly, decision_splits, NearlyReason, NearlyWitness,
    SplitOutcome, SplitRecord, SplitViolation,
};
pub use pump::{class_membership, in_pump_set, MembershipMethod};
