use serde::{Deserialize, Serialize};

use crate::error::{checked_pow, Budget, Result};
use crate::word_core::alphabet::Alphabet;
use crate::word_core::scatfact::scatfact_set;
use crate::word_core::word::Word;

/// Which scattered factors two words must share to be congruent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceMode {
    /// Equal sets of length-`k` scattered factors.
    #[default]
    ExactK,
    /// Equal sets of length-`j` scattered factors for every `j ≤ k`.
    UpToK,
}

pub fn simon_congruent(
    alphabet: &Alphabet,
    w1: &Word,
    w2: &Word,
    k: usize,
    mode: CongruenceMode,
    budget: Budget,
) -> Result<bool> {
    budget.admit("congruence signature", checked_pow(alphabet.sigma(), k))?;
    let lengths = match mode {
        CongruenceMode::ExactK => k..=k,
        CongruenceMode::UpToK => 0..=k,
    };
    for j in lengths {
        if scatfact_set(alphabet, w1, j, budget)? != scatfact_set(alphabet, w2, j, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
