use itertools::Itertools;

use crate::error::{Budget, Error, Result};
use crate::nearly::construct::{witness_blocks, Block};
use crate::word_core::{Alphabet, Word};

/// The finite generator set of the congruence class of `w_u`: every word obtained
/// from `w_u` by rearranging the permutable block of each arch and of the rest
/// independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub word_u: Word,
    pub blocks: Vec<Block>,
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x))
}

impl Basis {
    /// `((σ-1)!)^(k-1) · (σ-1)!`, `None` on overflow.
    pub fn count(&self) -> Option<u128> {
        self.blocks
            .iter()
            .try_fold(1u128, |acc, b| acc.checked_mul(factorial(b.permutable.len())?))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self, budget: Budget) -> Result<Vec<Word>> {
        budget.admit("basis", self.count())?;
        let choices: Vec<Vec<Word>> = self
            .blocks
            .iter()
            .map(|b| {
                let len = b.permutable.len();
                b.permutable
                    .iter()
                    .permutations(len)
                    .map(|p| {
                        let mut w = Word::from_ranks(p);
                        w.extend_from(&b.fixed);
                        w
                    })
                    .collect()
            })
            .collect();
        Ok(choices
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| {
                let mut w = Word::empty();
                for p in &parts {
                    w.extend_from(p);
                }
                w
            })
            .collect())
    }
}

pub fn basis_of(alphabet: &Alphabet, u: &Word) -> Result<Basis> {
    let blocks = witness_blocks(alphabet, u)?;
    let mut word_u = Word::empty();
    for b in &blocks {
        word_u.extend_from(&b.permutable);
        word_u.extend_from(&b.fixed);
    }
    Ok(Basis { word_u, blocks })
}

/// Elements of the basis of `u`, with a capacity check.
pub fn basis_elements(alphabet: &Alphabet, u: &Word, budget: Budget) -> Result<Vec<Word>> {
    let basis = basis_of(alphabet, u)?;
    if basis.count().is_none() {
        return Err(Error::Capacity {
            what: "basis",
            needed: "more than 2^128".into(),
            budget: budget.0,
        });
    }
    basis.elements(budget)
}
