use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed alphabet, word, or parameter.
    #[error("invalid input: {0}")]
    Validation(String),
    /// An operation would materialize more objects than the configured budget allows.
    #[error("capacity exceeded: {what} needs {needed} but the budget is {budget}")]
    Capacity {
        what: &'static str,
        needed: String,
        budget: u64,
    },
    /// The caller broke an operation's precondition.
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on the number of objects an enumerating operation may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 20);

    /// Fails with [`Error::Capacity`] when `needed` is unknown (overflowed) or above the budget.
    pub fn admit(self, what: &'static str, needed: Option<u128>) -> Result<()> {
        match needed {
            Some(n) if n <= u128::from(self.0) => Ok(()),
            Some(n) => Err(Error::Capacity {
                what,
                needed: n.to_string(),
                budget: self.0,
            }),
            None => Err(Error::Capacity {
                what,
                needed: "more than 2^128".to_string(),
                budget: self.0,
            }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `base^exp` in `u128`, `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let exp = u32::try_from(exp).ok()?;
    (base as u128).checked_pow(exp)
}
