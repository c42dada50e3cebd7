use crate::error::{Budget, Error, Result};
use crate::nearly::basis::basis_of;
use crate::nearly::decide::check_nearly;
use crate::word_core::{arch_factorize, ArchFactorization, Alphabet, NextOccurrenceTable, Word};

/// Whether `candidate` arises from `v` by inflating arches and the rest: each
/// arch `ar_i(v)` replaced by some `α` ending in `m(v)[i]` whose remaining prefix
/// has the same alphabet as `inner_i(v)` and contains it as a scattered factor,
/// and the rest replaced by some `β` with `alph(β) = alph(r(v))` and `|β| ≥ |r(v)|`.
pub fn in_pump_set(alphabet: &Alphabet, candidate: &Word, v: &Word, k: usize) -> Result<bool> {
    if !check_nearly(alphabet, v, k).is_nearly {
        return Err(Error::Contract(format!(
            "{} is not nearly {k}-universal",
            alphabet.render(v)
        )));
    }
    let skeleton = arch_factorize(alphabet, v);
    Ok(inflates(alphabet, candidate, &skeleton))
}

/// Each replacement `α` is itself an arch, so the candidate's own arch
/// factorization recovers the replacements.
fn inflates(alphabet: &Alphabet, candidate: &Word, v: &ArchFactorization) -> bool {
    let c = arch_factorize(alphabet, candidate);
    if c.iota() != v.iota() {
        return false;
    }
    for i in 1..=v.iota() {
        if c.modus().at(i) != v.modus().at(i) {
            return false;
        }
        let (inner_c, inner_v) = (c.inner(i), v.inner(i));
        if inner_c.alph() != inner_v.alph() {
            return false;
        }
        if !NextOccurrenceTable::new(&inner_c, alphabet.sigma()).embeds(&inner_v) {
            return false;
        }
    }
    c.rest().len() >= v.rest().len() && c.rest().alph() == v.rest().alph()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MembershipMethod {
    /// Decide nearly-universality and compare the absent factor.
    #[default]
    Direct,
    /// Search the basis of `u` for an element the word inflates.
    BasisPump,
}

/// Whether `w` lies in the congruence class of `w_u` among nearly `k`-universal words.
pub fn class_membership(
    alphabet: &Alphabet,
    w: &Word,
    u: &Word,
    k: usize,
    method: MembershipMethod,
    budget: Budget,
) -> Result<bool> {
    if u.len() != k {
        return Err(Error::Contract(format!(
            "absent factor has length {}, expected {k}",
            u.len()
        )));
    }
    alphabet.validate(u)?;
    match method {
        MembershipMethod::Direct => {
            Ok(check_nearly(alphabet, w, k).absent.as_ref() == Some(u))
        }
        MembershipMethod::BasisPump => {
            let elements = basis_of(alphabet, u)?.elements(budget)?;
            Ok(elements
                .iter()
                .any(|v| inflates(alphabet, w, &arch_factorize(alphabet, v))))
        }
    }
}
