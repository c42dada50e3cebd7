use crate::alpha_beta::absent::absence_witnesses;
use crate::alpha_beta::graph::{candidate_graph, CandidateGraph};
use crate::error::{Budget, Error, Result};
use crate::word_core::{universality_index, Alphabet, Word};

/// For `u` absent from `w`: does `w2` have a chain spelling `u[1..k-1]` whose
/// candidate sets admit the same next letters as the chain in `w`? This holds
/// exactly when `u` is absent from `w2` as well.
///
/// A `k`-universal `w2` has no chains at all, so the answer is `false`.
pub fn predicate_c(alphabet: &Alphabet, u: &Word, w: &Word, w2: &Word, k: usize) -> Result<bool> {
    let gw = candidate_graph(alphabet, w, k)?;
    if gw.chain_for(u).is_none() {
        return Err(Error::Contract(format!(
            "{} is a scattered factor of {}",
            alphabet.render(u),
            alphabet.render(w)
        )));
    }
    if universality_index(alphabet, w2) >= k {
        return Ok(false);
    }
    let gw2 = candidate_graph(alphabet, w2, k)?;
    Ok(shared_chain(&gw, &gw2, u))
}

fn shared_chain(gw: &CandidateGraph, gw2: &CandidateGraph, u: &Word) -> bool {
    let (Some(chain), Some(chain2)) = (gw.chain_for(u), gw2.chain_for(u)) else {
        return false;
    };
    let r = u.as_ranks();
    chain.iter().zip(&chain2).enumerate().all(|(i, (&p, &q))| {
        let both = gw.m_at(p).unwrap().intersection(gw2.m_at(q).unwrap());
        both.contains(r[i + 1])
    })
}

/// Congruence of two `(k-1)`-universal words through their candidate graphs.
pub fn congruent_structured(
    alphabet: &Alphabet,
    w: &Word,
    w2: &Word,
    k: usize,
    budget: Budget,
) -> Result<bool> {
    let gw = candidate_graph(alphabet, w, k)?;
    let gw2 = candidate_graph(alphabet, w2, k)?;
    if gw.h_root() != gw2.h_root() {
        return Ok(false);
    }
    for (from, to) in [(&gw, &gw2), (&gw2, &gw)] {
        for witness in absence_witnesses(from, budget)? {
            if !shared_chain(from, to, &witness.u) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new("abc").unwrap()
    }

    #[test]
    fn shared_absence() {
        let a = abc();
        let p = |s| a.parse(s).unwrap();
        assert!(predicate_c(&a, &p("baa"), &p("aabcbccab"), &p("aabbcbcccab"), 3).unwrap());
        assert!(predicate_c(&a, &p("bac"), &p("aabcbccab"), &p("aabcbcccabbb"), 3).unwrap());
        assert!(!predicate_c(&a, &p("baa"), &p("aabcbccab"), &p("abcabcabc"), 3).unwrap());
        assert!(!predicate_c(&a, &p("ccc"), &p("aabcbcab"), &p("aabcbccab"), 3).unwrap());
    }

    #[test]
    fn present_factor_is_contract_error() {
        let a = abc();
        let p = |s| a.parse(s).unwrap();
        let r = predicate_c(&a, &p("abc"), &p("aabcbccab"), &p("aabbcbcccab"), 3);
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn congruence_examples() {
        let a = abc();
        let p = |s| a.parse(s).unwrap();
        let b = Budget::DEFAULT;
        assert!(congruent_structured(&a, &p("aabcbccab"), &p("aabbcbcccab"), 3, b).unwrap());
        assert!(!congruent_structured(&a, &p("aabcbccab"), &p("aabcbcab"), 3, b).unwrap());
        assert!(congruent_structured(&a, &p("aabcbccab"), &p("aabcbccab"), 3, b).unwrap());
        assert!(congruent_structured(&a, &p("abc"), &p("abcabc"), 3, b).is_err());
    }
}
